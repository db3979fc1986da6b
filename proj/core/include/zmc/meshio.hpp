#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zmc/analysis.hpp"
#include "zmc/extension.hpp"
#include "zmc/lorentz.hpp"
#include "zmc/report.hpp"

namespace zmc::meshio {

struct MeshVertex {
  LorentzVec3 position;  // (t, x, y); files use the display order (x, y, t)
  double u = 0.0;
  double theta = 0.0;
  CausalType causal = CausalType::spacelike;

  std::array<double, 3> display() const { return {position.x, position.y, position.t}; }
};

struct MeshMetadata {
  int n = 0;
  double u_max = 0.0;
  double boundary_offset = 0.0;
  int nu = 0;
  int ntheta = 0;
  std::size_t dropped_faces = 0;  // degenerate triangles left out
};

struct SurfaceMesh {
  std::vector<MeshVertex> vertices;
  std::vector<std::array<std::uint32_t, 3>> faces;
  MeshMetadata meta;
};

inline constexpr double kDefaultBoundaryOffset = 0.02;
inline constexpr double kDefaultUMax = 4.0;
inline constexpr double kDegenerateArea = 1e-14;

// Grid over {omega_lower_bound(theta) + eps <= u <= u_max}, theta_j = 2 pi j / ntheta,
// closed in theta. Vertex (j, i) has index j * nu + i. Each quad is split along its
// shorter diagonal in display space.
SurfaceMesh tessellate(int n, double u_max, double boundary_offset, int nu, int ntheta);

double triangle_area(const SurfaceMesh& mesh, const std::array<std::uint32_t, 3>& face);

// OBJ with a <path>.causal.csv sidecar (vertex_index,causal).
void export_obj(const SurfaceMesh& mesh, const std::string& path);
// Binary little-endian PLY: double x, y, t, u, theta; uchar causal; int faces.
void export_ply(const SurfaceMesh& mesh, const std::string& path);

// CSV h,copy_index,param,x,y,t sorted by (h, copy_index, param).
void export_level_curves(std::span<const analysis::LevelCurve> curves, const std::string& path);

// Readers for the formats above (used for round trips).
struct LoadedMesh {
  std::vector<std::array<double, 3>> display;  // (x, y, t)
  std::vector<double> u;
  std::vector<double> theta;
  std::vector<std::uint8_t> causal;
  std::vector<std::array<std::uint32_t, 3>> faces;
};
LoadedMesh load_obj(const std::string& path);
LoadedMesh load_ply(const std::string& path);

}  // namespace zmc::meshio
