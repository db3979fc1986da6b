#include "zmc/meshio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <bit>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <tuple>

#include "zmc/errors.hpp"
#include "zmc/parallel.hpp"

namespace zmc::meshio {
namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  return in;
}

std::array<double, 3> sub(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

double dist(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const auto d = sub(a, b);
  return std::hypot(d[0], d[1], d[2]);
}

template <class T>
void put_le(std::string& buf, T v) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  buf.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(std::istream& in, const std::string& path) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw IoError("truncated PLY body in " + path);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

}  // namespace

double triangle_area(const SurfaceMesh& mesh, const std::array<std::uint32_t, 3>& f) {
  const auto a = mesh.vertices.at(f[0]).display();
  const auto b = mesh.vertices.at(f[1]).display();
  const auto c = mesh.vertices.at(f[2]).display();
  const auto e1 = sub(b, a);
  const auto e2 = sub(c, a);
  const double cx = e1[1] * e2[2] - e1[2] * e2[1];
  const double cy = e1[2] * e2[0] - e1[0] * e2[2];
  const double cz = e1[0] * e2[1] - e1[1] * e2[0];
  return 0.5 * std::hypot(cx, cy, cz);
}

SurfaceMesh tessellate(int n, double u_max, double eps, int nu, int ntheta) {
  if (n < 2) throw InvalidArgument("tessellate: n must be >= 2");
  if (!(eps > 0.0)) throw InvalidArgument("tessellate: boundary offset must be positive");
  if (!(u_max > 1.0 + eps)) throw InvalidArgument("tessellate: u_max must exceed 1 + boundary offset");
  if (nu < 8 || ntheta < 8) throw InvalidArgument("tessellate: grid dimensions must be >= 8");

  SurfaceMesh mesh;
  mesh.meta = {n, u_max, eps, nu, ntheta, 0};
  mesh.vertices.resize(static_cast<std::size_t>(nu) * ntheta);
  // One column of constant theta per task.
  parallel_for(static_cast<std::size_t>(ntheta), [&](std::size_t j) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / ntheta;
    const double lower = omega_lower_bound(n, th);
    const double start = lower + eps;
    for (int i = 0; i < nu; ++i) {
      const double u = start + (u_max - start) * i / (nu - 1);
      MeshVertex& v = mesh.vertices[j * nu + i];
      v.u = u;
      v.theta = th;
      v.position = eval_extended(n, u, th);
      const double step = std::min(default_fd_step(u), 0.25 * (u - lower));
      v.causal = causal_type(n, DomainPoint::finite(u, th), step);
    }
  });

  mesh.faces.reserve(static_cast<std::size_t>(2) * (nu - 1) * ntheta);
  for (int j = 0; j < ntheta; ++j) {
    const int jn = (j + 1) % ntheta;
    for (int i = 0; i + 1 < nu; ++i) {
      const auto a = static_cast<std::uint32_t>(j * nu + i);
      const auto b = static_cast<std::uint32_t>(j * nu + i + 1);
      const auto c = static_cast<std::uint32_t>(jn * nu + i + 1);
      const auto d = static_cast<std::uint32_t>(jn * nu + i);
      const bool ac = dist(mesh.vertices[a].display(), mesh.vertices[c].display()) <=
                      dist(mesh.vertices[b].display(), mesh.vertices[d].display());
      const std::array<std::array<std::uint32_t, 3>, 2> tris =
          ac ? std::array<std::array<std::uint32_t, 3>, 2>{{{a, b, c}, {a, c, d}}}
             : std::array<std::array<std::uint32_t, 3>, 2>{{{a, b, d}, {b, c, d}}};
      for (const auto& t : tris) {
        if (triangle_area(mesh, t) > kDegenerateArea) {
          mesh.faces.push_back(t);
        } else {
          ++mesh.meta.dropped_faces;
        }
      }
    }
  }
  return mesh;
}

void export_obj(const SurfaceMesh& mesh, const std::string& path) {
  std::string body;
  for (const MeshVertex& v : mesh.vertices) {
    const auto d = v.display();
    body += "v " + fmt17(d[0]) + " " + fmt17(d[1]) + " " + fmt17(d[2]) + "\n";
  }
  for (const auto& f : mesh.faces) {
    body += "f " + std::to_string(f[0] + 1) + " " + std::to_string(f[1] + 1) + " " + std::to_string(f[2] + 1) + "\n";
  }
  std::ofstream out = open_out(path);
  out << body;
  finish(out, path);

  const std::string side = path + ".causal.csv";
  std::string csv = "vertex_index,causal\n";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    csv += std::to_string(i) + "," + to_string(mesh.vertices[i].causal) + "\n";
  }
  std::ofstream sout = open_out(side);
  sout << csv;
  finish(sout, side);
}

void export_ply(const SurfaceMesh& mesh, const std::string& path) {
  std::string buf =
      "ply\nformat binary_little_endian 1.0\nelement vertex " + std::to_string(mesh.vertices.size()) +
      "\nproperty double x\nproperty double y\nproperty double t\nproperty double u\nproperty double theta\n"
      "property uchar causal\nelement face " +
      std::to_string(mesh.faces.size()) + "\nproperty list uchar int vertex_indices\nend_header\n";
  for (const MeshVertex& v : mesh.vertices) {
    for (const double c : v.display()) put_le(buf, c);
    put_le(buf, v.u);
    put_le(buf, v.theta);
    put_le(buf, static_cast<std::uint8_t>(v.causal));
  }
  for (const auto& f : mesh.faces) {
    put_le(buf, static_cast<std::uint8_t>(3));
    for (const std::uint32_t idx : f) put_le(buf, static_cast<std::int32_t>(idx));
  }
  std::ofstream out = open_out(path);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  finish(out, path);
}

void export_level_curves(std::span<const analysis::LevelCurve> curves, const std::string& path) {
  struct Row {
    double h;
    int k;
    double param;
    LorentzVec3 p;
  };
  std::vector<Row> rows;
  for (const auto& c : curves) {
    for (const auto& s : c.samples) rows.push_back({c.h, c.copy_index, s.param, s.point});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.h, a.k, a.param) < std::tie(b.h, b.k, b.param);
  });
  std::string body = "h,copy_index,param,x,y,t\n";
  for (const Row& r : rows) {
    body += fmt17(r.h) + "," + std::to_string(r.k) + "," + fmt17(r.param) + "," + fmt17(r.p.x) + "," + fmt17(r.p.y) +
            "," + fmt17(r.p.t) + "\n";
  }
  std::ofstream out = open_out(path);
  out << body;
  finish(out, path);
}

LoadedMesh load_obj(const std::string& path) {
  std::ifstream in = open_in(path);
  LoadedMesh m;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      std::array<double, 3> p{};
      std::string a, b, c;
      ls >> a >> b >> c;
      if (!ls) throw IoError("malformed vertex line in " + path);
      p = {std::strtod(a.c_str(), nullptr), std::strtod(b.c_str(), nullptr), std::strtod(c.c_str(), nullptr)};
      m.display.push_back(p);
    } else if (tag == "f") {
      long a = 0, b = 0, c = 0;
      ls >> a >> b >> c;
      if (!ls || a < 1 || b < 1 || c < 1) throw IoError("malformed face line in " + path);
      m.faces.push_back({static_cast<std::uint32_t>(a - 1), static_cast<std::uint32_t>(b - 1),
                         static_cast<std::uint32_t>(c - 1)});
    }
  }
  // Causal tags come from the sidecar when it is present.
  std::ifstream side(path + ".causal.csv");
  if (side) {
    std::getline(side, line);
    m.causal.assign(m.display.size(), 0);
    while (std::getline(side, line)) {
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw IoError("malformed sidecar line in " + path + ".causal.csv");
      const std::size_t idx = std::stoul(line.substr(0, comma));
      const std::string name = line.substr(comma + 1);
      std::uint8_t code = 0;
      if (name == "lightlike") {
        code = 1;
      } else if (name == "timelike") {
        code = 2;
      } else if (name != "spacelike") {
        throw IoError("unknown causal type '" + name + "' in " + path + ".causal.csv");
      }
      if (idx >= m.causal.size()) throw IoError("sidecar index out of range in " + path + ".causal.csv");
      m.causal[idx] = code;
    }
  }
  return m;
}

LoadedMesh load_ply(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  std::size_t nv = 0, nf = 0;
  bool binary = false;
  while (std::getline(in, line)) {
    if (line == "end_header") break;
    std::istringstream ls(line);
    std::string w, what;
    ls >> w;
    if (w == "format") {
      ls >> what;
      binary = what == "binary_little_endian";
    } else if (w == "element") {
      std::size_t count = 0;
      ls >> what >> count;
      if (what == "vertex") nv = count;
      if (what == "face") nf = count;
    }
  }
  if (line != "end_header" || !binary) throw IoError("unsupported PLY header in " + path);
  LoadedMesh m;
  for (std::size_t i = 0; i < nv; ++i) {
    std::array<double, 3> d{};
    for (double& c : d) c = get_le<double>(in, path);
    m.display.push_back(d);
    m.u.push_back(get_le<double>(in, path));
    m.theta.push_back(get_le<double>(in, path));
    m.causal.push_back(get_le<std::uint8_t>(in, path));
  }
  for (std::size_t i = 0; i < nf; ++i) {
    if (get_le<std::uint8_t>(in, path) != 3) throw IoError("non-triangular face in " + path);
    std::array<std::uint32_t, 3> f{};
    for (auto& idx : f) idx = static_cast<std::uint32_t>(get_le<std::int32_t>(in, path));
    m.faces.push_back(f);
  }
  return m;
}

}  // namespace zmc::meshio
