#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "zmc/errors.hpp"
#include "zmc/meshio.hpp"
#include "zmc/report.hpp"

using namespace zmc;
using namespace zmc::meshio;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class MeshIoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("zmc_meshio_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::vector<LorentzVec3> sorted_positions(const SurfaceMesh& m) {
  std::vector<LorentzVec3> p;
  for (const MeshVertex& v : m.vertices) p.push_back(v.position);
  return p;
}

}  // namespace

TEST(Tessellate, RotationalSymmetry) {
  const int nth = 192;
  const SurfaceMesh m = tessellate(3, 3.0, 0.02, 64, nth);
  ASSERT_EQ(m.vertices.size(), 64u * nth);
  const Mat3 r = rotation_r(3);
  const int shift = nth / 3;
  double worst = 0.0;
  for (int j = 0; j < nth; ++j)
    for (int i = 0; i < 64; ++i) {
      const LorentzVec3& a = m.vertices[j * 64 + i].position;
      const LorentzVec3& b = m.vertices[((j + shift) % nth) * 64 + i].position;
      worst = std::max(worst, coord_norm(r * a - b));
    }
  EXPECT_LT(worst, 1e-9);
  (void)sorted_positions;
}

TEST(Tessellate, GraphN2) {
  const SurfaceMesh m = tessellate(2, 2.0, 0.01, 32, 64);
  for (const MeshVertex& v : m.vertices)
    EXPECT_LT(std::abs(v.position.t - v.position.x * std::tanh(2 * v.position.y)), 1e-9);
}

TEST(Tessellate, CountsAndFaces) {
  const SurfaceMesh m = tessellate(17, 4.0, 0.05, 16, 68);
  EXPECT_EQ(m.vertices.size(), 16u * 68u);
  EXPECT_EQ(m.meta.n, 17);
  EXPECT_EQ(m.meta.nu, 16);
  EXPECT_EQ(m.meta.ntheta, 68);
  EXPECT_EQ(m.faces.size() + m.meta.dropped_faces, 2u * 15u * 68u);
  for (const auto& f : m.faces) {
    for (std::uint32_t idx : f) EXPECT_LT(idx, m.vertices.size());
    EXPECT_GT(triangle_area(m, f), kDegenerateArea);
  }
  for (const MeshVertex& v : m.vertices) {
    EXPECT_GE(v.u - omega_lower_bound(17, v.theta), 0.05 - 1e-12);
    EXPECT_TRUE(in_omega(17, DomainPoint::finite(v.u, v.theta)));
  }
}

TEST(Tessellate, CausalBanding) {
  const SurfaceMesh m = tessellate(4, 3.0, 0.02, 48, 64);
  int timelike = 0;
  for (const MeshVertex& v : m.vertices) {
    if (v.u > 1.0 + 1e-3) EXPECT_EQ(v.causal, CausalType::spacelike);
    if (v.u < 1.0 - 1e-3) {
      EXPECT_EQ(v.causal, CausalType::timelike);
      ++timelike;
    }
  }
  EXPECT_GT(timelike, 0);
}

TEST(Tessellate, InvalidParameters) {
  EXPECT_THROW(tessellate(3, 3.0, 0.0, 16, 16), InvalidArgument);
  EXPECT_THROW(tessellate(3, 1.01, 0.02, 16, 16), InvalidArgument);
  EXPECT_THROW(tessellate(3, 3.0, 0.02, 7, 16), InvalidArgument);
  EXPECT_THROW(tessellate(3, 3.0, 0.02, 16, 4), InvalidArgument);
  EXPECT_THROW(tessellate(1, 3.0, 0.02, 16, 16), InvalidArgument);
}

TEST_F(MeshIoTest, ObjRoundTrip) {
  const SurfaceMesh m = tessellate(3, 2.5, 0.02, 12, 24);
  const std::string p = path("m.obj");
  export_obj(m, p);
  const LoadedMesh l = load_obj(p);
  ASSERT_EQ(l.display.size(), m.vertices.size());
  ASSERT_EQ(l.faces.size(), m.faces.size());
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    EXPECT_EQ(l.display[i], m.vertices[i].display());
    EXPECT_EQ(l.causal[i], static_cast<std::uint8_t>(m.vertices[i].causal));
  }
  EXPECT_EQ(l.faces, m.faces);
  const std::string text = slurp(p);
  EXPECT_EQ(text.find('#'), std::string::npos);
  EXPECT_EQ(text.rfind("v ", 0), 0u);
  EXPECT_EQ(slurp(p + ".causal.csv").rfind("vertex_index,causal\n0,", 0), 0u);
}

TEST_F(MeshIoTest, PlyRoundTrip) {
  const SurfaceMesh m = tessellate(4, 2.5, 0.02, 12, 24);
  const std::string p = path("m.ply");
  export_ply(m, p);
  const LoadedMesh l = load_ply(p);
  ASSERT_EQ(l.display.size(), m.vertices.size());
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    EXPECT_EQ(l.display[i], m.vertices[i].display());
    EXPECT_EQ(l.u[i], m.vertices[i].u);
    EXPECT_EQ(l.theta[i], m.vertices[i].theta);
    EXPECT_EQ(l.causal[i], static_cast<std::uint8_t>(m.vertices[i].causal));
  }
  EXPECT_EQ(l.faces, m.faces);
  const std::string bytes = slurp(p);
  EXPECT_NE(bytes.find("format binary_little_endian 1.0"), std::string::npos);
  EXPECT_NE(bytes.find("property uchar causal"), std::string::npos);
}

TEST_F(MeshIoTest, EmptyMesh) {
  const SurfaceMesh empty;
  export_obj(empty, path("e.obj"));
  export_ply(empty, path("e.ply"));
  EXPECT_EQ(slurp(path("e.obj")), "");
  EXPECT_EQ(slurp(path("e.obj.causal.csv")), "vertex_index,causal\n");
  const std::string ply = slurp(path("e.ply"));
  EXPECT_NE(ply.find("element vertex 0"), std::string::npos);
  EXPECT_NE(ply.find("element face 0"), std::string::npos);
  EXPECT_TRUE(load_ply(path("e.ply")).display.empty());
}

TEST_F(MeshIoTest, DeterministicBytes) {
  const SurfaceMesh a = tessellate(5, 3.0, 0.02, 16, 40);
  const SurfaceMesh b = tessellate(5, 3.0, 0.02, 16, 40);
  export_ply(a, path("a.ply"));
  export_ply(b, path("b.ply"));
  export_obj(a, path("a.obj"));
  export_obj(b, path("b.obj"));
  EXPECT_EQ(slurp(path("a.ply")), slurp(path("b.ply")));
  EXPECT_EQ(slurp(path("a.obj")), slurp(path("b.obj")));
}

TEST_F(MeshIoTest, IoErrorsCarryPath) {
  const std::string bad = path("missing_dir/x.obj");
  try {
    export_obj(tessellate(3, 2.0, 0.02, 8, 8), bad);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(bad), std::string::npos);
  }
  EXPECT_THROW(export_ply(SurfaceMesh{}, bad), IoError);
  EXPECT_THROW(export_level_curves({}, bad), IoError);
  EXPECT_THROW(emit_report(VerificationReport{}, bad), IoError);
  EXPECT_THROW(load_obj(bad), IoError);
  EXPECT_THROW(load_ply(bad), IoError);
}

TEST_F(MeshIoTest, LevelCurveCsv) {
  const auto rays = analysis::level_curve(6, 0.0, 32);
  export_level_curves(rays, path("rays.csv"));
  std::ifstream in(path("rays.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "h,copy_index,param,x,y,t");
  std::vector<int> copies;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    const auto a = line.find(',');
    const int k = std::stoi(line.substr(a + 1));
    if (std::find(copies.begin(), copies.end(), k) == copies.end()) copies.push_back(k);
  }
  EXPECT_EQ(copies.size(), 12u);
  EXPECT_EQ(rows, 12u * 32u);

  export_level_curves({}, path("empty.csv"));
  EXPECT_EQ(slurp(path("empty.csv")), "h,copy_index,param,x,y,t\n");
}

TEST_F(MeshIoTest, LevelCurveCsvSorted) {
  auto curves = analysis::level_curve(3, 1.0, 16);
  auto more = analysis::level_curve(3, -0.5, 16);
  curves.insert(curves.begin(), more.begin(), more.end());
  std::reverse(curves.begin(), curves.end());
  export_level_curves(curves, path("s.csv"));
  std::ifstream in(path("s.csv"));
  std::string line;
  std::getline(in, line);
  double prev_h = -1e300;
  int prev_k = -1;
  double prev_p = -1e300;
  while (std::getline(in, line)) {
    std::istringstream s(line);
    std::string f;
    std::getline(s, f, ',');
    const double h = std::stod(f);
    std::getline(s, f, ',');
    const int k = std::stoi(f);
    std::getline(s, f, ',');
    const double p = std::stod(f);
    const bool ordered = h > prev_h || (h == prev_h && (k > prev_k || (k == prev_k && p > prev_p)));
    EXPECT_TRUE(ordered) << line;
    prev_h = h;
    prev_k = k;
    prev_p = p;
  }
}

TEST(Golden, LevelCurvesN6) {
  const auto curves = analysis::level_curve(6, 1.0, 16);
  const fs::path out = fs::temp_directory_path() / "zmc_golden_levels.csv";
  export_level_curves(curves, out.string());
  EXPECT_EQ(slurp(out), slurp(fs::path(ZMC_GOLDEN_DIR) / "levels_n6_h1.csv"));
  fs::remove(out);
}

TEST(Golden, ObjN3) {
  const SurfaceMesh m = tessellate(3, 2.0, 0.05, 8, 12);
  const fs::path out = fs::temp_directory_path() / "zmc_golden_mesh.obj";
  export_obj(m, out.string());
  EXPECT_EQ(slurp(out), slurp(fs::path(ZMC_GOLDEN_DIR) / "mesh_n3.obj"));
  EXPECT_EQ(slurp(out.string() + ".causal.csv"), slurp(fs::path(ZMC_GOLDEN_DIR) / "mesh_n3.obj.causal.csv"));
  fs::remove(out);
  fs::remove(out.string() + ".causal.csv");
}

TEST(ReportJson, EmptyAndFailing) {
  EXPECT_EQ(report_to_json(VerificationReport{}), "{\"checks\": [], \"pass\": true}");
  VerificationReport r;
  r.suite = "unit";
  CheckRecord ok{"a", "m", 3, {}, 1e-12, 1e-10, true, ""};
  CheckRecord bad{"b", "m", 3, {{"u", 1.5}}, 0.5, 1e-10, false, "boom"};
  r.checks = {ok, bad};
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(r.passed(), 1u);
  EXPECT_EQ(r.failed(), 1u);
  const std::string j = report_to_json(r);
  EXPECT_NE(j.find("\"pass\": false"), std::string::npos);
  EXPECT_NE(j.find("\"note\": \"boom\""), std::string::npos);
  EXPECT_LT(j.find("\"checks\""), j.find("\"pass\""));
}

TEST(ReportJson, Numbers) {
  EXPECT_EQ(json_number(0.1), "0.10000000000000001");
  EXPECT_EQ(json_number(std::nan("")), "null");
  EXPECT_EQ(json_number(INFINITY), "null");
  EXPECT_EQ(json_string("a\"b\\c\n"), "\"a\\\"b\\\\c\\n\"");
}
