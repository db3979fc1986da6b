#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "zmc/analysis.hpp"
#include "zmc/errors.hpp"
#include "zmc/meshio.hpp"
#include "zmc/report.hpp"
#include "zmc/verify.hpp"

namespace zmc::cli {
namespace {

struct Options {
  int n = 3;
  std::vector<double> heights;
  double u_max = meshio::kDefaultUMax;
  double eps = meshio::kDefaultBoundaryOffset;
  std::string grid = "64x192";
  std::string out;
  std::string format;
  std::uint64_t seed = 42;
  std::vector<std::string> tol;
  int samples = 2048;
  double ray_u_max = analysis::LevelCurveOptions{}.ray_u_max;
};

struct Grid {
  int nu;
  int ntheta;
};

Grid parse_grid(const std::string& s) {
  const auto x = s.find_first_of("xX");
  if (x == std::string::npos) throw InvalidArgument("--grid expects NUxNT, got '" + s + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    const int nu = std::stoi(s.substr(0, x), &p1);
    const int nt = std::stoi(s.substr(x + 1), &p2);
    if (p1 != x || p2 != s.size() - x - 1) throw InvalidArgument("");
    if (nu < 8 || nt < 8) throw InvalidArgument("--grid dimensions must be >= 8");
    return {nu, nt};
  } catch (const InvalidArgument&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidArgument("--grid expects NUxNT, got '" + s + "'");
  }
}

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidArgument("--tol expects NAME=VALUE, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size()) {
      throw InvalidArgument("--tol value for " + name + " is not a number");
    }
    if (verify::find_check(name) == nullptr) throw InvalidArgument("--tol: unknown check '" + name + "'");
    out[name] = v;
  }
  return out;
}

std::string extension_of(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return "";
  return path.substr(dot + 1);
}

std::string resolve_format(const Options& o, const std::vector<std::string>& allowed, const std::string& fallback) {
  std::string f = o.format;
  if (f.empty()) {
    const std::string ext = extension_of(o.out);
    for (const std::string& a : allowed)
      if (a == ext) f = ext;
    if (f.empty()) f = fallback;
  }
  for (const std::string& a : allowed)
    if (a == f) return f;
  throw InvalidArgument("--format " + f + " is not valid for this command");
}

void require_n(int n) {
  if (n < 2) throw InvalidArgument("--n must be >= 2");
}

int cmd_mesh(const Options& o, std::ostream& out) {
  require_n(o.n);
  if (o.out.empty()) throw InvalidArgument("mesh requires --out");
  const std::string fmt = resolve_format(o, {"obj", "ply"}, "ply");
  const Grid g = parse_grid(o.grid);
  const meshio::SurfaceMesh mesh = meshio::tessellate(o.n, o.u_max, o.eps, g.nu, g.ntheta);
  if (fmt == "obj") {
    meshio::export_obj(mesh, o.out);
  } else {
    meshio::export_ply(mesh, o.out);
  }
  out << "wrote " << o.out << " (" << mesh.vertices.size() << " vertices, " << mesh.faces.size() << " faces)\n";
  return kExitOk;
}

int cmd_levels(const Options& o, std::ostream& out) {
  require_n(o.n);
  if (o.out.empty()) throw InvalidArgument("levels requires --out");
  if (o.heights.empty()) throw InvalidArgument("levels requires at least one --h");
  resolve_format(o, {"csv"}, "csv");
  std::vector<analysis::LevelCurve> curves;
  for (const double h : o.heights) {
    std::vector<analysis::LevelCurve> c = analysis::level_curve(o.n, h, o.samples, {o.ray_u_max});
    curves.insert(curves.end(), c.begin(), c.end());
  }
  meshio::export_level_curves(curves, o.out);
  out << "wrote " << o.out << " (" << curves.size() << " curves)\n";
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  require_n(o.n);
  resolve_format(o, {"json"}, "json");
  verify::VerifyConfig cfg;
  cfg.n = o.n;
  cfg.seed = o.seed;
  cfg.tolerance_overrides = parse_tolerances(o.tol);
  const VerificationReport rep = verify::run_verify(cfg);
  if (o.out.empty()) {
    out << report_to_json(rep) << '\n';
  } else {
    emit_report(rep, o.out);
    for (const CheckRecord& c : rep.checks) {
      if (!c.pass) out << "FAIL " << c.name << " measured=" << json_number(c.measured) << '\n';
    }
    out << rep.passed() << "/" << rep.checks.size() << " checks passed; wrote " << o.out << '\n';
  }
  return rep.pass() ? kExitOk : kExitCheckFailure;
}

std::string report_markdown(const Options& o, const VerificationReport& rep) {
  std::ostringstream md;
  const int n = o.n;
  md << "# zmc-noid reproduction recipes (n = " << n << ")\n\n";
  md << "Each recipe writes one artifact; all outputs are deterministic.\n\n";
  md << "## Surface meshes\n\n";
  md << "| Artifact | Command |\n|---|---|\n";
  md << "| truncated extension, causal types per vertex | `zmc-noid mesh --n " << n
     << " --u-max 3 --eps 0.02 --grid 64x192 --out f" << n << ".ply` |\n";
  md << "| same mesh as OBJ with causal sidecar | `zmc-noid mesh --n " << n
     << " --u-max 3 --eps 0.02 --grid 64x192 --out f" << n << ".obj` |\n";
  md << "| entire graph t = x tanh 2y (n = 2) | `zmc-noid mesh --n 2 --u-max 2 --eps 0.01 --out f2.ply` |\n";
  md << "| many ends, coarse | `zmc-noid mesh --n 17 --u-max 4 --eps 0.05 --grid 32x272 --out f17.ply` |\n\n";
  md << "## Level curve sets\n\n";
  md << "| Artifact | Command |\n|---|---|\n";
  md << "| small positive height, all copies | `zmc-noid levels --n " << n << " --h 0.01 --out levels_0.01.csv` |\n";
  md << "| several heights of both signs | `zmc-noid levels --n " << n
     << " --h 1 --h 0.1 --h=-0.1 --h=-1 --out levels.csv` |\n";
  md << "| height zero: " << 2 * n << " half-lines through the origin | `zmc-noid levels --n " << n
     << " --h 0 --out rays.csv` |\n\n";
  md << "## Verification\n\n";
  md << "`zmc-noid verify --n " << n << " --seed " << o.seed << " --out verify.json`\n\n";
  md << "PRNG: " << verify::kPrngName << ".\n\n";
  md << "| Check | Records | Passed |\n|---|---|---|\n";
  std::map<std::string, std::pair<int, int>> tally;
  std::vector<std::string> order;
  for (const CheckRecord& c : rep.checks) {
    if (!tally.count(c.name)) order.push_back(c.name);
    auto& t = tally[c.name];
    ++t.first;
    if (c.pass) ++t.second;
  }
  for (const std::string& name : order) {
    md << "| " << name << " | " << tally[name].first << " | " << tally[name].second << " |\n";
  }
  md << "\nOverall: " << (rep.pass() ? "pass" : "FAIL") << " (" << rep.passed() << "/" << rep.checks.size() << ")\n";
  return md.str();
}

int cmd_report(const Options& o, std::ostream& out) {
  require_n(o.n);
  verify::VerifyConfig cfg;
  cfg.n = o.n;
  cfg.seed = o.seed;
  cfg.tolerance_overrides = parse_tolerances(o.tol);
  const VerificationReport rep = verify::run_verify(cfg);
  const std::string md = report_markdown(o, rep);
  if (o.out.empty()) {
    out << md;
  } else {
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + o.out + " for writing");
    f << md;
    f.flush();
    if (!f) throw IoError("write failed for " + o.out);
    out << "wrote " << o.out << '\n';
  }
  return rep.pass() ? kExitOk : kExitCheckFailure;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--n", o.n, "number of ends (>= 2)");
  sub->add_option("--out", o.out, "output path");
  sub->add_option("--format", o.format, "obj|ply|csv|json");
  sub->add_option("--seed", o.seed, "seed for randomized sampling");
  sub->add_option("--tol", o.tol, "tolerance override NAME=VALUE (repeatable)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"maximal n-noids in Lorentz-Minkowski space and their extension"};
  app.name("zmc-noid");
  // --h is the height flag, so help is long-form only.
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  CLI::App* mesh = app.add_subcommand("mesh", "tessellate the extension and export OBJ or PLY");
  add_common(mesh, o);
  mesh->add_option("--u-max", o.u_max, "upper u truncation");
  mesh->add_option("--eps", o.eps, "offset from the boundary of the domain");
  mesh->add_option("--grid", o.grid, "NUxNT grid resolution");

  CLI::App* levels = app.add_subcommand("levels", "export level curve sets as CSV");
  add_common(levels, o);
  levels->add_option("--h", o.heights, "height (repeatable)");
  levels->add_option("--samples", o.samples, "samples per curve");
  levels->add_option("--u-max", o.ray_u_max, "upper u of the h = 0 half-lines");

  CLI::App* ver = app.add_subcommand("verify", "run the invariant suites and emit a JSON report");
  add_common(ver, o);

  CLI::App* rep = app.add_subcommand("report", "markdown reproduction recipes with a verification summary");
  add_common(rep, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "zmc-noid: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (mesh->parsed()) return cmd_mesh(o, out);
    if (levels->parsed()) return cmd_levels(o, out);
    if (ver->parsed()) return cmd_verify(o, out);
    if (rep->parsed()) return cmd_report(o, out);
  } catch (const IoError& e) {
    err << "zmc-noid: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvalidArgument& e) {
    err << "zmc-noid: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "zmc-noid: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "zmc-noid: " << e.what() << '\n';
    return kExitCheckFailure;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace zmc::cli
