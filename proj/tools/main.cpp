// adsgeom command line front end.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "adsgeom/barrier.hpp"
#include "adsgeom/io.hpp"
#include "adsgeom/solver.hpp"
#include "adsgeom/torus.hpp"

namespace fs = std::filesystem;
using namespace adsgeom;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kPipelineError = 3;

// Codes that come from bad user input rather than a failing computation.
bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidSurface:
    case ErrorCode::InvalidIsometry:
    case ErrorCode::NotOnQuadric:
    case ErrorCode::DegeneratePlane:
    case ErrorCode::DegenerateLattice:
    case ErrorCode::OutsideDomain:
    case ErrorCode::OutsideAffineDomain:
    case ErrorCode::RescaleImpossible:
    case ErrorCode::NotInU:
      return true;
    default:
      return false;
  }
}

int report(const Error& e) {
  std::cerr << "error: " << to_string(e.code());
  if (!e.stage().empty()) std::cerr << " [stage " << e.stage() << "]";
  std::cerr << ": " << e.what() << '\n';
  return is_input_error(e.code()) ? kInputError : kPipelineError;
}

std::vector<double> parse_list(const std::string& s, std::size_t expect) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "not a number: '" + item + "'");
    }
    if (used != item.size()) throw Error(ErrorCode::InvalidArgument, "not a number: '" + item + "'");
    out.push_back(v);
  }
  if (expect && out.size() != expect)
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(expect) + " comma separated values");
  return out;
}

Vec4 parse_vec4(const std::string& s) {
  const auto v = parse_list(s, 4);
  return Vec4(v[0], v[1], v[2], v[3]);
}

json load_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, path + ": " + e.what());
  }
}

std::string list_string(const json& j) {
  std::string s;
  for (const auto& v : j) s += (s.empty() ? "" : ",") + fmt_double(v.get<double>());
  return s;
}

// Curve options shared by curve, hull and barriers.
struct CurveFlags {
  double a0 = 0;
  std::string a = "0,0.2", b;
  double lambda_max = 0.8;
  int n = 64;

  void add(CLI::App* app) {
    app->add_option("--a0", a0, "constant term");
    app->add_option("--a", a, "cosine coefficients, comma separated");
    app->add_option("--b", b, "sine coefficients, comma separated");
    app->add_option("--lambda-max", lambda_max, "derivative bound for rescaling");
    app->add_option("--n", n, "curve samples");
  }
  BarrierConfig config() const {
    BarrierConfig c;
    c.curve.a0 = a0;
    c.curve.a = a.empty() ? std::vector<double>{} : parse_list(a, 0);
    c.curve.b = b.empty() ? std::vector<double>{} : parse_list(b, 0);
    c.lambda_max = lambda_max;
    c.n_phi = n;
    return c;
  }
};

BoundaryCurve make_curve(const BarrierConfig& c) {
  return synth_boundary_curve(c.curve, c.lambda_max, c.n_phi);
}

int cmd_classify(const std::vector<std::string>& args) {
  if (args.size() != 8) throw Error(ErrorCode::InvalidArgument, "classify expects 8 numbers (two vectors)");
  std::vector<double> v;
  for (const auto& a : args) {
    const auto x = parse_list(a, 1);
    v.push_back(x[0]);
  }
  const Plane2 pl{Vec4(v[0], v[1], v[2], v[3]), Vec4(v[4], v[5], v[6], v[7])};
  const Signature s = plane_signature(pl);
  std::cout << "class: " << to_string(classify_plane(pl)) << '\n'
            << "signature: (" << s.negative << ", " << s.zero << ", " << s.positive << ")\n";
  return kOk;
}

int cmd_causal(const std::string& q, const std::string& r, const std::string& p) {
  const ProjPoint pq(parse_vec4(q)), pr(parse_vec4(r));
  CausalRelation rel;
  if (pq.on_boundary()) {
    rel = causal_relation(pq, pr, LinearPoint(parse_vec4(p)));
  } else {
    rel = causal_relation_cylinder(conformal_embed(pq), conformal_embed(pr));
  }
  std::cout << "relation: " << to_string(rel) << '\n';
  return kOk;
}

int cmd_curve(const BarrierConfig& cfg, const std::string& out, const std::string& surface_out, int n_r) {
  const BoundaryCurve curve = make_curve(cfg);
  std::cout << "derivative_bound: " << fmt_double(curve.derivative_bound()) << '\n'
            << "flat: " << (curve.is_flat() ? "true" : "false") << '\n';
  if (!out.empty()) {
    std::ostringstream os;
    os << "phi,f\n";
    for (int j = 0; j < curve.size(); ++j)
      os << fmt_double(curve.phi(j)) << ',' << fmt_double(curve.values()[j]) << '\n';
    write_file(out, os.str());
  }
  if (!surface_out.empty())
    write_file(surface_out, surface_to_json(surface_from_curve(curve, PolarGrid(n_r, curve.size()))) + "\n");
  return kOk;
}

int cmd_hull(const BarrierConfig& cfg, const std::string& out_dir) {
  const BoundaryCurve curve = make_curve(cfg);
  const HullSplit split = hull_of_boundary_curve(curve);
  std::cout << "upper_faces: " << split.upper.faces.size() << '\n'
            << "lower_faces: " << split.lower.faces.size() << '\n'
            << "min_margin_upper: " << fmt_double(spacelike_support_planes(split.upper).min_margin) << '\n'
            << "min_margin_lower: " << fmt_double(spacelike_support_planes(split.lower).min_margin) << '\n';
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    for (const auto& [name, mesh] : {std::pair{"hull_upper", &split.upper}, std::pair{"hull_lower", &split.lower}}) {
      std::ostringstream os;
      write_obj(os, *mesh);
      write_file((fs::path(out_dir) / (std::string(name) + ".obj")).string(), os.str());
      write_file((fs::path(out_dir) / (std::string(name) + ".json")).string(), mesh_to_json(*mesh) + "\n");
    }
  }
  return kOk;
}

void write_field(const fs::path& path, const HeightField& f) {
  std::ostringstream os;
  write_height_field_obj(os, f);
  write_file(path.string(), os.str());
}

int cmd_barriers(const BarrierConfig& cfg, const std::string& out_dir) {
  const BoundaryCurve curve = make_curve(cfg);
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  if (curve.is_flat()) {
    // Totally geodesic disc: both barriers degenerate to the maximal surface.
    const HeightField disc = flat_disc_field(curve, cfg.params);
    const auto H = mean_curvature_field(disc);
    double hmax = 0;
    for (double h : H)
      if (!std::isnan(h)) hmax = std::max(hmax, std::abs(h));
    write_field(dir / "sigma_minus.obj", disc);
    write_field(dir / "sigma_plus.obj", disc);
    json j;
    j["flat"] = true;
    j["max_abs_H"] = hmax;
    j["h_minus_max"] = hmax;
    j["h_plus_min"] = -hmax;
    j["spacelike_margin"] = field_spacelike_margin(disc);
    j["curvature_R"] = nullptr;
    write_file((dir / "certificate.json").string(), j.dump(2) + "\n");
    std::cout << "flat curve: totally geodesic disc, max|H| = " << fmt_double(hmax) << '\n';
    return kOk;
  }
  const BarrierResult res = build_barriers(curve, cfg.params);
  for (const auto& line : res.log) std::cout << line << '\n';
  write_field(dir / "sigma_minus.obj", res.sigma_minus);
  write_field(dir / "sigma_plus.obj", res.sigma_plus);
  write_file((dir / "certificate.json").string(), certificate_to_json(res.cert) + "\n");
  const auto& c = res.cert;
  std::cout << "h_minus_max: " << fmt_double(c.h_minus_max) << '\n'
            << "h_plus_min: " << fmt_double(c.h_plus_min) << '\n'
            << "ordering_gap: " << fmt_double(c.ordering_gap) << '\n'
            << "spacelike_margin: " << fmt_double(c.spacelike_margin) << '\n'
            << "certificate: " << (c.passed() ? "PASS" : "FAIL") << '\n';
  if (!c.passed()) {
    std::cerr << "error: PipelineFailed [stage certificate]: barrier certificate did not pass\n";
    return kPipelineError;
  }
  return kOk;
}

LatticePair make_lattice(const std::string& s) {
  const auto v = parse_list(s, 4);
  return LatticePair({v[0], v[1]}, {v[2], v[3]});
}

int cmd_torus(const std::string& lattice, const std::string& range, int rows, const std::string& out) {
  const LatticePair L = make_lattice(lattice);
  const auto r = parse_list(range, 2);
  std::ostringstream os;
  write_foliation_csv(os, foliation_table(r[0], r[1], rows));
  if (out.empty()) std::cout << os.str();
  else write_file(out, os.str());
  std::cerr << "covolume: " << fmt_double(L.covolume()) << '\n';
  return kOk;
}

int cmd_solve(const std::string& lattice, int grid, const std::string& barriers, double tol, double u0,
              double amp, const std::string& out_json, const std::string& out_csv, int max_iter) {
  const LatticePair L = make_lattice(lattice);
  const auto b = parse_list(barriers, 2);
  TorusGraph s0(L, grid, u0);
  if (amp != 0)
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j) s0.at(i, j) = u0 + amp * std::sin(2 * M_PI * i / grid);
  SolveOptions opts;
  opts.tol_h = tol;
  opts.max_iter = max_iter;
  const SolveReport rep = relax_to_maximal(s0, b[0], b[1], opts);
  const std::string js = solve_report_to_json(rep) + "\n";
  if (out_json.empty()) std::cout << js;
  else write_file(out_json, js);
  if (!out_csv.empty()) {
    std::ostringstream os;
    write_u_csv(os, rep.surface);
    write_file(out_csv, os.str());
  }
  return kOk;
}

int cmd_fuzz(unsigned seed, int surfaces, int rays, int n_r, int n_phi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1, 1), ang(0, 2 * M_PI), tim(-1, 1);
  long doubles = 0, achronal = 0, spacelike_graphs = 0;
  const PolarGrid grid(n_r, n_phi);
  for (int k = 0; k < surfaces; ++k) {
    TrigSpec spec;
    spec.a0 = unit(rng);
    for (int m = 0; m < 3; ++m) {
      spec.a.push_back(0.3 * unit(rng));
      spec.b.push_back(0.3 * unit(rng));
    }
    const GraphSurface s = surface_from_curve(synth_boundary_curve(spec, 0.8, n_phi), grid);
    if (!is_spacelike(s)) continue;
    ++spacelike_graphs;
    if (!check_achronal(s).ok()) ++achronal;
    for (int r = 0; r < rays; ++r) {
      const LightRay ray = make_ray(spec.a0 + tim(rng), hemisphere_point(0.5 * M_PI * std::abs(unit(rng)), ang(rng)), ang(rng));
      if (lightlike_once(s, ray) > 1) ++doubles;
    }
  }
  std::cout << "seed: " << seed << '\n'
            << "spacelike_graphs: " << spacelike_graphs << '\n'
            << "double_intersections: " << doubles << '\n'
            << "achronality_violations: " << achronal << '\n';
  return doubles == 0 && achronal == 0 ? kOk : kPipelineError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anti-de Sitter barrier and torus universe tools"};
  app.require_subcommand(1);

  auto* classify = app.add_subcommand("classify", "signature of span{u, v}");
  std::vector<std::string> plane;
  classify->add_option("values", plane, "u1 u2 u3 u4 v1 v2 v3 v4")->required();

  auto* causal = app.add_subcommand("causal", "causal relation of two points of the closure of AdS");
  std::string cq, cr, cp = "1,0,0,0";
  causal->add_option("--q", cq, "first point (x1,x2,x3,x4)")->required();
  causal->add_option("--r", cr, "second point")->required();
  causal->add_option("--p", cp, "center of the affine domain when q is on the boundary");

  std::string config;
  auto* curve = app.add_subcommand("curve", "sample a trigonometric boundary curve");
  CurveFlags curve_flags;
  curve_flags.add(curve);
  std::string curve_out, surface_out;
  int n_r = 16;
  curve->add_option("--out", curve_out, "CSV of (phi, f)");
  curve->add_option("--surface-out", surface_out, "JSON graph spanning the curve");
  curve->add_option("--n-r", n_r, "rings of the spanning graph");
  curve->add_option("--config", config, "JSON config, overrides flags");

  auto* hull = app.add_subcommand("hull", "convex hull of the curve in the chart");
  CurveFlags hull_flags;
  hull_flags.add(hull);
  std::string hull_out;
  hull->add_option("--out", hull_out, "output directory for OBJ/JSON meshes");
  hull->add_option("--config", config, "JSON config, overrides flags");

  auto* barriers = app.add_subcommand("barriers", "build and certify the pair of barriers");
  CurveFlags bar_flags;
  bar_flags.add(barriers);
  BarrierParams bp;
  std::string bar_out = ".";
  std::string profile = "smoothstep";
  barriers->add_option("--eps", bp.eps);
  barriers->add_option("--delta", bp.delta);
  barriers->add_option("--eta", bp.eta);
  barriers->add_option("--eps2", bp.eps2);
  barriers->add_option("--nx", bp.nx);
  barriers->add_option("--ny", bp.ny);
  barriers->add_option("--profile", profile)->check(CLI::IsMember({"smoothstep", "bump"}));
  barriers->add_option("--out", bar_out, "output directory");
  barriers->add_option("--config", config, "JSON config, overrides flags");

  auto* torus = app.add_subcommand("torus", "CMC foliation table of a torus universe");
  std::string lattice = "6.283185307179586,0,0,6.283185307179586", range = "0.39269908169872414,1.1780972450961724";
  int rows = 9;
  std::string torus_out;
  torus->add_option("--lattice", lattice, "t1,s1,t2,s2");
  torus->add_option("--theta", range, "lo,hi");
  torus->add_option("--rows", rows);
  torus->add_option("--out", torus_out, "CSV path (stdout when empty)");
  torus->add_option("--config", config, "JSON config, overrides flags");

  auto* solve = app.add_subcommand("solve", "relax a theta-graph to the maximal leaf");
  int grid = 64, max_iter = 200000;
  std::string bars = "0.3,1.2", solve_json, solve_csv;
  double tol = 1e-6, u0 = 0.5, amp = 0;
  solve->add_option("--lattice", lattice, "t1,s1,t2,s2");
  solve->add_option("--grid", grid);
  solve->add_option("--barriers", bars, "lo,hi");
  solve->add_option("--tol", tol);
  solve->add_option("--u0", u0, "initial constant value");
  solve->add_option("--amp", amp, "amplitude of a sin(2 pi t / T) perturbation");
  solve->add_option("--max-iter", max_iter);
  solve->add_option("--out", solve_json, "report JSON path (stdout when empty)");
  solve->add_option("--csv", solve_csv, "CSV of u");
  solve->add_option("--config", config, "JSON config, overrides flags");

  auto* fuzz = app.add_subcommand("fuzz", "random spacelike graphs against lightlike rays");
  unsigned seed = 1;
  int surfaces = 100, rays = 100, fz_nr = 12, fz_nphi = 48;
  fuzz->add_option("--seed", seed);
  fuzz->add_option("--surfaces", surfaces);
  fuzz->add_option("--rays", rays);
  fuzz->add_option("--n-r", fz_nr);
  fuzz->add_option("--n-phi", fz_nphi);
  fuzz->add_option("--config", config, "JSON config, overrides flags");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (classify->parsed()) return cmd_classify(plane);
    if (causal->parsed()) return cmd_causal(cq, cr, cp);

    auto curve_config = [&](const CurveFlags& f) {
      BarrierConfig c = f.config();
      c.params = bp;
      c.params.profile = profile == "bump" ? ProfileKind::Bump : ProfileKind::Smoothstep;
      if (!config.empty()) c = barrier_config_from_json(read_file(config), c);
      return c;
    };
    if (curve->parsed()) return cmd_curve(curve_config(curve_flags), curve_out, surface_out, n_r);
    if (hull->parsed()) return cmd_hull(curve_config(hull_flags), hull_out);
    if (barriers->parsed()) return cmd_barriers(curve_config(bar_flags), bar_out);

    json cfg = config.empty() ? json::object() : load_json(config);
    try {
      if (cfg.contains("lattice")) lattice = list_string(cfg["lattice"]);
      if (torus->parsed()) {
        if (cfg.contains("theta")) range = list_string(cfg["theta"]);
        if (cfg.contains("rows")) rows = cfg["rows"].get<int>();
        if (cfg.contains("out")) torus_out = cfg["out"].get<std::string>();
        return cmd_torus(lattice, range, rows, torus_out);
      }
      if (solve->parsed()) {
        if (cfg.contains("grid")) grid = cfg["grid"].get<int>();
        if (cfg.contains("barriers")) bars = list_string(cfg["barriers"]);
        if (cfg.contains("tol")) tol = cfg["tol"].get<double>();
        if (cfg.contains("u0")) u0 = cfg["u0"].get<double>();
        if (cfg.contains("amp")) amp = cfg["amp"].get<double>();
        if (cfg.contains("max_iter")) max_iter = cfg["max_iter"].get<int>();
        return cmd_solve(lattice, grid, bars, tol, u0, amp, solve_json, solve_csv, max_iter);
      }
      if (fuzz->parsed()) {
        if (cfg.contains("seed")) seed = cfg["seed"].get<unsigned>();
        if (cfg.contains("surfaces")) surfaces = cfg["surfaces"].get<int>();
        if (cfg.contains("rays")) rays = cfg["rays"].get<int>();
        return cmd_fuzz(seed, surfaces, rays, fz_nr, fz_nphi);
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidArgument, std::string("config: ") + e.what());
    }
  } catch (const Error& e) {
    return report(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
