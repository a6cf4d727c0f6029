#include "adsgeom/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace adsgeom {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <class F>
auto parse_or_throw(const std::string& text, ErrorCode code, F&& f) -> decltype(f(json{})) {
  try {
    return f(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(code, std::string("malformed JSON: ") + e.what());
  }
}
}  // namespace

std::string surface_to_json(const GraphSurface& s) {
  json j;
  j["grid"] = {{"n_r", s.grid().n_r()}, {"n_phi", s.grid().n_phi()}};
  j["f"] = s.f();
  return j.dump(2);
}

GraphSurface surface_from_json(const std::string& text) {
  return parse_or_throw(text, ErrorCode::InvalidSurface, [](const json& j) {
    return GraphSurface(PolarGrid(j.at("grid").at("n_r").get<int>(), j.at("grid").at("n_phi").get<int>()),
                        j.at("f").get<std::vector<double>>());
  });
}

void write_obj(std::ostream& os, const PolySurfaceMesh& mesh) {
  for (const auto& v : mesh.vertices)
    os << "v " << fmt_double(v.x()) << ' ' << fmt_double(v.y()) << ' ' << fmt_double(v.z()) << '\n';
  for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

std::string mesh_to_json(const PolySurfaceMesh& mesh) {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : mesh.vertices) j["vertices"].push_back({v.x(), v.y(), v.z()});
  j["faces"] = json::array();
  for (const auto& f : mesh.faces) j["faces"].push_back({f[0], f[1], f[2]});
  j["planes"] = json::array();
  for (const auto& p : mesh.planes) j["planes"].push_back({{"n", {p.n.x(), p.n.y(), p.n.z()}}, {"d", p.d}});
  j["source"] = mesh.source;
  return j.dump(2);
}

PolySurfaceMesh mesh_from_json(const std::string& text) {
  return parse_or_throw(text, ErrorCode::InvalidArgument, [](const json& j) {
    PolySurfaceMesh m;
    for (const auto& v : j.at("vertices")) m.vertices.emplace_back(v.at(0), v.at(1), v.at(2));
    for (const auto& f : j.at("faces")) m.faces.push_back({f.at(0).get<int>(), f.at(1).get<int>(), f.at(2).get<int>()});
    for (const auto& p : j.at("planes")) {
      const auto& n = p.at("n");
      m.planes.push_back({Vec3(n.at(0), n.at(1), n.at(2)), p.at("d").get<double>()});
    }
    if (j.contains("source")) m.source = j.at("source").get<std::vector<int>>();
    return m;
  });
}

void write_height_field_obj(std::ostream& os, const HeightField& f) {
  const auto& g = f.grid();
  std::vector<int> id(g.size(), 0);
  int next = 1;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      if (!f.valid(i, j)) continue;
      id[g.index(i, j)] = next++;
      os << "v " << fmt_double(g.x(i)) << ' ' << fmt_double(g.y(j)) << ' ' << fmt_double(f.at(i, j)) << '\n';
    }
  for (int i = 0; i + 1 < g.nx; ++i)
    for (int j = 0; j + 1 < g.ny; ++j) {
      if (!f.valid(i, j) || !f.valid(i + 1, j) || !f.valid(i, j + 1) || !f.valid(i + 1, j + 1)) continue;
      const int a = id[g.index(i, j)], b = id[g.index(i + 1, j)], c = id[g.index(i + 1, j + 1)],
                d = id[g.index(i, j + 1)];
      os << "f " << a << ' ' << b << ' ' << c << '\n' << "f " << a << ' ' << c << ' ' << d << '\n';
    }
}

std::string certificate_to_json(const BarrierCertificate& c) {
  json j;
  j["h_minus_max"] = num(c.h_minus_max);
  j["h_plus_min"] = num(c.h_plus_min);
  j["spacelike_margin"] = num(c.spacelike_margin);
  j["curvature_R"] = num(c.curvature_R);
  j["ordering_gap"] = num(c.ordering_gap);
  j["nodes_minus"] = c.nodes_minus;
  j["nodes_plus"] = c.nodes_plus;
  j["stages_convex"] = c.stages_convex;
  j["passed"] = c.passed();
  return j.dump(2);
}

void write_foliation_csv(std::ostream& os, const std::vector<FoliationRow>& rows) {
  os << "theta,kappa,k1,k2,area_density\n";
  for (const auto& r : rows)
    os << fmt_double(r.theta) << ',' << fmt_double(r.kappa) << ',' << fmt_double(r.k1) << ','
       << fmt_double(r.k2) << ',' << fmt_double(r.area_density) << '\n';
}

std::string solve_report_to_json(const SolveReport& r) {
  double mean = 0, lo = INFINITY, hi = -INFINITY;
  for (double v : r.surface.u) mean += v, lo = std::min(lo, v), hi = std::max(hi, v);
  mean /= static_cast<double>(r.surface.u.size());
  json j;
  j["iterations"] = r.iterations;
  j["max_abs_H"] = num(r.max_h);
  j["tau"] = num(r.tau);
  j["halvings"] = r.halvings;
  j["converged"] = r.converged;
  j["monotone_tail"] = r.monotone_tail;
  j["touched_lower"] = r.touched_lower;
  j["touched_upper"] = r.touched_upper;
  j["grid"] = r.surface.n;
  j["lattice"] = {r.surface.lattice.g1.x(), r.surface.lattice.g1.y(), r.surface.lattice.g2.x(),
                  r.surface.lattice.g2.y()};
  j["u_mean"] = num(mean);
  j["u_min"] = num(lo);
  j["u_max"] = num(hi);
  return j.dump(2);
}

void write_u_csv(std::ostream& os, const TorusGraph& s) {
  os << "i,j,t,s,u\n";
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j) {
      const Eigen::Vector2d ts = s.lattice.point(static_cast<double>(i) / s.n, static_cast<double>(j) / s.n);
      os << i << ',' << j << ',' << fmt_double(ts.x()) << ',' << fmt_double(ts.y()) << ','
         << fmt_double(s.at(i, j)) << '\n';
    }
}

BarrierConfig barrier_config_from_json(const std::string& text, BarrierConfig base) {
  return parse_or_throw(text, ErrorCode::InvalidArgument, [&](const json& j) {
    BarrierConfig c = base;
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
    if (j.contains("curve")) {
      const auto& cv = j.at("curve");
      if (cv.contains("a0")) c.curve.a0 = cv.at("a0").get<double>();
      if (cv.contains("a")) c.curve.a = cv.at("a").get<std::vector<double>>();
      if (cv.contains("b")) c.curve.b = cv.at("b").get<std::vector<double>>();
      if (cv.contains("lambda_max")) c.lambda_max = cv.at("lambda_max").get<double>();
      if (cv.contains("n")) c.n_phi = cv.at("n").get<int>();
    }
    auto& p = c.params;
    if (j.contains("eps")) p.eps = j.at("eps").get<double>();
    if (j.contains("delta")) p.delta = j.at("delta").get<double>();
    if (j.contains("eta")) p.eta = j.at("eta").get<double>();
    if (j.contains("eps2")) p.eps2 = j.at("eps2").get<double>();
    if (j.contains("grid")) {
      if (j.at("grid").contains("nx")) p.nx = j.at("grid").at("nx").get<int>();
      if (j.at("grid").contains("ny")) p.ny = j.at("grid").at("ny").get<int>();
    }
    if (j.contains("extent")) p.extent = j.at("extent").get<double>();
    if (j.contains("edge_pencil")) p.edge_pencil = j.at("edge_pencil").get<int>();
    if (j.contains("profile")) {
      const auto name = j.at("profile").get<std::string>();
      if (name == "smoothstep") p.profile = ProfileKind::Smoothstep;
      else if (name == "bump") p.profile = ProfileKind::Bump;
      else throw Error(ErrorCode::InvalidArgument, "profile must be smoothstep or bump");
    }
    if (!(p.delta > 0) || !(p.eta > 0) || p.nx < 8 || p.ny < 8 || c.n_phi < 8)
      throw Error(ErrorCode::InvalidArgument, "delta, eta must be positive; grid and n at least 8");
    return c;
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

}  // namespace adsgeom
