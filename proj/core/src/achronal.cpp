#include "adsgeom/achronal.hpp"

#include <cmath>

namespace adsgeom {

PolarGrid::PolarGrid(int n_r, int n_phi) : n_r_(n_r), n_phi_(n_phi) {
  if (n_r < 2 || n_phi < 3) throw Error(ErrorCode::InvalidArgument, "PolarGrid needs n_r >= 2, n_phi >= 3");
}

double PolarGrid::rho(int i) const { return 0.5 * M_PI * (i + 1) / n_r_; }
double PolarGrid::phi(int j) const { return 2 * M_PI * j / n_phi_; }

Eigen::Vector3d hemisphere_point(double rho, double phi) {
  return {std::sin(rho) * std::cos(phi), std::sin(rho) * std::sin(phi), std::cos(rho)};
}

Eigen::Vector3d PolarGrid::node(int i, int j) const { return hemisphere_point(rho(i), phi(j)); }

GraphSurface::GraphSurface(PolarGrid grid, std::vector<double> f)
    : grid_(grid), f_(std::move(f)) {
  if (static_cast<int>(f_.size()) != grid_.size())
    throw Error(ErrorCode::InvalidSurface, "value count does not match the grid");
  for (double v : f_)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidSurface, "non-finite value");
  const int nr = grid_.n_r(), np = grid_.n_phi();
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < np; ++j) {
      if (std::abs(at(i, (j + 1) % np) - at(i, j)) >= M_PI)
        throw Error(ErrorCode::InvalidSurface, "angular edge jump >= pi (nonzero monodromy)");
      if (i + 1 < nr && std::abs(at(i + 1, j) - at(i, j)) >= M_PI)
        throw Error(ErrorCode::InvalidSurface, "radial edge jump >= pi");
    }
}

double GraphSurface::interpolate(const Eigen::Vector3d& u) const {
  const int nr = grid_.n_r(), np = grid_.n_phi();
  const double rho = std::atan2(std::hypot(u.x(), u.y()), u.z());
  double phi = std::atan2(u.y(), u.x());
  if (phi < 0) phi += 2 * M_PI;
  const double dphi = 2 * M_PI / np;
  const double pj = phi / dphi;
  int j0 = static_cast<int>(std::floor(pj));
  const double wj = pj - j0;
  j0 %= np;
  const int j1 = (j0 + 1) % np;
  auto ring = [&](int i) { return (1 - wj) * at(i, j0) + wj * at(i, j1); };
  const double drho = 0.5 * M_PI / nr;
  if (rho < drho) {
    double pole = 0;
    for (int j = 0; j < np; ++j) pole += at(0, j);
    pole /= np;
    return pole + rho / drho * (ring(0) - pole);
  }
  double pi_ = rho / drho - 1;
  int i0 = std::min(static_cast<int>(std::floor(pi_)), nr - 2);
  const double wi = std::clamp(pi_ - i0, 0.0, 1.0);
  return (1 - wi) * ring(i0) + wi * ring(i0 + 1);
}

double lipschitz_constant(const GraphSurface& s) {
  const auto& g = s.grid();
  double best = 0;
  auto edge = [&](int i0, int j0, int i1, int j1) {
    const double d = sphere_distance(g.node(i0, j0), g.node(i1, j1));
    if (d > 0) best = std::max(best, std::abs(s.at(i1, j1) - s.at(i0, j0)) / d);
  };
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_phi(); ++j) {
      edge(i, j, i, (j + 1) % g.n_phi());
      if (i + 1 < g.n_r()) {
        edge(i, j, i + 1, j);
        edge(i, j, i + 1, (j + 1) % g.n_phi());
        edge(i, (j + 1) % g.n_phi(), i + 1, j);
      }
    }
  // Chords across the pole, when the angular count allows them.
  if (g.n_phi() % 2 == 0)
    for (int j = 0; j < g.n_phi() / 2; ++j) edge(0, j, 0, j + g.n_phi() / 2);
  return best;
}

bool is_spacelike(const GraphSurface& s, double margin) { return lipschitz_constant(s) < 1 - margin; }
bool is_nontimelike(const GraphSurface& s, double tol) { return lipschitz_constant(s) <= 1 + tol; }

namespace {
std::size_t degree(const TrigSpec& s) { return std::max(s.a.size(), s.b.size()); }
double coef(const std::vector<double>& c, std::size_t k) { return k < c.size() ? c[k] : 0.0; }
}  // namespace

BoundaryCurve::BoundaryCurve(TrigSpec spec, int n_phi) : spec_(std::move(spec)) {
  if (n_phi < 3) throw Error(ErrorCode::InvalidArgument, "curve needs at least 3 samples");
  values_.reserve(n_phi);
  samples_.reserve(n_phi);
  for (int j = 0; j < n_phi; ++j) {
    const double p = 2 * M_PI * j / n_phi;
    values_.push_back(value(p));
    samples_.emplace_back(representative(p));
  }
}

double BoundaryCurve::phi(int j) const { return 2 * M_PI * j / size(); }

double BoundaryCurve::value(double phi) const {
  double f = spec_.a0;
  for (std::size_t k = 0; k < degree(spec_); ++k)
    f += coef(spec_.a, k) * std::cos((k + 1) * phi) + coef(spec_.b, k) * std::sin((k + 1) * phi);
  return f;
}

double BoundaryCurve::derivative(double phi) const {
  double d = 0;
  for (std::size_t k = 0; k < degree(spec_); ++k) {
    const double m = static_cast<double>(k + 1);
    d += m * (-coef(spec_.a, k) * std::sin(m * phi) + coef(spec_.b, k) * std::cos(m * phi));
  }
  return d;
}

double BoundaryCurve::derivative_bound() const {
  double l = 0;
  for (std::size_t k = 0; k < degree(spec_); ++k)
    l += (k + 1) * (std::abs(coef(spec_.a, k)) + std::abs(coef(spec_.b, k)));
  return l;
}

bool BoundaryCurve::is_flat() const { return derivative_bound() == 0; }

Vec4 BoundaryCurve::representative(double phi) const {
  const double f = value(phi);
  return Vec4(std::cos(f), std::sin(f), std::cos(phi), std::sin(phi)) / std::sqrt(2.0);
}

BoundaryCurve synth_boundary_curve(const TrigSpec& spec, double lambda_max, int n_phi) {
  for (double c : spec.a)
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
  for (double c : spec.b)
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
  if (!std::isfinite(spec.a0)) throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
  if (!(lambda_max < 1)) throw Error(ErrorCode::InvalidArgument, "lambda_max must be < 1");
  TrigSpec s = spec;
  BoundaryCurve probe(s, 3);
  const double l = probe.derivative_bound();
  if (l > 0 && lambda_max <= 0)
    throw Error(ErrorCode::RescaleImpossible, "cannot rescale a non-constant curve to Lipschitz <= 0");
  if (l > lambda_max) {
    const double k = lambda_max / l;
    for (double& c : s.a) c *= k;
    for (double& c : s.b) c *= k;
  }
  return BoundaryCurve(s, n_phi);
}

GraphSurface surface_from_curve(const BoundaryCurve& curve, const PolarGrid& grid) {
  const TrigSpec& s = curve.spec();
  std::vector<double> f(grid.size());
  for (int i = 0; i < grid.n_r(); ++i) {
    const double r = grid.rho(i) / (0.5 * M_PI);
    for (int j = 0; j < grid.n_phi(); ++j) {
      const double p = grid.phi(j);
      double v = s.a0, rk = 1;
      for (std::size_t k = 0; k < degree(s); ++k) {
        rk *= r;
        v += rk * (coef(s.a, k) * std::cos((k + 1) * p) + coef(s.b, k) * std::sin((k + 1) * p));
      }
      f[grid.index(i, j)] = v;
    }
  }
  return GraphSurface(grid, std::move(f));
}

AchronalReport check_achronal(const GraphSurface& s, bool spacelike, double tol,
                              std::size_t max_violations) {
  const auto& g = s.grid();
  const int n = g.size();
  std::vector<Eigen::Vector3d> nodes(n);
  std::vector<char> boundary(n);
  for (int i = 0; i < g.n_r(); ++i)
    for (int j = 0; j < g.n_phi(); ++j) {
      nodes[g.index(i, j)] = g.node(i, j);
      boundary[g.index(i, j)] = g.on_boundary(i);
    }
  AchronalReport rep;
  const auto& f = s.f();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      ++rep.pairs_checked;
      const double d = sphere_distance(nodes[a], nodes[b]);
      const double dt = std::abs(f[a] - f[b]);
      const bool strict = spacelike || !(boundary[a] || boundary[b]);
      const bool bad = strict ? dt >= d - tol : dt > d + tol;
      if (bad && rep.violations.size() < max_violations) rep.violations.push_back({a, b, dt, d});
    }
  return rep;
}

Eigen::Vector3d LightRay::u(double s) const { return std::cos(s) * u0 + std::sin(s) * xi; }

std::pair<double, double> LightRay::range() const {
  const double alpha = std::atan2(xi.z(), u0.z());
  return {alpha - 0.5 * M_PI, alpha + 0.5 * M_PI};
}

namespace {
void tangent_basis(const Eigen::Vector3d& u, Eigen::Vector3d& e1, Eigen::Vector3d& e2) {
  const double rho = std::atan2(std::hypot(u.x(), u.y()), u.z());
  const double phi = rho > 1e-14 ? std::atan2(u.y(), u.x()) : 0.0;
  e1 = {std::cos(rho) * std::cos(phi), std::cos(rho) * std::sin(phi), -std::sin(rho)};
  e2 = {-std::sin(phi), std::cos(phi), 0};
}
}  // namespace

LightRay make_ray(double t0, const Eigen::Vector3d& u0, double direction_angle) {
  Eigen::Vector3d e1, e2;
  const Eigen::Vector3d u = u0.normalized();
  tangent_basis(u, e1, e2);
  return LightRay{t0, u, std::cos(direction_angle) * e1 + std::sin(direction_angle) * e2};
}

LightRay ray_ending_at(double t_end, double phi_end, double direction_angle) {
  // Outward tangent at the equator point: -(cos a e_phi + sin a e_z), a in (0, pi).
  const Eigen::Vector3d u_end(std::cos(phi_end), std::sin(phi_end), 0);
  const Eigen::Vector3d e_phi(-std::sin(phi_end), std::cos(phi_end), 0);
  const Eigen::Vector3d inward = std::cos(direction_angle) * e_phi + std::sin(direction_angle) * Eigen::Vector3d::UnitZ();
  return LightRay{t_end, u_end, -inward};
}

int lightlike_once(const GraphSurface& s, const LightRay& ray, int samples) {
  const auto [lo, hi] = ray.range();
  int crossings = 0, prev = 0;
  for (int k = 0; k < samples; ++k) {
    const double p = lo + (k + 0.5) * (hi - lo) / samples;
    const double g = ray.t(p) - s.interpolate(ray.u(p));
    const int sg = g > 1e-13 ? 1 : (g < -1e-13 ? -1 : 0);
    if (sg == 0) continue;
    if (prev != 0 && sg != prev) ++crossings;
    prev = sg;
  }
  return crossings;
}

}  // namespace adsgeom
