#include "adsgeom/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace adsgeom {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

HeightField::HeightField(ChartGrid grid, Side side)
    : grid_(grid), side_(side), z_(grid.size(), kNaN), valid_(grid.size(), 0) {
  if (grid.nx < 3 || grid.ny < 3 || !(grid.radius > 0))
    throw Error(ErrorCode::InvalidArgument, "height field grid needs nx, ny >= 3 and radius > 0");
}

int HeightField::valid_count() const {
  return static_cast<int>(std::count(valid_.begin(), valid_.end(), 1));
}

std::optional<Eigen::Vector2d> HeightField::gradient(int i, int j) const {
  if (!valid(i, j) || !valid(i - 1, j) || !valid(i + 1, j) || !valid(i, j - 1) || !valid(i, j + 1))
    return std::nullopt;
  return Eigen::Vector2d((at(i + 1, j) - at(i - 1, j)) / (2 * grid_.hx()),
                         (at(i, j + 1) - at(i, j - 1)) / (2 * grid_.hy()));
}

Vec4 lift_chart(double x, double y, double z) {
  const Vec4 v(1, z, x, y);
  const double q = q_eval(v);
  if (!(q < 0)) return Vec4::Constant(kNaN);
  return v / std::sqrt(-q);
}

Vec4 HeightField::lift(int i, int j) const {
  if (!valid(i, j)) return Vec4::Constant(kNaN);
  return lift_chart(grid_.x(i), grid_.y(j), at(i, j));
}

SurfaceLattice HeightField::lattice() const {
  SurfaceLattice s;
  s.nu = grid_.nx;
  s.nv = grid_.ny;
  s.hu = grid_.hx();
  s.hv = grid_.hy();
  s.x.resize(grid_.size());
  for (int i = 0; i < grid_.nx; ++i)
    for (int j = 0; j < grid_.ny; ++j) s.at(i, j) = lift(i, j);
  return s;
}

namespace {
bool convex_along(const HeightField& f, double sign, double tol) {
  static constexpr int dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  const auto& g = f.grid();
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      if (!f.valid(i, j)) continue;
      for (const auto& d : dirs) {
        const int ip = i + d[0], jp = j + d[1], im = i - d[0], jm = j - d[1];
        if (!f.valid(ip, jp) || !f.valid(im, jm)) continue;
        if (sign * (f.at(ip, jp) + f.at(im, jm) - 2 * f.at(i, j)) < -tol) return false;
      }
    }
  return true;
}
}  // namespace

bool is_discretely_convex(const HeightField& f, double tol) { return convex_along(f, 1, tol); }

bool has_side_convexity(const HeightField& f, double tol) {
  return convex_along(f, f.side() == Side::Lower ? 1 : -1, tol);
}

double field_spacelike_margin(const HeightField& f) {
  double m = kInf;
  const auto& g = f.grid();
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const auto grad = f.gradient(i, j);
      if (!grad) continue;
      const Vec3 n = Vec3(-grad->x(), -grad->y(), 1).normalized();
      m = std::min(m, plane_spacelike_margin(Plane3{n, n.dot(f.point(i, j))}));
    }
  return m;
}

EpsHalfspace::EpsHalfspace(const Vec4& future_dual, double eps, TimeSide side)
    : dual_(future_dual), eps_(eps), side_(side) {
  if (!(eps > 0 && eps < 0.5 * M_PI)) throw Error(ErrorCode::EpsTooLarge, "eps must lie in (0, pi/2)");
  if (std::abs(q_eval(dual_) + 1) > 1e-9)
    throw Error(ErrorCode::InvalidArgument, "dual point must satisfy Q = -1");
}

bool EpsHalfspace::contains(const Vec3& c) const {
  const Vec4 r = lift_chart(c.x(), c.y(), c.z());
  if (std::isnan(r[0])) return false;
  const double b = b_eval(r, dual_);
  return side_ == TimeSide::Future ? -b <= std::sin(eps_) : b <= std::sin(eps_);
}

std::optional<double> EpsHalfspace::boundary_height(double x, double y) const {
  const double a0 = -dual_[0] + x * dual_[2] + y * dual_[3];
  const double a1 = -dual_[1];
  const double w = 1 - x * x - y * y;
  const double s = std::sin(eps_);
  const double sign = side_ == TimeSide::Future ? -1.0 : 1.0;
  // (a0 + a1 z) = sign * s * sqrt(w + z^2), squared.
  const double A = a1 * a1 - s * s, B = 2 * a0 * a1, C = a0 * a0 - s * s * w;
  double roots[2];
  int nroots = 0;
  if (std::abs(A) < 1e-14) {
    if (std::abs(B) > 0) roots[nroots++] = -C / B;
  } else {
    const double disc = B * B - 4 * A * C;
    if (disc < 0) return std::nullopt;
    const double sq = std::sqrt(disc);
    const double qq = -0.5 * (B + std::copysign(sq, B));
    if (qq != 0) roots[nroots++] = C / qq;
    roots[nroots++] = qq != 0 ? qq / A : -B / (2 * A);
  }
  std::optional<double> best;
  double best_res = kInf;
  for (int k = 0; k < nroots; ++k) {
    const double z = roots[k];
    if (!(w + z * z > 0)) continue;
    const double lhs = a0 + a1 * z;
    if (sign * lhs < 0) continue;
    const double res = std::abs(lhs - sign * s * std::sqrt(w + z * z));
    if (res < best_res) best_res = res, best = z;
  }
  if (best && best_res > 1e-8 * (1 + std::abs(*best))) return std::nullopt;
  return best;
}

EpsHalfspace eps_halfspace(const Plane3& plane, double eps, TimeSide side) {
  if (!(eps > 0 && eps < 0.5 * M_PI)) throw Error(ErrorCode::EpsTooLarge, "eps must lie in (0, pi/2)");
  return EpsHalfspace(plane_future_dual(plane), eps, side);
}

namespace {

std::vector<Vec4> support_duals(const PolySurfaceMesh& side, int pencil) {
  std::vector<Vec4> duals;
  duals.reserve(side.planes.size());
  for (const auto& pl : side.planes) duals.push_back(plane_future_dual(pl));
  if (pencil <= 0) return duals;
  std::map<std::pair<int, int>, std::vector<int>> edge_faces;
  for (int f = 0; f < static_cast<int>(side.faces.size()); ++f)
    for (int k = 0; k < 3; ++k) {
      const int a = side.faces[f][k], b = side.faces[f][(k + 1) % 3];
      edge_faces[{std::min(a, b), std::max(a, b)}].push_back(f);
    }
  for (const auto& [edge, fs] : edge_faces) {
    if (fs.size() != 2) continue;
    const Vec4 p1 = duals[fs[0]], p2 = duals[fs[1]];
    for (int k = 1; k <= pencil; ++k) {
      const double l = static_cast<double>(k) / (pencil + 1);
      const Vec4 p = (1 - l) * p1 + l * p2;
      duals.push_back(p / std::sqrt(-q_eval(p)));
    }
  }
  return duals;
}

}  // namespace

EpsBody eps_neighborhood_body(const HullSplit& split, const BoundaryCurve& curve, double eps,
                              const EpsBodyOptions& opts) {
  if (!(eps > 0)) throw Error(ErrorCode::EpsTooLarge, "eps must be positive");
  // No point at distance pi/2 or more from a support plane is in the
  // development of the hull.
  if (!(eps < 0.5 * M_PI))
    throw Error(ErrorCode::EpsBudgetExceeded, "eps must stay below pi/2", "eps_neighborhood_body");
  std::vector<EpsHalfspace> up, lo;
  for (const auto& p : support_duals(split.upper, opts.edge_pencil)) up.emplace_back(p, eps, TimeSide::Future);
  for (const auto& p : support_duals(split.lower, opts.edge_pencil)) lo.emplace_back(p, eps, TimeSide::Past);
  EpsBody body{HeightField(opts.grid, Side::Lower), HeightField(opts.grid, Side::Upper),
               static_cast<int>(lo.size()), static_cast<int>(up.size())};
  const auto& g = opts.grid;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      if (!g.active(i, j)) continue;
      const double x = g.x(i), y = g.y(j);
      double zu = kInf, zl = -kInf;
      for (const auto& h : up)
        if (auto z = h.boundary_height(x, y)) zu = std::min(zu, *z);
      for (const auto& h : lo)
        if (auto z = h.boundary_height(x, y)) zl = std::max(zl, *z);
      if (std::isfinite(zu)) body.upper.set(i, j, zu);
      if (std::isfinite(zl)) body.lower.set(i, j, zl);
    }
  for (const HeightField* f : {&body.lower, &body.upper})
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        if (!f->valid(i, j)) continue;
        const Vec3 c = f->point(i, j);
        if (!black_domain_test(ProjPoint(Vec4(1, c.z(), c.x(), c.y())), curve))
          throw Error(ErrorCode::EpsBudgetExceeded,
                      "eps-neighbourhood leaves the black domain of the curve",
                      "eps_neighborhood_body");
      }
  return body;
}

CurvatureCert certify_uniform_curvature(const HeightField& s, double R, int k, bool keep_centers) {
  CurvatureCert cert;
  cert.R = R;
  cert.worst_margin = kInf;
  const auto& g = s.grid();
  std::vector<Vec3> w;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      const auto grad = s.gradient(i, j);
      if (!grad) continue;
      bool full = true;
      w.clear();
      const Vec3 q = s.point(i, j);
      for (int di = -k; di <= k && full; ++di)
        for (int dj = -k; dj <= k && full; ++dj) {
          if (di == 0 && dj == 0) continue;
          if (!s.valid(i + di, j + dj)) full = false;
          else w.push_back(s.point(i + di, j + dj) - q);
        }
      if (!full) {
        ++cert.skipped;
        continue;
      }
      Vec3 n0 = Vec3(-grad->x(), -grad->y(), 1).normalized();
      if (s.side() == Side::Lower) n0 = -n0;
      Vec3 e1 = n0.unitOrthogonal(), e2 = n0.cross(e1);
      auto margin = [&](double a, double b) {
        const Vec3 n = (n0 + a * e1 + b * e2).normalized();
        double m = kInf;
        for (const auto& v : w) {
          const double len = v.norm();
          m = std::min(m, -n.dot(v) / len - len / (2 * R));
        }
        return m;
      };
      double a = 0, b = 0, best = margin(0, 0), step = 0.05;
      while (best <= 0 && step > 1e-13) {
        bool moved = false;
        for (int d = 0; d < 8; ++d) {
          const double ang = d * M_PI / 4;
          const double na = a + step * std::cos(ang), nb = b + step * std::sin(ang);
          const double v = margin(na, nb);
          if (v > best) {
            best = v, a = na, b = nb, moved = true;
            break;
          }
        }
        if (!moved) step *= 0.5;
      }
      cert.worst_margin = std::min(cert.worst_margin, best);
      if (best <= 0) {
        if (!cert.offender) cert.offender = std::make_pair(i, j);
        continue;
      }
      ++cert.certified;
      if (keep_centers) {
        const Vec3 n = (n0 + a * e1 + b * e2).normalized();
        cert.centers.push_back({{i, j}, q - R * n});
      }
    }
  cert.ok = cert.certified > 0 && !cert.offender;
  return cert;
}

PolyApprox polyhedral_approx(const HeightField& s, double delta) {
  const auto& g = s.grid();
  const double h = std::max(g.hx(), g.hy());
  const int stride = std::max(1, static_cast<int>(std::floor(delta / h + 1e-9)));
  PointCloud3 cloud;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      if (!s.valid(i, j)) continue;
      const bool rim = !s.valid(i - 1, j) || !s.valid(i + 1, j) || !s.valid(i, j - 1) || !s.valid(i, j + 1);
      if (rim || (i % stride == 0 && j % stride == 0)) cloud.push_back(s.point(i, j));
    }
  PolySurfaceMesh hull;
  try {
    hull = convex_hull(cloud);
  } catch (const Error& e) {
    throw Error(ErrorCode::DeltaTooCoarse, e.what(), "polyhedral_approx");
  }
  PolyApprox out;
  out.samples = static_cast<int>(cloud.size());
  out.mesh.vertices = hull.vertices;
  out.mesh.source = hull.source;
  const double sign = s.side() == Side::Upper ? 1.0 : -1.0;
  for (std::size_t f = 0; f < hull.faces.size(); ++f)
    if (sign * hull.planes[f].n.z() > 1e-9) {
      out.mesh.faces.push_back(hull.faces[f]);
      out.mesh.planes.push_back(hull.planes[f]);
    }
  if (out.mesh.faces.empty())
    throw Error(ErrorCode::DeltaTooCoarse, "no hull face on the surface side", "polyhedral_approx");
  out.field = HeightField(g, s.side());
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      if (!s.valid(i, j)) continue;
      double z = sign > 0 ? kInf : -kInf;
      for (const auto& pl : out.mesh.planes) {
        const double hz = pl.height(g.x(i), g.y(j));
        z = sign > 0 ? std::min(z, hz) : std::max(z, hz);
      }
      out.field.set(i, j, z);
      double dev = std::abs(z - s.at(i, j));
      if (auto grad = s.gradient(i, j)) dev /= std::sqrt(1 + grad->squaredNorm());
      out.hausdorff = std::max(out.hausdorff, dev);
    }
  return out;
}

namespace {
double smoothstep(double u) { return u * u * (3 - 2 * u); }
double bump_step(double u) {
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  const double a = std::exp(-1 / u), b = std::exp(-1 / (1 - u));
  return a / (a + b);
}
// Integral of bump_step over [0, u] by 48-panel composite Simpson. Above
// u = 1/2 the symmetry s(v) + s(1 - v) = 1 gives u - 1/2 + I(1 - u), which
// keeps phi(t) - t = eta I(1 - u) non-negative near 2 eta.
double bump_integral(double u) {
  if (u <= 0) return 0;
  if (u > 0.5) return u - 0.5 + bump_integral(1 - u);
  const int n = 48;
  const double h = u / n;
  double s = bump_step(0) + bump_step(u);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4 : 2) * bump_step(k * h);
  return s * h / 3;
}
}  // namespace

double SmoothingProfile::operator()(double t) const {
  if (t <= eta) return 1.5 * eta;
  if (t >= 2 * eta) return t;
  const double u = (t - eta) / eta;
  if (kind == ProfileKind::Smoothstep) return 1.5 * eta + eta * (u * u * u - 0.5 * u * u * u * u);
  return 1.5 * eta + eta * bump_integral(u);
}

double SmoothingProfile::derivative(double t) const {
  if (t <= eta) return 0;
  if (t >= 2 * eta) return 1;
  const double u = (t - eta) / eta;
  return kind == ProfileKind::Smoothstep ? smoothstep(u) : bump_step(u);
}

SmoothingProfile smooth_profile(double eta, ProfileKind kind) {
  if (!(eta > 0)) throw Error(ErrorCode::InvalidArgument, "eta must be positive");
  return SmoothingProfile{eta, kind};
}

HeightField smooth_convex_graph(const HeightField& f, const SmoothingProfile& profile, double tol) {
  const auto& g = f.grid();
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      if (f.valid(i, j) && f.at(i, j) < -tol)
        throw Error(ErrorCode::NotConvexInput, "input must be non-negative");
  if (!is_discretely_convex(f, tol)) throw Error(ErrorCode::NotConvexInput, "input is not convex");
  HeightField out(g, f.side());
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      if (f.valid(i, j)) out.set(i, j, profile(std::max(f.at(i, j), 0.0)));
  return out;
}

HeightField smooth_side(const HeightField& s, const std::vector<Plane3>& planes,
                        const SmoothingOptions& opts) {
  HeightField cur = s;
  const auto& g = s.grid();
  const double sign = s.side() == Side::Lower ? 1.0 : -1.0;
  const int n = static_cast<int>(planes.size());
  for (int k = 0; k < n; ++k) {
    const double eta = std::max(opts.eta * std::pow(opts.schedule_factor, n - 1 - k),
                                opts.eta * opts.eta_floor_factor);
    HeightField f(g, Side::Lower);
    double fmin = kInf;
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        if (!cur.valid(i, j)) continue;
        const double v = sign * (cur.at(i, j) - planes[k].height(g.x(i), g.y(j)));
        f.set(i, j, std::max(v, 0.0));
        fmin = std::min(fmin, v);
      }
    if (fmin >= 2 * eta) continue;
    const HeightField fh = smooth_convex_graph(f, smooth_profile(eta, opts.kind), 1e-8);
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j)
        if (fh.valid(i, j)) cur.set(i, j, planes[k].height(g.x(i), g.y(j)) + sign * fh.at(i, j));
  }
  return cur;
}

OffsetSurface normal_offset(const HeightField& s, double eps2) {
  const SurfaceLattice base = s.lattice();
  OffsetSurface out;
  out.lattice = base;
  const double dir = s.side() == Side::Upper ? 1.0 : -1.0;
  const auto& g = s.grid();
  std::vector<Vec3> chart(g.size(), Vec3::Constant(kNaN));
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      Vec4& x = out.lattice.at(i, j);
      if (!base.has(i, j) || !base.has(i - 1, j) || !base.has(i + 1, j) || !base.has(i, j - 1) ||
          !base.has(i, j + 1)) {
        x = Vec4::Constant(kNaN);
        continue;
      }
      const Vec4 xu = (base.at(i + 1, j) - base.at(i - 1, j)) / (2 * base.hu);
      const Vec4 xv = (base.at(i, j + 1) - base.at(i, j - 1)) / (2 * base.hv);
      const Vec4 n = future_unit_normal(base.at(i, j), xu, xv);
      x = std::cos(eps2) * base.at(i, j) + std::sin(eps2) * dir * n;
      if (x[0] > 0) chart[g.index(i, j)] = Vec3(x[2] / x[0], x[3] / x[0], x[1] / x[0]);
      else x = Vec4::Constant(kNaN);
    }
  // Resample the displaced nodes over the original grid by inverting the
  // bilinear interpolant of their chart positions.
  out.field = HeightField(g, s.side());
  auto c = [&](int i, int j) -> const Vec3& { return chart[g.index(i, j)]; };
  auto cell_ok = [&](int i, int j) {
    return i >= 0 && j >= 0 && i + 1 < g.nx && j + 1 < g.ny && !std::isnan(c(i, j)[0]) &&
           !std::isnan(c(i + 1, j)[0]) && !std::isnan(c(i, j + 1)[0]) && !std::isnan(c(i + 1, j + 1)[0]);
  };
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      if (!s.valid(i, j)) continue;
      const Eigen::Vector2d target(g.x(i), g.y(j));
      double a = i, b = j;
      bool done = false;
      Vec3 p;
      for (int it = 0; it < 40; ++it) {
        const int i0 = std::clamp(static_cast<int>(std::floor(a)), 0, g.nx - 2);
        const int j0 = std::clamp(static_cast<int>(std::floor(b)), 0, g.ny - 2);
        if (!cell_ok(i0, j0)) break;
        const double u = a - i0, v = b - j0;
        const Vec3 &p00 = c(i0, j0), &p10 = c(i0 + 1, j0), &p01 = c(i0, j0 + 1), &p11 = c(i0 + 1, j0 + 1);
        p = (1 - u) * (1 - v) * p00 + u * (1 - v) * p10 + (1 - u) * v * p01 + u * v * p11;
        const Vec3 du = (1 - v) * (p10 - p00) + v * (p11 - p01);
        const Vec3 dv = (1 - u) * (p01 - p00) + u * (p11 - p10);
        const Eigen::Vector2d r = target - p.head<2>();
        if (r.norm() < 1e-13) {
          done = u >= -1e-9 && u <= 1 + 1e-9 && v >= -1e-9 && v <= 1 + 1e-9;
          break;
        }
        Eigen::Matrix2d jac;
        jac << du.x(), dv.x(), du.y(), dv.y();
        const Eigen::Vector2d step = jac.inverse() * r;
        a += step.x();
        b += step.y();
      }
      if (done) out.field.set(i, j, p.z());
    }
  return out;
}

double mean_curvature(const HeightField& s, int i, int j, TimeOrientation o) {
  return lattice_curvature_at(s.lattice(), i, j, o).H;
}

std::vector<double> mean_curvature_field(const HeightField& s, TimeOrientation o) {
  return lattice_mean_curvature(s.lattice(), o);
}

namespace {

double curve_min_radius(const BoundaryCurve& curve) {
  double r = kInf;
  for (const auto& p : curve_chart_points(curve)) r = std::min(r, std::hypot(p.x(), p.y()));
  return r;
}

ChartGrid barrier_grid(const BoundaryCurve& curve, const BarrierParams& p) {
  return ChartGrid{p.nx, p.ny, p.extent * curve_min_radius(curve)};
}

template <class F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw Error(e.code(), e.what(), stage);
  }
}

CurvatureCert certify_escalating(const HeightField& s, double r0) {
  double R = r0;
  CurvatureCert c;
  for (int k = 0; k < 24; ++k, R *= 1.25) {
    c = certify_uniform_curvature(s, R);
    if (c.ok) return c;
  }
  return c;
}

}  // namespace

BarrierResult build_barriers(const BoundaryCurve& curve, const BarrierParams& params) {
  BarrierResult res;
  if (!(params.eps2 > 0 && params.eps2 < 0.5 * M_PI))
    throw Error(ErrorCode::EpsTooLarge, "eps2 must lie in (0, pi/2)", "eps_normal_flow");
  const HullSplit split = staged("hull", [&] { return hull_of_boundary_curve(curve); });
  res.log.push_back("hull: " + std::to_string(split.upper.faces.size()) + " upper, " +
                    std::to_string(split.lower.faces.size()) + " lower faces");

  EpsBodyOptions eo{barrier_grid(curve, params), params.edge_pencil};
  const EpsBody body = staged("eps_neighborhood_body",
                              [&] { return eps_neighborhood_body(split, curve, params.eps, eo); });
  res.log.push_back("eps_neighborhood_body: " + std::to_string(body.planes_upper) + " upper, " +
                    std::to_string(body.planes_lower) + " lower support planes");
  bool convex = has_side_convexity(body.lower) && has_side_convexity(body.upper);

  const double r0 = 1.05 / std::tan(params.eps);
  const CurvatureCert cl = certify_escalating(body.lower, r0);
  const CurvatureCert cu = certify_escalating(body.upper, r0);
  if (!cl.ok || !cu.ok)
    throw Error(ErrorCode::PipelineFailed, "eps-neighbourhood is not uniformly curved",
                "certify_uniform_curvature");
  res.cert.curvature_R = std::max(cl.R, cu.R);
  res.log.push_back("certify_uniform_curvature: R = " + std::to_string(res.cert.curvature_R));

  const PolyApprox pl = staged("polyhedral_approx", [&] { return polyhedral_approx(body.lower, params.delta); });
  const PolyApprox pu = staged("polyhedral_approx", [&] { return polyhedral_approx(body.upper, params.delta); });
  if (!spacelike_support_planes(pl.mesh).ok || !spacelike_support_planes(pu.mesh).ok)
    throw Error(ErrorCode::NotSpacelike, "polyhedral face with non-spacelike plane", "polyhedral_approx");
  convex = convex && has_side_convexity(pl.field) && has_side_convexity(pu.field);
  res.log.push_back("polyhedral_approx: " + std::to_string(pl.mesh.faces.size()) + " / " +
                    std::to_string(pu.mesh.faces.size()) + " faces, hausdorff " +
                    std::to_string(std::max(pl.hausdorff, pu.hausdorff)));

  SmoothingOptions so;
  so.eta = params.eta;
  so.kind = params.profile;
  const HeightField sl = staged("smooth_convex_graph", [&] { return smooth_side(pl.field, pl.mesh.planes, so); });
  const HeightField su = staged("smooth_convex_graph", [&] { return smooth_side(pu.field, pu.mesh.planes, so); });
  convex = convex && has_side_convexity(sl) && has_side_convexity(su);

  const OffsetSurface ol = staged("eps_normal_flow", [&] { return normal_offset(sl, params.eps2); });
  const OffsetSurface ou = staged("eps_normal_flow", [&] { return normal_offset(su, params.eps2); });
  convex = convex && has_side_convexity(ol.field, 1e-7) && has_side_convexity(ou.field, 1e-7);
  res.cert.stages_convex = convex;

  const auto hl = staged("mean_curvature", [&] { return lattice_mean_curvature(ol.lattice); });
  const auto hu = staged("mean_curvature", [&] { return lattice_mean_curvature(ou.lattice); });
  res.cert.h_minus_max = -kInf;
  res.cert.h_plus_min = kInf;
  for (double h : hl)
    if (!std::isnan(h)) res.cert.h_minus_max = std::max(res.cert.h_minus_max, h), ++res.cert.nodes_minus;
  for (double h : hu)
    if (!std::isnan(h)) res.cert.h_plus_min = std::min(res.cert.h_plus_min, h), ++res.cert.nodes_plus;

  const auto& g = eo.grid;
  res.cert.ordering_gap = kInf;
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      if (ol.field.valid(i, j) && ou.field.valid(i, j))
        res.cert.ordering_gap = std::min(res.cert.ordering_gap, ou.field.at(i, j) - ol.field.at(i, j));
  res.cert.spacelike_margin = std::min(field_spacelike_margin(ol.field), field_spacelike_margin(ou.field));
  res.sigma_minus = ol.field;
  res.sigma_plus = ou.field;
  res.lattice_minus = ol.lattice;
  res.lattice_plus = ou.lattice;
  return res;
}

HeightField flat_disc_field(const BoundaryCurve& curve, const BarrierParams& params) {
  const Plane3 pl = flat_fast_path(curve);
  HeightField f(barrier_grid(curve, params), Side::Lower);
  const auto& g = f.grid();
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      if (g.active(i, j)) f.set(i, j, pl.height(g.x(i), g.y(j)));
  return f;
}

}  // namespace adsgeom
