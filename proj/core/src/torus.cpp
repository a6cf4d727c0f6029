#include "adsgeom/torus.hpp"

#include <cmath>

namespace adsgeom {

TorusPoint::TorusPoint(const SL2Matrix& g) : g_(g) {
  if (!(g.a() > 0 && g.b() > 0 && g.c() < 0 && g.d() > 0))
    throw Error(ErrorCode::NotInU, "point is not in the spacelike-orbit component U");
}

LatticePair::LatticePair(const Eigen::Vector2d& a, const Eigen::Vector2d& b, double tol) : g1(a), g2(b) {
  if (!a.allFinite() || !b.allFinite() || covolume() <= tol * std::max(1.0, a.norm() * b.norm()))
    throw Error(ErrorCode::DegenerateLattice, "lattice generators are dependent");
}

Eigen::Vector2d LatticePair::coords(const Eigen::Vector2d& ts) const {
  Eigen::Matrix2d m;
  m << g1, g2;
  return m.inverse() * ts;
}

Eigen::Vector2d LatticePair::reduce(const Eigen::Vector2d& ts) const {
  Eigen::Vector2d c = coords(ts);
  c.x() -= std::floor(c.x());
  c.y() -= std::floor(c.y());
  return point(c.x(), c.y());
}

double theta(const TorusPoint& p, double tol) {
  const auto& g = p.g();
  const double ad = g.a() * g.d(), bc = g.b() * g.c();
  if (!(ad > 0 && ad < 1)) throw Error(ErrorCode::NotInU, "ad must lie in (0, 1)");
  const double th = std::acos(std::sqrt(ad));
  if (std::abs(std::sin(th) * std::sin(th) + bc) > tol)
    throw Error(ErrorCode::NotInU, "sin^2 theta + bc is not zero");
  return th;
}

Normalized normalize_to_rotation(const TorusPoint& p) {
  const auto& g = p.g();
  const double th = theta(p);
  const double dm = 0.5 * std::log(g.d() / g.a());    // t - s
  const double sm = 0.5 * std::log(-g.c() / g.b());   // t + s
  return {0.5 * (sm + dm), 0.5 * (sm - dm), th};
}

const char* to_string(OrbitType t) {
  switch (t) {
    case OrbitType::EuclideanLine: return "EuclideanLine";
    case OrbitType::IsotropicLine: return "IsotropicLine";
    case OrbitType::EuclideanPlane: return "EuclideanPlane";
    case OrbitType::MinkowskiPlane: return "MinkowskiPlane";
    case OrbitType::DegeneratePlane: return "DegeneratePlane";
  }
  return "?";
}

namespace {
// Q on 2x2 matrices is -det.
double qdet(const Mat2& m) { return -m.determinant(); }
double bdet(const Mat2& a, const Mat2& b) { return 0.5 * (qdet(a + b) - qdet(a) - qdet(b)); }
}  // namespace

OrbitClass orbit_classify(const SL2Matrix& g, OrbitMode mode, double tol) {
  Mat2 hyp, par;
  hyp << 1, 0, 0, -1;
  par << 0, 1, 0, 0;
  const Mat2 hl = mode == OrbitMode::ParPar ? par : hyp;
  const Mat2 hr = mode == OrbitMode::HypHyp ? hyp : par;
  const Mat2 v1 = hl * g.m(), v2 = g.m() * hr;
  OrbitClass oc;
  oc.gram << qdet(v1), -bdet(v1, v2), -bdet(v1, v2), qdet(v2);
  // The tangent map (ds, dt) -> ds v1 - dt v2 drops rank when v1, v2 are parallel.
  Eigen::Matrix<double, 4, 2> span;
  span.col(0) = Eigen::Map<const Eigen::Vector4d>(v1.data());
  span.col(1) = Eigen::Map<const Eigen::Vector4d>(v2.data());
  const Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(span, Eigen::ComputeFullU);
  const auto sv = svd.singularValues();
  if (sv[1] <= tol * std::max(1.0, sv[0])) {
    oc.dim = 1;
    const Mat2& v = v1.norm() >= v2.norm() ? v1 : v2;
    const double q = qdet(v) / std::max(1.0, v.squaredNorm());
    oc.type = q > tol ? OrbitType::EuclideanLine : OrbitType::IsotropicLine;
    return oc;
  }
  // Signature of the form restricted to the plane, in an orthonormal basis.
  const Eigen::Matrix<double, 4, 2> basis = svd.matrixU().leftCols<2>();
  Mat2 eu[2];
  for (int k = 0; k < 2; ++k) eu[k] = Eigen::Map<const Mat2>(basis.col(k).data());
  Mat2 gram;
  gram << qdet(eu[0]), bdet(eu[0], eu[1]), bdet(eu[0], eu[1]), qdet(eu[1]);
  const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Mat2>(gram).eigenvalues();
  const int pos = (ev[0] > tol) + (ev[1] > tol), neg = (ev[0] < -tol) + (ev[1] < -tol);
  if (pos == 2) oc.type = OrbitType::EuclideanPlane;
  else if (pos == 1 && neg == 1) oc.type = OrbitType::MinkowskiPlane;
  else oc.type = OrbitType::DegeneratePlane;
  return oc;
}

double orbit_first_form(double th, double p, double q) {
  const double c = std::cos(th), s = std::sin(th);
  return (p - q) * (p - q) * c * c + (p + q) * (p + q) * s * s;
}

double orbit_second_form(double th, double p, double q) {
  return ((p - q) * (p - q) - (p + q) * (p + q)) * std::sin(2 * th);
}

double kappa(double th) { return -4 / std::tan(2 * th); }

std::pair<double, double> principal_curvatures(double th) {
  return {-2 / std::tan(th), 2 * std::tan(th)};
}

double leaf_mean_curvature(double th) { return -2 / std::tan(2 * th); }

std::pair<double, double> leaf_principal_curvatures(double th) {
  return {-1 / std::tan(th), std::tan(th)};
}

double cmc_time(const TorusPoint& p) { return kappa(theta(p)); }

namespace {
Mat2 orbit_matrix(const Mat2& m, double t, double s) {
  const double e = std::exp(t), f = std::exp(-s);
  Mat2 out;
  out << e * m(0, 0) * f, e * m(0, 1) / f, m(1, 0) * f / e, m(1, 1) / (e * f);
  return out;
}
}  // namespace

LinearPoint embed_orbit(double th, double t, double s) {
  return LinearPoint(from_abcd(orbit_matrix(SL2Matrix::rotation(th).m(), t, s)));
}

Vec4 orbit_normal(double th, double t, double s) {
  const double c = std::cos(th), sn = std::sin(th);
  Mat2 n;
  n << -sn, c, -c, -sn;
  return from_abcd(orbit_matrix(n, t, s));
}

double slice_volume_density(double th) { return std::sin(2 * th); }

double leaf_area(double th, const LatticePair& lattice) {
  return slice_volume_density(th) * lattice.covolume();
}

std::vector<FoliationRow> foliation_table(double th0, double th1, int n) {
  if (n < 1 || !(th0 > 0) || !(th1 < M_PI / 2) || th1 < th0)
    throw Error(ErrorCode::InvalidArgument, "theta range must lie in (0, pi/2)");
  std::vector<FoliationRow> rows;
  for (int k = 0; k < n; ++k) {
    const double th = n == 1 ? th0 : th0 + (th1 - th0) * k / (n - 1);
    const auto [k1, k2] = principal_curvatures(th);
    rows.push_back({th, kappa(th), k1, k2, slice_volume_density(th)});
  }
  return rows;
}

}  // namespace adsgeom
