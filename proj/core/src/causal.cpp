#include "adsgeom/causal.hpp"

#include <cmath>

namespace adsgeom {

const char* to_string(GeodesicClass c) {
  switch (c) {
    case GeodesicClass::TimelikeClosed: return "TimelikeClosed";
    case GeodesicClass::Spacelike: return "Spacelike";
    case GeodesicClass::Lightlike: return "Lightlike";
    case GeodesicClass::Empty: return "Empty";
  }
  return "Unknown";
}

const char* to_string(CausalRelation r) {
  switch (r) {
    case CausalRelation::Timelike: return "Timelike";
    case CausalRelation::CausalNull: return "CausalNull";
    case CausalRelation::None: return "None";
  }
  return "Unknown";
}

Signature plane_signature(const Plane2& plane, double tol) {
  Eigen::Matrix<double, 4, 2> m;
  m << plane.u, plane.v;
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(m, Eigen::ComputeFullU);
  const auto s = svd.singularValues();
  if (!(s[0] > 0) || s[1] / s[0] < tol)
    throw Error(ErrorCode::DegeneratePlane, "spanning vectors are linearly dependent");
  const Eigen::Matrix<double, 4, 2> e = svd.matrixU().leftCols<2>();
  Mat2 gram;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) gram(i, j) = b_eval(e.col(i), e.col(j));
  Eigen::SelfAdjointEigenSolver<Mat2> es(gram);
  Signature sig;
  for (int i = 0; i < 2; ++i) {
    const double l = es.eigenvalues()[i];
    if (l < -tol) ++sig.negative;
    else if (l > tol) ++sig.positive;
    else ++sig.zero;
  }
  return sig;
}

GeodesicClass classify_plane(const Plane2& plane, double tol) {
  const Signature s = plane_signature(plane, tol);
  if (s.negative == 2) return GeodesicClass::TimelikeClosed;
  if (s.negative == 1 && s.positive == 1) return GeodesicClass::Spacelike;
  if (s.negative == 1 && s.zero == 1) return GeodesicClass::Lightlike;
  return GeodesicClass::Empty;
}

LinearPoint geodesic_point(const LinearPoint& p, const Vec4& w, double s, double tol) {
  if (std::abs(b_eval(p.v(), w)) > tol)
    throw Error(ErrorCode::BadTangent, "tangent is not B_Q-orthogonal to the base point");
  const double q = q_eval(w);
  if (std::abs(q + 1) <= tol) return LinearPoint(std::cos(s) * p.v() + std::sin(s) * w);
  if (std::abs(q - 1) <= tol) return LinearPoint(std::cosh(s) * p.v() + std::sinh(s) * w);
  if (std::abs(q) <= tol) return LinearPoint(p.v() + s * w);
  throw Error(ErrorCode::BadTangent, "tangent must satisfy Q(w) in {-1, 0, 1}");
}

ChartPoint chart_phi_p0(const ProjPoint& q, double tol) {
  const Vec4& v = q.v();
  if (v[0] <= tol) throw Error(ErrorCode::OutsideDomain, "x1 <= 0, outside the affine chart");
  return ChartPoint{v[2] / v[0], v[3] / v[0], v[1] / v[0]};
}

ProjPoint chart_to_proj(const ChartPoint& c) { return ProjPoint(Vec4(1, c.z, c.x, c.y)); }

Isometry sigma_p(const LinearPoint& p) {
  const auto f = q_frame(p);
  Mat4 s;
  for (int k = 0; k < 4; ++k) s.col(k) = f[k];
  // s maps the standard frame to (p, e0, e1, e2); its inverse is G s^T G.
  return Isometry::from_matrix(gram_matrix() * s.transpose() * gram_matrix(), 1e-9);
}

ChartPoint chart_phi_p(const LinearPoint& p, const ProjPoint& q, double tol) {
  if (b_eval(p.v(), q.v()) >= 0)
    throw Error(ErrorCode::OutsideDomain, "B_Q(p, q) >= 0, outside the affine domain of p");
  return chart_phi_p0(ProjPoint(sigma_p(p).m() * q.v()), tol);
}

CylinderPoint conformal_embed(const ProjPoint& q) {
  Vec4 x = q.v();
  double x5 = 0;
  if (!q.on_boundary()) {
    x = q.lift().v();
    x5 = 1;
  }
  const double r = std::hypot(x[0], x[1]);
  CylinderPoint c;
  c.t = std::atan2(x[1], x[0]);
  c.u = Eigen::Vector3d(x[2], x[3], x5) / r;
  return c;
}

ProjPoint cylinder_to_proj(const CylinderPoint& c) {
  const double ct = std::cos(c.t), st = std::sin(c.t);
  if (c.u.z() <= 0) return ProjPoint(Vec4(ct, st, c.u.x(), c.u.y()));
  return ProjPoint(Vec4(ct, st, c.u.x(), c.u.y()) / c.u.z());
}

double sphere_distance(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

CausalRelation causal_relation(const ProjPoint& q, const ProjPoint& r, const LinearPoint& p,
                               double tol) {
  if (b_eval(p.v(), q.v()) >= 0 || b_eval(p.v(), r.v()) >= 0)
    throw Error(ErrorCode::OutsideAffineDomain, "points must satisfy B_Q(p, .) < 0");
  const double b = b_eval(q.v(), r.v());
  if (b > tol) return CausalRelation::Timelike;
  if (b >= -tol) return CausalRelation::CausalNull;
  return CausalRelation::None;
}

CausalRelation causal_relation_cylinder(const CylinderPoint& a, const CylinderPoint& b,
                                        double tol) {
  const double dt = std::remainder(b.t - a.t, 2 * M_PI);
  const double gap = std::abs(dt) - sphere_distance(a.u, b.u);
  if (gap > tol) return CausalRelation::Timelike;
  if (gap >= -tol) return CausalRelation::CausalNull;
  return CausalRelation::None;
}

LinearPoint eps_normal_flow(const LinearPoint& p, const Vec4& n, double eps, double tol) {
  if (std::abs(q_eval(n) + 1) > tol || std::abs(b_eval(p.v(), n)) > tol)
    throw Error(ErrorCode::BadTangent, "normal must be unit timelike and B_Q-orthogonal to p");
  return LinearPoint(std::cos(eps) * p.v() + std::sin(eps) * n);
}

double lorentzian_length(const std::function<Vec4(double)>& gamma, double a, double b,
                         int panels) {
  static constexpr double xg[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                   0.5384693101056831, 0.9061798459386640};
  static constexpr double wg[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                   0.4786286704993665, 0.2369268850561891};
  const double width = (b - a) / panels;
  const double h = 1e-3 * std::max(std::abs(width), 1e-6);
  double total = 0;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * width;
    for (int i = 0; i < 5; ++i) {
      const double s = mid + 0.5 * width * xg[i];
      const Vec4 d = (-gamma(s + 2 * h) + 8 * gamma(s + h) - 8 * gamma(s - h) + gamma(s - 2 * h)) /
                     (12 * h);
      total += 0.5 * width * wg[i] * std::sqrt(std::abs(q_eval(d)));
    }
  }
  return std::abs(total);
}

}  // namespace adsgeom
