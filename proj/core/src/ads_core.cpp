#include "adsgeom/ads_core.hpp"

#include <cmath>
#include <string>

namespace adsgeom {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidIsometry: return "InvalidIsometry";
    case ErrorCode::NotOnQuadric: return "NotOnQuadric";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::BadTangent: return "BadTangent";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::OutsideAffineDomain: return "OutsideAffineDomain";
    case ErrorCode::InvalidSurface: return "InvalidSurface";
    case ErrorCode::RescaleImpossible: return "RescaleImpossible";
    case ErrorCode::DegenerateCloud: return "DegenerateCloud";
    case ErrorCode::FlatCurve: return "FlatCurve";
    case ErrorCode::NotSpacelike: return "NotSpacelike";
    case ErrorCode::EpsTooLarge: return "EpsTooLarge";
    case ErrorCode::EpsBudgetExceeded: return "EpsBudgetExceeded";
    case ErrorCode::DeltaTooCoarse: return "DeltaTooCoarse";
    case ErrorCode::NotConvexInput: return "NotConvexInput";
    case ErrorCode::NotSpacelikeHere: return "NotSpacelikeHere";
    case ErrorCode::PipelineFailed: return "PipelineFailed";
    case ErrorCode::NotInU: return "NotInU";
    case ErrorCode::DegenerateLattice: return "DegenerateLattice";
    case ErrorCode::Diverged: return "Diverged";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

const Mat4& gram_matrix() {
  static const Mat4 g = Eigen::Vector4d(-1, -1, 1, 1).asDiagonal();
  return g;
}

double q_eval(const Vec4& v) {
  return -v[0] * v[0] - v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
}

double b_eval(const Vec4& u, const Vec4& v) {
  return -u[0] * v[0] - u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

Mat2 to_abcd(const Vec4& v) {
  Mat2 m;
  m << v[0] - v[2], -v[1] + v[3], v[1] + v[3], v[0] + v[2];
  return m;
}

Vec4 from_abcd(const Mat2& m) {
  const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  return Vec4((a + d) / 2, (c - b) / 2, (d - a) / 2, (b + c) / 2);
}

LinearPoint::LinearPoint(const Vec4& v) : v_(v) {
  if (!v.allFinite()) throw Error(ErrorCode::NotOnQuadric, "non-finite coordinates");
  const double q = q_eval(v);
  if (q >= 0) throw Error(ErrorCode::NotOnQuadric, "Q(v) >= 0, not a point of AdS3");
  if (std::abs(q + 1) > Tolerances::quadric) v_ /= std::sqrt(-q);
}

ProjPoint::ProjPoint(const Vec4& v, double tol) {
  const double n = v.norm();
  if (!(n > 0) || !v.allFinite())
    throw Error(ErrorCode::InvalidArgument, "zero or non-finite homogeneous vector");
  v_ = v / n;
  const double q = q_eval(v_);
  if (q > tol) throw Error(ErrorCode::OutsideDomain, "Q(v) > 0, outside AdS3 closure");
  boundary_ = std::abs(q) <= tol;
}

LinearPoint ProjPoint::lift() const {
  if (boundary_) throw Error(ErrorCode::NotOnQuadric, "boundary point has no lift");
  return LinearPoint(v_);
}

SL2Matrix::SL2Matrix(const Mat2& m, double tol) : m_(m) {
  if (std::abs(m.determinant() - 1) > tol)
    throw Error(ErrorCode::InvalidArgument, "determinant is not 1");
}

SL2Matrix::SL2Matrix(double a, double b, double c, double d, double tol)
    : SL2Matrix((Mat2() << a, b, c, d).finished(), tol) {}

SL2Matrix SL2Matrix::hyperbolic(double t) {
  return SL2Matrix(std::exp(t), 0, 0, std::exp(-t));
}

SL2Matrix SL2Matrix::rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return SL2Matrix(c, s, -s, c);
}

SL2Matrix SL2Matrix::inverse() const { return SL2Matrix(d(), -b(), -c(), a()); }

SL2Matrix SL2Matrix::operator*(const SL2Matrix& o) const {
  return SL2Matrix(m_ * o.m_, 1e-8);
}

Isometry Isometry::from_pair(const SL2Matrix& gl, const SL2Matrix& gr) {
  const Mat2 gr_inv = gr.inverse().m();
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    m.col(i) = from_abcd(gl.m() * to_abcd(Vec4::Unit(i)) * gr_inv);
  return Isometry(m, std::array<SL2Matrix, 2>{gl, gr});
}

Isometry Isometry::from_matrix(const Mat4& m, double tol) {
  Isometry s(m, std::nullopt);
  if (!s.valid(tol))
    throw Error(ErrorCode::InvalidIsometry, "matrix is not in the identity component of SO(2,2)");
  return s;
}

Isometry Isometry::identity() { return from_pair(SL2Matrix::identity(), SL2Matrix::identity()); }

bool Isometry::valid(double tol) const {
  if (!m_.allFinite()) return false;
  if ((m_.transpose() * gram_matrix() * m_ - gram_matrix()).cwiseAbs().maxCoeff() > tol)
    return false;
  // det = 1 and the negative-definite block keeps its orientation.
  return m_.determinant() > 0 && m_.topLeftCorner<2, 2>().determinant() > 0;
}

Isometry Isometry::operator*(const Isometry& o) const {
  std::optional<std::array<SL2Matrix, 2>> pr;
  if (pair_ && o.pair_)
    pr = std::array<SL2Matrix, 2>{(*pair_)[0] * (*o.pair_)[0], (*pair_)[1] * (*o.pair_)[1]};
  return Isometry(m_ * o.m_, pr);
}

Isometry Isometry::inverse() const {
  std::optional<std::array<SL2Matrix, 2>> pr;
  if (pair_) pr = std::array<SL2Matrix, 2>{(*pair_)[0].inverse(), (*pair_)[1].inverse()};
  // m^-1 = G m^T G for Q-preserving maps.
  return Isometry(gram_matrix() * m_.transpose() * gram_matrix(), pr);
}

Vec4 apply_isometry(const Isometry& sigma, const Vec4& v) { return sigma.m() * v; }

LinearPoint apply_isometry(const Isometry& sigma, const LinearPoint& p) {
  if (!sigma.valid()) throw Error(ErrorCode::InvalidIsometry, "isometry invariant violated");
  return LinearPoint(sigma.m() * p.v());
}

DualSurface dual_surface(const LinearPoint& p) {
  return DualSurface{gram_matrix() * p.v(), p.v()};
}

std::array<Vec4, 4> q_frame(const LinearPoint& p) {
  std::array<Vec4, 4> basis;
  std::array<double, 4> sign{};
  int count = 0;
  basis[count] = p.v();
  sign[count++] = -1;
  for (int i = 0; i < 4 && count < 4; ++i) {
    Vec4 v = Vec4::Unit(i);
    for (int k = 0; k < count; ++k) v -= b_eval(v, basis[k]) / sign[k] * basis[k];
    // Second pass for numerical orthogonality.
    for (int k = 0; k < count; ++k) v -= b_eval(v, basis[k]) / sign[k] * basis[k];
    const double q = q_eval(v);
    if (std::abs(q) < 1e-8 * std::max(1.0, v.squaredNorm())) continue;
    basis[count] = v / std::sqrt(std::abs(q));
    sign[count++] = q < 0 ? -1 : 1;
  }
  if (count < 4) throw Error(ErrorCode::DegeneratePlane, "could not complete a Q-orthonormal frame");
  std::array<Vec4, 4> frame;
  frame[0] = basis[0];
  int spacelike = 2;
  for (int k = 1; k < 4; ++k) {
    if (sign[k] < 0) frame[1] = basis[k];
    else frame[spacelike++] = basis[k];
  }
  Mat4 s;
  for (int k = 0; k < 4; ++k) s.col(k) = frame[k];
  if (s.topLeftCorner<2, 2>().determinant() < 0) {
    frame[1] = -frame[1];
    s.col(1) = frame[1];
  }
  if (s.determinant() < 0) frame[3] = -frame[3];
  return frame;
}

LinearPoint dual_point(const LinearPoint& p, double r, double phi, int sheet) {
  const auto f = q_frame(p);
  const double sg = sheet >= 0 ? 1.0 : -1.0;
  return LinearPoint(sg * std::cosh(r) * f[1] +
                     std::sinh(r) * (std::cos(phi) * f[2] + std::sin(phi) * f[3]));
}

Vec4 future_field(const Vec4& p) { return Vec4(-p[1], p[0], -p[3], p[2]); }

}  // namespace adsgeom
