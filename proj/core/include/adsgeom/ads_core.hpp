#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>

#include "adsgeom/error.hpp"

namespace adsgeom {

// Coordinates (x1, x2, x3, x4) live at indices 0..3.
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Mat2 = Eigen::Matrix2d;

struct Tolerances {
  static constexpr double quadric = 1e-12;
  static constexpr double det = 1e-12;
  static constexpr double isometry = 1e-10;
  static constexpr double causal = 1e-9;
};

// Matrix of B_Q, diag(-1, -1, 1, 1).
const Mat4& gram_matrix();

double q_eval(const Vec4& v);
double b_eval(const Vec4& u, const Vec4& v);

// (a, b, c, d) = (x1 - x3, -x2 + x4, x2 + x4, x1 + x3) as [[a, b], [c, d]].
Mat2 to_abcd(const Vec4& v);
Vec4 from_abcd(const Mat2& m);

// Point of the quadric Q = -1.
class LinearPoint {
 public:
  // Renormalizes by sqrt(-Q) when |Q + 1| exceeds the quadric tolerance.
  // Throws NotOnQuadric for Q >= 0.
  explicit LinearPoint(const Vec4& v);
  static LinearPoint origin() { return LinearPoint(Vec4(1, 0, 0, 0)); }

  const Vec4& v() const { return v_; }
  double operator[](int i) const { return v_[i]; }

 private:
  Vec4 v_;
};

// Point of S^3 (Euclidean unit vector), interior or boundary of AdS.
class ProjPoint {
 public:
  explicit ProjPoint(const Vec4& v, double tol = Tolerances::causal);
  ProjPoint(const LinearPoint& p) : ProjPoint(p.v()) {}  // NOLINT

  const Vec4& v() const { return v_; }
  bool on_boundary() const { return boundary_; }
  bool in_ads() const { return !boundary_ && q_eval(v_) < 0; }
  // Representative on Q = -1 (positive multiple); requires in_ads().
  LinearPoint lift() const;

 private:
  Vec4 v_;
  bool boundary_ = false;
};

class SL2Matrix {
 public:
  explicit SL2Matrix(const Mat2& m, double tol = 1e-10);
  SL2Matrix(double a, double b, double c, double d, double tol = 1e-10);
  static SL2Matrix identity() { return SL2Matrix(1, 0, 0, 1); }
  // g^t = diag(e^t, e^-t)
  static SL2Matrix hyperbolic(double t);
  // R_theta = [[cos, sin], [-sin, cos]]
  static SL2Matrix rotation(double theta);

  const Mat2& m() const { return m_; }
  double a() const { return m_(0, 0); }
  double b() const { return m_(0, 1); }
  double c() const { return m_(1, 0); }
  double d() const { return m_(1, 1); }
  SL2Matrix inverse() const;
  SL2Matrix operator*(const SL2Matrix& o) const;

 private:
  Mat2 m_;
};

// Element of the identity component of SO(2,2).
class Isometry {
 public:
  // (gL, gR) . g = gL g gR^-1
  static Isometry from_pair(const SL2Matrix& gl, const SL2Matrix& gr);
  // Validated against m^T G m = G.
  static Isometry from_matrix(const Mat4& m, double tol = Tolerances::isometry);
  static Isometry identity();

  const Mat4& m() const { return m_; }
  const std::optional<std::array<SL2Matrix, 2>>& pair() const { return pair_; }
  Isometry operator*(const Isometry& o) const;
  Isometry inverse() const;
  bool valid(double tol = Tolerances::isometry) const;

 private:
  Isometry(const Mat4& m, std::optional<std::array<SL2Matrix, 2>> pair)
      : m_(m), pair_(std::move(pair)) {}
  Mat4 m_;
  std::optional<std::array<SL2Matrix, 2>> pair_;
};

LinearPoint apply_isometry(const Isometry& sigma, const LinearPoint& p);
Vec4 apply_isometry(const Isometry& sigma, const Vec4& v);

// Linear functional q -> B_Q(p, q); its zero set on the quadric is p*.
struct DualSurface {
  Vec4 functional;  // Euclidean covector, functional . q = B_Q(p, q)
  Vec4 p;
  double operator()(const Vec4& q) const { return functional.dot(q); }
};

DualSurface dual_surface(const LinearPoint& p);

// Q-orthonormal frame (p, e0, e1, e2) with Q(e0) = -1, Q(e1) = Q(e2) = 1,
// by B_Q Gram-Schmidt seeded from the standard basis in index order.
// Oriented so that the matrix [p e0 e1 e2] lies in the identity component.
std::array<Vec4, 4> q_frame(const LinearPoint& p);
// Point of p* at hyperbolic radius r and angle phi; sheet selects the
// component (+1 or -1).
LinearPoint dual_point(const LinearPoint& p, double r, double phi, int sheet = 1);

// Future-pointing unit timelike field (-x2, x1, -x4, x3).
Vec4 future_field(const Vec4& p);

}  // namespace adsgeom
