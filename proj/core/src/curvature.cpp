#include "adsgeom/curvature.hpp"

#include <cmath>
#include <limits>

namespace adsgeom {

namespace {
double det3(double a0, double a1, double a2, double b0, double b1, double b2, double c0, double c1,
            double c2) {
  return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
}
}  // namespace

Vec4 q_normal_direction(const Vec4& p, const Vec4& a, const Vec4& b) {
  // w_k = cofactor expansion of det[e_k; p; a; b], Euclidean-orthogonal to p, a, b.
  Vec4 w;
  w[0] = det3(p[1], p[2], p[3], a[1], a[2], a[3], b[1], b[2], b[3]);
  w[1] = -det3(p[0], p[2], p[3], a[0], a[2], a[3], b[0], b[2], b[3]);
  w[2] = det3(p[0], p[1], p[3], a[0], a[1], a[3], b[0], b[1], b[3]);
  w[3] = -det3(p[0], p[1], p[2], a[0], a[1], a[2], b[0], b[1], b[2]);
  return gram_matrix() * w;
}

Vec4 future_unit_normal(const Vec4& p, const Vec4& a, const Vec4& b, TimeOrientation o) {
  Vec4 n = q_normal_direction(p, a, b);
  const double q = q_eval(n);
  if (!(q < 0)) throw Error(ErrorCode::NotSpacelikeHere, "tangent plane is not spacelike");
  n /= std::sqrt(-q);
  const double sense = o == TimeOrientation::Global ? 1.0 : -1.0;
  if (sense * b_eval(n, future_field(p)) > 0) n = -n;
  return n;
}

namespace {

struct NodeFrame {
  Vec4 x, xu, xv, n;
};

bool frame_at(const SurfaceLattice& s, int i, int j, TimeOrientation o, NodeFrame& f) {
  if (!s.has(i, j) || !s.has(i - 1, j) || !s.has(i + 1, j) || !s.has(i, j - 1) || !s.has(i, j + 1))
    return false;
  f.x = s.at(i, j);
  f.xu = (s.at(i + 1, j) - s.at(i - 1, j)) / (2 * s.hu);
  f.xv = (s.at(i, j + 1) - s.at(i, j - 1)) / (2 * s.hv);
  f.n = future_unit_normal(f.x, f.xu, f.xv, o);
  return true;
}

CurvatureSample assemble(const Vec4& xu, const Vec4& xv, const Vec4& n, const Vec4& nu,
                         const Vec4& nv) {
  CurvatureSample c;
  c.normal = n;
  c.first << b_eval(xu, xu), b_eval(xu, xv), b_eval(xu, xv), b_eval(xv, xv);
  const double m = -0.5 * (b_eval(nu, xv) + b_eval(nv, xu));
  c.second << -b_eval(nu, xu), m, m, -b_eval(nv, xv);
  if (!(c.first.determinant() > 0 && c.first(0, 0) > 0))
    throw Error(ErrorCode::NotSpacelikeHere, "induced metric is not positive definite");
  c.H = (c.first.inverse() * c.second).trace();
  return c;
}

}  // namespace

CurvatureSample lattice_curvature_at(const SurfaceLattice& s, int i, int j, TimeOrientation o) {
  NodeFrame c, ip, im, jp, jm;
  CurvatureSample out;
  out.H = std::numeric_limits<double>::quiet_NaN();
  if (!frame_at(s, i, j, o, c) || !frame_at(s, i + 1, j, o, ip) || !frame_at(s, i - 1, j, o, im) ||
      !frame_at(s, i, j + 1, o, jp) || !frame_at(s, i, j - 1, o, jm))
    return out;
  return assemble(c.xu, c.xv, c.n, (ip.n - im.n) / (2 * s.hu), (jp.n - jm.n) / (2 * s.hv));
}

std::vector<double> lattice_mean_curvature(const SurfaceLattice& s, TimeOrientation o) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<Vec4> normals(s.x.size(), Vec4::Constant(nan));
  std::vector<Vec4> tu(s.x.size()), tv(s.x.size());
  for (int i = 0; i < s.nu; ++i)
    for (int j = 0; j < s.nv; ++j) {
      NodeFrame f;
      if (!frame_at(s, i, j, o, f)) continue;
      const std::size_t k = static_cast<std::size_t>(i) * s.nv + j;
      normals[k] = f.n;
      tu[k] = f.xu;
      tv[k] = f.xv;
    }
  auto idx = [&](int i, int j) { return static_cast<std::size_t>(i) * s.nv + j; };
  auto ok = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < s.nu && j < s.nv && !std::isnan(normals[idx(i, j)][0]);
  };
  std::vector<double> h(s.x.size(), nan);
  for (int i = 0; i < s.nu; ++i)
    for (int j = 0; j < s.nv; ++j) {
      if (!ok(i, j) || !ok(i + 1, j) || !ok(i - 1, j) || !ok(i, j + 1) || !ok(i, j - 1)) continue;
      const Vec4 nu = (normals[idx(i + 1, j)] - normals[idx(i - 1, j)]) / (2 * s.hu);
      const Vec4 nv = (normals[idx(i, j + 1)] - normals[idx(i, j - 1)]) / (2 * s.hv);
      h[idx(i, j)] = assemble(tu[idx(i, j)], tv[idx(i, j)], normals[idx(i, j)], nu, nv).H;
    }
  return h;
}

CurvatureSample mean_curvature(const std::function<Vec4(double, double)>& x, double u, double v,
                               double h, TimeOrientation o) {
  SurfaceLattice s;
  s.nu = s.nv = 5;
  s.hu = s.hv = h;
  s.x.resize(25, Vec4::Constant(std::numeric_limits<double>::quiet_NaN()));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (std::abs(i - 2) + std::abs(j - 2) <= 2) s.at(i, j) = x(u + (i - 2) * h, v + (j - 2) * h);
  return lattice_curvature_at(s, 2, 2, o);
}

}  // namespace adsgeom
