#pragma once

#include <functional>

#include "adsgeom/ads_core.hpp"

namespace adsgeom {

struct Plane2 {
  Vec4 u, v;
};

enum class GeodesicClass { TimelikeClosed, Spacelike, Lightlike, Empty };
const char* to_string(GeodesicClass c);

struct Signature {
  int negative = 0, zero = 0, positive = 0;
};

// Signature of Q restricted to span{u, v}, after Euclidean orthonormalization.
Signature plane_signature(const Plane2& plane, double tol = Tolerances::causal);
GeodesicClass classify_plane(const Plane2& plane, double tol = Tolerances::causal);

// Closed-form geodesic in span{p, w}; w must be B_Q-orthogonal to p with
// Q(w) in {-1, 0, 1}. Null geodesics are affinely parametrized by s.
LinearPoint geodesic_point(const LinearPoint& p, const Vec4& w, double s,
                           double tol = 1e-9);

struct ChartPoint {
  double x = 0, y = 0, z = 0;
  Eigen::Vector3d vec() const { return {x, y, z}; }
  // x^2 + y^2 - z^2, < 1 inside AdS, = 1 on the boundary.
  double hyperboloid() const { return x * x + y * y - z * z; }
};

// Phi_p0 with p0 = (1, 0, 0, 0): (x3/x1, x4/x1, x2/x1).
ChartPoint chart_phi_p0(const ProjPoint& q, double tol = 1e-12);
// Inverse of Phi_p0: [1 : z : x : y].
ProjPoint chart_to_proj(const ChartPoint& c);

// Isometry sending p to p0, built from q_frame(p).
Isometry sigma_p(const LinearPoint& p);
ChartPoint chart_phi_p(const LinearPoint& p, const ProjPoint& q, double tol = 1e-12);

struct CylinderPoint {
  double t = 0;                 // angle on S^1
  Eigen::Vector3d u{0, 0, 1};   // (x3, x4, x5)/r on the closed upper hemisphere
};

CylinderPoint conformal_embed(const ProjPoint& q);
// Inverse of conformal_embed; u.z() == 0 gives a boundary point.
ProjPoint cylinder_to_proj(const CylinderPoint& c);
// Round distance on S^2.
double sphere_distance(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

enum class CausalRelation { Timelike, CausalNull, None };
const char* to_string(CausalRelation r);

// Lightcone criterion for q on the boundary of A_p and r in its closure.
CausalRelation causal_relation(const ProjPoint& q, const ProjPoint& r, const LinearPoint& p,
                               double tol = Tolerances::causal);
// Interior pairs through the cylinder model: compares the wrapped time
// difference with the round distance of the hemisphere points.
CausalRelation causal_relation_cylinder(const CylinderPoint& a, const CylinderPoint& b,
                                        double tol = Tolerances::causal);

// cos(eps) p + sin(eps) n, with n a unit timelike normal at p.
LinearPoint eps_normal_flow(const LinearPoint& p, const Vec4& n, double eps, double tol = 1e-9);

// Integral of sqrt|Q(gamma')| over [a, b] by composite Gauss-Legendre on
// `panels` sub-intervals; gamma' by a five-point central difference.
double lorentzian_length(const std::function<Vec4(double)>& gamma, double a, double b,
                         int panels = 64);

}  // namespace adsgeom
