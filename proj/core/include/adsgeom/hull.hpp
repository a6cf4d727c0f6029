#pragma once

#include <array>
#include <set>
#include <vector>

#include "adsgeom/achronal.hpp"

namespace adsgeom {

using Vec3 = Eigen::Vector3d;
using PointCloud3 = std::vector<Vec3>;

// n . x = d with n a unit outward normal.
struct Plane3 {
  Vec3 n;
  double d = 0;
  double eval(const Vec3& x) const { return n.dot(x) - d; }
  // Height of the plane over (x, y); requires n.z() != 0.
  double height(double x, double y) const { return (d - n.x() * x - n.y() * y) / n.z(); }
};

struct PolySurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<Plane3> planes;          // one per face
  std::vector<int> source;             // input index of each vertex
};

// Incremental hull with orientation tests at tolerance eps relative to the
// cloud diameter. Coplanar points do not become vertices.
PolySurfaceMesh convex_hull(const PointCloud3& cloud, double eps = 1e-10);

// Facets as the sorted set of input indices that lie on each face plane;
// identical sets for coplanar triangles merge.
std::set<std::vector<int>> facet_sets(const PointCloud3& cloud, const std::vector<Plane3>& planes,
                                      double eps = 1e-10);
// O(n^4) oracle: every triple whose plane does not split the cloud.
std::set<std::vector<int>> brute_force_facets(const PointCloud3& cloud, double eps = 1e-10);

// True iff B_Q(r, q_i) < -tol for every curve sample (both normalized).
bool black_domain_test(const ProjPoint& r, const BoundaryCurve& curve, double tol = Tolerances::causal);

// Dual point p* of the totally geodesic plane through a chart plane, with
// functional v -> B_Q(p*, v) vanishing on (1, z, x, y) of the plane.
Vec4 plane_dual(const Plane3& plane);
// Unit future-directed normal (Q = -1) of a spacelike chart plane.
Vec4 plane_future_dual(const Plane3& plane);
// -Q(p*)/|p*|^2; positive iff the plane is spacelike.
double plane_spacelike_margin(const Plane3& plane);

struct SupportPlaneReport {
  bool ok = true;
  std::vector<int> offenders;
  double min_margin = 0;
};

SupportPlaneReport spacelike_support_planes(const PolySurfaceMesh& mesh, double tol = 1e-12);

struct HullSplit {
  PolySurfaceMesh lower, upper;
  std::vector<int> offenders;  // faces with |n_z| < tol
};

// Chart image of the curve samples under Phi_p0.
PointCloud3 curve_chart_points(const BoundaryCurve& curve);
// Throws FlatCurve for coplanar samples and NotSpacelike when some face is
// vertical or has a non-spacelike support plane.
HullSplit hull_of_boundary_curve(const BoundaryCurve& curve, double tol = 1e-9);

// Totally geodesic disc spanned by a flat curve.
Plane3 flat_fast_path(const BoundaryCurve& curve);

struct CauchyDevReport {
  int samples = 0;
  int disagreements = 0;
  int black_true = 0;
  int oracle_true = 0;
  double rate() const { return samples ? static_cast<double>(disagreements) / samples : 0.0; }
};

// Ray-casting test: r is in D(S) iff every future null ray (or every past
// one) from r reaches the graph before leaving the hemisphere.
bool cauchy_dev_oracle(const CylinderPoint& r, const GraphSurface& surface, int directions,
                       int steps = 256);
CauchyDevReport cauchy_dev_equals_black_domain(const BoundaryCurve& curve,
                                               const GraphSurface& surface,
                                               const std::vector<CylinderPoint>& samples,
                                               int directions = 64, int steps = 256);

}  // namespace adsgeom
