#pragma once

#include <string>
#include <utility>
#include <vector>

#include "adsgeom/ads_core.hpp"

namespace adsgeom {

// Element of the component U of SL(2,R): a > 0, b > 0, c < 0, d > 0.
class TorusPoint {
 public:
  explicit TorusPoint(const SL2Matrix& g);
  const SL2Matrix& g() const { return g_; }

 private:
  SL2Matrix g_;
};

// Generators (t, s) of a lattice in A.
struct LatticePair {
  Eigen::Vector2d g1, g2;
  LatticePair(const Eigen::Vector2d& a, const Eigen::Vector2d& b, double tol = 1e-12);
  double covolume() const { return std::abs(g1.x() * g2.y() - g1.y() * g2.x()); }
  // (t, s) at lattice coordinates (alpha, beta).
  Eigen::Vector2d point(double alpha, double beta) const { return alpha * g1 + beta * g2; }
  // Lattice coordinates of (t, s).
  Eigen::Vector2d coords(const Eigen::Vector2d& ts) const;
  // Representative of (t, s) in the fundamental parallelogram [0,1)^2.
  Eigen::Vector2d reduce(const Eigen::Vector2d& ts) const;
};

// Throws NotInU.
double theta(const TorusPoint& p, double tol = 1e-10);

struct Normalized {
  double t, s, theta;
};
// (t, s, theta) with g^t g g^-s = R_theta.
Normalized normalize_to_rotation(const TorusPoint& p);

enum class OrbitMode { HypHyp, ParPar, HypPar };
enum class OrbitType { EuclideanLine, IsotropicLine, EuclideanPlane, MinkowskiPlane, DegeneratePlane };
const char* to_string(OrbitType t);

struct OrbitClass {
  int dim = 2;
  OrbitType type = OrbitType::EuclideanPlane;
  Mat2 gram;  // of (h_L g, g h_R)
};

OrbitClass orbit_classify(const SL2Matrix& g, OrbitMode mode, double tol = 1e-9);

// Quadratic forms of the orbit through R_theta in the orbit coordinates, as
// written: (p-q)^2 cos^2 + (p+q)^2 sin^2 and ((p-q)^2 - (p+q)^2) sin 2theta.
double orbit_first_form(double th, double p, double q);
double orbit_second_form(double th, double p, double q);

// kappa = -4 cot 2theta and (-2 cot, 2 tan), the closed-form values.
double kappa(double th);
std::pair<double, double> principal_curvatures(double th);

// Mean and principal curvatures of the leaf under the convention
// II = -B(D n, X), H = tr(I^-1 II), future pointing toward increasing theta.
// They are half of the closed-form values above.
double leaf_mean_curvature(double th);
std::pair<double, double> leaf_principal_curvatures(double th);

// kappa(theta(p)).
double cmc_time(const TorusPoint& p);

// g^t R_theta g^-s as a point of the quadric.
LinearPoint embed_orbit(double th, double t, double s);
// Unit normal of the leaf at embed_orbit(th, t, s), pointing toward
// increasing theta.
Vec4 orbit_normal(double th, double t, double s);

// sqrt(det I) = sin 2theta.
double slice_volume_density(double th);
double leaf_area(double th, const LatticePair& lattice);

struct FoliationRow {
  double theta, kappa, k1, k2, area_density;
};
std::vector<FoliationRow> foliation_table(double th0, double th1, int n);

}  // namespace adsgeom
