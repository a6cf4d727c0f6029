#pragma once

#include <vector>

#include "adsgeom/causal.hpp"

namespace adsgeom {

// Polar grid on the closed upper hemisphere. Ring i sits at round distance
// rho_i = (pi/2)(i+1)/n_r from the pole, so the last ring is the equator.
class PolarGrid {
 public:
  PolarGrid(int n_r, int n_phi);

  int n_r() const { return n_r_; }
  int n_phi() const { return n_phi_; }
  int size() const { return n_r_ * n_phi_; }
  int index(int i, int j) const { return i * n_phi_ + j; }
  double rho(int i) const;
  double phi(int j) const;
  Eigen::Vector3d node(int i, int j) const;
  bool on_boundary(int i) const { return i == n_r_ - 1; }

 private:
  int n_r_, n_phi_;
};

Eigen::Vector3d hemisphere_point(double rho, double phi);

// Angle-valued graph over the hemisphere, stored as a continuous lift.
class GraphSurface {
 public:
  // Throws InvalidSurface when the size is wrong, values are not finite, or
  // some edge (including the closing angular edge) jumps by pi or more.
  GraphSurface(PolarGrid grid, std::vector<double> f);

  const PolarGrid& grid() const { return grid_; }
  const std::vector<double>& f() const { return f_; }
  double at(int i, int j) const { return f_[grid_.index(i, j)]; }
  // Piecewise bilinear in (rho, phi); the pole value is the ring-0 mean.
  double interpolate(const Eigen::Vector3d& u) const;

 private:
  PolarGrid grid_;
  std::vector<double> f_;
};

double lipschitz_constant(const GraphSurface& s);
bool is_spacelike(const GraphSurface& s, double margin = 1e-9);
bool is_nontimelike(const GraphSurface& s, double tol = 1e-9);

struct TrigSpec {
  double a0 = 0;
  std::vector<double> a;  // a[k-1] multiplies cos(k phi)
  std::vector<double> b;  // b[k-1] multiplies sin(k phi)
};

class BoundaryCurve {
 public:
  // Evaluates the trig polynomial; spec is already rescaled.
  BoundaryCurve(TrigSpec spec, int n_phi);

  const TrigSpec& spec() const { return spec_; }
  int size() const { return static_cast<int>(samples_.size()); }
  double phi(int j) const;
  double value(double phi) const;
  double derivative(double phi) const;
  // Sup bound sum k(|a_k| + |b_k|) on |f'|.
  double derivative_bound() const;
  bool is_flat() const;
  // [cos f : sin f : cos phi : sin phi] normalized to Euclidean norm 1.
  Vec4 representative(double phi) const;
  const std::vector<ProjPoint>& samples() const { return samples_; }
  const std::vector<double>& values() const { return values_; }

 private:
  TrigSpec spec_;
  std::vector<double> values_;
  std::vector<ProjPoint> samples_;
};

// Rescales non-constant coefficients when the derivative bound exceeds
// lambda_max, then samples n_phi points.
BoundaryCurve synth_boundary_curve(const TrigSpec& spec, double lambda_max = 0.8, int n_phi = 64);

// Extension f(rho, phi) = a0 + sum (2 rho/pi)^k (a_k cos k phi + b_k sin k phi),
// which agrees with the curve on the equator.
GraphSurface surface_from_curve(const BoundaryCurve& curve, const PolarGrid& grid);

struct AchronalViolation {
  int i, j;           // flat node indices
  double dt, dist;
};

struct AchronalReport {
  long pairs_checked = 0;
  std::vector<AchronalViolation> violations;
  bool ok() const { return violations.empty(); }
};

// All node pairs. Interior pairs need |f(u) - f(v)| < d(u, v). Pairs touching
// the boundary ring need the same strictly when `spacelike` is set, and
// only |df| <= d otherwise.
AchronalReport check_achronal(const GraphSurface& s, bool spacelike = true, double tol = 1e-12,
                              std::size_t max_violations = 64);

// Inextendable null geodesic of the cylinder: u(s) runs along the great
// circle through u0 with unit tangent xi, t(s) = t0 + s.
struct LightRay {
  double t0 = 0;
  Eigen::Vector3d u0{0, 0, 1};
  Eigen::Vector3d xi{1, 0, 0};
  Eigen::Vector3d u(double s) const;
  double t(double s) const { return t0 + s; }
  // Parameter range inside the closed hemisphere.
  std::pair<double, double> range() const;
};

LightRay make_ray(double t0, const Eigen::Vector3d& u0, double direction_angle);
// Ray that ends at the boundary point u_end with time t_end when s reaches
// the top of its range.
LightRay ray_ending_at(double t_end, double phi_end, double direction_angle);

// Number of transversal crossings of the ray with the graph, sampled at
// `samples` points of the open parameter interval.
int lightlike_once(const GraphSurface& s, const LightRay& ray, int samples = 2000);

}  // namespace adsgeom
