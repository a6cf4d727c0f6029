#pragma once

#include <vector>

#include "adsgeom/curvature.hpp"
#include "adsgeom/torus.hpp"

namespace adsgeom {

// theta-graph over the orbit coordinates, sampled on an N x N grid of the
// fundamental parallelogram: node (i, j) sits at (t, s) = (i g1 + j g2) / N.
struct TorusGraph {
  LatticePair lattice;
  int n = 64;
  std::vector<double> u;  // row-major in i

  TorusGraph(const LatticePair& l, int n_, double u0);
  double& at(int i, int j) { return u[wrap(i) * n + wrap(j)]; }
  double at(int i, int j) const { return u[wrap(i) * n + wrap(j)]; }
  int wrap(int i) const { return ((i % n) + n) % n; }
  // Grid spacing in (t, s) units, the shorter of the two edge lengths.
  double spacing() const { return std::min(lattice.g1.norm(), lattice.g2.norm()) / n; }
};

// Embedded nodes with a two-node periodic halo; times are unwrapped, theta
// values wrapped. Curvature does not use it (see graph_mean_curvature).
SurfaceLattice torus_lattice(const TorusGraph& s);

// Per-node mean curvature (row-major), future toward increasing theta, each
// node on its own stencil moved to (t, s) = (0, 0) by the A-action.
// Throws NotSpacelike with the offending node.
std::vector<double> graph_mean_curvature(const TorusGraph& s);

struct SolveOptions {
  double tau = 0;          // 0 selects 0.1 h^2
  double tol_h = 1e-6;
  int max_iter = 200000;
  int window = 50;         // trailing window for the monotonicity flag
  int max_halvings = 30;
};

struct SolveReport {
  int iterations = 0;
  double max_h = 0;
  double tau = 0;
  int halvings = 0;
  bool converged = false;
  bool monotone_tail = true;
  bool touched_lower = false, touched_upper = false;
  std::vector<double> history;  // max|H| after each accepted step
  TorusGraph surface;
};

// u <- clamp(u - tau H[u], lo, hi). Throws Diverged or NotConverged.
SolveReport relax_to_maximal(const TorusGraph& s0, double theta_lo, double theta_hi,
                             const SolveOptions& opts = {});
// Same flow with per-node barrier values (experimental).
SolveReport relax_between_fields(const TorusGraph& s0, const std::vector<double>& lo,
                                 const std::vector<double>& hi, const SolveOptions& opts = {});

// H(S') <= H(S) + tol at node (i, j) for S' tangent from the future.
bool maximum_principle_check(const TorusGraph& s, const TorusGraph& s_prime, int i, int j,
                             double tol = 1e-9);
double node_mean_curvature(const TorusGraph& s, int i, int j);

}  // namespace adsgeom
