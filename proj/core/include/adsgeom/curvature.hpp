#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "adsgeom/ads_core.hpp"

namespace adsgeom {

// Which unit normal counts as future: Global uses future_field(p), Reversed
// uses its opposite (the orientation of the torus component U, where theta
// increases toward the future).
enum class TimeOrientation { Global, Reversed };

// Vector B_Q-orthogonal to p, a and b (generalized cross product lowered by G).
Vec4 q_normal_direction(const Vec4& p, const Vec4& a, const Vec4& b);

// Unit timelike normal at p of the plane span{a, b}, oriented as requested.
// Throws NotSpacelikeHere when the plane is not spacelike.
Vec4 future_unit_normal(const Vec4& p, const Vec4& a, const Vec4& b,
                        TimeOrientation o = TimeOrientation::Global);

// Nodes of a parametrized surface on a regular (u, v) lattice, row-major in
// u. NaN entries mark missing nodes.
struct SurfaceLattice {
  int nu = 0, nv = 0;
  double hu = 1, hv = 1;
  std::vector<Vec4> x;
  const Vec4& at(int i, int j) const { return x[static_cast<std::size_t>(i) * nv + j]; }
  Vec4& at(int i, int j) { return x[static_cast<std::size_t>(i) * nv + j]; }
  bool has(int i, int j) const {
    return i >= 0 && j >= 0 && i < nu && j < nv && !std::isnan(at(i, j)[0]);
  }
};

struct CurvatureSample {
  double H = 0;
  Mat2 first, second;  // I and II in lattice coordinates
  Vec4 normal;
};

// Mean curvature at lattice nodes: central differences give tangents and the
// oriented unit normal at each node, II(a, b) = -B_Q(D_a n, X_b) from central
// differences of the normal field, H = tr(I^-1 II). Nodes without a full
// two-ring stencil get NaN.
std::vector<double> lattice_mean_curvature(const SurfaceLattice& s,
                                           TimeOrientation o = TimeOrientation::Global);
CurvatureSample lattice_curvature_at(const SurfaceLattice& s, int i, int j,
                                     TimeOrientation o = TimeOrientation::Global);

// Same procedure on an analytic parametrization with stencil h.
CurvatureSample mean_curvature(const std::function<Vec4(double, double)>& x, double u, double v,
                               double h, TimeOrientation o = TimeOrientation::Global);

}  // namespace adsgeom
