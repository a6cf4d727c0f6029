#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adsgeom/curvature.hpp"
#include "adsgeom/hull.hpp"

namespace adsgeom {

// Square grid on [-radius, radius]^2 in the chart; nodes outside the disc of
// that radius are inactive.
struct ChartGrid {
  int nx = 96, ny = 96;
  double radius = 0.9;

  double hx() const { return 2 * radius / (nx - 1); }
  double hy() const { return 2 * radius / (ny - 1); }
  double x(int i) const { return -radius + i * hx(); }
  double y(int j) const { return -radius + j * hy(); }
  bool active(int i, int j) const {
    return x(i) * x(i) + y(j) * y(j) <= radius * radius * (1 + 1e-12);
  }
  int size() const { return nx * ny; }
  int index(int i, int j) const { return i * ny + j; }
};

// Lower: graph of a convex function, body above (S-). Upper: concave graph,
// body below (S+).
enum class Side { Lower, Upper };

class HeightField {
 public:
  HeightField() = default;
  HeightField(ChartGrid grid, Side side);

  const ChartGrid& grid() const { return grid_; }
  Side side() const { return side_; }
  bool valid(int i, int j) const {
    return i >= 0 && j >= 0 && i < grid_.nx && j < grid_.ny && valid_[grid_.index(i, j)];
  }
  double at(int i, int j) const { return z_[grid_.index(i, j)]; }
  void set(int i, int j, double z) {
    z_[grid_.index(i, j)] = z;
    valid_[grid_.index(i, j)] = 1;
  }
  void invalidate(int i, int j) { valid_[grid_.index(i, j)] = 0; }
  int valid_count() const;
  // Central-difference gradient; nullopt without a full cross stencil.
  std::optional<Eigen::Vector2d> gradient(int i, int j) const;
  Vec3 point(int i, int j) const { return {grid_.x(i), grid_.y(j), at(i, j)}; }
  // Lift of the node to the quadric (NaN when outside AdS).
  Vec4 lift(int i, int j) const;
  SurfaceLattice lattice() const;

 private:
  ChartGrid grid_;
  Side side_ = Side::Lower;
  std::vector<double> z_;
  std::vector<char> valid_;
};

Vec4 lift_chart(double x, double y, double z);

// Non-negative second differences along (1,0), (0,1), (1,1) and (1,-1).
bool is_discretely_convex(const HeightField& f, double tol = 1e-9);
// Lower fields must be convex, upper fields concave.
bool has_side_convexity(const HeightField& f, double tol = 1e-9);
// Every node's tangent plane is spacelike; returns the smallest margin.
double field_spacelike_margin(const HeightField& f);

enum class TimeSide { Future, Past };

// Points of AdS on one side of the equidistant surface at distance eps from
// a spacelike plane: Future keeps the past of the eps-future surface.
class EpsHalfspace {
 public:
  EpsHalfspace(const Vec4& future_dual, double eps, TimeSide side);

  const Vec4& dual() const { return dual_; }
  double eps() const { return eps_; }
  TimeSide side() const { return side_; }
  bool contains(const Vec3& chart_point) const;
  // Height of the boundary over (x, y); nullopt where the vertical line
  // misses it inside AdS.
  std::optional<double> boundary_height(double x, double y) const;

 private:
  Vec4 dual_;
  double eps_;
  TimeSide side_;
};

// Throws EpsTooLarge unless 0 < eps < pi/2, NotSpacelike for a non-spacelike plane.
EpsHalfspace eps_halfspace(const Plane3& plane, double eps, TimeSide side);

struct EpsBodyOptions {
  ChartGrid grid;
  int edge_pencil = 8;  // extra support planes per interior hull edge
};

struct EpsBody {
  HeightField lower, upper;  // S1-, S1+
  int planes_lower = 0, planes_upper = 0;
};

// S1+ is the lower envelope of future caps over the support planes of the
// upper hull side, S1- the upper envelope of past caps. Throws
// EpsBudgetExceeded when eps >= pi/2 or a node leaves the black domain of
// the curve.
EpsBody eps_neighborhood_body(const HullSplit& split, const BoundaryCurve& curve, double eps,
                              const EpsBodyOptions& opts);

struct CurvatureCert {
  bool ok = false;
  double R = 0;
  int certified = 0;
  int skipped = 0;
  std::optional<std::pair<int, int>> offender;
  double worst_margin = 0;
  std::vector<std::pair<std::pair<int, int>, Vec3>> centers;
};

// Tangent ball of radius R on the body side, containment of the k-ring
// neighbours. The ball normal is optimized over unit directions, so the
// certificate does not depend on the accuracy of one finite-difference normal.
CurvatureCert certify_uniform_curvature(const HeightField& s, double R, int k = 3,
                                        bool keep_centers = false);

struct PolyApprox {
  PolySurfaceMesh mesh;    // faces on the surface's side
  HeightField field;       // envelope of the face planes on the grid
  double hausdorff = 0;    // max normal-corrected vertical deviation
  int samples = 0;
};

// Samples valid nodes with stride floor(delta / h) plus the rim, takes the
// hull, keeps the faces on the surface side. Throws DeltaTooCoarse.
PolyApprox polyhedral_approx(const HeightField& s, double delta);

enum class ProfileKind { Smoothstep, Bump };

struct SmoothingProfile {
  double eta = 0.1;
  ProfileKind kind = ProfileKind::Smoothstep;
  double operator()(double t) const;
  double derivative(double t) const;
};

SmoothingProfile smooth_profile(double eta, ProfileKind kind = ProfileKind::Smoothstep);

// phi o f for f >= 0 convex (grid field, side ignored). Throws NotConvexInput.
HeightField smooth_convex_graph(const HeightField& f, const SmoothingProfile& profile,
                                double tol = 1e-9);

struct SmoothingOptions {
  double eta = 0.02;
  double eta_floor_factor = 1.0 / 9;
  double schedule_factor = 1.0 / 3;
  ProfileKind kind = ProfileKind::Smoothstep;
};

// One side at a time in the face order of `planes`: f = height above the
// plane on the body side, surface <- plane + phi_k(f).
HeightField smooth_side(const HeightField& s, const std::vector<Plane3>& planes,
                        const SmoothingOptions& opts);

// Normal geodesic offset of a height field by eps2 outward: future for
// upper fields, past for lower fields. Lattices keep the input parameters.
struct OffsetSurface {
  SurfaceLattice lattice;
  HeightField field;  // resampled on the input grid
};

OffsetSurface normal_offset(const HeightField& s, double eps2);

// Mean curvature at one node of a height field.
double mean_curvature(const HeightField& s, int i, int j,
                      TimeOrientation o = TimeOrientation::Global);
std::vector<double> mean_curvature_field(const HeightField& s,
                                         TimeOrientation o = TimeOrientation::Global);

struct BarrierParams {
  double eps = 0.15;
  double delta = 0.05;
  double eta = 0.02;
  double eps2 = 0.05;
  int nx = 96, ny = 96;
  double extent = 0.9;
  int edge_pencil = 8;
  ProfileKind profile = ProfileKind::Smoothstep;
};

struct BarrierCertificate {
  double h_minus_max = 0;
  double h_plus_min = 0;
  double spacelike_margin = 0;
  double curvature_R = 0;
  double ordering_gap = 0;  // min of Sigma+ - Sigma- over common nodes
  int nodes_minus = 0, nodes_plus = 0;
  bool stages_convex = true;
  bool passed() const {
    return h_minus_max < 0 && h_plus_min > 0 && ordering_gap > 0 && spacelike_margin > 0 &&
           stages_convex;
  }
};

struct BarrierResult {
  HeightField sigma_minus, sigma_plus;
  SurfaceLattice lattice_minus, lattice_plus;
  BarrierCertificate cert;
  std::vector<std::string> log;
};

// hull -> eps-neighbourhood -> polyhedral -> smoothing -> offset. Errors
// carry the stage name.
BarrierResult build_barriers(const BoundaryCurve& curve, const BarrierParams& params);

// Totally geodesic disc of a flat curve on the barrier grid.
HeightField flat_disc_field(const BoundaryCurve& curve, const BarrierParams& params);

}  // namespace adsgeom
