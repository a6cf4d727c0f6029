#include "adsgeom/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace adsgeom {

namespace {
constexpr int kHalo = 2;
}

TorusGraph::TorusGraph(const LatticePair& l, int n_, double u0) : lattice(l), n(n_), u() {
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "torus grid needs N >= 4");
  u.assign(static_cast<std::size_t>(n) * n, u0);
}

SurfaceLattice torus_lattice(const TorusGraph& s) {
  SurfaceLattice L;
  L.nu = L.nv = s.n + 2 * kHalo;
  L.hu = L.hv = 1.0 / s.n;  // lattice coordinates
  L.x.resize(static_cast<std::size_t>(L.nu) * L.nv);
  for (int i = 0; i < L.nu; ++i)
    for (int j = 0; j < L.nv; ++j) {
      const int gi = i - kHalo, gj = j - kHalo;
      const Eigen::Vector2d ts = s.lattice.point(static_cast<double>(gi) / s.n, static_cast<double>(gj) / s.n);
      const double th = s.at(gi, gj);
      L.at(i, j) = (th > 0 && th < 0.5 * M_PI) ? embed_orbit(th, ts.x(), ts.y()).v()
                                                : Vec4::Constant(std::nan(""));
    }
  return L;
}

namespace {

// The A-action is isometric, so each node is evaluated on its 5x5 stencil
// translated back to (t, s) = (0, 0). Far from the origin the orbit
// coordinates grow like e^(t+s) and Q = -1 would cancel badly otherwise.
class LocalStencil {
 public:
  explicit LocalStencil(const TorusGraph& s) : s_(s) {
    L_.nu = L_.nv = 2 * kHalo + 1;
    L_.hu = L_.hv = 1.0 / s.n;
    L_.x.resize(static_cast<std::size_t>(L_.nu) * L_.nv);
    for (int a = -kHalo; a <= kHalo; ++a)
      for (int b = -kHalo; b <= kHalo; ++b) {
        const Eigen::Vector2d ts = s.lattice.point(static_cast<double>(a) / s.n, static_cast<double>(b) / s.n);
        et_[a + kHalo][b + kHalo] = std::exp(ts.x());
        es_[a + kHalo][b + kHalo] = std::exp(-ts.y());
      }
  }

  double operator()(int i, int j) {
    for (int a = 0; a < L_.nu; ++a)
      for (int b = 0; b < L_.nv; ++b) {
        const double th = s_.at(i + a - kHalo, j + b - kHalo);
        if (!(th > 0 && th < 0.5 * M_PI)) return std::nan("");
        const double c = std::cos(th), sn = std::sin(th), e = et_[a][b], f = es_[a][b];
        Mat2 m;
        m << e * c * f, e * sn / f, -sn * f / e, c / (e * f);
        L_.at(a, b) = from_abcd(m);
      }
    return lattice_curvature_at(L_, kHalo, kHalo, TimeOrientation::Reversed).H;
  }

 private:
  const TorusGraph& s_;
  SurfaceLattice L_;
  double et_[2 * kHalo + 1][2 * kHalo + 1];
  double es_[2 * kHalo + 1][2 * kHalo + 1];
};

}  // namespace

std::vector<double> graph_mean_curvature(const TorusGraph& s) {
  LocalStencil stencil(s);
  std::vector<double> h(s.u.size());
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j) {
      double v = std::nan("");
      try {
        v = stencil(i, j);
      } catch (const Error&) {
      }
      if (std::isnan(v))
        throw Error(ErrorCode::NotSpacelike,
                    "graph is not spacelike at node (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      h[static_cast<std::size_t>(i) * s.n + j] = v;
    }
  return h;
}

double node_mean_curvature(const TorusGraph& s, int i, int j) {
  LocalStencil stencil(s);
  return stencil(s.wrap(i), s.wrap(j));
}

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

SolveReport relax(const TorusGraph& s0, const std::vector<double>& lo, const std::vector<double>& hi,
                  const SolveOptions& opts) {
  SolveReport rep{.history = {}, .surface = s0};
  auto& u = rep.surface.u;
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = std::clamp(u[k], lo[k], hi[k]);
  const double h = s0.spacing();
  double tau = opts.tau > 0 ? opts.tau : 0.1 * h * h;
  std::vector<double> H = graph_mean_curvature(rep.surface);
  double mh = max_abs(H);
  std::vector<double> trial(u.size());
  while (mh > opts.tol_h) {
    if (rep.iterations >= opts.max_iter)
      throw Error(ErrorCode::NotConverged, "max|H| = " + std::to_string(mh) + " after " +
                                               std::to_string(rep.iterations) + " iterations");
    for (std::size_t k = 0; k < u.size(); ++k) trial[k] = std::clamp(u[k] - tau * H[k], lo[k], hi[k]);
    TorusGraph next = rep.surface;
    next.u = trial;
    std::vector<double> Hn;
    bool ok = true;
    try {
      Hn = graph_mean_curvature(next);
    } catch (const Error&) {
      ok = false;
    }
    const double mn = ok ? max_abs(Hn) : INFINITY;
    if (!ok || !std::isfinite(mn) || mn > mh * (1 + 1e-9)) {
      if (++rep.halvings > opts.max_halvings)
        throw Error(ErrorCode::Diverged, "step size collapsed at max|H| = " + std::to_string(mh));
      tau *= 0.5;
      continue;
    }
    u.swap(trial);
    H.swap(Hn);
    mh = mn;
    ++rep.iterations;
    rep.history.push_back(mh);
  }
  rep.max_h = mh;
  rep.tau = tau;
  rep.converged = true;
  const int n = static_cast<int>(rep.history.size());
  for (int k = std::max(1, n - opts.window); k < n; ++k)
    if (rep.history[k] > rep.history[k - 1]) rep.monotone_tail = false;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k] <= lo[k]) rep.touched_lower = true;
    if (u[k] >= hi[k]) rep.touched_upper = true;
  }
  return rep;
}

}  // namespace

SolveReport relax_to_maximal(const TorusGraph& s0, double theta_lo, double theta_hi,
                             const SolveOptions& opts) {
  if (!(theta_lo > 0 && theta_lo < M_PI / 4 && theta_hi > M_PI / 4 && theta_hi < M_PI / 2))
    throw Error(ErrorCode::InvalidArgument, "barriers must satisfy 0 < lo < pi/4 < hi < pi/2");
  const std::vector<double> lo(s0.u.size(), theta_lo), hi(s0.u.size(), theta_hi);
  return relax(s0, lo, hi, opts);
}

SolveReport relax_between_fields(const TorusGraph& s0, const std::vector<double>& lo,
                                 const std::vector<double>& hi, const SolveOptions& opts) {
  if (lo.size() != s0.u.size() || hi.size() != s0.u.size())
    throw Error(ErrorCode::InvalidArgument, "barrier fields must match the grid");
  for (std::size_t k = 0; k < lo.size(); ++k)
    if (!(lo[k] > 0 && lo[k] < hi[k] && hi[k] < M_PI / 2))
      throw Error(ErrorCode::InvalidArgument, "barrier fields must satisfy 0 < lo < hi < pi/2");
  return relax(s0, lo, hi, opts);
}

bool maximum_principle_check(const TorusGraph& s, const TorusGraph& s_prime, int i, int j, double tol) {
  return node_mean_curvature(s_prime, i, j) <= node_mean_curvature(s, i, j) + tol;
}

}  // namespace adsgeom
