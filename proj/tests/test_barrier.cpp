#include <gtest/gtest.h>

#include <random>

#include "adsgeom/barrier.hpp"

using namespace adsgeom;

namespace {

HeightField sample(const ChartGrid& g, Side side, const std::function<std::optional<double>(double, double)>& z) {
  HeightField f(g, side);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      if (g.active(i, j))
        if (auto v = z(g.x(i), g.y(j))) f.set(i, j, *v);
  return f;
}

HeightField cap_field(const Vec3& n, double eps, const ChartGrid& g) {
  const EpsHalfspace h = eps_halfspace(Plane3{n.normalized(), 0}, eps, TimeSide::Future);
  return sample(g, Side::Upper, [&](double x, double y) { return h.boundary_height(x, y); });
}

HeightField hemisphere(const ChartGrid& g) {
  return sample(g, Side::Upper, [](double x, double y) { return std::sqrt(1 - x * x - y * y); });
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v)
    if (!std::isnan(x)) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST(EpsHalfspace, QuarterPiIsTheHemisphere) {
  const Plane3 p{Vec3(0, 0, 1), 0};
  const EpsHalfspace fut = eps_halfspace(p, M_PI / 4, TimeSide::Future);
  const EpsHalfspace past = eps_halfspace(p, M_PI / 4, TimeSide::Past);
  for (double x = -0.9; x <= 0.9; x += 0.15)
    for (double y = -0.4; y <= 0.4; y += 0.2) {
      const double h = std::sqrt(1 - x * x - y * y);
      ASSERT_TRUE(fut.boundary_height(x, y));
      EXPECT_NEAR(*fut.boundary_height(x, y), h, 1e-10);
      EXPECT_NEAR(*past.boundary_height(x, y), -h, 1e-10);
      EXPECT_TRUE(fut.contains(Vec3(x, y, h - 1e-6)));
      EXPECT_FALSE(fut.contains(Vec3(x, y, h + 1e-6)));
      EXPECT_TRUE(past.contains(Vec3(x, y, -h + 1e-6)));
    }
}

TEST(EpsHalfspace, SmallEpsApproachesThePlane) {
  const Plane3 p{Vec3(0.2, -0.1, 1).normalized(), 0.05};
  double prev = INFINITY;
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    const EpsHalfspace h = eps_halfspace(p, eps, TimeSide::Future);
    double dev = 0;
    for (double x = -0.5; x <= 0.5; x += 0.1) dev = std::max(dev, std::abs(*h.boundary_height(x, 0.2) - p.height(x, 0.2)));
    EXPECT_LT(dev, prev);
    prev = dev;
  }
  EXPECT_LT(prev, 1e-5);
}

TEST(EpsHalfspace, NormalDistanceByQuadrature) {
  const double eps = 0.3;
  // (0, 0, tan eps) over z = 0
  const auto seg = [&](double s) { return lift_chart(0, 0, std::tan(s)); };
  EXPECT_NEAR(lorentzian_length(seg, 0, eps), eps, 1e-8);
  EXPECT_NEAR(*eps_halfspace(Plane3{Vec3(0, 0, 1), 0}, eps, TimeSide::Future).boundary_height(0, 0),
              std::tan(eps), 1e-12);
  // every sampled boundary point of a tilted cap
  const Plane3 pl{Vec3(0.3, 0.2, 1).normalized(), -0.1};
  const EpsHalfspace h = eps_halfspace(pl, eps, TimeSide::Future);
  const Vec4 n = plane_future_dual(pl);
  for (double x = -0.6; x <= 0.6; x += 0.2)
    for (double y = -0.6; y <= 0.6; y += 0.3) {
      const auto z = h.boundary_height(x, y);
      ASSERT_TRUE(z);
      const Vec4 q = lift_chart(x, y, *z);
      const double sn = -b_eval(n, q);
      const Vec4 foot = (q - sn * n) / std::sqrt(1 - sn * sn);
      EXPECT_NEAR(q_eval(foot), -1, 1e-12);
      EXPECT_NEAR(b_eval(n, foot), 0, 1e-12);
      const auto geo = [&](double s) { return Vec4(std::cos(s) * foot + std::sin(s) * n); };
      const double d = std::asin(sn);
      EXPECT_NEAR((geo(d) - q).norm(), 0, 1e-10);
      EXPECT_NEAR(lorentzian_length(geo, 0, d), eps, 1e-8);
    }
}

TEST(EpsHalfspace, Errors) {
  const Plane3 p{Vec3(0, 0, 1), 0};
  for (double eps : {0.0, -0.1, M_PI / 2, 2.0}) {
    try {
      eps_halfspace(p, eps, TimeSide::Future);
      FAIL() << eps;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::EpsTooLarge);
    }
  }
  try {
    eps_halfspace(Plane3{Vec3(1, 0, 0), 0}, 0.1, TimeSide::Future);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSpacelike);
  }
}

TEST(EpsBody, SingleFaceIsTheCap) {
  HullSplit split;
  split.upper.vertices = {{-3, -3, 0}, {3, -3, 0}, {0, 3, 0}};
  split.upper.faces = {{0, 1, 2}};
  split.upper.planes = {Plane3{Vec3(0, 0, 1), 0}};
  split.lower = split.upper;
  split.lower.planes = {Plane3{Vec3(0, 0, -1), 0}};
  const BoundaryCurve flat = synth_boundary_curve(TrigSpec{});
  const ChartGrid g{41, 41, 0.8};
  const EpsBody body = eps_neighborhood_body(split, flat, 0.2, EpsBodyOptions{g, 8});
  const EpsHalfspace fut = eps_halfspace(Plane3{Vec3(0, 0, 1), 0}, 0.2, TimeSide::Future);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      if (!g.active(i, j)) continue;
      ASSERT_TRUE(body.upper.valid(i, j));
      EXPECT_NEAR(body.upper.at(i, j), *fut.boundary_height(g.x(i), g.y(j)), 1e-12);
      EXPECT_NEAR(body.lower.at(i, j), -body.upper.at(i, j), 1e-12);
    }
}

TEST(EpsBody, RoofEnvelopeIsContinuous) {
  const EpsHalfspace a = eps_halfspace(Plane3{Vec3(-0.3, 0, 1).normalized(), 0}, 0.15, TimeSide::Future);
  const EpsHalfspace b = eps_halfspace(Plane3{Vec3(0.3, 0, 1).normalized(), 0}, 0.15, TimeSide::Future);
  const auto env = [&](double x) { return std::min(*a.boundary_height(x, 0.1), *b.boundary_height(x, 0.1)); };
  // by symmetry the ridge sits at x = 0 where both caps agree
  EXPECT_NEAR(*a.boundary_height(0, 0.1), *b.boundary_height(0, 0.1), 1e-14);
  const double h = 1e-6;
  for (double x = -0.5; x <= 0.5; x += 0.01) EXPECT_LT(std::abs(env(x + h) - env(x)), 2 * h);
  EXPECT_LT(std::abs(env(h) - env(-h)), 2 * h);
}

TEST(EpsBody, NodesLieInTheBlackDomain) {
  const BoundaryCurve c = synth_boundary_curve(TrigSpec{0, {0, 0.2}, {}});
  const HullSplit split = hull_of_boundary_curve(c);
  const EpsBody body = eps_neighborhood_body(split, c, 0.15, EpsBodyOptions{ChartGrid{48, 48, 0.8}, 8});
  for (const HeightField* f : {&body.lower, &body.upper}) {
    int n = 0;
    for (int i = 0; i < f->grid().nx; ++i)
      for (int j = 0; j < f->grid().ny; ++j)
        if (f->valid(i, j)) {
          ++n;
          EXPECT_TRUE(black_domain_test(ProjPoint(f->lift(i, j)), c));
        }
    EXPECT_GT(n, 1000);
  }
  for (int i = 0; i < 48; ++i)
    for (int j = 0; j < 48; ++j)
      if (body.lower.valid(i, j) && body.upper.valid(i, j)) EXPECT_LT(body.lower.at(i, j), body.upper.at(i, j));
}

TEST(EpsBody, BudgetAndLowerBound) {
  const BoundaryCurve c = synth_boundary_curve(TrigSpec{0, {0, 0.2}, {}});
  const HullSplit split = hull_of_boundary_curve(c);
  const EpsBodyOptions o{ChartGrid{24, 24, 0.8}, 0};
  try {
    eps_neighborhood_body(split, c, 1.7, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EpsBudgetExceeded);
  }
  try {
    eps_neighborhood_body(split, c, 0.0, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EpsTooLarge);
  }
}

TEST(Curvature, HemisphereCertifiesAtOne) {
  const HeightField f = hemisphere(ChartGrid{61, 61, 0.7});
  EXPECT_TRUE(certify_uniform_curvature(f, 1 + 1e-6).ok);
  const CurvatureCert bad = certify_uniform_curvature(f, 0.9);
  EXPECT_FALSE(bad.ok);
  EXPECT_TRUE(bad.offender.has_value());
}

TEST(Curvature, FlatDiscNeverCertifies) {
  const ChartGrid g{41, 41, 0.7};
  const HeightField f = sample(g, Side::Upper, [](double, double) { return 0.0; });
  for (double R : {1.0, 100.0, 1e4}) EXPECT_FALSE(certify_uniform_curvature(f, R).ok) << R;
}

TEST(Curvature, UntiltedCapCertifiesTiltedCapsNeedMore) {
  const double eps = 0.15, R = 1.05 / std::tan(eps);
  const ChartGrid g{96, 96, 0.6};
  EXPECT_TRUE(certify_uniform_curvature(cap_field(Vec3(0, 0, 1), eps, g), R).ok);
  // Chart curvature of a cap drops as its plane tilts, so the bound of the
  // untilted cap does not carry over.
  EXPECT_FALSE(certify_uniform_curvature(cap_field(Vec3(-0.3, 0, 1), eps, g), R).ok);
  EXPECT_FALSE(certify_uniform_curvature(cap_field(Vec3(-0.6, 0, 1), eps, g), R).ok);
  EXPECT_TRUE(certify_uniform_curvature(cap_field(Vec3(-0.3, 0, 1), eps, g), 1.5 * R).ok);
}

TEST(Curvature, TrigBodyCertifiesAfterOneEscalation) {
  const BoundaryCurve c = synth_boundary_curve(TrigSpec{0, {0, 0.2}, {}});
  const HullSplit split = hull_of_boundary_curve(c);
  const double eps = 0.15, R = 1.05 / std::tan(eps);
  const EpsBody body = eps_neighborhood_body(split, c, eps, EpsBodyOptions{ChartGrid{96, 96, 0.75}, 8});
  for (const HeightField* f : {&body.lower, &body.upper}) EXPECT_TRUE(certify_uniform_curvature(*f, 1.25 * R).ok);
}

TEST(Polyhedral, HemisphereWithinChordBound) {
  const HeightField f = hemisphere(ChartGrid{201, 201, 0.8});
  const PolyApprox a = polyhedral_approx(f, 0.1);
  const PolyApprox b = polyhedral_approx(f, 0.05);
  EXPECT_LT(a.hausdorff, 0.01);
  EXPECT_GT(a.hausdorff / b.hausdorff, 3.0);
  EXPECT_LT(a.hausdorff / b.hausdorff, 5.0);
  EXPECT_TRUE(spacelike_support_planes(a.mesh).ok);
  EXPECT_TRUE(spacelike_support_planes(b.mesh).ok);
  EXPECT_TRUE(has_side_convexity(a.field, 1e-9));
}

TEST(Polyhedral, DegenerateSampleIsRejected) {
  const ChartGrid g{21, 21, 0.8};
  try {
    polyhedral_approx(sample(g, Side::Upper, [](double, double) { return 0.0; }), 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DeltaTooCoarse);
  }
}

TEST(Profile, LemmaValues) {
  for (ProfileKind k : {ProfileKind::Smoothstep, ProfileKind::Bump}) {
    const SmoothingProfile p = smooth_profile(0.1, k);
    EXPECT_NEAR(p(0.05), 0.15, 1e-12);
    EXPECT_NEAR(p(0.0), 0.15, 1e-12);
    EXPECT_NEAR(p(0.3), 0.3, 1e-12);
    EXPECT_NEAR(p(0.2), 0.2, 1e-10);
    EXPECT_NEAR(p.derivative(0.2), 1, 1e-10);
    EXPECT_NEAR(p.derivative(0.1), 0, 1e-12);
    double prev = p(0), prevd = p.derivative(0);
    for (double t = 0; t <= 0.4; t += 1e-3) {
      EXPECT_GE(p(t), prev - 1e-14);
      EXPECT_GE(p.derivative(t), prevd - 1e-12);
      EXPECT_GE(p(t), t - 1e-14);
      prev = p(t);
      prevd = p.derivative(t);
    }
  }
  EXPECT_THROW(smooth_profile(0.0), Error);
}

TEST(Smoothing, ZeroSideBecomesConstant) {
  const ChartGrid g{21, 21, 0.5};
  const HeightField f = sample(g, Side::Lower, [](double, double) { return 0.0; });
  const HeightField s = smooth_convex_graph(f, smooth_profile(0.1));
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      if (f.valid(i, j)) EXPECT_NEAR(s.at(i, j), 0.15, 1e-15);
}

TEST(Smoothing, RidgeBecomesC1) {
  const double h = 1e-2;
  const ChartGrid g{201, 5, 1.0};
  ASSERT_NEAR(g.hx(), h, 1e-15);
  HeightField f(g, Side::Lower);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) f.set(i, j, std::abs(g.x(i)));
  const HeightField s = smooth_convex_graph(f, smooth_profile(0.1));
  const int i0 = 100, j = 2;
  ASSERT_NEAR(g.x(i0), 0, 1e-15);
  const double left = (s.at(i0, j) - s.at(i0 - 1, j)) / h, right = (s.at(i0 + 1, j) - s.at(i0, j)) / h;
  EXPECT_LT(std::abs(right - left), 1e-3);
  for (int i = 0; i < g.nx; ++i)
    if (std::abs(g.x(i)) >= 0.2 - 1e-12) EXPECT_DOUBLE_EQ(s.at(i, j), std::abs(g.x(i)));
}

TEST(Smoothing, LemmaBulletsOnRandomConvexFields) {
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> u(-1, 1);
  const ChartGrid g{41, 41, 0.8};
  for (int k = 0; k < 25; ++k) {
    const double a = 1 + u(rng), b = 1 + u(rng), x0 = 0.3 * u(rng), y0 = 0.3 * u(rng), c = 0.2 * (1 + u(rng));
    const HeightField f = sample(g, Side::Lower, [&](double x, double y) {
      return std::max(0.0, a * (x - x0) * (x - x0) + b * (y - y0) * (y - y0) + c * std::abs(x + y) - 0.05);
    });
    for (double eta : {0.05, 0.1}) {
      const HeightField s = smooth_convex_graph(f, smooth_profile(eta));
      for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
          if (!f.valid(i, j)) continue;
          const double fv = f.at(i, j), sv = s.at(i, j);
          EXPECT_GE(sv, fv - 1e-15);
          EXPECT_LE(sv - fv, 2 * eta);
          if (fv >= 2 * eta) EXPECT_EQ(sv, fv);
          if (fv <= eta) EXPECT_NEAR(sv, 1.5 * eta, 1e-15);
        }
      EXPECT_TRUE(is_discretely_convex(s));
    }
  }
}

TEST(Smoothing, RejectsNonConvex) {
  const ChartGrid g{21, 21, 0.5};
  const HeightField f = sample(g, Side::Lower, [](double x, double) { return 1 - x * x; });
  try {
    smooth_convex_graph(f, smooth_profile(0.1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotConvexInput);
  }
}

TEST(MeanCurvature, PlanesAreTotallyGeodesic) {
  const ChartGrid g{31, 31, 0.7};
  EXPECT_LT(max_abs(mean_curvature_field(sample(g, Side::Lower, [](double, double) { return 0.0; }))), 1e-10);
  const HeightField tilted = sample(g, Side::Lower, [](double x, double y) { return 0.3 * x - 0.2 * y + 0.1; });
  EXPECT_LT(max_abs(mean_curvature_field(tilted)), 1e-8);
}

TEST(MeanCurvature, TangentComparison) {
  const ChartGrid g{41, 41, 0.5};
  const int c = 20;
  const HeightField s = sample(g, Side::Lower, [](double x, double y) { return 0.1 * (x * x + y * y); });
  for (double k : {0.1, 0.3, 1.0}) {
    // S' touches S at the centre from the future side
    const HeightField sp = sample(g, Side::Lower, [&](double x, double y) { return (0.1 + k) * (x * x + y * y); });
    EXPECT_LE(mean_curvature(sp, c, c), mean_curvature(s, c, c));
  }
  const HeightField plane = sample(g, Side::Lower, [](double, double) { return 0.0; });
  EXPECT_LE(mean_curvature(s, c, c), mean_curvature(plane, c, c));
}

TEST(MeanCurvature, EquidistantSurfaceConverges) {
  // Points at distance r to the future of z = 0 form an umbilic surface with
  // H = 2 tan r.
  const double r = 0.3;
  const EpsHalfspace cap = eps_halfspace(Plane3{Vec3(0, 0, 1), 0}, r, TimeSide::Future);
  std::vector<double> worst;
  for (int n : {31, 61, 121}) {
    const ChartGrid g{n, n, 0.5};
    const HeightField f = sample(g, Side::Upper, [&](double x, double y) { return cap.boundary_height(x, y); });
    double w = 0;
    for (double v : mean_curvature_field(f))
      if (!std::isnan(v)) w = std::max(w, std::abs(v - 2 * std::tan(r)));
    worst.push_back(w);
  }
  EXPECT_LT(worst.back(), 1e-4);
  EXPECT_GT(worst[0] / worst[1], 3.0);
  EXPECT_GT(worst[1] / worst[2], 3.0);
}

TEST(Pipeline, TrigCurvePasses) {
  const BoundaryCurve c = synth_boundary_curve(TrigSpec{0, {0, 0.2}, {}});
  const BarrierResult r = build_barriers(c, BarrierParams{});
  EXPECT_TRUE(r.cert.passed());
  EXPECT_LT(r.cert.h_minus_max, 0);
  EXPECT_GT(r.cert.h_plus_min, 0);
  EXPECT_GT(r.cert.ordering_gap, 0);
  EXPECT_GT(r.cert.spacelike_margin, 0);
  EXPECT_TRUE(r.cert.stages_convex);
  for (int i = 0; i < r.sigma_minus.grid().nx; ++i)
    for (int j = 0; j < r.sigma_minus.grid().ny; ++j)
      if (r.sigma_minus.valid(i, j) && r.sigma_plus.valid(i, j))
        EXPECT_LT(r.sigma_minus.at(i, j), r.sigma_plus.at(i, j));
}

TEST(Pipeline, FlatCurveRejected) {
  const BoundaryCurve c = synth_boundary_curve(TrigSpec{0.2, {}, {}});
  try {
    build_barriers(c, BarrierParams{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FlatCurve);
    EXPECT_EQ(e.stage(), "hull");
  }
  BarrierParams p;
  p.nx = p.ny = 32;
  const HeightField disc = flat_disc_field(c, p);
  EXPECT_LT(max_abs(mean_curvature_field(disc)), 1e-8);
}

TEST(Pipeline, MarginShrinksWithEps2) {
  const BoundaryCurve c = synth_boundary_curve(TrigSpec{0, {0, 0.2}, {}});
  double prev = INFINITY;
  for (double e2 : {0.05, 0.025, 0.0125}) {
    BarrierParams p;
    p.eps2 = e2;
    p.nx = p.ny = 64;
    const BarrierResult r = build_barriers(c, p);
    const double margin = std::min(-r.cert.h_minus_max, r.cert.h_plus_min);
    EXPECT_LT(margin, prev) << e2;
    prev = margin;
  }
}
