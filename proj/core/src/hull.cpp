#include "adsgeom/hull.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace adsgeom {

namespace {

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

double cloud_scale(const PointCloud3& cloud) {
  Vec3 lo = cloud[0], hi = cloud[0];
  for (const auto& p : cloud) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return std::max((hi - lo).norm(), 1e-300);
}

Plane3 plane_through(const Vec3& a, const Vec3& b, const Vec3& c) {
  Vec3 n = (b - a).cross(c - a);
  n.normalize();
  return Plane3{n, n.dot(a)};
}

}  // namespace

PolySurfaceMesh convex_hull(const PointCloud3& cloud, double eps) {
  const int n = static_cast<int>(cloud.size());
  if (n < 4) throw Error(ErrorCode::DegenerateCloud, "hull needs at least 4 points");
  const double tol = eps * cloud_scale(cloud);

  // Initial simplex from extreme points.
  int i0 = 0;
  for (int i = 1; i < n; ++i)
    if (cloud[i].x() < cloud[i0].x()) i0 = i;
  int i1 = -1;
  double best = -1;
  for (int i = 0; i < n; ++i) {
    const double d = (cloud[i] - cloud[i0]).squaredNorm();
    if (d > best) best = d, i1 = i;
  }
  int i2 = -1;
  best = -1;
  const Vec3 dir = (cloud[i1] - cloud[i0]).normalized();
  for (int i = 0; i < n; ++i) {
    const double d = (cloud[i] - cloud[i0]).cross(dir).norm();
    if (d > best) best = d, i2 = i;
  }
  if (best <= tol) throw Error(ErrorCode::DegenerateCloud, "collinear point cloud");
  Plane3 base = plane_through(cloud[i0], cloud[i1], cloud[i2]);
  int i3 = -1;
  best = -1;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(base.eval(cloud[i]));
    if (d > best) best = d, i3 = i;
  }
  if (best <= tol) throw Error(ErrorCode::DegenerateCloud, "coplanar point cloud");
  if (base.eval(cloud[i3]) > 0) std::swap(i1, i2);

  struct Face {
    std::array<int, 3> v;
    Plane3 plane;
    bool alive = true;
  };
  std::vector<Face> faces;
  std::unordered_map<std::uint64_t, int> edges;
  auto add_face = [&](int a, int b, int c) {
    faces.push_back({{a, b, c}, plane_through(cloud[a], cloud[b], cloud[c])});
    const int id = static_cast<int>(faces.size()) - 1;
    edges[edge_key(a, b)] = id;
    edges[edge_key(b, c)] = id;
    edges[edge_key(c, a)] = id;
  };
  auto kill_face = [&](int id) {
    auto& f = faces[id];
    f.alive = false;
    for (int k = 0; k < 3; ++k) {
      auto it = edges.find(edge_key(f.v[k], f.v[(k + 1) % 3]));
      if (it != edges.end() && it->second == id) edges.erase(it);
    }
  };
  add_face(i0, i1, i2);
  add_face(i0, i3, i1);
  add_face(i1, i3, i2);
  add_face(i2, i3, i0);

  std::vector<char> visible;
  std::vector<int> vis_list;
  std::vector<std::pair<int, int>> horizon;
  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    vis_list.clear();
    visible.assign(faces.size(), 0);
    for (int id = 0; id < static_cast<int>(faces.size()); ++id)
      if (faces[id].alive && faces[id].plane.eval(cloud[p]) > tol) {
        visible[id] = 1;
        vis_list.push_back(id);
      }
    if (vis_list.empty()) continue;
    horizon.clear();
    for (int id : vis_list) {
      const auto& v = faces[id].v;
      for (int k = 0; k < 3; ++k) {
        const int a = v[k], b = v[(k + 1) % 3];
        auto it = edges.find(edge_key(b, a));
        if (it == edges.end() || !visible[it->second]) horizon.emplace_back(a, b);
      }
    }
    for (int id : vis_list) kill_face(id);
    for (auto [a, b] : horizon) add_face(a, b, p);
  }

  PolySurfaceMesh mesh;
  std::vector<int> remap(n, -1);
  for (const auto& f : faces) {
    if (!f.alive) continue;
    std::array<int, 3> tri{};
    for (int k = 0; k < 3; ++k) {
      int& r = remap[f.v[k]];
      if (r < 0) {
        r = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(cloud[f.v[k]]);
        mesh.source.push_back(f.v[k]);
      }
      tri[k] = r;
    }
    mesh.faces.push_back(tri);
    mesh.planes.push_back(f.plane);
  }
  return mesh;
}

std::set<std::vector<int>> facet_sets(const PointCloud3& cloud, const std::vector<Plane3>& planes,
                                      double eps) {
  const double tol = eps * cloud_scale(cloud);
  std::set<std::vector<int>> out;
  for (const auto& pl : planes) {
    std::vector<int> on;
    for (int i = 0; i < static_cast<int>(cloud.size()); ++i)
      if (std::abs(pl.eval(cloud[i])) <= tol) on.push_back(i);
    out.insert(std::move(on));
  }
  return out;
}

std::set<std::vector<int>> brute_force_facets(const PointCloud3& cloud, double eps) {
  const int n = static_cast<int>(cloud.size());
  const double tol = eps * cloud_scale(cloud);
  std::vector<Plane3> planes;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const Vec3 nn = (cloud[j] - cloud[i]).cross(cloud[k] - cloud[i]);
        if (nn.norm() <= tol * tol) continue;
        Plane3 pl = plane_through(cloud[i], cloud[j], cloud[k]);
        bool above = false, below = false;
        for (int m = 0; m < n && !(above && below); ++m) {
          const double s = pl.eval(cloud[m]);
          if (s > tol) above = true;
          if (s < -tol) below = true;
        }
        if (above && below) continue;
        planes.push_back(pl);
      }
  return facet_sets(cloud, planes, eps);
}

bool black_domain_test(const ProjPoint& r, const BoundaryCurve& curve, double tol) {
  const Vec4 rv = r.v().normalized();
  for (const auto& q : curve.samples())
    if (!(b_eval(rv, q.v()) < -tol)) return false;
  return true;
}

Vec4 plane_dual(const Plane3& pl) {
  // Functional (-d, n_z, n_x, n_y) . (1, z, x, y); raise the index with G.
  return Vec4(pl.d, -pl.n.z(), pl.n.x(), pl.n.y());
}

double plane_spacelike_margin(const Plane3& pl) {
  const Vec4 p = plane_dual(pl);
  return -q_eval(p) / p.squaredNorm();
}

Vec4 plane_future_dual(const Plane3& pl) {
  Vec4 p = plane_dual(pl);
  const double q = q_eval(p);
  if (!(q < 0)) throw Error(ErrorCode::NotSpacelike, "plane is not spacelike");
  p /= std::sqrt(-q);
  const double z0 = pl.height(0, 0);
  const Vec4 x0 = LinearPoint(Vec4(1, z0, 0, 0)).v();
  if (b_eval(p, future_field(x0)) > 0) p = -p;
  return p;
}

SupportPlaneReport spacelike_support_planes(const PolySurfaceMesh& mesh, double tol) {
  SupportPlaneReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(mesh.planes.size()); ++i) {
    const double m = plane_spacelike_margin(mesh.planes[i]);
    rep.min_margin = std::min(rep.min_margin, m);
    if (!(m > tol)) {
      rep.ok = false;
      rep.offenders.push_back(i);
    }
  }
  return rep;
}

PointCloud3 curve_chart_points(const BoundaryCurve& curve) {
  PointCloud3 pts;
  pts.reserve(curve.size());
  for (const auto& q : curve.samples()) pts.push_back(chart_phi_p0(q).vec());
  return pts;
}

namespace {
bool coplanar(const PointCloud3& pts, double tol) {
  Vec3 c = Vec3::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  Eigen::MatrixXd m(pts.size(), 3);
  for (std::size_t i = 0; i < pts.size(); ++i) m.row(i) = (pts[i] - c).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto s = svd.singularValues();
  return s[2] <= tol * std::max(s[0], 1e-300);
}
}  // namespace

HullSplit hull_of_boundary_curve(const BoundaryCurve& curve, double tol) {
  const PointCloud3 pts = curve_chart_points(curve);
  if (curve.is_flat() || coplanar(pts, tol))
    throw Error(ErrorCode::FlatCurve, "curve samples are coplanar; use the flat fast path");
  PolySurfaceMesh hull = convex_hull(pts);
  HullSplit split;
  split.lower.vertices = split.upper.vertices = hull.vertices;
  split.lower.source = split.upper.source = hull.source;
  for (std::size_t f = 0; f < hull.faces.size(); ++f) {
    const double nz = hull.planes[f].n.z();
    PolySurfaceMesh* side = nz > tol ? &split.upper : (nz < -tol ? &split.lower : nullptr);
    if (!side) {
      split.offenders.push_back(static_cast<int>(f));
      continue;
    }
    side->faces.push_back(hull.faces[f]);
    side->planes.push_back(hull.planes[f]);
  }
  if (!split.offenders.empty())
    throw Error(ErrorCode::NotSpacelike, "hull has vertical faces");
  if (!spacelike_support_planes(split.lower).ok || !spacelike_support_planes(split.upper).ok)
    throw Error(ErrorCode::NotSpacelike, "hull has a non-spacelike support plane");
  return split;
}

Plane3 flat_fast_path(const BoundaryCurve& curve) {
  const PointCloud3 pts = curve_chart_points(curve);
  Vec3 c = Vec3::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  Eigen::MatrixXd m(pts.size(), 3);
  for (std::size_t i = 0; i < pts.size(); ++i) m.row(i) = (pts[i] - c).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
  Vec3 n = svd.matrixV().col(2);
  if (n.z() < 0) n = -n;
  return Plane3{n, n.dot(c)};
}

bool cauchy_dev_oracle(const CylinderPoint& r, const GraphSurface& surface, int directions,
                       int steps) {
  const double g0 = r.t - surface.interpolate(r.u);
  if (g0 == 0) return true;
  // Below the graph: future rays must reach it; above: past rays.
  const double sense = g0 < 0 ? 1.0 : -1.0;
  for (int k = 0; k < directions; ++k) {
    const LightRay ray = make_ray(r.t, r.u, 2 * M_PI * k / directions);
    const auto [lo, hi] = ray.range();
    const double end = sense > 0 ? hi : lo;
    bool hit = false;
    for (int m = 1; m <= steps && !hit; ++m) {
      const double s = end * m / steps;
      const double g = ray.t0 + sense * std::abs(s) - surface.interpolate(ray.u(s));
      hit = sense > 0 ? g >= 0 : g <= 0;
    }
    if (!hit) return false;
  }
  return true;
}

CauchyDevReport cauchy_dev_equals_black_domain(const BoundaryCurve& curve,
                                               const GraphSurface& surface,
                                               const std::vector<CylinderPoint>& samples,
                                               int directions, int steps) {
  CauchyDevReport rep;
  for (const auto& r : samples) {
    const bool bd = black_domain_test(cylinder_to_proj(r), curve);
    const bool oracle = cauchy_dev_oracle(r, surface, directions, steps);
    ++rep.samples;
    rep.black_true += bd;
    rep.oracle_true += oracle;
    rep.disagreements += bd != oracle;
  }
  return rep;
}

}  // namespace adsgeom
