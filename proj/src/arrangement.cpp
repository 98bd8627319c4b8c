#include "pkc/arrangement.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

namespace pkc {

namespace {

constexpr double kPi = std::numbers::pi;

struct Breakpoint {
  double theta;
  Point p;
  int other;  // other disk through this point, -1 for extremal
};

// Merges coincident points (within tol) into one vertex id.
class VertexPool {
 public:
  explicit VertexPool(double tol) : tol_(tol) {}

  int intern(Point p, int disk_a, int disk_b, bool extremal) {
    for (int id : candidates(p)) {
      ArrVertex& v = vertices_[id];
      if (dist(v.p, p) <= tol_) {
        add_disk(v, disk_a);
        add_disk(v, disk_b);
        v.x_extremal = v.x_extremal || extremal;
        if (v.disk_b < 0 && disk_b >= 0) {
          v.disk_a = disk_a;
          v.disk_b = disk_b;
        }
        return id;
      }
    }
    ArrVertex v;
    v.p = p;
    v.disk_a = disk_a;
    v.disk_b = disk_b;
    v.x_extremal = extremal;
    add_disk(v, disk_a);
    add_disk(v, disk_b);
    vertices_.push_back(v);
    const int id = static_cast<int>(vertices_.size()) - 1;
    grid_[key(p)].push_back(id);
    return id;
  }

  std::vector<ArrVertex> take() { return std::move(vertices_); }

 private:
  static void add_disk(ArrVertex& v, int d) {
    if (d >= 0 && std::find(v.disks.begin(), v.disks.end(), d) == v.disks.end())
      v.disks.push_back(d);
  }
  std::pair<long long, long long> key(Point p) const {
    const double cell = std::max(tol_ * 16.0, 1e-7);
    return {static_cast<long long>(std::floor(p.x / cell)),
            static_cast<long long>(std::floor(p.y / cell))};
  }
  std::vector<int> candidates(Point p) const {
    std::vector<int> out;
    const auto [cx, cy] = key(p);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid_.find({cx + dx, cy + dy});
        if (it != grid_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
      }
    return out;
  }

  double tol_;
  std::vector<ArrVertex> vertices_;
  std::map<std::pair<long long, long long>, std::vector<int>> grid_;
};

}  // namespace

int level_of_point(Point x, std::span<const Disk> disks, double eps) {
  int level = 0;
  for (const Disk& d : disks)
    if (!disk_contains(d, x, eps)) ++level;
  return level;
}

LevelArrangement build_level_arrangement(std::span<const Disk> disks, int k, double eps) {
  LevelArrangement arr;
  arr.disks.assign(disks.begin(), disks.end());
  arr.k = k;
  arr.eps = eps;
  const int n = static_cast<int>(disks.size());
  VertexPool pool(10.0 * eps);

  std::vector<ArrArc> all_arcs;
  for (int i = 0; i < n; ++i) {
    const Circle ci{disks[i].center, disks[i].radius};
    std::vector<Breakpoint> bps;
    bps.push_back({-kPi, point_on(ci, kPi), -1});
    bps.push_back({0.0, point_on(ci, 0.0), -1});
    bps.push_back({kPi, point_on(ci, kPi), -1});
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Circle cj{disks[j].center, disks[j].radius};
      std::vector<Point> pts;
      try {
        pts = circle_circle_intersections(ci, cj, eps);
      } catch (const IdenticalCircles&) {
        continue;  // duplicate disks share every arc; levels still count both
      }
      for (Point p : pts) {
        double t = angle_of(ci.center, p);
        bps.push_back({t, p, j});
        if (std::abs(t - kPi) < 1e-15 || std::abs(t + kPi) < 1e-15) {
          bps.push_back({-t, p, j});
        }
      }
    }
    std::sort(bps.begin(), bps.end(),
              [](const Breakpoint& a, const Breakpoint& b) { return a.theta < b.theta; });
    const double ang_tol = 10.0 * eps / std::max(ci.radius, 1e-12);
    // Collapse breakpoints closer than the angular tolerance; keep every
    // incident disk on the surviving vertex.
    std::vector<int> ids;
    std::vector<double> thetas;
    std::vector<Point> id_points;
    for (const Breakpoint& b : bps) {
      const bool extremal = b.other < 0;
      if (!thetas.empty() && b.theta - thetas.back() <= ang_tol) {
        pool.intern(id_points.back(), i, b.other, extremal);
        continue;
      }
      thetas.push_back(b.theta);
      ids.push_back(pool.intern(b.p, i, b.other, extremal));
      id_points.push_back(b.p);
    }
    for (std::size_t q = 0; q + 1 < thetas.size(); ++q) {
      if (thetas[q + 1] - thetas[q] <= ang_tol) continue;
      ArrArc a;
      a.disk = i;
      a.theta0 = thetas[q];
      a.theta1 = thetas[q + 1];
      a.v0 = ids[q];
      a.v1 = ids[q + 1];
      a.upper = a.mid_angle() > 0.0;
      a.level = level_of_point(point_on(ci, a.mid_angle()), disks, eps);
      all_arcs.push_back(a);
    }
  }

  std::vector<ArrVertex> verts = pool.take();
  for (ArrVertex& v : verts) v.level = level_of_point(v.p, disks, eps);

  // Keep only the part of level <= k, compacting vertex ids.
  std::vector<int> remap(verts.size(), -1);
  auto keep_vertex = [&](int id) {
    if (remap[id] < 0) {
      remap[id] = static_cast<int>(arr.vertices.size());
      arr.vertices.push_back(verts[id]);
    }
    return remap[id];
  };
  for (std::size_t id = 0; id < verts.size(); ++id)
    if (verts[id].level <= k) keep_vertex(static_cast<int>(id));
  for (ArrArc a : all_arcs) {
    if (a.level > k) continue;
    a.v0 = keep_vertex(a.v0);
    a.v1 = keep_vertex(a.v1);
    arr.arcs.push_back(a);
  }
  arr.vertex_arcs.assign(arr.vertices.size(), {});
  for (std::size_t q = 0; q < arr.arcs.size(); ++q) {
    arr.vertex_arcs[arr.arcs[q].v0].push_back(static_cast<int>(q));
    if (arr.arcs[q].v1 != arr.arcs[q].v0)
      arr.vertex_arcs[arr.arcs[q].v1].push_back(static_cast<int>(q));
  }
  return arr;
}

std::map<int, VertexKind> classify_vertices(const LevelArrangement& arr) {
  std::map<int, VertexKind> out;
  const double r = arr.radius();
  const double delta = std::max(1e-6 * r, 1e3 * arr.eps);
  for (std::size_t id = 0; id < arr.vertices.size(); ++id) {
    const ArrVertex& v = arr.vertices[id];
    if (v.level > arr.k) continue;
    if (v.x_extremal) {
      out[static_cast<int>(id)] = VertexKind::extremal;
      continue;
    }
    if (v.disk_b < 0) continue;
    const Point c1 = arr.disks[v.disk_a].center;
    const Point c2 = arr.disks[v.disk_b].center;
    const Point u1 = (1.0 / std::max(dist(c1, v.p), 1e-300)) * (c1 - v.p);
    const Point u2 = (1.0 / std::max(dist(c2, v.p), 1e-300)) * (c2 - v.p);
    auto in_region = [&](Point dir) {
      const double len = norm(dir);
      if (len < 1e-12) return false;
      const Point probe = v.p + (delta / len) * dir;
      return level_of_point(probe, arr.disks, 0.0) <= arr.k;
    };
    const bool both = in_region(u1 + u2);
    const bool only1 = in_region(u1 - u2);
    const bool only2 = in_region(u2 - u1);
    const bool none = in_region(-1.0 * (u1 + u2));
    const bool upper_a = v.p.y >= c1.y;
    const bool upper_b = v.p.y >= c2.y;
    if (both && !only1 && !only2 && !none) {
      out[static_cast<int>(id)] = VertexKind::convex;
    } else if (both && only1 && only2 && !none) {
      out[static_cast<int>(id)] = VertexKind::concave;
    } else if (upper_a != upper_b) {
      out[static_cast<int>(id)] = VertexKind::extremal;
    }
  }
  return out;
}

bool arc_contains_angle(const CurveArc& a, double theta, double slack) {
  const double lo = std::min(a.from, a.to) - slack;
  const double hi = std::max(a.from, a.to) + slack;
  for (double t : {theta, theta - 2.0 * kPi, theta + 2.0 * kPi})
    if (t >= lo && t <= hi) return true;
  return false;
}

std::vector<Point> circle_curve_intersections(const Circle& c, const UnitDiskCurve& curve,
                                              double eps) {
  std::vector<Point> out;
  for (const CurveArc& a : curve.arcs) {
    const Point d = c.center - a.circle.center;
    if (norm(d) > c.radius + a.circle.radius + eps) continue;
    std::vector<Point> pts;
    try {
      pts = circle_circle_intersections(a.circle, c, eps);
    } catch (const IdenticalCircles&) {
      continue;
    }
    const double slack = 10.0 * eps / std::max(a.circle.radius, 1e-12);
    for (Point p : pts) {
      if (!arc_contains_angle(a, angle_of(a.circle.center, p), slack)) continue;
      const bool dup = std::any_of(out.begin(), out.end(),
                                   [&](Point q) { return dist(p, q) <= 1e3 * eps; });
      if (!dup) out.push_back(p);
    }
  }
  return out;
}

// Union-find over the level <= k arcs and vertices of the full arrangement;
// face pieces between consecutive arcs in each vertical slab join the arcs
// that bound them.
int connected_components(const LevelArrangement& arr) {
  const int n = static_cast<int>(arr.disks.size());
  if (n <= arr.k) return 1;
  const LevelArrangement full = build_level_arrangement(arr.disks, n, arr.eps);
  const int k = arr.k;
  const int na = static_cast<int>(full.arcs.size());
  const int nv = static_cast<int>(full.vertices.size());
  std::vector<int> parent(na + nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  std::vector<char> alive(na + nv, 0);
  for (int q = 0; q < na; ++q) {
    const ArrArc& a = full.arcs[q];
    if (a.level > k) continue;
    alive[q] = 1;
    alive[na + a.v0] = 1;
    alive[na + a.v1] = 1;
    unite(q, na + a.v0);
    unite(q, na + a.v1);
  }
  for (int v = 0; v < nv; ++v)
    if (full.vertices[v].level <= k) alive[na + v] = 1;

  std::vector<double> xs;
  for (const ArrVertex& v : full.vertices) xs.push_back(v.p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  struct Crossing {
    double y;
    int arc;
  };
  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    if (xs[s + 1] - xs[s] <= 1e-12) continue;
    const double xm = 0.5 * (xs[s] + xs[s + 1]);
    std::vector<Crossing> cs;
    for (int q = 0; q < na; ++q) {
      const ArrArc& a = full.arcs[q];
      const Circle c = full.circle(a.disk);
      const Point p0 = point_on(c, a.theta0);
      const Point p1 = point_on(c, a.theta1);
      const double lo = std::min(p0.x, p1.x), hi = std::max(p0.x, p1.x);
      if (!(lo < xm && xm < hi)) continue;
      const double dx = xm - c.center.x;
      const double h = std::sqrt(std::max(0.0, c.radius * c.radius - dx * dx));
      cs.push_back({a.upper ? c.center.y + h : c.center.y - h, q});
    }
    std::sort(cs.begin(), cs.end(), [](const Crossing& a, const Crossing& b) { return a.y < b.y; });
    for (std::size_t q = 0; q + 1 < cs.size(); ++q) {
      const Point probe{xm, 0.5 * (cs[q].y + cs[q + 1].y)};
      if (level_of_point(probe, full.disks, 0.0) <= k) unite(cs[q].arc, cs[q + 1].arc);
    }
  }
  int count = 0;
  for (int x = 0; x < na + nv; ++x)
    if (alive[x] && find(x) == x) ++count;
  return count;
}

std::vector<Disk> component_lower_bound_family(int k) {
  const int m = k / 2 + 1;
  const bool extra = (k % 2) == 1;
  const double w = 0.02;
  const double spacing = 0.1;
  std::vector<Disk> out;
  for (int i = 0; i < m; ++i) {
    const double off = (i - 0.5 * (m - 1)) * spacing;
    // Horizontal strip |y - off| <= w near the origin.
    out.push_back({{0.0, off + w - 1.0}, 1.0});
    out.push_back({{0.0, off - w + 1.0}, 1.0});
    // Vertical strip |x - off| <= w.
    out.push_back({{off + w - 1.0, 0.0}, 1.0});
    out.push_back({{off - w + 1.0, 0.0}, 1.0});
  }
  if (extra) out.push_back({{10.0, 10.0}, 1.0});
  return out;
}

}  // namespace pkc
