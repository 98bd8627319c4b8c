#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "pkc/arrangement.hpp"

namespace pkc {

namespace {

constexpr double kPi = std::numbers::pi;

// One boundary curve of the upper family: the upper semicircle of a disk,
// extended by steep rays. Lower family curves are handled by mirroring y.
struct SweepCurve {
  int disk;
  Circle c;
  double s() const { return c.center.x - c.radius; }
  double e() const { return c.center.x + c.radius; }
  bool active(double x) const { return x > s() && x < e(); }
  double y(double x) const {
    const double dx = x - c.center.x;
    return c.center.y + std::sqrt(std::max(0.0, c.radius * c.radius - dx * dx));
  }
  // Order key at abscissa x. Rays sit below every semicircle; among rays the
  // one closer to its endpoint is higher.
  std::pair<int, double> key(double x) const {
    if (active(x)) return {1, y(x)};
    return {0, -(x <= s() ? s() - x : x - e())};
  }
};

struct Piece {
  int curve;
  double x0, x1;
};

std::vector<std::vector<Piece>> chains_upper(const std::vector<SweepCurve>& cs, int k, double eps) {
  const int n = static_cast<int>(cs.size());
  std::vector<double> xs;
  for (const SweepCurve& c : cs) {
    xs.push_back(c.s());
    xs.push_back(c.e());
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<Point> pts;
      try {
        pts = circle_circle_intersections(cs[i].c, cs[j].c, eps);
      } catch (const IdenticalCircles&) {
        continue;
      }
      for (Point p : pts)
        if (p.y >= cs[i].c.center.y - eps && p.y >= cs[j].c.center.y - eps) xs.push_back(p.x);
      if (cs[i].e() < cs[j].s()) xs.push_back(0.5 * (cs[i].e() + cs[j].s()));
      if (cs[j].e() < cs[i].s()) xs.push_back(0.5 * (cs[j].e() + cs[i].s()));
    }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(), [](double a, double b) { return b - a <= 1e-13; }),
           xs.end());

  auto order_at = [&](double x) {
    std::vector<int> ord(n);
    for (int i = 0; i < n; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](int a, int b) {
      const auto ka = cs[a].key(x), kb = cs[b].key(x);
      if (ka != kb) return ka < kb;
      return a < b;
    });
    return ord;
  };

  const int m = std::min(n, k + 1);
  std::vector<std::vector<Piece>> chains(m);
  // Slab sample abscissae: one before all events, the midpoints, one after.
  std::vector<double> samples;
  samples.push_back(xs.front() - 1.0);
  for (std::size_t q = 0; q + 1 < xs.size(); ++q) samples.push_back(0.5 * (xs[q] + xs[q + 1]));
  samples.push_back(xs.back() + 1.0);

  std::vector<int> ord = order_at(samples.front());
  std::vector<int> chain_of_rank(m), curve_of_chain(m);
  for (int r = 0; r < m; ++r) {
    chain_of_rank[r] = r;
    curve_of_chain[r] = ord[r];
  }
  auto record = [&](std::size_t slab) {
    // slab s spans [xs[s-1], xs[s]] in sample numbering
    if (slab == 0 || slab + 1 == samples.size()) return;
    const double x0 = xs[slab - 1], x1 = xs[slab];
    for (int c = 0; c < m; ++c) {
      const int cv = curve_of_chain[c];
      if (!cs[cv].active(samples[slab])) continue;
      auto& pieces = chains[c];
      if (!pieces.empty() && pieces.back().curve == cv && std::abs(pieces.back().x1 - x0) <= 1e-13)
        pieces.back().x1 = x1;
      else
        pieces.push_back({cv, x0, x1});
    }
  };
  record(0);
  for (std::size_t s = 1; s < samples.size(); ++s) {
    const std::vector<int> target = order_at(samples[s]);
    std::vector<int> pos(n);
    for (int r = 0; r < n; ++r) pos[target[r]] = r;
    // Bubble sort ord into target; each adjacent swap is one crossing.
    bool swapped = true;
    while (swapped) {
      swapped = false;
      for (int r = 0; r + 1 < n; ++r) {
        if (pos[ord[r]] <= pos[ord[r + 1]]) continue;
        // Below rank k chains follow their curves. At rank k the curve
        // climbing out is dropped and its chain takes the one coming down.
        if (r + 1 < m) std::swap(chain_of_rank[r], chain_of_rank[r + 1]);
        std::swap(ord[r], ord[r + 1]);
        swapped = true;
      }
    }
    for (int r = 0; r < m; ++r) curve_of_chain[chain_of_rank[r]] = ord[r];
    record(s);
  }
  return chains;
}

double upper_angle(const Circle& c, double x) {
  return std::acos(std::clamp((x - c.center.x) / c.radius, -1.0, 1.0));
}

}  // namespace

std::vector<UnitDiskCurve> cover_by_curves(const LevelArrangement& arr) {
  std::vector<UnitDiskCurve> out;
  if (arr.disks.empty()) return out;
  for (const bool upper : {true, false}) {
    std::vector<SweepCurve> cs;
    for (std::size_t i = 0; i < arr.disks.size(); ++i) {
      Circle c = arr.circle(static_cast<int>(i));
      if (!upper) c.center.y = -c.center.y;
      cs.push_back({static_cast<int>(i), c});
    }
    for (const auto& pieces : chains_upper(cs, arr.k, arr.eps)) {
      UnitDiskCurve curve;
      curve.concave = upper;
      curve.monotone = true;
      for (const Piece& pc : pieces) {
        const Circle c = arr.circle(cs[pc.curve].disk);
        const double a0 = upper_angle(c, pc.x0), a1 = upper_angle(c, pc.x1);
        CurveArc a;
        a.disk = cs[pc.curve].disk;
        a.circle = c;
        a.from = upper ? a0 : -a0;
        a.to = upper ? a1 : -a1;
        curve.arcs.push_back(a);
      }
      if (!curve.arcs.empty()) out.push_back(std::move(curve));
    }
  }
  return out;
}

std::vector<UnitDiskCurve> monotone_decomposition(const LevelArrangement& arr,
                                                  DecompositionStats* stats) {
  const int nv = static_cast<int>(arr.vertices.size());
  const int na = static_cast<int>(arr.arcs.size());
  std::vector<std::vector<int>> out_arcs(nv);
  for (int q = 0; q < na; ++q) out_arcs[arr.arcs[q].left_vertex()].push_back(q);

  std::vector<char> extremal(nv, 0);
  for (int v = 0; v < nv; ++v) {
    bool up = false, down = false;
    for (int q : arr.vertex_arcs[v]) (arr.arcs[q].upper ? up : down) = true;
    extremal[v] = arr.vertices[v].x_extremal || (up && down);
  }

  std::vector<char> used(na, 0);
  std::vector<UnitDiskCurve> curves;
  auto to_curve_arc = [&](const ArrArc& a) {
    CurveArc c;
    c.disk = a.disk;
    c.circle = arr.circle(a.disk);
    c.from = a.upper ? a.theta1 : a.theta0;
    c.to = a.upper ? a.theta0 : a.theta1;
    return c;
  };
  auto walk = [&](int first) {
    UnitDiskCurve curve;
    curve.monotone = true;
    curve.concave = arr.arcs[first].upper;
    int cur = first;
    while (cur >= 0) {
      used[cur] = 1;
      curve.arcs.push_back(to_curve_arc(arr.arcs[cur]));
      const int w = arr.arcs[cur].right_vertex();
      if (extremal[w]) break;
      int next = -1;
      for (int q : out_arcs[w])
        if (arr.arcs[q].disk == arr.arcs[cur].disk && !used[q]) next = q;
      if (next < 0)
        for (int q : out_arcs[w])
          if (!used[q]) {
            next = q;
            break;
          }
      cur = next;
    }
    curves.push_back(std::move(curve));
  };

  int n_extremal = 0;
  for (int v = 0; v < nv; ++v) {
    if (!extremal[v]) continue;
    ++n_extremal;
    for (int q : out_arcs[v])
      if (!used[q]) {
        walk(q);
        if (stats) ++stats->walks;
      }
  }
  for (int q = 0; q < na; ++q)
    if (!used[q]) {
      walk(q);
      if (stats) {
        ++stats->walks;
        ++stats->repair_walks;
      }
    }
  if (stats) stats->extremal_vertices = n_extremal;
  return curves;
}

}  // namespace pkc
