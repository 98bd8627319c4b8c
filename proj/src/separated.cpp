#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "pkc/arrangement.hpp"
#include "pkc/dynamic.hpp"
#include "pkc/euclid2k.hpp"

namespace pkc {

namespace {

using Mask = std::vector<std::uint64_t>;

Mask make_mask(std::size_t n) { return Mask((n + 63) / 64, 0); }
void set_bit(Mask& m, int i) { m[i / 64] |= std::uint64_t{1} << (i % 64); }
bool get_bit(const Mask& m, int i) { return (m[i / 64] >> (i % 64)) & 1U; }

}  // namespace

std::optional<std::optional<Point>> EmptinessCache::find(const Mask& mask, int j) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = memo_.find({mask, j});
  if (it == memo_.end()) return std::nullopt;
  ++hits_;
  return it->second;
}

void EmptinessCache::store(const Mask& mask, int j, std::optional<Point> answer) {
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(std::make_pair(mask, j), answer);
  ++misses_;
}

SeparatorCandidates candidate_separator_lines(std::span<const Point> P, int k,
                                              const Euclid2kConfig& cfg) {
  SeparatorCandidates out;
  const int n = static_cast<int>(P.size());
  const int h = cfg.directions;
  for (int i = 0; i < h; ++i) {
    const double a = 2.0 * std::numbers::pi * (i + 1) / h;
    out.directions.push_back({std::cos(a), std::sin(a)});
  }
  if (n == 0) return out;
  for (int i = 0; i < h; ++i) {
    const Point u = out.directions[i];
    std::vector<double> proj;
    for (Point p : P) proj.push_back(dot(p, u));
    std::sort(proj.begin(), proj.end());
    // a points before the interval and b after it are outliers, a + b <= k.
    for (int a = 0; a <= k; ++a)
      for (int b = 0; a + b <= k; ++b) {
        const int lo = a, hi = n - 1 - b;
        if (lo > hi) continue;
        const double s0 = proj[lo], s1 = proj[hi];
        if (s1 - s0 <= 0.0) {
          out.lines.push_back({u, s0, i});
          continue;
        }
        for (int q = 1; q <= cfg.line_points; ++q)
          out.lines.push_back({u, s0 + (s1 - s0) * q / (cfg.line_points + 1), i});
      }
  }
  return out;
}

std::vector<int> uncovered(std::span<const Point> P, Point c1, Point c2, double r, double eps) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(P.size()); ++i)
    if (dist(P[i], c1) > r + eps && dist(P[i], c2) > r + eps) out.push_back(i);
  return out;
}

ConsistencyDecision decide_consistent(std::span<const Point> P, const SeparatorLine& line, int k,
                                      double r, EmptinessCache* cache, double eps) {
  ConsistencyDecision out;
  const int n = static_cast<int>(P.size());
  std::vector<int> left, right;
  for (int i = 0; i < n; ++i) (dot(P[i], line.u) < line.s ? left : right).push_back(i);
  if (left.empty()) return out;

  std::vector<Disk> dminus;
  for (int i : left) dminus.push_back({P[i], r});
  const LevelArrangement arr = build_level_arrangement(dminus, k, eps);

  const double phi = std::atan2(line.u.y, line.u.x);
  DynamicDiskSet rest;  // right disks not covered by the first disk
  std::map<int, Handle> handles;
  for (int i : right) handles[i] = rest.insert({P[i], r});
  Mask covered_prev = make_mask(n);

  auto try_point = [&](Point x) -> bool {
    if (dot(x, line.u) > line.s + eps) return false;
    const int kappa = level_of_point(x, dminus, eps);
    if (kappa > k) return false;
    const int j = k - kappa;
    Mask covered = make_mask(n), remaining = make_mask(n);
    int n_remaining = 0;
    for (int i : right) {
      const bool in = dist(P[i], x) <= r + eps;
      if (in) set_bit(covered, i);
      else {
        set_bit(remaining, i);
        ++n_remaining;
      }
      // Apply the change against the previous edgelet to the dynamic set.
      if (in != get_bit(covered_prev, i)) {
        if (in) {
          rest.erase(handles[i]);
        } else {
          handles[i] = rest.insert({P[i], r});
        }
      }
    }
    covered_prev = covered;
    std::optional<Point> c2;
    if (n_remaining <= j) {
      c2 = x;
    } else if (auto hit = cache ? cache->find(remaining, j) : std::nullopt) {
      c2 = *hit;
    } else {
      c2 = rest.level_nonempty(j);
      if (cache) cache->store(remaining, j, c2);
    }
    if (!c2) return false;
    TwoCenter w;
    w.radius = r;
    w.c1 = x;
    w.c2 = *c2;
    w.outliers = uncovered(P, w.c1, w.c2, r, eps);
    out.verdict = true;
    out.witness = w;
    return true;
  };

  for (const ArrArc& a : arr.arcs) {
    const Circle c = arr.circle(a.disk);
    std::vector<double> ts{a.theta0, a.theta1};
    for (int i : right) {
      std::vector<Point> pts;
      try {
        pts = circle_circle_intersections(c, {P[i], r}, eps);
      } catch (const IdenticalCircles&) {
        continue;
      }
      for (Point p : pts) {
        const double t = angle_of(c.center, p);
        if (t > a.theta0 && t < a.theta1) ts.push_back(t);
      }
    }
    // Crossings with the line itself bound the admissible part of the arc.
    const double rhs = (line.s - dot(c.center, line.u)) / r;
    if (std::abs(rhs) <= 1.0) {
      const double d = std::acos(rhs);
      for (double t : {phi + d, phi - d, phi + d - 2 * std::numbers::pi, phi - d + 2 * std::numbers::pi})
        if (t > a.theta0 && t < a.theta1) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    const std::size_t base = ts.size();
    for (std::size_t q = 0; q + 1 < base; ++q) ts.push_back(0.5 * (ts[q] + ts[q + 1]));
    std::sort(ts.begin(), ts.end());
    for (double t : ts)
      if (try_point(point_on(c, t))) return out;
  }
  return out;
}

std::vector<double> candidate_radii(std::span<const Point> P, double eps) {
  std::vector<double> raw{0.0};
  const std::size_t n = P.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      raw.push_back(diametral_circle(P[i], P[j]).radius);
      for (std::size_t l = j + 1; l < n; ++l) {
        try {
          raw.push_back(circumcircle(P[i], P[j], P[l]).radius);
        } catch (const CollinearInput&) {
        }
      }
    }
  std::sort(raw.begin(), raw.end());
  std::vector<double> out;
  double prev = -kInfinity;
  for (double v : raw) {
    if (v - prev > eps) out.push_back(v);
    prev = v;
  }
  return out;
}

double snap_to_candidate(const std::vector<double>& candidates, double v) {
  auto it = std::upper_bound(candidates.begin(), candidates.end(), v + 1e-12);
  if (it == candidates.begin()) return v;
  return *std::prev(it);
}

SolveResult optimize_well_separated(std::span<const Point> P, int k, const Euclid2kConfig& cfg,
                                    SolveStats* stats, double below) {
  SolveResult res;
  const int n = static_cast<int>(P.size());
  if (n - k <= 2) {
    res.found = true;
    res.best.radius = 0.0;
    if (n > 0) res.best.c1 = P[0];
    res.best.c2 = n > 1 ? P[1] : res.best.c1;
    res.best.outliers = uncovered(P, res.best.c1, res.best.c2, 0.0, cfg.eps);
    return res;
  }
  const SeparatorCandidates cand = candidate_separator_lines(P, k, cfg);
  // Among lines of one direction inducing the same split, the rightmost one
  // is the least restrictive; the others are redundant.
  std::map<std::pair<int, std::vector<bool>>, SeparatorLine> best_line;
  for (const SeparatorLine& l : cand.lines) {
    std::vector<bool> split(n);
    bool any_left = false;
    for (int i = 0; i < n; ++i) {
      split[i] = dot(P[i], l.u) < l.s;
      any_left = any_left || split[i];
    }
    if (!any_left) continue;
    auto [it, fresh] = best_line.try_emplace({l.direction, split}, l);
    if (!fresh && l.s > it->second.s) it->second = l;
  }
  std::vector<SeparatorLine> lines;
  for (const auto& [key, l] : best_line) lines.push_back(l);
  if (stats) {
    stats->lines += static_cast<long>(cand.lines.size());
    stats->lines_after_pruning += static_cast<long>(lines.size());
  }

  std::vector<double> radii = candidate_radii(P, cfg.eps);
  radii.erase(std::lower_bound(radii.begin(), radii.end(), below), radii.end());
  if (radii.empty()) return res;

  auto decide = [&](double r, TwoCenter* witness) {
    EmptinessCache cache(r);
    std::vector<std::optional<TwoCenter>> found(lines.size());
    const long hit = first_true(
        static_cast<long>(lines.size()),
        [&](long q) {
          const ConsistencyDecision d = decide_consistent(P, lines[q], k, r, &cache, cfg.eps);
          if (d.verdict) found[q] = d.witness;
          return d.verdict;
        },
        cfg.policy);
    if (stats) stats->decision_calls += hit < 0 ? static_cast<long>(lines.size()) : hit + 1;
    if (hit >= 0 && witness) *witness = *found[hit];
    return hit >= 0;
  };

  TwoCenter w;
  if (!decide(radii.back(), &w)) return res;
  std::size_t lo = 0, hi = radii.size() - 1;  // radii[hi] feasible
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    TwoCenter wm;
    if (decide(radii[mid], &wm)) {
      hi = mid;
      w = wm;
    } else {
      lo = mid + 1;
    }
  }
  res.found = true;
  res.best = w;
  res.best.radius = radii[hi];
  return res;
}

}  // namespace pkc
