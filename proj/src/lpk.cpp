#include "pkc/lpk.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace pkc {

namespace {

std::vector<int> complement(int n, const std::vector<int>& removed) {
  std::vector<int> active;
  active.reserve(n);
  std::size_t r = 0;
  for (int i = 0; i < n; ++i) {
    if (r < removed.size() && removed[r] == i) {
      ++r;
      continue;
    }
    active.push_back(i);
  }
  return active;
}

// Lowest point on circle i lying in every disk of `others`, or nullopt.
std::optional<Point> lowest_on_circle(const Disk& di, std::span<const Disk> disks,
                                      std::span<const int> others, double eps, int* partner) {
  const Circle ci{di.center, di.radius};
  std::vector<std::pair<Point, int>> cand;
  cand.push_back({{di.center.x, di.center.y - di.radius}, -1});
  for (int j : others) {
    const Circle cj{disks[j].center, disks[j].radius};
    std::vector<Point> pts;
    try {
      pts = circle_circle_intersections(ci, cj, eps);
    } catch (const IdenticalCircles&) {
      continue;
    }
    for (Point p : pts) cand.push_back({p, j});
  }
  std::optional<Point> best;
  int best_partner = -1;
  for (const auto& [p, j] : cand) {
    if (best && !(p.y < best->y)) continue;
    bool ok = true;
    for (int o : others)
      if (!disk_contains(disks[o], p, eps)) {
        ok = false;
        break;
      }
    if (ok) {
      best = p;
      best_partner = j;
    }
  }
  if (partner) *partner = best_partner;
  return best;
}

}  // namespace

std::optional<Point> lowest_point_exact(std::span<const Disk> disks, std::vector<int>* basis,
                                        double eps) {
  if (disks.empty()) {
    if (basis) basis->clear();
    return std::nullopt;
  }
  // Incremental: keep the lowest point of the prefix; when a new disk misses
  // it, the new lowest point lies on that disk's boundary.
  Point cur{disks[0].center.x, disks[0].center.y - disks[0].radius};
  std::vector<int> b{0};
  std::vector<int> prefix{0};
  for (int i = 1; i < static_cast<int>(disks.size()); ++i) {
    if (!disk_contains(disks[i], cur, eps)) {
      int partner = -1;
      auto p = lowest_on_circle(disks[i], disks, prefix, eps, &partner);
      if (!p) {
        if (basis) {
          // Witness: a disjoint pair, else an empty triple.
          basis->clear();
          std::vector<int> all = prefix;
          all.push_back(i);
          for (std::size_t x = 0; x < all.size() && basis->empty(); ++x)
            for (std::size_t y = x + 1; y < all.size() && basis->empty(); ++y)
              if (dist(disks[all[x]].center, disks[all[y]].center) >
                  disks[all[x]].radius + disks[all[y]].radius + eps)
                *basis = {all[x], all[y]};
          for (std::size_t x = 0; x < all.size() && basis->empty(); ++x)
            for (std::size_t y = x + 1; y < all.size() && basis->empty(); ++y)
              for (std::size_t z = y + 1; z < all.size() && basis->empty(); ++z) {
                const Disk tri[3] = {disks[all[x]], disks[all[y]], disks[all[z]]};
                if (!lowest_point_exact(tri, nullptr, eps)) *basis = {all[x], all[y], all[z]};
              }
          std::sort(basis->begin(), basis->end());
        }
        return std::nullopt;
      }
      cur = *p;
      b = partner < 0 ? std::vector<int>{i} : std::vector<int>{std::min(i, partner), std::max(i, partner)};
    }
    prefix.push_back(i);
  }
  if (basis) {
    // With three or more circles through the optimum the last update's pair
    // need not define it; pick the first tight disk or pair that does.
    const double tol = 100 * eps;
    std::vector<int> tight;
    for (int i = 0; i < static_cast<int>(disks.size()); ++i)
      if (std::abs(dist(disks[i].center, cur) - disks[i].radius) <= tol) tight.push_back(i);
    *basis = b;
    bool done = false;
    for (int a : tight)
      if (!done && dist(Point{disks[a].center.x, disks[a].center.y - disks[a].radius}, cur) <= tol) {
        *basis = {a};
        done = true;
      }
    for (std::size_t x = 0; x < tight.size() && !done; ++x)
      for (std::size_t y = x + 1; y < tight.size() && !done; ++y) {
        const Disk pair[2] = {disks[tight[x]], disks[tight[y]]};
        const auto q = lowest_point_exact(pair, nullptr, eps);
        if (q && dist(*q, cur) <= tol) {
          *basis = {tight[x], tight[y]};
          done = true;
        }
      }
  }
  return cur;
}

Basis solve_lp_type(const ViolationLpProblem& problem) {
  std::vector<int> all(problem.size);
  for (int i = 0; i < problem.size; ++i) all[i] = i;
  const LpValue v = problem.objective(all);
  if (!v.feasible) throw Infeasible();
  return {v.basis, v.value, {}, true};
}

std::vector<Basis> enumerate_bases_with_violations(const ViolationLpProblem& problem, int k,
                                                   EnumerationStats* stats) {
  std::vector<Basis> out;
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  queue.push_back({});
  seen.insert({});
  while (!queue.empty()) {
    std::vector<int> removed = std::move(queue.front());
    queue.pop_front();
    const std::vector<int> active = complement(problem.size, removed);
    const LpValue v = problem.objective(active);
    if (stats) ++stats->nodes;
    out.push_back({v.basis, v.value, removed, v.feasible});
    if (static_cast<int>(removed.size()) >= k) continue;
    for (int b : v.basis) {
      std::vector<int> child = removed;
      child.insert(std::lower_bound(child.begin(), child.end(), b), b);
      if (seen.insert(child).second) {
        queue.push_back(std::move(child));
      } else if (stats) {
        ++stats->memo_hits;
      }
    }
  }
  return out;
}

ViolationLpProblem enclosing_disk_problem(std::span<const Point> points, int k) {
  ViolationLpProblem prob;
  prob.size = static_cast<int>(points.size());
  prob.basis_size_bound = 3;
  prob.k = k;
  std::vector<Point> pts(points.begin(), points.end());
  prob.objective = [pts](std::span<const int> active) {
    LpValue v;
    if (active.empty()) {
      v.value = 0.0;
      return v;
    }
    std::vector<Point> sub;
    sub.reserve(active.size());
    for (int i : active) sub.push_back(pts[i]);
    std::vector<std::size_t> support;
    const Circle c = min_enclosing_disk(sub, support);
    v.value = c.radius;
    for (std::size_t s : support) v.basis.push_back(active[s]);
    std::sort(v.basis.begin(), v.basis.end());
    return v;
  };
  return prob;
}

ViolationLpProblem lowest_point_problem(std::span<const Disk> disks, int k) {
  ViolationLpProblem prob;
  prob.size = static_cast<int>(disks.size());
  prob.basis_size_bound = 2;
  prob.k = k;
  std::vector<Disk> ds(disks.begin(), disks.end());
  prob.objective = [ds](std::span<const int> active) {
    LpValue v;
    if (active.empty()) {
      // Whole plane: no lowest point; treated as -inf so callers can tell.
      v.value = -kInfinity;
      return v;
    }
    std::vector<Disk> sub;
    sub.reserve(active.size());
    for (int i : active) sub.push_back(ds[i]);
    std::vector<int> basis;
    const auto p = lowest_point_exact(sub, &basis);
    for (int b : basis) v.basis.push_back(active[b]);
    std::sort(v.basis.begin(), v.basis.end());
    if (!p) {
      v.feasible = false;
      v.value = kInfinity;
    } else {
      v.value = p->y;
    }
    return v;
  };
  return prob;
}

Circle one_center_with_outliers(std::span<const Point> points, int t, EnumerationStats* stats) {
  if (t >= static_cast<int>(points.size())) {
    return {points.empty() ? Point{} : points.front(), 0.0};
  }
  const ViolationLpProblem prob = enclosing_disk_problem(points, t);
  const auto bases = enumerate_bases_with_violations(prob, t, stats);
  const Basis* best = nullptr;
  for (const Basis& b : bases)
    if (!best || b.value < best->value ||
        (b.value == best->value && b.constraints < best->constraints))
      best = &b;
  std::vector<Point> def;
  for (int i : best->constraints) def.push_back(points[i]);
  return min_enclosing_disk(def);
}

std::optional<Point> lowest_point_in_intersection(std::span<const Disk> disks, int j,
                                                  EnumerationStats* stats) {
  if (disks.empty()) return std::nullopt;
  if (j >= static_cast<int>(disks.size())) {
    // Every point qualifies and there is no lowest one; report the lowest
    // disk bottom as a representative.
    Point best{disks[0].center.x, disks[0].center.y - disks[0].radius};
    for (const Disk& d : disks)
      if (d.center.y - d.radius < best.y) best = {d.center.x, d.center.y - d.radius};
    return best;
  }
  const ViolationLpProblem prob = lowest_point_problem(disks, j);
  const auto bases = enumerate_bases_with_violations(prob, j, stats);
  const Basis* best = nullptr;
  for (const Basis& b : bases) {
    if (!b.feasible) continue;
    if (!best || b.value < best->value ||
        (b.value == best->value && b.constraints < best->constraints))
      best = &b;
  }
  if (!best) return std::nullopt;
  std::vector<Disk> def;
  for (int i : best->constraints) def.push_back(disks[i]);
  return lowest_point_exact(def);
}

}  // namespace pkc
