#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "pkc/linf.hpp"

namespace pkc {

Stab1dResult stab_decision_1d(std::span<const Interval> intervals, int p, int k) {
  const int n = static_cast<int>(intervals.size());
  Stab1dResult res;
  if (n <= k) {
    res.feasible = true;
    return res;
  }
  if (p <= 0) return res;

  std::vector<int> ord(n);
  for (int i = 0; i < n; ++i) ord[i] = i;
  std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return intervals[a].hi < intervals[b].hi; });
  std::vector<double> x(n);
  for (int t = 0; t < n; ++t) x[t] = intervals[ord[t]].hi;

  const double inf = std::numeric_limits<double>::infinity();
  // Intervals strictly between two consecutive points are the ones missed.
  auto gap = [&](double a, double b) {
    int c = 0;
    for (const Interval& iv : intervals)
      if (iv.lo > a && iv.hi < b) ++c;
    return c;
  };

  const int P = std::min(p, n);
  constexpr int kBig = std::numeric_limits<int>::max() / 2;
  // dp[c][t]: fewest misses left of x[t] with c points, the last at x[t].
  std::vector<std::vector<int>> dp(P + 1, std::vector<int>(n, kBig)), from(P + 1, std::vector<int>(n, -1));
  for (int t = 0; t < n; ++t) dp[1][t] = gap(-inf, x[t]);
  for (int c = 1; c < P; ++c)
    for (int t2 = 0; t2 < n; ++t2)
      for (int t = 0; t < t2; ++t) {
        if (!(x[t] < x[t2]) || dp[c][t] >= kBig) continue;
        const int v = dp[c][t] + gap(x[t], x[t2]);
        if (v < dp[c + 1][t2]) dp[c + 1][t2] = v, from[c + 1][t2] = t;
      }
  int best = kBig, bc = -1, bt = -1;
  for (int c = 1; c <= P; ++c)
    for (int t = 0; t < n; ++t) {
      if (dp[c][t] >= kBig) continue;
      const int v = dp[c][t] + gap(x[t], inf);
      if (v < best) best = v, bc = c, bt = t;
    }
  if (best > k) return res;
  res.feasible = true;
  for (int c = bc, t = bt; c >= 1; t = from[c][t], --c) res.points.push_back(x[t]);
  std::reverse(res.points.begin(), res.points.end());
  return res;
}

namespace {

Point center_of(const Box& b) { return {0.5 * (b.xlo + b.xhi), 0.5 * (b.ylo + b.yhi)}; }

class Solver {
 public:
  Solver(std::span<const Box> boxes, StabStats* stats) : boxes_(boxes), stats_(stats) {}

  StabResult decide(const std::vector<int>& S, int p, int kappa) {
    if (stats_) ++stats_->nodes;
    StabResult res;
    const int n = static_cast<int>(S.size());
    if (n <= kappa) {
      res.feasible = true;
      return res;
    }
    if (p <= 0) return res;
    if (p >= n - kappa) {
      res.feasible = true;
      for (int t = 0; t < n - kappa; ++t) res.points.push_back(center_of(boxes_[S[t]]));
      return res;
    }
    const std::string key = memo_key(S, p, kappa);
    if (auto it = memo_.find(key); it != memo_.end()) {
      if (stats_) ++stats_->memo_hits;
      return it->second;
    }
    if (p == 1) {
      res = deepest_point(S, kappa);
    } else {
      for (int jL = 1; jL <= kappa + 1 && !res.feasible; ++jL)
        for (int jR = 1; jL + jR - 2 <= kappa && !res.feasible; ++jR)
          for (int jT = 1; jL + jR + jT - 3 <= kappa && !res.feasible; ++jT)
            for (int jB = 1; jL + jR + jT + jB - 4 <= kappa && !res.feasible; ++jB) {
              const HRectangle H = build_h_rectangle(boxes_, S, jL, jR, jT, jB);
              res = inside(H, p, kappa - (jL + jR + jT + jB - 4));
            }
    }
    memo_.emplace(key, res);
    return res;
  }

 private:
  static std::string memo_key(const std::vector<int>& S, int p, int kappa) {
    std::string key;
    key.reserve(2 * S.size() + 2);
    key.push_back(static_cast<char>(p));
    key.push_back(static_cast<char>(kappa));
    for (int i : S) {
      key.push_back(static_cast<char>(i & 0xff));
      key.push_back(static_cast<char>((i >> 8) & 0xff));
      key.push_back(static_cast<char>((i >> 16) & 0xff));
    }
    return key;
  }

  // One point: the deepest point sits at (some right edge, some top edge).
  StabResult deepest_point(const std::vector<int>& S, int kappa) const {
    StabResult res;
    const int need = static_cast<int>(S.size()) - kappa;
    for (int a : S) {
      const double x = boxes_[a].xhi;
      for (int b : S) {
        const Point q{x, boxes_[b].yhi};
        int c = 0;
        for (int i : S)
          if (boxes_[i].contains(q)) ++c;
        if (c >= need) {
          res.feasible = true;
          res.points = {q};
          return res;
        }
      }
    }
    return res;
  }

  StabResult inside(const HRectangle& H, int p, int kappa) {
    const auto& S = H.clipped;
    StabResult res;
    if (static_cast<int>(S.size()) <= kappa) {
      res.feasible = true;
      return res;
    }
    if (H.degenerate) return one_dimensional(H, p, kappa);

    const CanonicalSubsetStructure view(boxes_, S);
    const std::array<Point, 4> corners{
        {{H.left, H.top}, {H.left, H.bottom}, {H.right, H.bottom}, {H.right, H.top}}};
    for (Point c : corners) {
      res = decide(remove_stabbed(view, c).members(), p - 1, kappa);
      if (res.feasible) {
        res.points.push_back(c);
        return res;
      }
    }
    if (p == 4) return caliper_decision(boxes_, S, H, kappa, stats_);
    if (p == 5) {
      // Some point lies on the bottom edge; one per constant-stab interval suffices.
      std::vector<double> xs{H.left, H.right};
      for (int i : S) {
        const Box& b = boxes_[i];
        if (!(b.ylo <= H.bottom && H.bottom <= b.yhi)) continue;
        for (double x : {b.xlo, b.xhi})
          if (x > H.left && x < H.right) xs.push_back(x);
      }
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      const std::size_t m = xs.size();
      for (std::size_t t = 0; t + 1 < m; ++t) xs.push_back(0.5 * (xs[t] + xs[t + 1]));
      for (double x : xs) {
        if (stats_) ++stats_->slide_positions;
        const Point q{x, H.bottom};
        res = decide(remove_stabbed(view, q).members(), 4, kappa);
        if (res.feasible) {
          res.points.push_back(q);
          return res;
        }
      }
    }
    return res;
  }

  // Every box shares a common x (or y) range, so only the other axis matters.
  StabResult one_dimensional(const HRectangle& H, int p, int kappa) const {
    const bool common_x = !(H.left < H.right);
    std::vector<Interval> iv;
    for (int i : H.clipped) {
      const Box& b = boxes_[i];
      iv.push_back(common_x ? Interval{b.ylo, b.yhi} : Interval{b.xlo, b.xhi});
    }
    const Stab1dResult r = stab_decision_1d(iv, p, kappa);
    StabResult res;
    res.feasible = r.feasible;
    for (double v : r.points) res.points.push_back(common_x ? Point{H.right, v} : Point{v, H.top});
    return res;
  }

  std::span<const Box> boxes_;
  StabStats* stats_;
  std::unordered_map<std::string, StabResult> memo_;
};

}  // namespace

StabResult stab_decision(std::span<const Square> squares, int p, int k, double eps, StabStats* stats) {
  if (p < 1 || p > 5) throw std::invalid_argument("stab_decision: p must be in 1..5");
  if (k < 0) throw std::invalid_argument("stab_decision: negative outlier budget");
  const auto boxes = boxes_of(squares, eps);
  std::vector<int> all(boxes.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  Solver solver(boxes, stats);
  StabResult res = solver.decide(all, p, k);
  if (res.feasible && count_stabbed(boxes, res.points) < static_cast<int>(boxes.size()) - k)
    throw std::logic_error("stab_decision: witness does not stab enough squares");
  return res;
}

StabResult stab_decision_small_p(std::span<const Square> squares, int p, int k, double eps, StabStats* stats) {
  if (p < 1 || p > 3) throw std::invalid_argument("stab_decision_small_p: p must be in 1..3");
  return stab_decision(squares, p, k, eps, stats);
}

StabResult stab_decision_4(std::span<const Square> squares, int k, double eps, StabStats* stats) {
  return stab_decision(squares, 4, k, eps, stats);
}

StabResult stab_decision_5(std::span<const Square> squares, int k, double eps, StabStats* stats) {
  return stab_decision(squares, 5, k, eps, stats);
}

}  // namespace pkc
