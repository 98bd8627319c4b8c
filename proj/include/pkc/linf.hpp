#pragma once

#include <array>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "pkc/geom.hpp"

namespace pkc {

class TooFewSquares : public std::invalid_argument {
 public:
  TooFewSquares() : std::invalid_argument("not enough squares for the requested budgets") {}
};

struct StabbingInstance {
  std::vector<Square> squares;
  int k = 0;
  int p = 1;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Closed box [xlo, xhi] x [ylo, yhi]. Squares are turned into boxes once,
/// with the containment tolerance folded into the half side, and every
/// stabbing test after that is an exact comparison.
struct Box {
  double xlo, xhi, ylo, yhi;
  bool contains(Point q) const { return q.x >= xlo && q.x <= xhi && q.y >= ylo && q.y <= yhi; }
};

std::vector<Box> boxes_of(std::span<const Square> squares, double eps);

/// Number of boxes containing at least one of `q`.
int count_stabbed(std::span<const Box> boxes, std::span<const Point> q);

struct HRectangle {
  double left = 0, right = 0, top = 0, bottom = 0;
  int jL = 1, jR = 1, jT = 1, jB = 1;
  std::vector<int> clipped;   // squares left after removing the extreme ones
  std::vector<int> interior;  // members of `clipped` that miss the boundary
  int k_interior = 0;
  bool degenerate = false;  // left >= right or bottom >= top
};

/// H for the budgets (jL, jR, jT, jB): the j-1 most extreme squares in each
/// direction are dropped (left and right first, then top and bottom from what
/// remains), ties broken by index.
HRectangle build_h_rectangle(std::span<const Square> squares, int jL, int jR, int jT, int jB,
                             double eps = 0.0);
HRectangle build_h_rectangle(std::span<const Box> boxes, std::span<const int> subset, int jL, int jR,
                             int jT, int jB);

enum class Direction { left, right, top, bottom };

/// View of S \ (S(q_1) u ... u S(q_m)). Four sorted orders over the base set
/// play the role of canonical subsets; a view stores only the removed points.
class CanonicalSubsetStructure {
 public:
  CanonicalSubsetStructure(std::span<const Box> boxes, std::vector<int> members);

  std::size_t size() const;
  bool contains(int i) const;
  std::vector<int> members() const;  // ascending index
  /// Index of the j-th most extreme member (1-based), or -1.
  int jth_extreme(Direction d, int j) const;
  const std::vector<Point>& removed() const { return removed_; }

  friend CanonicalSubsetStructure remove_stabbed(const CanonicalSubsetStructure& s, Point q);

 private:
  struct Base {
    std::vector<Box> boxes;
    std::vector<int> members;
    std::array<std::vector<int>, 4> order;
  };
  std::shared_ptr<const Base> base_;
  std::vector<Point> removed_;
};

CanonicalSubsetStructure remove_stabbed(const CanonicalSubsetStructure& s, Point q);

/// Nonnegative counters with a fixed total.
template <std::size_t N>
using OutlierBudget = std::array<int, N>;
using OutlierBudget9 = OutlierBudget<9>;

/// All compositions of `total` into N nonnegative parts, in lexicographic order.
template <std::size_t N>
std::vector<OutlierBudget<N>> enumerate_budgets(int total) {
  std::vector<OutlierBudget<N>> out;
  OutlierBudget<N> cur{};
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == N) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[i] = v;
      self(self, i + 1, left - v);
    }
  };
  if (total >= 0) rec(rec, 0, total);
  return out;
}

/// Positions of the four edge points and the outlier counters of one sweep.
/// Edge order is right, top, left, bottom; S_2 counters are left of both,
/// right of both, and between.
struct CaliperState {
  std::array<Point, 4> q{};
  std::array<int, 4> edge_budget{};
  std::array<int, 3> s2_budget{};
  bool top_right_of_bottom = true;
};

struct StabStats {
  long nodes = 0;
  long memo_hits = 0;
  long caliper_anchors = 0;
  long caliper_successes = 0;
  long slide_positions = 0;
};

struct StabResult {
  bool feasible = false;
  std::vector<Point> points;
};

struct Stab1dResult {
  bool feasible = false;
  std::vector<double> points;
};

Stab1dResult stab_decision_1d(std::span<const Interval> intervals, int p, int k);

StabResult stab_decision_small_p(std::span<const Square> squares, int p, int k,
                                 double eps = kDefaultEps, StabStats* stats = nullptr);
StabResult stab_decision_4(std::span<const Square> squares, int k, double eps = kDefaultEps,
                           StabStats* stats = nullptr);
StabResult stab_decision_5(std::span<const Square> squares, int k, double eps = kDefaultEps,
                           StabStats* stats = nullptr);
/// Dispatches on p in 1..5.
StabResult stab_decision(std::span<const Square> squares, int p, int k, double eps = kDefaultEps,
                         StabStats* stats = nullptr);

/// Four edge points, one per edge of a non-degenerate H, stabbing all but
/// `budget` of `subset`. Boundary-free squares count against the budget.
StabResult caliper_decision(std::span<const Box> boxes, std::span<const int> subset, const HRectangle& H,
                            int budget, StabStats* stats = nullptr);

/// Sorted distinct values of {0} u {|xi - xj|} u {|yi - yj|}.
std::vector<double> side_candidates(std::span<const Point> P);

struct LinfSolution {
  double side = 0.0;
  std::vector<Square> squares;
  std::vector<int> outliers;
};

LinfSolution optimize_linf(std::span<const Point> P, int p, int k, double eps = kDefaultEps,
                           StabStats* stats = nullptr);
bool decide_linf(std::span<const Point> P, int p, int k, double side, double eps = kDefaultEps);

}  // namespace pkc
