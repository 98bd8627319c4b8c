#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pkc/linf.hpp"

namespace pkc {

std::vector<double> side_candidates(std::span<const Point> P) {
  std::vector<double> v{0.0};
  v.reserve(1 + P.size() * P.size());
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = i + 1; j < P.size(); ++j) {
      v.push_back(std::abs(P[i].x - P[j].x));
      v.push_back(std::abs(P[i].y - P[j].y));
    }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

namespace {

std::vector<Square> squares_at(std::span<const Point> P, double side) {
  std::vector<Square> sq;
  sq.reserve(P.size());
  for (Point c : P) sq.push_back({c, side});
  return sq;
}

}  // namespace

bool decide_linf(std::span<const Point> P, int p, int k, double side, double eps) {
  const auto sq = squares_at(P, side);
  return stab_decision(sq, p, k, eps).feasible;
}

LinfSolution optimize_linf(std::span<const Point> P, int p, int k, double eps, StabStats* stats) {
  if (P.empty()) throw EmptyInput();
  if (p < 1 || p > 5) throw std::invalid_argument("optimize_linf: p must be in 1..5");
  if (k < 0) throw std::invalid_argument("optimize_linf: negative outlier budget");
  LinfSolution sol;
  if (k >= static_cast<int>(P.size())) {
    for (std::size_t i = 0; i < P.size(); ++i) sol.outliers.push_back(static_cast<int>(i));
    return sol;
  }

  // The largest candidate is the bounding box side, which one square covers.
  const std::vector<double> sides = side_candidates(P);
  std::size_t lo = 0, hi = sides.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (stab_decision(squares_at(P, sides[mid]), p, k, eps, stats).feasible)
      hi = mid;
    else
      lo = mid + 1;
  }
  sol.side = sides[hi];
  const StabResult r = stab_decision(squares_at(P, sol.side), p, k, eps, stats);
  for (Point q : r.points) sol.squares.push_back({q, sol.side});
  // Same box arithmetic as the decision, so coverage agrees bit for bit.
  const auto boxes = boxes_of(squares_at(P, sol.side), eps);
  for (std::size_t i = 0; i < P.size(); ++i)
    if (count_stabbed(std::span<const Box>(&boxes[i], 1), r.points) == 0) sol.outliers.push_back(static_cast<int>(i));
  return sol;
}

}  // namespace pkc
