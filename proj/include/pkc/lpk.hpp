#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pkc/geom.hpp"

namespace pkc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class Infeasible : public std::runtime_error {
 public:
  Infeasible() : std::runtime_error("infeasible LP-type instance") {}
};

/// Result of solving an LP-type instance on a subset of its constraints.
struct LpValue {
  double value = 0.0;          ///< +inf when infeasible
  std::vector<int> basis;      ///< constraint indices, sorted
  bool feasible = true;
};

struct Basis {
  std::vector<int> constraints;  ///< sorted
  double value = 0.0;
  std::vector<int> violated;     ///< removed constraints, sorted
  bool feasible = true;
};

/// An LP-type problem given by an objective evaluator over constraint
/// subsets. `objective` receives sorted active indices.
struct ViolationLpProblem {
  int size = 0;
  int basis_size_bound = 3;
  int k = 0;
  std::function<LpValue(std::span<const int>)> objective;
};

struct EnumerationStats {
  long nodes = 0;       ///< distinct removed sets evaluated
  long memo_hits = 0;
};

/// Solves with no violations. Throws Infeasible when the instance is.
Basis solve_lp_type(const ViolationLpProblem& problem);

/// Removal recursion: at each node drop one current basis constraint, until
/// `k` have been removed. Nodes are memoized on the sorted removed set.
/// Bases are returned in visiting order (breadth-first by removal count).
std::vector<Basis> enumerate_bases_with_violations(const ViolationLpProblem& problem, int k,
                                                   EnumerationStats* stats = nullptr);

/// Minimum enclosing disk as an LP-type problem over `points`.
ViolationLpProblem enclosing_disk_problem(std::span<const Point> points, int k = 0);

/// Lowest point in the common intersection of congruent disks.
ViolationLpProblem lowest_point_problem(std::span<const Disk> disks, int k = 0);

/// r^t(X): smallest circle covering at least |points| - t points.
Circle one_center_with_outliers(std::span<const Point> points, int t,
                                EnumerationStats* stats = nullptr);

/// Lowest point lying in all but at most `j` disks; nullopt if none exists.
std::optional<Point> lowest_point_in_intersection(std::span<const Disk> disks, int j,
                                                  EnumerationStats* stats = nullptr);

/// Lowest point of the plain intersection (no violations), with its basis.
std::optional<Point> lowest_point_exact(std::span<const Disk> disks, std::vector<int>* basis = nullptr,
                                        double eps = kDefaultEps);

}  // namespace pkc
