#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pkc/geom.hpp"
#include "pkc/lpk.hpp"
#include "pkc/parallel.hpp"

namespace pkc {

/// Tuning knobs of the Euclidean solver.
struct Euclid2kConfig {
  int directions = 16;             ///< h, separator directions
  int line_points = 8;             ///< m, equidistant lines per interval
  int grid = 5;                    ///< intersector pattern is grid x grid
  double grid_spacing = 0.5;       ///< in units of the recursion circle radius
  int concentric_directions = 16;  ///< |U| for the nearly concentric case
  double eps = kDefaultEps;
  ExecPolicy policy = ExecPolicy::serial;
};

/// Oriented line {x : <x, u> = s}. Points with <p, u> < s are on the left.
struct SeparatorLine {
  Point u;
  double s = 0.0;
  int direction = 0;
};

struct SeparatorCandidates {
  std::vector<Point> directions;
  std::vector<SeparatorLine> lines;
};

SeparatorCandidates candidate_separator_lines(std::span<const Point> P, int k,
                                              const Euclid2kConfig& cfg = {});

struct TwoCenter {
  double radius = 0.0;
  Point c1, c2;
  std::vector<int> outliers;  ///< sorted indices not covered by either disk
};

struct ConsistencyDecision {
  bool verdict = false;
  std::optional<TwoCenter> witness;
};

/// Memo of level-emptiness answers for one radius, keyed by the set of
/// right-side disks still to be covered and the remaining budget. Shared by
/// all lines decided at that radius; safe for concurrent use.
class EmptinessCache {
 public:
  explicit EmptinessCache(double r) : radius_(r) {}
  double radius() const { return radius_; }
  std::optional<std::optional<Point>> find(const std::vector<std::uint64_t>& mask, int j) const;
  void store(const std::vector<std::uint64_t>& mask, int j, std::optional<Point> answer);
  long hits() const { return hits_; }
  long misses() const { return misses_; }

 private:
  double radius_;
  mutable std::mutex mu_;
  std::map<std::pair<std::vector<std::uint64_t>, int>, std::optional<Point>> memo_;
  mutable long hits_ = 0;
  long misses_ = 0;
};

/// Is there a radius-r (2,k)-center consistent with the line? Walks the
/// edgelets of the <=k level of the left disks, maintaining the right disks
/// already covered by the first disk.
ConsistencyDecision decide_consistent(std::span<const Point> P, const SeparatorLine& line, int k,
                                      double r, EmptinessCache* cache = nullptr,
                                      double eps = kDefaultEps);

/// All pair half-distances and triple circumradii (plus 0), sorted; values
/// closer than eps are merged into the smallest of their chain.
std::vector<double> candidate_radii(std::span<const Point> P, double eps = kDefaultEps);

/// Largest candidate not exceeding v (+1e-12); v itself if none is.
double snap_to_candidate(const std::vector<double>& candidates, double v);

struct SolveStats {
  long decision_calls = 0;
  long lines = 0;
  long lines_after_pruning = 0;
  long cells_evaluated = 0;
  long matrix_searches = 0;
  long intersector_points = 0;
  std::vector<long> pool_sizes;  ///< summed over searches, per phase
};

struct SolveResult {
  TwoCenter best;
  bool found = false;
};

/// Smallest radius at which some candidate line admits a consistent
/// (2,k)-center. Only candidates strictly below `below` are searched.
SolveResult optimize_well_separated(std::span<const Point> P, int k, const Euclid2kConfig& cfg = {},
                                    SolveStats* stats = nullptr, double below = kInfinity);

/// Recursion circles of the (1,k)-center enumeration, each contributing a
/// grid of points.
std::vector<Point> intersector_candidates(std::span<const Point> P, int k,
                                          const Euclid2kConfig& cfg = {});

/// Cache of r^t over subsets (bitmask) of one point set.
class OneCenterCache {
 public:
  OneCenterCache(std::span<const Point> P, int k);
  /// r^t of the subset; the circle is available through `circle`.
  double radius(std::uint64_t mask, int t);
  Circle circle(std::uint64_t mask, int t);
  long evaluations() const { return evaluations_; }

 private:
  std::vector<Point> points_;
  int k_;
  std::vector<std::vector<double>> memo_;  // memo_[t] dense over masks when small
  std::map<std::pair<std::uint64_t, int>, double> sparse_;
  long evaluations_ = 0;
  std::mutex mu_;
};

/// The matrix M^t for a fixed intersector z and direction u.
class PartitionMatrix {
 public:
  PartitionMatrix(std::span<const Point> P, Point z, Point u, int k, int t,
                  std::shared_ptr<OneCenterCache> cache);

  int rows() const { return static_cast<int>(plus_.size()) + 1; }
  int cols() const { return static_cast<int>(minus_.size()) + 1; }
  int t() const { return t_; }
  int k() const { return k_; }
  const std::vector<int>& sorted_plus() const { return plus_; }
  const std::vector<int>& sorted_minus() const { return minus_; }

  std::uint64_t p_mask(int i, int j) const;
  std::uint64_t q_mask(int i, int j) const;
  double r_p(int i, int j) const;  ///< r^t(P_{i,j})
  double r_q(int i, int j) const;  ///< r^{k-t}(Q_{i,j})
  /// m^t_{i,j}; +inf outside the real matrix (padding).
  double evaluate(int i, int j) const;
  long evaluations() const { return evaluations_; }

 private:
  std::vector<int> plus_, minus_;
  std::uint64_t all_ = 0;
  int k_, t_;
  std::shared_ptr<OneCenterCache> cache_;
  mutable long evaluations_ = 0;
};

struct SearchTrace {
  std::vector<long> pool_sizes;          ///< pool size at the start of each phase
  std::vector<std::pair<int, int>> picks;  ///< randomized pivots, in order
  long cells = 0;
};

struct MatrixMin {
  double value = kInfinity;
  int i = -1, j = -1;
};

MatrixMin matrix_search_exhaustive(const PartitionMatrix& M);
MatrixMin matrix_search_deterministic(const PartitionMatrix& M, SearchTrace* trace = nullptr);
MatrixMin matrix_search_randomized(const PartitionMatrix& M, std::uint64_t seed,
                                   SearchTrace* trace = nullptr);

enum class SearchMode { deterministic, randomized };

SolveResult solve_nearly_concentric(std::span<const Point> P, int k, SearchMode mode,
                                    std::uint64_t seed = 1, const Euclid2kConfig& cfg = {},
                                    SolveStats* stats = nullptr);

/// Optimal (2,k)-center: the better of the two cases, snapped onto the
/// candidate radius set.
TwoCenter solve_two_center_outliers(std::span<const Point> P, int k, SearchMode mode,
                                    std::uint64_t seed = 1, const Euclid2kConfig& cfg = {},
                                    SolveStats* stats = nullptr);

/// Indices not covered by either radius-r disk at c1, c2.
std::vector<int> uncovered(std::span<const Point> P, Point c1, Point c2, double r,
                           double eps = kDefaultEps);

}  // namespace pkc
