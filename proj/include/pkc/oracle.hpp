#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "pkc/geom.hpp"

namespace pkc {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleCaps {
  int two_center_n = 14;
  int two_center_k = 3;
  int linf_n = 12;
  int linf_p = 5;
  int linf_k = 2;
};

/// Optimum plus every optimal placement the search met (centers of the
/// disks or squares) and the matching outlier sets.
struct OracleResult {
  double optimum = 0.0;
  std::vector<std::vector<Point>> witnesses;
  std::vector<std::vector<int>> outliers;
};

/// Exhaustive Euclidean (2,k)-center.
///
/// Any disk of the optimum can be replaced by one of the same radius centered
/// at the minimum enclosing circle of the points it covers. That circle is
/// fixed by one point, a diametral pair or a boundary triple, so the optimal
/// radius is one of the pair/triple radii and both centers can be drawn from
/// the points, pair midpoints and triple circumcenters.
OracleResult oracle_two_center(std::span<const Point> P, int k, const OracleCaps& caps = {});

/// Feasibility at a fixed radius, over the same finite center set.
bool oracle_two_center_decide(std::span<const Point> P, int k, double r, const OracleCaps& caps = {});

/// Exhaustive l-infinity (p,k)-center (squares given by center and side).
/// A covering square can slide right and up until its left and bottom edges
/// touch covered points, so squares anchored at (x_i, y_j) suffice and the
/// optimal side is a coordinate difference.
OracleResult oracle_linf(std::span<const Point> P, int p, int k, const OracleCaps& caps = {});

bool oracle_linf_decide(std::span<const Point> P, int p, int k, double side, const OracleCaps& caps = {});

/// Number of disks missing each sample point.
std::vector<int> oracle_levels(std::span<const Disk> disks, std::span<const Point> samples,
                               double eps = kDefaultEps);

}  // namespace pkc
