#include "pkc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>

namespace pkc {

namespace {

using Mask = std::uint32_t;

void check_two_center_caps(std::span<const Point> P, int k, const OracleCaps& caps) {
  if (static_cast<int>(P.size()) > caps.two_center_n || k > caps.two_center_k || P.size() > 31)
    throw CapExceeded("oracle_two_center: n=" + std::to_string(P.size()) + " k=" + std::to_string(k));
}

std::vector<Point> two_center_centers(std::span<const Point> P) {
  std::vector<Point> c(P.begin(), P.end());
  const std::size_t n = P.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      c.push_back(diametral_circle(P[i], P[j]).center);
      for (std::size_t l = j + 1; l < n; ++l) {
        try {
          c.push_back(circumcircle(P[i], P[j], P[l]).center);
        } catch (const CollinearInput&) {
        }
      }
    }
  return c;
}

std::vector<double> two_center_radii(std::span<const Point> P, double eps) {
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
  // Merge values closer than eps, keeping the smallest of each chain.
  std::vector<double> out;
  for (std::size_t q = 0; q < raw.size(); ++q)
    if (q == 0 || raw[q] - raw[q - 1] > eps) out.push_back(raw[q]);
  return out;
}

// Coverage masks of all centers, keeping one copy of each maximal mask.
std::vector<std::pair<Mask, Point>> disk_masks(std::span<const Point> P, const std::vector<Point>& centers,
                                               double r, double eps) {
  std::vector<std::pair<Mask, Point>> all;
  for (Point c : centers) {
    Mask m = 0;
    for (std::size_t i = 0; i < P.size(); ++i)
      if (std::hypot(P[i].x - c.x, P[i].y - c.y) <= r + eps) m |= Mask{1} << i;
    all.push_back({m, c});
  }
  return all;
}

std::vector<int> missing(Mask covered, std::size_t n) {
  std::vector<int> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!(covered >> i & 1U)) out.push_back(static_cast<int>(i));
  return out;
}

// Pairs of masks whose union misses at most k points.
bool two_masks_cover(const std::vector<std::pair<Mask, Point>>& masks, std::size_t n, int k,
                     OracleResult* sink) {
  std::vector<std::pair<Mask, Point>> uniq;
  std::set<Mask> seen;
  for (const auto& mp : masks)
    if (seen.insert(mp.first).second) uniq.push_back(mp);
  const int need = static_cast<int>(n) - k;
  bool any = false;
  for (std::size_t a = 0; a < uniq.size(); ++a)
    for (std::size_t b = a; b < uniq.size(); ++b) {
      const Mask u = uniq[a].first | uniq[b].first;
      if (std::popcount(u) < need) continue;
      if (!sink) return true;
      any = true;
      if (sink->witnesses.size() < 64) {
        sink->witnesses.push_back({uniq[a].second, uniq[b].second});
        sink->outliers.push_back(missing(u, n));
      }
    }
  return any;
}

void check_linf_caps(std::span<const Point> P, int p, int k, const OracleCaps& caps) {
  if (static_cast<int>(P.size()) > caps.linf_n || p > caps.linf_p || k > caps.linf_k || P.size() > 31)
    throw CapExceeded("oracle_linf: n=" + std::to_string(P.size()) + " p=" + std::to_string(p) +
                      " k=" + std::to_string(k));
}

struct SquareMask {
  Mask m;
  Point lower_left;
};

std::vector<SquareMask> square_masks(std::span<const Point> P, double s, double eps) {
  std::vector<SquareMask> out;
  std::set<Mask> seen;
  for (Point a : P)
    for (Point b : P) {
      const Point ll{a.x, b.y};
      Mask m = 0;
      for (std::size_t i = 0; i < P.size(); ++i)
        if (P[i].x >= ll.x - eps && P[i].x <= ll.x + s + eps && P[i].y >= ll.y - eps &&
            P[i].y <= ll.y + s + eps)
          m |= Mask{1} << i;
      if (seen.insert(m).second) out.push_back({m, ll});
    }
  // Drop masks contained in another one.
  std::vector<SquareMask> maximal;
  for (const auto& x : out) {
    bool dominated = false;
    for (const auto& y : out)
      if (y.m != x.m && (x.m & y.m) == x.m) dominated = true;
    if (!dominated) maximal.push_back(x);
  }
  return maximal;
}

// Branch on the lowest uncovered point: drop it or cover it with a square.
bool linf_dfs(const std::vector<SquareMask>& sq, std::size_t n, Mask covered, int p, int k,
              std::vector<Point>& chosen, std::set<std::tuple<Mask, int, int>>& dead, OracleResult* sink,
              Mask dropped) {
  const Mask full = n == 32 ? ~Mask{0} : ((Mask{1} << n) - 1);
  Mask open = full & ~covered & ~dropped;
  if (open == 0) {
    if (sink && sink->witnesses.size() < 64) {
      sink->witnesses.push_back(chosen);
      sink->outliers.push_back(missing(covered, n));
    }
    return true;
  }
  if (dead.count({covered | dropped, p, k})) return false;
  const int u = std::countr_zero(open);
  bool ok = false;
  if (k > 0) ok = linf_dfs(sq, n, covered, p, k - 1, chosen, dead, sink, dropped | (Mask{1} << u));
  if (!ok && p > 0) {
    for (const auto& s : sq) {
      if (!(s.m >> u & 1U)) continue;
      chosen.push_back(s.lower_left);
      ok = linf_dfs(sq, n, covered | s.m, p - 1, k, chosen, dead, sink, dropped);
      chosen.pop_back();
      if (ok) break;
    }
  }
  if (!ok) dead.insert({covered | dropped, p, k});
  return ok;
}

std::vector<double> linf_sides(std::span<const Point> P) {
  std::vector<double> v{0.0};
  for (Point a : P)
    for (Point b : P) {
      v.push_back(std::abs(a.x - b.x));
      v.push_back(std::abs(a.y - b.y));
    }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

bool oracle_two_center_decide(std::span<const Point> P, int k, double r, const OracleCaps& caps) {
  check_two_center_caps(P, k, caps);
  if (static_cast<int>(P.size()) - k <= 0) return true;
  const auto masks = disk_masks(P, two_center_centers(P), r, kDefaultEps);
  return two_masks_cover(masks, P.size(), k, nullptr);
}

OracleResult oracle_two_center(std::span<const Point> P, int k, const OracleCaps& caps) {
  check_two_center_caps(P, k, caps);
  if (P.empty()) throw EmptyInput();
  const std::vector<Point> centers = two_center_centers(P);
  const std::vector<double> radii = two_center_radii(P, kDefaultEps);
  std::size_t lo = 0, hi = radii.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (two_masks_cover(disk_masks(P, centers, radii[mid], kDefaultEps), P.size(), k, nullptr))
      hi = mid;
    else
      lo = mid + 1;
  }
  OracleResult res;
  res.optimum = radii[hi];
  two_masks_cover(disk_masks(P, centers, res.optimum, kDefaultEps), P.size(), k, &res);
  return res;
}

bool oracle_linf_decide(std::span<const Point> P, int p, int k, double side, const OracleCaps& caps) {
  check_linf_caps(P, p, k, caps);
  const auto sq = square_masks(P, side, kDefaultEps);
  std::vector<Point> chosen;
  std::set<std::tuple<Mask, int, int>> dead;
  return linf_dfs(sq, P.size(), 0, p, k, chosen, dead, nullptr, 0);
}

OracleResult oracle_linf(std::span<const Point> P, int p, int k, const OracleCaps& caps) {
  check_linf_caps(P, p, k, caps);
  if (P.empty()) throw EmptyInput();
  const std::vector<double> sides = linf_sides(P);
  std::size_t lo = 0, hi = sides.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (oracle_linf_decide(P, p, k, sides[mid], caps))
      hi = mid;
    else
      lo = mid + 1;
  }
  OracleResult res;
  res.optimum = sides[hi];
  const auto sq = square_masks(P, res.optimum, kDefaultEps);
  std::vector<Point> chosen;
  std::set<std::tuple<Mask, int, int>> dead;
  linf_dfs(sq, P.size(), 0, p, k, chosen, dead, &res, 0);
  // Report square centers rather than lower-left corners.
  for (auto& w : res.witnesses)
    for (Point& c : w) c = {c.x + 0.5 * res.optimum, c.y + 0.5 * res.optimum};
  return res;
}

std::vector<int> oracle_levels(std::span<const Disk> disks, std::span<const Point> samples, double eps) {
  std::vector<int> out;
  for (Point x : samples) {
    int miss = 0;
    for (const Disk& d : disks)
      if (std::hypot(x.x - d.center.x, x.y - d.center.y) > d.radius + eps) ++miss;
    out.push_back(miss);
  }
  return out;
}

}  // namespace pkc
