#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "pkc/euclid2k.hpp"

namespace pkc {

namespace {

constexpr int kDenseLimit = 16;

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

}  // namespace

std::vector<Point> intersector_candidates(std::span<const Point> P, int k, const Euclid2kConfig& cfg) {
  std::vector<Point> out;
  if (P.empty()) return out;
  const auto bases = enumerate_bases_with_violations(enclosing_disk_problem(P), k);
  std::set<std::pair<double, double>> seen;
  for (const Basis& b : bases) {
    std::vector<Point> def;
    for (int i : b.constraints) def.push_back(P[i]);
    if (def.empty()) continue;
    const Circle c = min_enclosing_disk(def);
    const double step = cfg.grid_spacing * c.radius;
    const double mid = 0.5 * (cfg.grid - 1);
    auto add = [&](Point z) {
      if (seen.insert({z.x, z.y}).second) out.push_back(z);
    };
    add(c.center);
    if (c.radius == 0.0) continue;
    for (int a = 0; a < cfg.grid; ++a)
      for (int d = 0; d < cfg.grid; ++d)
        add({c.center.x + (a - mid) * step, c.center.y + (d - mid) * step});
  }
  return out;
}

OneCenterCache::OneCenterCache(std::span<const Point> P, int k) : points_(P.begin(), P.end()), k_(k) {
  if (points_.size() > 64) throw std::invalid_argument("subset cache supports at most 64 points");
  if (points_.size() <= kDenseLimit)
    memo_.assign(k + 1, std::vector<double>(std::size_t{1} << points_.size(), -1.0));
}

double OneCenterCache::radius(std::uint64_t mask, int t) {
  if (std::popcount(mask) <= t) return 0.0;
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (!memo_.empty()) {
      const double v = memo_[t][mask];
      if (v >= 0.0) return v;
    } else if (auto it = sparse_.find({mask, t}); it != sparse_.end()) {
      return it->second;
    }
  }
  const double v = circle(mask, t).radius;
  std::lock_guard<std::mutex> lock(mu_);
  ++evaluations_;
  if (!memo_.empty()) memo_[t][mask] = v;
  else sparse_[{mask, t}] = v;
  return v;
}

Circle OneCenterCache::circle(std::uint64_t mask, int t) {
  std::vector<Point> sub;
  for (int i = 0; i < static_cast<int>(points_.size()); ++i)
    if (mask & bit(i)) sub.push_back(points_[i]);
  if (static_cast<int>(sub.size()) <= t) return {sub.empty() ? Point{} : sub.front(), 0.0};
  return one_center_with_outliers(sub, t);
}

PartitionMatrix::PartitionMatrix(std::span<const Point> P, Point z, Point u, int k, int t,
                                 std::shared_ptr<OneCenterCache> cache)
    : k_(k), t_(t), cache_(std::move(cache)) {
  std::vector<std::pair<double, int>> up, down;
  for (int i = 0; i < static_cast<int>(P.size()); ++i) {
    const Point d = P[i] - z;
    const double ang = std::atan2(cross(u, d), dot(d, u));
    (ang >= 0.0 ? up : down).push_back({ang, i});
    all_ |= bit(i);
  }
  // Upper side clockwise starting from angle pi; lower side counterclockwise
  // starting from -pi.
  std::sort(up.begin(), up.end(), [](auto a, auto b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  });
  std::sort(down.begin(), down.end());
  for (auto [a, i] : up) plus_.push_back(i);
  for (auto [a, i] : down) minus_.push_back(i);
}

std::uint64_t PartitionMatrix::p_mask(int i, int j) const {
  std::uint64_t m = 0;
  for (int q = 0; q < i; ++q) m |= bit(plus_[q]);
  for (int q = 0; q < j; ++q) m |= bit(minus_[q]);
  return m;
}

std::uint64_t PartitionMatrix::q_mask(int i, int j) const { return all_ & ~p_mask(i, j); }

double PartitionMatrix::r_p(int i, int j) const { return cache_->radius(p_mask(i, j), t_); }
double PartitionMatrix::r_q(int i, int j) const { return cache_->radius(q_mask(i, j), k_ - t_); }

double PartitionMatrix::evaluate(int i, int j) const {
  if (i < 0 || j < 0 || i >= rows() || j >= cols()) return kInfinity;
  ++evaluations_;
  return std::max(r_p(i, j), r_q(i, j));
}

MatrixMin matrix_search_exhaustive(const PartitionMatrix& M) {
  MatrixMin best;
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) {
      const double v = M.evaluate(i, j);
      if (v < best.value) best = {v, i, j};
    }
  return best;
}

namespace {

struct Sub {
  int r0, c0;
  friend bool operator<(const Sub& a, const Sub& b) { return std::tie(a.r0, a.c0) < std::tie(b.r0, b.c0); }
};

int padded_span(const PartitionMatrix& M) {
  int span = 1;
  while (span + 1 < std::max(M.rows(), M.cols())) span *= 2;
  return span;
}

void consider(MatrixMin& best, double v, int i, int j) {
  if (v < best.value || (v == best.value && std::tie(i, j) < std::tie(best.i, best.j))) best = {v, i, j};
}

// Quad split of every pool member; children sit on an overlapping grid.
std::set<Sub> split(const std::set<Sub>& pool, int half, const PartitionMatrix& M) {
  std::set<Sub> out;
  for (const Sub& s : pool)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const Sub c{s.r0 + a * half, s.c0 + b * half};
        if (c.r0 < M.rows() && c.c0 < M.cols()) out.insert(c);  // else all padding
      }
  return out;
}

void prune_after(std::set<Sub>& children, int i, int j) {
  std::erase_if(children, [&](const Sub& c) { return c.r0 >= i && c.c0 >= j; });
}

void prune_before(std::set<Sub>& children, int i, int j, int half) {
  std::erase_if(children, [&](const Sub& c) { return c.r0 + half <= i && c.c0 + half <= j; });
}

MatrixMin finish(const std::set<Sub>& pool, const PartitionMatrix& M, MatrixMin best, SearchTrace* trace) {
  std::set<std::pair<int, int>> done;
  for (const Sub& s : pool)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const int i = s.r0 + a, j = s.c0 + b;
        if (i >= M.rows() || j >= M.cols() || !done.insert({i, j}).second) continue;
        consider(best, M.evaluate(i, j), i, j);
        if (trace) ++trace->cells;
      }
  return best;
}

}  // namespace

MatrixMin matrix_search_deterministic(const PartitionMatrix& M, SearchTrace* trace) {
  MatrixMin best;
  if (M.rows() == 1 && M.cols() == 1) {
    consider(best, M.evaluate(0, 0), 0, 0);
    if (trace) ++trace->cells;
    return best;
  }
  std::set<Sub> pool{{0, 0}};
  for (int span = padded_span(M); span >= 2; span /= 2) {
    if (trace) trace->pool_sizes.push_back(static_cast<long>(pool.size()));
    const int half = span / 2;
    std::set<Sub> children = split(pool, half, M);
    for (const Sub& s : pool) {
      const int i = s.r0 + half, j = s.c0 + half;
      if (i >= M.rows() || j >= M.cols()) continue;  // padding center: no pruning
      const double rp = M.r_p(i, j), rq = M.r_q(i, j);
      consider(best, M.evaluate(i, j), i, j);
      if (trace) ++trace->cells;
      if (rp >= rq) prune_after(children, i, j);
      if (rq >= rp) prune_before(children, i, j, half);
    }
    pool = std::move(children);
  }
  if (trace) trace->pool_sizes.push_back(static_cast<long>(pool.size()));
  return finish(pool, M, best, trace);
}

MatrixMin matrix_search_randomized(const PartitionMatrix& M, std::uint64_t seed, SearchTrace* trace) {
  MatrixMin best;
  if (M.rows() == 1 && M.cols() == 1) {
    consider(best, M.evaluate(0, 0), 0, 0);
    if (trace) ++trace->cells;
    return best;
  }
  std::mt19937_64 rng(seed);
  std::set<Sub> pool{{0, 0}};
  for (int span = padded_span(M); span >= 2; span /= 2) {
    if (trace) trace->pool_sizes.push_back(static_cast<long>(pool.size()));
    const int half = span / 2;
    std::set<Sub> children = split(pool, half, M);
    std::vector<std::pair<int, int>> centers;
    for (const Sub& s : pool)
      if (s.r0 + half < M.rows() && s.c0 + half < M.cols()) centers.push_back({s.r0 + half, s.c0 + half});
    for (int rep = 0; rep < 3 && !centers.empty(); ++rep) {
      const auto [pi, pj] = centers[rng() % centers.size()];
      if (trace) trace->picks.push_back({pi, pj});
      consider(best, M.evaluate(pi, pj), pi, pj);
      if (trace) ++trace->cells;
      // Anything dominated by a part already exceeding the best is out.
      for (auto [i, j] : centers) {
        if (M.r_p(i, j) > best.value) prune_after(children, i, j);
        if (M.r_q(i, j) > best.value) prune_before(children, i, j, half);
      }
    }
    pool = std::move(children);
  }
  if (trace) trace->pool_sizes.push_back(static_cast<long>(pool.size()));
  return finish(pool, M, best, trace);
}

SolveResult solve_nearly_concentric(std::span<const Point> P, int k, SearchMode mode, std::uint64_t seed,
                                    const Euclid2kConfig& cfg, SolveStats* stats) {
  SolveResult res;
  const int n = static_cast<int>(P.size());
  if (n - k <= 2) {
    res.found = true;
    if (n > 0) res.best.c1 = P[0];
    res.best.c2 = n > 1 ? P[1] : res.best.c1;
    res.best.outliers = uncovered(P, res.best.c1, res.best.c2, 0.0, cfg.eps);
    return res;
  }
  const std::vector<Point> Z = intersector_candidates(P, k, cfg);
  std::vector<Point> U;
  for (int i = 0; i < cfg.concentric_directions; ++i) {
    const double a = 2.0 * std::numbers::pi * i / cfg.concentric_directions;
    U.push_back({std::cos(a), std::sin(a)});
  }
  if (stats) stats->intersector_points += static_cast<long>(Z.size());
  auto cache = std::make_shared<OneCenterCache>(P, k);

  // Distinct angular orders give distinct matrices; repeated ones are skipped.
  struct Job {
    Point z, u;
    int t;
  };
  std::vector<Job> jobs;
  std::set<std::pair<std::vector<int>, std::vector<int>>> orders;
  for (Point z : Z)
    for (Point u : U) {
      PartitionMatrix probe(P, z, u, k, 0, cache);
      if (!orders.insert({probe.sorted_plus(), probe.sorted_minus()}).second) continue;
      for (int t = 0; t <= k; ++t) jobs.push_back({z, u, t});
    }

  std::vector<MatrixMin> results(jobs.size());
  std::vector<SearchTrace> traces(jobs.size());
  argmin(
      static_cast<long>(jobs.size()),
      [&](long q) {
        const PartitionMatrix M(P, jobs[q].z, jobs[q].u, k, jobs[q].t, cache);
        results[q] = mode == SearchMode::deterministic
                         ? matrix_search_deterministic(M, &traces[q])
                         : matrix_search_randomized(M, seed + 0x9E3779B97F4A7C15ULL * (q + 1), &traces[q]);
        return results[q].value;
      },
      cfg.policy);
  long best_q = -1;
  for (std::size_t q = 0; q < jobs.size(); ++q)
    if (best_q < 0 || results[q].value < results[best_q].value) best_q = static_cast<long>(q);
  if (stats) {
    stats->matrix_searches += static_cast<long>(jobs.size());
    for (const SearchTrace& tr : traces) {
      stats->cells_evaluated += tr.cells;
      if (stats->pool_sizes.size() < tr.pool_sizes.size()) stats->pool_sizes.resize(tr.pool_sizes.size(), 0);
      for (std::size_t h = 0; h < tr.pool_sizes.size(); ++h) stats->pool_sizes[h] += tr.pool_sizes[h];
    }
  }
  if (best_q < 0) return res;
  const Job& jb = jobs[best_q];
  const PartitionMatrix M(P, jb.z, jb.u, k, jb.t, cache);
  const MatrixMin& mm = results[best_q];
  const Circle d1 = cache->circle(M.p_mask(mm.i, mm.j), jb.t);
  const Circle d2 = cache->circle(M.q_mask(mm.i, mm.j), k - jb.t);
  res.found = true;
  res.best.radius = mm.value;
  res.best.c1 = d1.center;
  res.best.c2 = d2.center;
  res.best.outliers = uncovered(P, d1.center, d2.center, mm.value, cfg.eps);
  return res;
}

}  // namespace pkc
