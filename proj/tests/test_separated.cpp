#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "pkc/euclid2k.hpp"
#include "pkc/oracle.hpp"
#include "test_util.hpp"

using namespace pkc;

namespace {

double side_of(Point p, const SeparatorLine& l) { return p.x * l.u.x + p.y * l.u.y - l.s; }

SeparatorLine vertical(double x) { return {{1.0, 0.0}, x, 0}; }

}  // namespace

TEST_CASE("separator lines split two far clusters") {
  std::mt19937_64 rng(3);
  auto A = testutil::uniform_points(rng, 6, -1, 1);
  auto B = testutil::uniform_points(rng, 6, -1, 1);
  for (Point& b : B) b.x += 10;
  std::vector<Point> P = A;
  P.insert(P.end(), B.begin(), B.end());
  const auto cand = candidate_separator_lines(P, 0);
  bool found = false;
  for (const auto& l : cand.lines) {
    const bool a_left = std::all_of(A.begin(), A.end(), [&](Point p) { return side_of(p, l) < 0; });
    const bool b_right = std::all_of(B.begin(), B.end(), [&](Point p) { return side_of(p, l) > 0; });
    const bool b_left = std::all_of(B.begin(), B.end(), [&](Point p) { return side_of(p, l) < 0; });
    const bool a_right = std::all_of(A.begin(), A.end(), [&](Point p) { return side_of(p, l) > 0; });
    found = found || (a_left && b_right) || (b_left && a_right);
  }
  CHECK(found);
}

TEST_CASE("two points give lines in every direction") {
  const std::vector<Point> P{{0, 0}, {3, 1}};
  const Euclid2kConfig cfg;
  const auto cand = candidate_separator_lines(P, 0, cfg);
  std::set<int> dirs;
  for (const auto& l : cand.lines) dirs.insert(l.direction);
  CHECK(static_cast<int>(dirs.size()) == cfg.directions);
}

TEST_CASE("line count bound") {
  std::mt19937_64 rng(4);
  const Euclid2kConfig cfg;
  for (int it = 0; it < 30; ++it) {
    const int n = 5 + static_cast<int>(rng() % 20), k = static_cast<int>(rng() % 4);
    const auto P = testutil::uniform_points(rng, n, 0, 10);
    const auto cand = candidate_separator_lines(P, k, cfg);
    CHECK(cand.lines.size() <= static_cast<std::size_t>(cfg.directions * (k + 1) * (k + 2) / 2 * cfg.line_points));
  }
}

TEST_CASE("decide_consistent small cases") {
  const std::vector<Point> two{{0, 0}, {4, 0}};
  const auto d = decide_consistent(two, vertical(2), 0, 1.0);
  REQUIRE(d.verdict);
  REQUIRE(d.witness.has_value());
  CHECK(uncovered(two, d.witness->c1, d.witness->c2, 1.0).empty());

  const std::vector<Point> three{{0, 0}, {4, 0}, {8, 0}};
  for (double x : {-1.0, 2.0, 6.0, 9.0}) CHECK_FALSE(decide_consistent(three, vertical(x), 0, 1.0).verdict);
  CHECK_FALSE(decide_consistent(three, {{0.0, 1.0}, 0.0, 0}, 0, 1.0).verdict);

  const bool expected = oracle_two_center_decide(three, 1, 1.0);
  CHECK(expected);
  const auto d1 = decide_consistent(three, vertical(2), 1, 1.0);
  CHECK(d1.verdict == expected);
  REQUIRE(d1.witness.has_value());
  CHECK(uncovered(three, d1.witness->c1, d1.witness->c2, 1.0).size() <= 1);
}

TEST_CASE("decision is monotone in the radius") {
  std::mt19937_64 rng(5);
  int violations = 0, cases = 0;
  for (int it = 0; it < 150; ++it) {
    const int n = 4 + static_cast<int>(rng() % 6), k = static_cast<int>(rng() % 3);
    const auto P = testutil::uniform_points(rng, n, 0, 10);
    const auto lines = candidate_separator_lines(P, k).lines;
    const auto radii = candidate_radii(P);
    for (int q = 0; q < 4; ++q) {
      const auto& l = lines[rng() % lines.size()];
      double r1 = radii[rng() % radii.size()], r2 = radii[rng() % radii.size()];
      if (r1 > r2) std::swap(r1, r2);
      ++cases;
      if (decide_consistent(P, l, k, r1).verdict && !decide_consistent(P, l, k, r2).verdict) ++violations;
    }
  }
  CHECK(cases == 600);
  CHECK(violations == 0);
}

TEST_CASE("candidate radii") {
  const std::vector<Point> tri{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
  const auto r = candidate_radii(tri);
  auto has = [&](double v) {
    return std::any_of(r.begin(), r.end(), [&](double x) { return std::abs(x - v) < 1e-12; });
  };
  CHECK(has(0.5));
  CHECK(has(1.0 / std::sqrt(3.0)));

  const std::vector<Point> line{{0, 0}, {1, 0}, {2, 0}};
  CHECK(candidate_radii(line) == std::vector<double>{0.0, 0.5, 1.0});

  std::mt19937_64 rng(6);
  for (int it = 0; it < 40; ++it) {
    const int n = 4 + static_cast<int>(rng() % 8), k = static_cast<int>(rng() % 3);
    const auto P = testutil::uniform_points(rng, n, 0, 10);
    const auto c = candidate_radii(P);
    const double opt = oracle_two_center(P, k).optimum;
    CHECK(std::binary_search(c.begin(), c.end(), opt));
  }
}

TEST_CASE("optimize_well_separated examples") {
  const std::vector<Point> four{{0, 0}, {1, 0}, {5, 0}, {6, 0}};
  CHECK(oracle_two_center(four, 0).optimum == 0.5);
  auto r = optimize_well_separated(four, 0);
  REQUIRE(r.found);
  CHECK(r.best.radius == 0.5);

  std::vector<Point> five = four;
  five.push_back({100, 100});
  CHECK(oracle_two_center(five, 1).optimum == 0.5);
  r = optimize_well_separated(five, 1);
  REQUIRE(r.found);
  CHECK(r.best.radius == 0.5);
  CHECK(r.best.outliers == std::vector<int>{4});

  const std::vector<Point> three{{0, 0}, {7, 1}, {3, 9}};
  r = optimize_well_separated(three, 1);
  REQUIRE(r.found);
  CHECK(r.best.radius == 0.0);
}

TEST_CASE("well-separated optima are found by the separated case alone") {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int it = 0; it < 60; ++it) {
    const int n = 5 + static_cast<int>(rng() % 8), k = static_cast<int>(rng() % 3);
    auto P = testutil::uniform_points(rng, n, 0, 10);
    if (it % 2)
      for (int i = 0; i < n; ++i) P[i] = i < n / 2 ? 0.2 * P[i] : 0.2 * P[i] + Point{6, 1};
    const auto o = oracle_two_center(P, k);
    const bool separated = std::any_of(o.witnesses.begin(), o.witnesses.end(), [&](const auto& w) {
      return dist(w[0], w[1]) >= o.optimum;
    });
    if (!separated) continue;
    ++checked;
    const auto r = optimize_well_separated(P, k);
    REQUIRE(r.found);
    CHECK(r.best.radius == o.optimum);
    CHECK(static_cast<int>(uncovered(P, r.best.c1, r.best.c2, r.best.radius).size()) <= k);
  }
  CHECK(checked >= 30);
}
