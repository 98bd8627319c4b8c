#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <tuple>

#include "pkc/arrangement.hpp"
#include "test_util.hpp"

using namespace pkc;

namespace {

constexpr double kPi = std::numbers::pi;

int count_level(Point x, const std::vector<Disk>& ds) {
  int l = 0;
  for (const Disk& d : ds)
    if (std::hypot(x.x - d.center.x, x.y - d.center.y) > d.radius + 1e-9) ++l;
  return l;
}

// Full arrangement computed pairwise, split at x-extremes, then filtered.
std::vector<std::tuple<int, double, double>> oracle_arcs(const std::vector<Disk>& ds, int k) {
  std::vector<std::tuple<int, double, double>> out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    std::vector<double> ang{-kPi, 0.0, kPi};
    for (std::size_t j = 0; j < ds.size(); ++j) {
      if (i == j) continue;
      const Point d = ds[j].center - ds[i].center;
      const double len = std::hypot(d.x, d.y);
      if (len >= 2.0 || len == 0.0) continue;
      const double base = std::atan2(d.y, d.x);
      const double half = std::acos(len / 2.0);
      for (double a : {base - half, base + half}) {
        while (a <= -kPi) a += 2 * kPi;
        while (a > kPi) a -= 2 * kPi;
        ang.push_back(a);
      }
    }
    std::sort(ang.begin(), ang.end());
    for (std::size_t q = 0; q + 1 < ang.size(); ++q) {
      if (ang[q + 1] - ang[q] < 1e-9) continue;
      const double mid = 0.5 * (ang[q] + ang[q + 1]);
      const Point m{ds[i].center.x + std::cos(mid), ds[i].center.y + std::sin(mid)};
      if (count_level(m, ds) <= k) out.emplace_back(static_cast<int>(i), ang[q], ang[q + 1]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("level of a point") {
  const std::vector<Disk> ds{{{0, 0}, 1}, {{3, 0}, 1}, {{0.5, 0}, 1}};
  CHECK(level_of_point({0, 0}, ds) == 1);
  CHECK(level_of_point({10, 10}, ds) == 3);
  CHECK(level_of_point({0.25, 0}, ds) == 1);
}

TEST_CASE("single disk arrangement") {
  const std::vector<Disk> ds{{{0, 0}, 1}};
  const auto arr = build_level_arrangement(ds, 0);
  CHECK(arr.arcs.size() == 2);
  int crossings = 0, extremal = 0;
  for (const auto& v : arr.vertices) {
    if (v.disk_b >= 0) ++crossings;
    if (v.x_extremal) ++extremal;
  }
  CHECK(crossings == 0);
  CHECK(extremal == 2);
}

TEST_CASE("lens arrangement") {
  const std::vector<Disk> ds{{{0, 0}, 1}, {{1, 0}, 1}};
  const auto arr = build_level_arrangement(ds, 0);
  std::vector<Point> xs;
  for (const auto& v : arr.vertices)
    if (v.disk_b >= 0) xs.push_back(v.p);
  REQUIRE(xs.size() == 2);
  std::sort(xs.begin(), xs.end(), [](Point a, Point b) { return a.y < b.y; });
  CHECK(xs[0].x == doctest::Approx(0.5));
  CHECK(xs[0].y == doctest::Approx(-std::sqrt(3.0) / 2));
  CHECK(xs[1].y == doctest::Approx(std::sqrt(3.0) / 2));
  for (const auto& a : arr.arcs) CHECK(a.level == 0);
  const auto kinds = classify_vertices(arr);
  int convex = 0;
  for (const auto& [v, kind] : kinds)
    if (kind == VertexKind::convex) ++convex;
  CHECK(convex == 2);
}

TEST_CASE("arc sets match the filtered full arrangement") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 60; ++it) {
    const int n = 2 + static_cast<int>(rng() % 10);
    const int k = static_cast<int>(rng() % 4);
    const auto ds = testutil::unit_disks(rng, n, 1.5);
    const auto arr = build_level_arrangement(ds, k);
    std::vector<std::tuple<int, double, double>> got;
    for (const auto& a : arr.arcs) {
      got.emplace_back(a.disk, a.theta0, a.theta1);
      const Point m = arr.arc_point(a, a.mid_angle());
      CHECK(a.level == count_level(m, ds));
      CHECK(a.level <= k);
      CHECK(arr.vertices[a.v0].level <= k);
      CHECK(arr.vertices[a.v1].level <= k);
    }
    std::sort(got.begin(), got.end());
    const auto want = oracle_arcs(ds, k);
    REQUIRE(got.size() == want.size());
    for (std::size_t q = 0; q < got.size(); ++q) {
      CHECK(std::get<0>(got[q]) == std::get<0>(want[q]));
      CHECK(std::get<1>(got[q]) == doctest::Approx(std::get<1>(want[q])).epsilon(1e-7));
      CHECK(std::get<2>(got[q]) == doctest::Approx(std::get<2>(want[q])).epsilon(1e-7));
    }
  }
}

TEST_CASE("triangle of disks has convex and concave vertices at level one") {
  const double h = std::sqrt(3.0) / 2;
  const std::vector<Disk> ds{{{0, 0}, 1}, {{1, 0}, 1}, {{0.5, h}, 1}};
  const auto arr = build_level_arrangement(ds, 1);
  const auto kinds = classify_vertices(arr);
  int convex = 0, concave = 0;
  for (const auto& [v, kind] : kinds) {
    CHECK(arr.vertices[v].level <= 1);
    if (kind == VertexKind::convex) ++convex;
    if (kind == VertexKind::concave) ++concave;
  }
  CHECK(convex > 0);
  CHECK(concave > 0);
}

TEST_CASE("vertices above the level are not classified") {
  const std::vector<Disk> ds{{{0, 0}, 1}, {{1, 0}, 1}, {{0.5, 0.3}, 1}, {{5, 5}, 1}};
  const auto full = build_level_arrangement(ds, 4);
  const auto arr = build_level_arrangement(ds, 1);
  for (const auto& [v, kind] : classify_vertices(arr)) CHECK(arr.vertices[v].level <= 1);
  CHECK(arr.vertices.size() < full.vertices.size());
}

TEST_CASE("connected components") {
  const std::vector<Disk> one{{{0, 0}, 1}};
  CHECK(connected_components(build_level_arrangement(one, 0)) == 1);
  const std::vector<Disk> apart{{{0, 0}, 1}, {{5, 0}, 1}};
  CHECK(connected_components(build_level_arrangement(apart, 0)) == 0);
  CHECK(connected_components(build_level_arrangement(apart, 1)) == 2);
  const auto fig = component_lower_bound_family(2);
  CHECK(connected_components(build_level_arrangement(fig, 2)) == 4);
}

TEST_CASE("components of separated clusters") {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 20; ++it) {
    // c clusters of 3 overlapping disks, far apart; level <= n - 3 leaves
    // exactly the common part of each cluster.
    const int c = 1 + static_cast<int>(rng() % 3);
    std::vector<Disk> ds;
    for (int q = 0; q < c; ++q)
      for (int r = 0; r < 3; ++r) {
        std::uniform_real_distribution<double> u(-0.3, 0.3);
        ds.push_back({{10.0 * q + u(rng), u(rng)}, 1.0});
      }
    const int n = static_cast<int>(ds.size());
    CHECK(connected_components(build_level_arrangement(ds, n - 3)) == c);
  }
}

TEST_CASE("circle curve intersections") {
  UnitDiskCurve curve;
  curve.arcs.push_back({0, {{0, 0}, 1}, 0.0, kPi});
  CHECK(circle_curve_intersections({{10, 10}, 1}, curve).empty());
  const auto two = circle_curve_intersections({{0.3, 0.8}, 1}, curve);
  CHECK(two.size() == 2);
  for (Point p : two) {
    CHECK(std::abs(dist(p, {0, 0}) - 1) < 1e-9);
    CHECK(std::abs(dist(p, {0.3, 0.8}) - 1) < 1e-9);
  }
  const auto one = circle_curve_intersections({{0, 2}, 1}, curve);
  REQUIRE(one.size() == 1);
  CHECK(one[0].y == doctest::Approx(1.0));
}
