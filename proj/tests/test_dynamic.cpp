#include <doctest.h>

#include <algorithm>
#include <random>

#include "pkc/dynamic.hpp"
#include "pkc/lpk.hpp"
#include "test_util.hpp"

using namespace pkc;

TEST_CASE("insert and delete") {
  DynamicDiskSet s;
  CHECK_THROWS_AS(s.erase(0), UnknownHandle);
  const Handle h = s.insert({{0, 0}, 1});
  CHECK(s.size() == 1);
  s.erase(h);
  CHECK(s.size() == 0);
  CHECK(s.version() == 2);
  CHECK_THROWS_AS(s.erase(h), UnknownHandle);
}

TEST_CASE("random operations match the replayed log") {
  std::mt19937_64 rng(41);
  DynamicDiskSet s;
  std::vector<std::pair<Handle, Disk>> log;
  for (int op = 0; op < 100; ++op) {
    if (log.empty() || rng() % 3 != 0) {
      const Disk d{testutil::uniform_points(rng, 1, -2, 2)[0], 1.0};
      log.emplace_back(s.insert(d), d);
    } else {
      const std::size_t q = rng() % log.size();
      s.erase(log[q].first);
      log.erase(log.begin() + static_cast<long>(q));
    }
  }
  std::vector<Disk> want;
  for (auto& [h, d] : log) want.push_back(d);
  std::sort(want.begin(), want.end(), [](const Disk& a, const Disk& b) { return lex_less(a.center, b.center); });
  const auto got = s.members();
  REQUIRE(got.size() == want.size());
  for (std::size_t q = 0; q < got.size(); ++q) CHECK(got[q].center == want[q].center);
}

TEST_CASE("level emptiness") {
  DynamicDiskSet s;
  s.insert({{0, 0}, 1});
  s.insert({{1, 0}, 1});
  const auto w = s.level_nonempty(0);
  REQUIRE(w);
  CHECK(disk_contains({{0, 0}, 1}, *w));
  CHECK(disk_contains({{1, 0}, 1}, *w));

  DynamicDiskSet far;
  far.insert({{0, 0}, 1});
  far.insert({{10, 0}, 1});
  far.insert({{0, 10}, 1});
  CHECK_FALSE(far.level_nonempty(1));
  CHECK(far.level_nonempty(2));
}

TEST_CASE("level emptiness after updates matches recomputation") {
  std::mt19937_64 rng(43);
  DynamicDiskSet s;
  std::vector<Handle> live;
  for (int op = 0; op < 45; ++op) {
    if (live.size() < 15 || rng() % 2) {
      live.push_back(s.insert({testutil::uniform_points(rng, 1, -2, 2)[0], 1.0}));
    } else {
      const std::size_t q = rng() % live.size();
      s.erase(live[q]);
      live.erase(live.begin() + static_cast<long>(q));
    }
  }
  const auto ds = s.members();
  bool prev = false;
  for (int j = 0; j <= 3; ++j) {
    const auto w = s.level_nonempty(j);
    CHECK(w.has_value() == lowest_point_in_intersection(ds, j).has_value());
    if (prev) CHECK(w.has_value());
    prev = w.has_value();
    if (w) {
      int miss = 0;
      for (const Disk& d : ds) miss += disk_contains(d, *w) ? 0 : 1;
      CHECK(miss <= j);
    }
  }
}

TEST_CASE("dynamic one center") {
  DynamicPointSet s;
  CHECK(s.one_center(0) == 0.0);
  std::vector<Handle> h;
  for (int i = 0; i < 5; ++i) h.push_back(s.insert({static_cast<double>(i), 0}));
  s.erase(h[4]);
  CHECK(s.one_center(1) == doctest::Approx(1.0));
}

TEST_CASE("dynamic one center is history independent") {
  std::mt19937_64 rng(47);
  for (int it = 0; it < 30; ++it) {
    auto pts = testutil::uniform_points(rng, 10, -3, 3);
    DynamicPointSet a, b;
    std::vector<Handle> ha;
    for (Point p : pts) ha.push_back(a.insert(p));
    a.erase(ha[3]);
    a.insert(pts[3]);
    std::shuffle(pts.begin(), pts.end(), rng);
    for (Point p : pts) b.insert(p);
    for (int t = 0; t <= 3; ++t) {
      CHECK(a.one_center(t) == b.one_center(t));
      CHECK(a.one_center(t) == one_center_with_outliers(b.members(), t).radius);
    }
  }
}
