#include "pkc/dynamic.hpp"

#include <algorithm>

#include "pkc/lpk.hpp"

namespace pkc {

Handle DynamicDiskSet::insert(const Disk& d) {
  disks_.emplace(next_, d);
  ++version_;
  return next_++;
}

void DynamicDiskSet::erase(Handle h) {
  if (disks_.erase(h) == 0) throw UnknownHandle();
  ++version_;
}

std::vector<Disk> DynamicDiskSet::members() const {
  std::vector<Disk> out;
  out.reserve(disks_.size());
  for (const auto& [h, d] : disks_) out.push_back(d);
  std::sort(out.begin(), out.end(),
            [](const Disk& a, const Disk& b) { return lex_less(a.center, b.center); });
  return out;
}

std::optional<Point> DynamicDiskSet::level_nonempty(int j) const {
  if (j < 0) return std::nullopt;
  if (disks_.empty()) return Point{};
  if (j >= static_cast<int>(disks_.size())) return Point{};  // any point qualifies
  const std::vector<Disk> ds = members();
  return lowest_point_in_intersection(ds, j);
}

Handle DynamicPointSet::insert(Point p) {
  points_.emplace(next_, p);
  return next_++;
}

void DynamicPointSet::erase(Handle h) {
  if (points_.erase(h) == 0) throw UnknownHandle();
}

std::vector<Point> DynamicPointSet::members() const {
  std::vector<Point> out;
  out.reserve(points_.size());
  for (const auto& [h, p] : points_) out.push_back(p);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

double DynamicPointSet::one_center(int t) const {
  if (points_.empty()) return 0.0;
  const std::vector<Point> pts = members();
  return one_center_with_outliers(pts, t).radius;
}

}  // namespace pkc
