#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pkc/geom.hpp"

namespace pkc {

class UnknownHandle : public std::out_of_range {
 public:
  UnknownHandle() : std::out_of_range("unknown handle") {}
};

using Handle = long;

/// Multiset of congruent disks with a level-emptiness query. Queries are
/// recomputed from the current members in canonical order, so answers depend
/// only on the multiset, not on the update history.
class DynamicDiskSet {
 public:
  Handle insert(const Disk& d);
  void erase(Handle h);
  std::size_t size() const { return disks_.size(); }
  long version() const { return version_; }

  /// Members sorted by (center.x, center.y).
  std::vector<Disk> members() const;

  /// A point of level <= j with respect to the current disks, if one exists.
  std::optional<Point> level_nonempty(int j) const;

 private:
  std::map<Handle, Disk> disks_;
  Handle next_ = 0;
  long version_ = 0;
};

class DynamicPointSet {
 public:
  Handle insert(Point p);
  void erase(Handle h);
  std::size_t size() const { return points_.size(); }

  std::vector<Point> members() const;

  /// Radius of the smallest circle covering all but t current points.
  double one_center(int t) const;

 private:
  std::map<Handle, Point> points_;
  Handle next_ = 0;
};

}  // namespace pkc
