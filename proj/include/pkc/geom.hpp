#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace pkc {

/// Additive slack applied by every containment/incidence predicate.
inline constexpr double kDefaultEps = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Lexicographic (x, then y) order; used to canonicalize predicate inputs.
inline bool lex_less(Point a, Point b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

struct Circle {
  Point center;
  double radius = 0.0;
};

/// Closed disk. All disks of one arrangement share a radius.
struct Disk {
  Point center;
  double radius = 1.0;
};

/// Closed axis-aligned square.
struct Square {
  Point center;
  double side = 1.0;

  double left() const { return center.x - 0.5 * side; }
  double right() const { return center.x + 0.5 * side; }
  double bottom() const { return center.y - 0.5 * side; }
  double top() const { return center.y + 0.5 * side; }
};

enum class TolerancePolicy { strict, snapped };

struct Tolerance {
  double eps = kDefaultEps;
  TolerancePolicy policy = TolerancePolicy::snapped;
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class CollinearInput : public GeometryError {
 public:
  CollinearInput() : GeometryError("collinear input") {}
};
class IdenticalCircles : public GeometryError {
 public:
  IdenticalCircles() : GeometryError("identical circles intersect everywhere") {}
};
class EmptyInput : public GeometryError {
 public:
  EmptyInput() : GeometryError("empty input") {}
};

/// Circle through three points. Inputs are reordered lexicographically
/// first, so the result is bit-identical for every permutation.
Circle circumcircle(Point a, Point b, Point c);

/// Circle with segment ab as diameter; symmetric in its arguments.
Circle diametral_circle(Point a, Point b);

bool disk_contains(const Disk& d, Point p, double eps = kDefaultEps);
bool circle_contains(const Circle& c, Point p, double eps = kDefaultEps);
bool square_contains(const Square& s, Point p, double eps = kDefaultEps);

/// Boundary intersection points, ordered by angle on `c1` (counterclockwise
/// from the positive x axis). Tangency within eps yields one point.
std::vector<Point> circle_circle_intersections(const Circle& c1, const Circle& c2,
                                               double eps = kDefaultEps);

/// Smallest enclosing circle. The radius is always produced by
/// `diametral_circle` or `circumcircle` on the defining points, so values are
/// comparable bit-for-bit with candidate radii built from the same helpers.
Circle min_enclosing_disk(std::span<const Point> points, double eps = kDefaultEps);

/// Same as above, also reporting the indices (into `points`) of the
/// defining points (one, two or three of them).
Circle min_enclosing_disk(std::span<const Point> points, std::vector<std::size_t>& support,
                          double eps = kDefaultEps);

/// Angle of `p` around `center` in (-pi, pi].
inline double angle_of(Point center, Point p) { return std::atan2(p.y - center.y, p.x - center.x); }

inline Point point_on(const Circle& c, double theta) {
  return {c.center.x + c.radius * std::cos(theta), c.center.y + c.radius * std::sin(theta)};
}

}  // namespace pkc
