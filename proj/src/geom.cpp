#include "pkc/geom.hpp"

#include <algorithm>
#include <array>

namespace pkc {

Circle diametral_circle(Point a, Point b) {
  if (lex_less(b, a)) std::swap(a, b);
  return {{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}, 0.5 * dist(a, b)};
}

Circle circumcircle(Point a, Point b, Point c) {
  std::array<Point, 3> p{a, b, c};
  std::sort(p.begin(), p.end(), lex_less);
  const Point ab = p[1] - p[0];
  const Point ac = p[2] - p[0];
  const double d = 2.0 * cross(ab, ac);
  const double scale = std::max({dot(ab, ab), dot(ac, ac), 1e-300});
  if (std::abs(d) <= 1e-14 * scale) throw CollinearInput();
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  const Point offset{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
  return {p[0] + offset, norm(offset)};
}

bool disk_contains(const Disk& d, Point p, double eps) {
  return dist(d.center, p) <= d.radius + eps;
}

bool circle_contains(const Circle& c, Point p, double eps) {
  return dist(c.center, p) <= c.radius + eps;
}

bool square_contains(const Square& s, Point p, double eps) {
  const double h = 0.5 * s.side + eps;
  return std::abs(p.x - s.center.x) <= h && std::abs(p.y - s.center.y) <= h;
}

std::vector<Point> circle_circle_intersections(const Circle& c1, const Circle& c2, double eps) {
  const Point delta = c2.center - c1.center;
  const double d = norm(delta);
  if (d <= eps && std::abs(c1.radius - c2.radius) <= eps) throw IdenticalCircles();
  if (d <= eps) return {};
  if (d > c1.radius + c2.radius + eps) return {};
  if (d < std::abs(c1.radius - c2.radius) - eps) return {};
  const Point u = (1.0 / d) * delta;
  const Point v{-u.y, u.x};
  // Distance from c1 along u to the radical line.
  double along = (d * d + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * d);
  along = std::clamp(along, -c1.radius, c1.radius);
  const double h2 = c1.radius * c1.radius - along * along;
  const Point foot = c1.center + along * u;
  const bool tangent = std::abs(d - (c1.radius + c2.radius)) <= eps ||
                       std::abs(d - std::abs(c1.radius - c2.radius)) <= eps || h2 <= 0.0;
  if (tangent) return {foot};
  const double h = std::sqrt(h2);
  // Ordered counterclockwise around c1 relative to the direction u: -v side first
  // when sorted by angle; sort explicitly for a stable contract.
  std::vector<Point> out{foot + h * v, foot - h * v};
  std::sort(out.begin(), out.end(), [&](Point a, Point b) {
    return angle_of(c1.center, a) < angle_of(c1.center, b);
  });
  return out;
}

namespace {

Circle circle_from(std::span<const Point> pts, const std::vector<std::size_t>& support) {
  switch (support.size()) {
    case 1:
      return {pts[support[0]], 0.0};
    case 2:
      return diametral_circle(pts[support[0]], pts[support[1]]);
    default:
      return circumcircle(pts[support[0]], pts[support[1]], pts[support[2]]);
  }
}

// Circle through a, b, c with a and b on its boundary; collinear triples
// fall back to the widest pair.
Circle boundary_disk(std::span<const Point> pts, std::size_t i, std::size_t j, std::size_t l,
                     std::vector<std::size_t>& support) {
  try {
    support = {i, j, l};
    return circumcircle(pts[i], pts[j], pts[l]);
  } catch (const CollinearInput&) {
    const std::array<std::array<std::size_t, 2>, 3> pairs{{{i, j}, {i, l}, {j, l}}};
    std::size_t best = 0;
    double w = -1.0;
    for (std::size_t q = 0; q < 3; ++q) {
      const double dd = dist(pts[pairs[q][0]], pts[pairs[q][1]]);
      if (dd > w) {
        w = dd;
        best = q;
      }
    }
    support = {pairs[best][0], pairs[best][1]};
    return diametral_circle(pts[pairs[best][0]], pts[pairs[best][1]]);
  }
}

// A three-point support whose circle is really a diametral circle of two of
// the points is reduced to that pair.
void reduce_support(std::span<const Point> pts, std::vector<std::size_t>& support, double eps) {
  if (support.size() != 3) return;
  const std::array<std::array<std::size_t, 3>, 3> cases{
      {{support[0], support[1], support[2]},
       {support[0], support[2], support[1]},
       {support[1], support[2], support[0]}}};
  for (const auto& c : cases) {
    if (circle_contains(diametral_circle(pts[c[0]], pts[c[1]]), pts[c[2]], eps)) {
      support = {c[0], c[1]};
      return;
    }
  }
}

}  // namespace

Circle min_enclosing_disk(std::span<const Point> points, std::vector<std::size_t>& support,
                          double eps) {
  if (points.empty()) throw EmptyInput();
  support = {0};
  Circle c{points[0], 0.0};
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (circle_contains(c, points[i], eps)) continue;
    support = {i};
    c = {points[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (circle_contains(c, points[j], eps)) continue;
      support = {i, j};
      c = diametral_circle(points[i], points[j]);
      for (std::size_t l = 0; l < j; ++l) {
        if (circle_contains(c, points[l], eps)) continue;
        c = boundary_disk(points, i, j, l, support);
      }
    }
  }
  reduce_support(points, support, eps);
  std::sort(support.begin(), support.end());
  return circle_from(points, support);
}

Circle min_enclosing_disk(std::span<const Point> points, double eps) {
  std::vector<std::size_t> support;
  return min_enclosing_disk(points, support, eps);
}

}  // namespace pkc
