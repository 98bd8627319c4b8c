#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pkc/cli.hpp"
#include "pkc/lpk.hpp"

namespace pkc::cli {

namespace {

struct Frame {
  double x0 = 0, y0 = 0, scale = 1, height = 1;
  // SVG y grows downward.
  double X(double x) const { return (x - x0) * scale; }
  double Y(double y) const { return height - (y - y0) * scale; }
};

void grow(double& lo, double& hi, double v) {
  lo = std::min(lo, v);
  hi = std::max(hi, v);
}

// Counterclockwise arc from angle a to b on circle c.
void arc_path(std::ostream& out, const Frame& f, const Circle& c, double a, double b, const char* style) {
  while (b < a) b += 2 * std::numbers::pi;
  const Point s = point_on(c, a), e = point_on(c, b);
  const int large = b - a > std::numbers::pi ? 1 : 0;
  // Flipped y turns counterclockwise into sweep-flag 0.
  out << "<path d=\"M " << f.X(s.x) << ' ' << f.Y(s.y) << " A " << c.radius * f.scale << ' ' << c.radius * f.scale
      << " 0 " << large << " 0 " << f.X(e.x) << ' ' << f.Y(e.y) << "\" " << style << "/>\n";
}

}  // namespace

std::string render_svg(const RenderSpec& spec) {
  double xlo = kInfinity, xhi = -kInfinity, ylo = kInfinity, yhi = -kInfinity;
  for (Point p : spec.points) grow(xlo, xhi, p.x), grow(ylo, yhi, p.y);
  for (const Disk& d : spec.disks) {
    grow(xlo, xhi, d.center.x - d.radius), grow(xlo, xhi, d.center.x + d.radius);
    grow(ylo, yhi, d.center.y - d.radius), grow(ylo, yhi, d.center.y + d.radius);
  }
  for (const Square& s : spec.squares) grow(xlo, xhi, s.left()), grow(xlo, xhi, s.right()), grow(ylo, yhi, s.bottom()), grow(ylo, yhi, s.top());
  if (xlo > xhi) xlo = ylo = 0, xhi = yhi = 1;
  const double span = std::max({xhi - xlo, yhi - ylo, 1e-9});
  const double pad = 0.05 * span;
  Frame f;
  f.x0 = xlo - pad;
  f.y0 = ylo - pad;
  f.scale = 500.0 / (span + 2 * pad);
  f.height = (yhi - ylo + 2 * pad) * f.scale;
  const double width = (xhi - xlo + 2 * pad) * f.scale;

  std::ostringstream out;
  out.precision(10);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << f.height << "\">\n";
  for (const Disk& d : spec.disks)
    out << "<circle cx=\"" << f.X(d.center.x) << "\" cy=\"" << f.Y(d.center.y) << "\" r=\"" << d.radius * f.scale
        << "\" fill=\"none\" stroke=\"#4477aa\"/>\n";
  for (const Square& s : spec.squares)
    out << "<rect x=\"" << f.X(s.left()) << "\" y=\"" << f.Y(s.top()) << "\" width=\"" << s.side * f.scale << "\" height=\""
        << s.side * f.scale << "\" fill=\"none\" stroke=\"#aa7744\"/>\n";
  if (spec.arrangement) {
    const LevelArrangement& arr = *spec.arrangement;
    for (const ArrArc& a : arr.arcs)
      arc_path(out, f, arr.circle(a.disk), a.theta0, a.theta1, "class=\"level-arc\" fill=\"none\" stroke=\"#cc3311\"");
  }
  for (const UnitDiskCurve& c : spec.curves)
    for (const CurveArc& a : c.arcs) {
      // Curve arcs may run clockwise; draw them counterclockwise.
      double from = a.from, to = a.to;
      if (to < from) std::swap(from, to);
      arc_path(out, f, a.circle, from, to, "class=\"curve\" fill=\"none\" stroke=\"#009988\" stroke-dasharray=\"4 2\"");
    }
  for (Point p : spec.points)
    out << "<ellipse cx=\"" << f.X(p.x) << "\" cy=\"" << f.Y(p.y) << "\" rx=\"2\" ry=\"2\" fill=\"black\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace pkc::cli
