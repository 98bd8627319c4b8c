#pragma once

#include <map>
#include <span>
#include <vector>

#include "pkc/geom.hpp"

namespace pkc {

/// Number of disks that do NOT contain `x`.
int level_of_point(Point x, std::span<const Disk> disks, double eps = kDefaultEps);

struct ArrVertex {
  Point p;
  int disk_a = -1;  ///< first incident disk
  int disk_b = -1;  ///< second incident disk; -1 for an x-extremal point of disk_a
  int level = 0;
  bool x_extremal = false;  ///< leftmost or rightmost point of some disk
  std::vector<int> disks;   ///< every disk whose boundary passes through p
};

/// Circular arc of one disk boundary, counterclockwise from theta0 to theta1.
/// Arcs never cross an x-extremal point, so each lies in one semicircle and
/// is x-monotone.
struct ArrArc {
  int disk = -1;
  double theta0 = 0.0;
  double theta1 = 0.0;
  int v0 = -1;  ///< vertex at theta0
  int v1 = -1;  ///< vertex at theta1
  int level = 0;
  bool upper = true;

  double mid_angle() const { return 0.5 * (theta0 + theta1); }
  int left_vertex() const { return upper ? v1 : v0; }
  int right_vertex() const { return upper ? v0 : v1; }
};

/// Vertices and arcs of an arrangement of congruent disks with level <= k.
struct LevelArrangement {
  std::vector<Disk> disks;
  int k = 0;
  double eps = kDefaultEps;
  std::vector<ArrVertex> vertices;
  std::vector<ArrArc> arcs;
  std::vector<std::vector<int>> vertex_arcs;  ///< arcs incident to each vertex

  double radius() const { return disks.empty() ? 0.0 : disks.front().radius; }
  Circle circle(int disk) const { return {disks[disk].center, disks[disk].radius}; }
  Point arc_point(const ArrArc& a, double theta) const { return point_on(circle(a.disk), theta); }
};

LevelArrangement build_level_arrangement(std::span<const Disk> disks, int k,
                                         double eps = kDefaultEps);

enum class VertexKind { convex, concave, extremal };

/// Corner vertices of the region boundary are convex or concave; x-extremal
/// points and upper/lower crossings that are not corners are extremal.
/// Vertices of level > k, and pass-through crossings, are absent.
std::map<int, VertexKind> classify_vertices(const LevelArrangement& arr);

/// Directed arc of a curve, from angle `from` to angle `to` on its circle.
struct CurveArc {
  int disk = -1;
  Circle circle;
  double from = 0.0;
  double to = 0.0;

  Point start() const { return point_on(circle, from); }
  Point end() const { return point_on(circle, to); }
};

struct UnitDiskCurve {
  std::vector<CurveArc> arcs;
  bool monotone = false;
  bool concave = true;  ///< upper family (true) or lower family (false)
};

/// At most 2k+2 curves (k+1 upper, k+1 lower chains) covering every arc of
/// level <= k. Ray portions of the chains are dropped.
std::vector<UnitDiskCurve> cover_by_curves(const LevelArrangement& arr);

struct DecompositionStats {
  int extremal_vertices = 0;
  int walks = 0;
  int repair_walks = 0;  ///< walks started from arcs the extremal walks missed
};

/// x-monotone curves whose union of arcs is exactly the arc set of `arr`.
std::vector<UnitDiskCurve> monotone_decomposition(const LevelArrangement& arr,
                                                  DecompositionStats* stats = nullptr);

/// Number of connected components of the region of level <= k.
int connected_components(const LevelArrangement& arr);

std::vector<Point> circle_curve_intersections(const Circle& c, const UnitDiskCurve& curve,
                                              double eps = kDefaultEps);

/// True when `theta` lies within the angular span of `a` (with slack).
bool arc_contains_angle(const CurveArc& a, double theta, double slack);

/// Disk family whose region of level <= k has (floor(k/2)+1)^2 components.
std::vector<Disk> component_lower_bound_family(int k);

}  // namespace pkc
