// Four points, one on each edge of H, swept counterclockwise around the
// boundary starting from the top point.
#include <algorithm>
#include <limits>

#include "pkc/linf.hpp"

namespace pkc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Arc {
  double s, e;  // boundary parameter, s <= e, e may exceed the perimeter
  Point ps, pe;
};

struct Pos {
  double t;
  Point pt;
};

Pos min_pos(Pos a, Pos b) { return b.t < a.t ? b : a; }

// (j+1)-th smallest of v, or +inf.
double kth_smallest(std::vector<double> v, int j) {
  if (static_cast<int>(v.size()) <= j) return kInf;
  std::nth_element(v.begin(), v.begin() + j, v.end());
  return v[j];
}

double kth_largest(std::vector<double> v, int j) {
  if (static_cast<int>(v.size()) <= j) return -kInf;
  std::nth_element(v.begin(), v.begin() + j, v.end(), std::greater<>());
  return v[j];
}

class Sweep {
 public:
  Sweep(std::span<const Box> boxes, std::span<const int> subset, const HRectangle& H, StabStats* stats)
      : boxes_(boxes), subset_(subset), H_(H), stats_(stats) {
    L_ = H.left, R_ = H.right, B_ = H.bottom, T_ = H.top;
    W_ = R_ - L_, Hh_ = T_ - B_, P_ = 2 * W_ + 2 * Hh_;
  }

  // Fills arcs and S_2; returns false when both S_2 orientations occur.
  bool classify() {
    for (int i : subset_) {
      const Box& b = boxes_[i];
      const bool t = b.ylo <= T_ && T_ <= b.yhi, bo = b.ylo <= B_ && B_ <= b.yhi;
      const bool l = b.xlo <= L_ && L_ <= b.xhi, r = b.xlo <= R_ && R_ <= b.xhi;
      if (!t && !bo && !l && !r) {
        ++interior_;
      } else if ((t && bo && (l || r)) || (l && r && (t || bo))) {
        // Contains a whole edge, so the point on that edge stabs it.
      } else if (t && bo) {
        s2_.push_back({b.xlo, b.xhi});
      } else if (l && r) {
        horizontal_s2_ = true;
      } else {
        arcs_.push_back(arc_of(b, t, l, bo, r));
      }
    }
    return !(horizontal_s2_ && !s2_.empty());
  }

  bool has_horizontal_s2() const { return horizontal_s2_; }
  int interior() const { return interior_; }

  StabResult run(int budget) {
    StabResult res;
    const int free = budget - interior_;
    if (free < 0) return res;
    const int need = static_cast<int>(subset_.size()) - budget;

    std::vector<double> xs{L_, R_};
    for (const Arc& a : arcs_)
      for (Point p : {a.ps, a.pe})
        if (p.y == T_ && p.x > L_ && p.x < R_) xs.push_back(p.x);
    for (const Interval& iv : s2_)
      for (double x : {iv.lo, iv.hi})
        if (x > L_ && x < R_) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    const std::size_t m = xs.size();
    for (std::size_t t = 0; t + 1 < m; ++t) xs.push_back(0.5 * (xs[t] + xs[t + 1]));

    const auto edge_alloc = enumerate_budgets<7>(free);
    for (double xT : xs) {
      if (stats_) ++stats_->caliper_anchors;
      for (const auto& a : edge_alloc) {
        if (s2_.empty() && (a[4] || a[5] || a[6])) continue;
        for (bool top_right : {true, false}) {
          CaliperState st;
          st.edge_budget = {a[0], a[1], a[2], a[3]};
          st.s2_budget = {a[4], a[5], a[6]};
          st.top_right_of_bottom = top_right;
          if (!advance(xT, st)) continue;
          if (count_stabbed_subset(st.q) >= need) {
            res.feasible = true;
            res.points.assign(st.q.begin(), st.q.end());
            return res;
          }
        }
      }
    }
    return res;
  }

 private:
  Arc arc_of(const Box& b, bool t, bool l, bool bo, bool r) const {
    const double x0 = std::max(b.xlo, L_), x1 = std::min(b.xhi, R_);
    const double y0 = std::max(b.ylo, B_), y1 = std::min(b.yhi, T_);
    const Arc top{R_ - x1, R_ - x0, {x1, T_}, {x0, T_}};
    const Arc left{W_ + (T_ - y1), W_ + (T_ - y0), {L_, y1}, {L_, y0}};
    const Arc bottom{W_ + Hh_ + (x0 - L_), W_ + Hh_ + (x1 - L_), {x0, B_}, {x1, B_}};
    const Arc right{2 * W_ + Hh_ + (y0 - B_), 2 * W_ + Hh_ + (y1 - B_), {R_, y0}, {R_, y1}};
    if (t && l) return {top.s, left.e, top.ps, left.pe};
    if (l && bo) return {left.s, bottom.e, left.ps, bottom.pe};
    if (bo && r) return {bottom.s, right.e, bottom.ps, right.pe};
    if (r && t) return {right.s, top.e + P_, right.ps, top.pe};
    if (t) return top;
    if (l) return left;
    if (bo) return bottom;
    return right;
  }

  int count_stabbed_subset(const std::array<Point, 4>& q) const {
    int c = 0;
    for (int i : subset_)
      for (Point x : q)
        if (boxes_[i].contains(x)) {
          ++c;
          break;
        }
    return c;
  }

  // Greedy placement of the left, bottom and right points for a fixed top point:
  // each goes as far counterclockwise as its gap budget allows.
  bool advance(double xT, CaliperState& st) const {
    const double tT = R_ - xT;
    std::vector<Arc> open;  // arcs missing the top point, shifted to start there
    for (const Arc& a : arcs_) {
      if ((a.s <= tT && tT <= a.e) || (a.s <= tT + P_ && tT + P_ <= a.e)) continue;
      double s = a.s - tT;
      if (s < 0) s += P_;
      open.push_back({s, s + (a.e - a.s), a.ps, a.pe});
    }
    // First end among arcs starting after `from`, skipping `skip` of them.
    auto reach = [&](double from, int skip) -> Pos {
      std::vector<const Arc*> c;
      for (const Arc& a : open)
        if (a.s > from) c.push_back(&a);
      if (static_cast<int>(c.size()) <= skip) return {kInf, {}};
      std::nth_element(c.begin(), c.begin() + skip, c.end(), [](const Arc* u, const Arc* v) { return u->e < v->e; });
      return {c[skip]->e, c[skip]->pe};
    };

    // S_2 squares constrain the bottom point's x to [lo, hi].
    double lo = -kInf, hi = kInf;
    std::vector<double> a_all, b_all, sel;
    for (const Interval& iv : s2_) a_all.push_back(iv.lo), b_all.push_back(iv.hi);
    const auto [c1, c2, c3] = st.s2_budget;
    if (st.top_right_of_bottom) {
      if (std::count_if(a_all.begin(), a_all.end(), [&](double a) { return a > xT; }) > c2) return false;
      hi = std::min(xT, kth_smallest(b_all, c1));
      for (const Interval& iv : s2_)
        if (iv.hi < xT) sel.push_back(iv.lo);
      lo = kth_largest(sel, c3);
    } else {
      if (std::count_if(b_all.begin(), b_all.end(), [&](double b) { return b < xT; }) > c1) return false;
      lo = std::max(xT, kth_largest(a_all, c2));
      for (const Interval& iv : s2_)
        if (iv.lo > xT) sel.push_back(iv.hi);
      hi = kth_smallest(sel, c3);
    }
    if (lo > hi) return false;
    auto t_bottom = [&](double x) { return W_ + Hh_ + (x - L_) - tT; };

    const auto [gL, gB, gR, gT] = st.edge_budget;
    const Pos pL = min_pos(reach(0.0, gL), {W_ + Hh_ - tT, {L_, B_}});
    if (pL.t < W_ - tT) return false;

    Pos pB = min_pos(reach(pL.t, gB), {2 * W_ + Hh_ - tT, {R_, B_}});
    if (hi < kInf) pB = min_pos(pB, {t_bottom(hi), {hi, B_}});
    if (pB.t < W_ + Hh_ - tT) return false;
    if (lo > -kInf && pB.t < t_bottom(lo)) return false;

    const Pos pR = min_pos(reach(pB.t, gR), {P_ - tT, {R_, T_}});
    if (pR.t < 2 * W_ + Hh_ - tT) return false;

    const int tail = static_cast<int>(std::count_if(open.begin(), open.end(), [&](const Arc& a) { return a.s > pR.t; }));
    if (tail > gT) return false;
    st.q = {pR.pt, Point{xT, T_}, pL.pt, pB.pt};
    return true;
  }

  std::span<const Box> boxes_;
  std::span<const int> subset_;
  const HRectangle& H_;
  StabStats* stats_;
  double L_, R_, B_, T_, W_, Hh_, P_;
  std::vector<Arc> arcs_;
  std::vector<Interval> s2_;
  bool horizontal_s2_ = false;
  int interior_ = 0;
};

// Every combination of one representative per edge. Only used when the
// S_2 split is ambiguous, which needs the square side to equal a side of H.
StabResult exhaustive_edges(std::span<const Box> boxes, std::span<const int> subset, const HRectangle& H,
                            int budget) {
  StabResult res;
  const int need = static_cast<int>(subset.size()) - budget;
  auto reps = [&](double lo, double hi, bool along_x) {
    std::vector<double> v{lo, hi};
    for (int i : subset) {
      const Box& b = boxes[i];
      for (double c : along_x ? std::array<double, 2>{b.xlo, b.xhi} : std::array<double, 2>{b.ylo, b.yhi})
        if (c > lo && c < hi) v.push_back(c);
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    const std::size_t m = v.size();
    for (std::size_t t = 0; t + 1 < m; ++t) v.push_back(0.5 * (v[t] + v[t + 1]));
    return v;
  };
  const auto xs = reps(H.left, H.right, true), ys = reps(H.bottom, H.top, false);
  std::vector<Point> q(4);
  for (double xt : xs)
    for (double xb : xs)
      for (double yl : ys)
        for (double yr : ys) {
          q = {{xt, H.top}, {xb, H.bottom}, {H.left, yl}, {H.right, yr}};
          int c = 0;
          for (int i : subset)
            for (Point x : q)
              if (boxes[i].contains(x)) {
                ++c;
                break;
              }
          if (c >= need) {
            res.feasible = true;
            res.points = q;
            return res;
          }
        }
  return res;
}

StabResult sweep_or_transpose(std::span<const Box> boxes, std::span<const int> subset, const HRectangle& H,
                              int budget, StabStats* stats);

}  // namespace

StabResult caliper_decision(std::span<const Box> boxes, std::span<const int> subset, const HRectangle& H,
                            int budget, StabStats* stats) {
  StabResult res = sweep_or_transpose(boxes, subset, H, budget, stats);
  if (res.feasible && stats) ++stats->caliper_successes;
  return res;
}

namespace {

StabResult sweep_or_transpose(std::span<const Box> boxes, std::span<const int> subset, const HRectangle& H,
                              int budget, StabStats* stats) {
  Sweep sweep(boxes, subset, H, stats);
  if (!sweep.classify()) return exhaustive_edges(boxes, subset, H, budget);
  if (!sweep.has_horizontal_s2()) return sweep.run(budget);

  // Squares spanning left to right: transpose so they span top to bottom.
  std::vector<Box> tb(boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) tb[i] = {boxes[i].ylo, boxes[i].yhi, boxes[i].xlo, boxes[i].xhi};
  HRectangle th = H;
  th.left = H.bottom, th.right = H.top, th.bottom = H.left, th.top = H.right;
  Sweep ts(tb, subset, th, stats);
  ts.classify();
  StabResult res = ts.run(budget);
  for (Point& q : res.points) std::swap(q.x, q.y);
  return res;
}

}  // namespace

}  // namespace pkc
