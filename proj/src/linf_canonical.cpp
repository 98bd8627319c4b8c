#include <algorithm>
#include <limits>

#include "pkc/linf.hpp"

namespace pkc {

namespace {

// Sort key for "most extreme first" in each direction; ties go to the lower index.
bool more_extreme(std::span<const Box> b, Direction d, int i, int j) {
  double u = 0, v = 0;
  switch (d) {
    case Direction::left: u = b[i].xlo, v = b[j].xlo; break;
    case Direction::right: u = -b[i].xhi, v = -b[j].xhi; break;
    case Direction::top: u = -b[i].yhi, v = -b[j].yhi; break;
    case Direction::bottom: u = b[i].ylo, v = b[j].ylo; break;
  }
  if (u != v) return u < v;
  return i < j;
}

void sort_extreme(std::span<const Box> boxes, Direction d, std::vector<int>& idx) {
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return more_extreme(boxes, d, i, j); });
}

}  // namespace

std::vector<Box> boxes_of(std::span<const Square> squares, double eps) {
  std::vector<Box> out;
  out.reserve(squares.size());
  for (const Square& s : squares) {
    const double h = 0.5 * s.side + eps;
    out.push_back({s.center.x - h, s.center.x + h, s.center.y - h, s.center.y + h});
  }
  return out;
}

int count_stabbed(std::span<const Box> boxes, std::span<const Point> q) {
  int c = 0;
  for (const Box& b : boxes)
    for (Point x : q)
      if (b.contains(x)) {
        ++c;
        break;
      }
  return c;
}

HRectangle build_h_rectangle(std::span<const Box> boxes, std::span<const int> subset, int jL, int jR,
                             int jT, int jB) {
  if (jL < 1 || jR < 1 || jT < 1 || jB < 1) throw TooFewSquares();
  std::vector<int> rest(subset.begin(), subset.end());
  const std::array<std::pair<Direction, int>, 4> steps{
      {{Direction::left, jL}, {Direction::right, jR}, {Direction::top, jT}, {Direction::bottom, jB}}};
  for (auto [d, j] : steps) {
    if (static_cast<int>(rest.size()) < j) throw TooFewSquares();
    sort_extreme(boxes, d, rest);
    rest.erase(rest.begin(), rest.begin() + (j - 1));
  }
  if (rest.empty()) throw TooFewSquares();
  std::sort(rest.begin(), rest.end());

  HRectangle H;
  H.jL = jL, H.jR = jR, H.jT = jT, H.jB = jB;
  H.left = H.bottom = std::numeric_limits<double>::infinity();
  H.right = H.top = -std::numeric_limits<double>::infinity();
  for (int i : rest) {
    H.left = std::min(H.left, boxes[i].xhi);
    H.right = std::max(H.right, boxes[i].xlo);
    H.bottom = std::min(H.bottom, boxes[i].yhi);
    H.top = std::max(H.top, boxes[i].ylo);
  }
  H.degenerate = !(H.left < H.right) || !(H.bottom < H.top);
  if (!H.degenerate) {
    for (int i : rest) {
      const Box& b = boxes[i];
      const bool touches = (b.ylo <= H.top && H.top <= b.yhi) || (b.ylo <= H.bottom && H.bottom <= b.yhi) ||
                           (b.xlo <= H.left && H.left <= b.xhi) || (b.xlo <= H.right && H.right <= b.xhi);
      if (!touches) H.interior.push_back(i);
    }
  }
  H.k_interior = static_cast<int>(H.interior.size());
  H.clipped = std::move(rest);
  return H;
}

HRectangle build_h_rectangle(std::span<const Square> squares, int jL, int jR, int jT, int jB, double eps) {
  const auto boxes = boxes_of(squares, eps);
  std::vector<int> all(boxes.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return build_h_rectangle(boxes, all, jL, jR, jT, jB);
}

CanonicalSubsetStructure::CanonicalSubsetStructure(std::span<const Box> boxes, std::vector<int> members) {
  auto base = std::make_shared<Base>();
  base->boxes.assign(boxes.begin(), boxes.end());
  std::sort(members.begin(), members.end());
  base->members = std::move(members);
  for (int d = 0; d < 4; ++d) {
    base->order[d] = base->members;
    sort_extreme(base->boxes, static_cast<Direction>(d), base->order[d]);
  }
  base_ = std::move(base);
}

bool CanonicalSubsetStructure::contains(int i) const {
  if (!std::binary_search(base_->members.begin(), base_->members.end(), i)) return false;
  for (Point q : removed_)
    if (base_->boxes[i].contains(q)) return false;
  return true;
}

std::size_t CanonicalSubsetStructure::size() const { return members().size(); }

std::vector<int> CanonicalSubsetStructure::members() const {
  std::vector<int> out;
  for (int i : base_->members)
    if (contains(i)) out.push_back(i);
  return out;
}

int CanonicalSubsetStructure::jth_extreme(Direction d, int j) const {
  for (int i : base_->order[static_cast<int>(d)])
    if (contains(i) && --j == 0) return i;
  return -1;
}

CanonicalSubsetStructure remove_stabbed(const CanonicalSubsetStructure& s, Point q) {
  CanonicalSubsetStructure out = s;
  out.removed_.push_back(q);
  return out;
}

}  // namespace pkc
