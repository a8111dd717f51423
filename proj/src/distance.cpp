#include "dustlab/distance.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace dustlab {

namespace {

using rounding::add_down;
using rounding::add_up;
using rounding::mul_down;
using rounding::mul_up;
using rounding::sub_down;
using rounding::sub_up;

__extension__ using WordBits = unsigned __int128;

// Letters are packed two bits each, first letter in the most significant
// position. Comparing (bits, depth) is the lexicographic order on words.
constexpr int kWordBits = 128;

struct Node {
  double lower;
  WordBits word;
  int depth;
  IntervalValue x;  // lower-left corner
  IntervalValue y;
};

struct HeapAfter {
  bool operator()(const Node& a, const Node& b) const {
    if (a.lower != b.lower) return a.lower > b.lower;
    if (a.word != b.word) return a.word > b.word;
    return a.depth > b.depth;
  }
};

// max over c in [lo, hi] of |p - c|, rounded up.
inline double far_gap(double p, const IntervalValue& c) {
  return std::max(sub_up(p, c.lo()), sub_up(c.hi(), p));
}

// min over c in [lo, hi] of |p - c|, rounded down.
inline double near_gap(double p, double lo, double hi) {
  if (p < lo) return std::max(0.0, sub_down(lo, p));
  if (p > hi) return std::max(0.0, sub_down(p, hi));
  return 0.0;
}

inline double hypot_up(double dx, double dy) {
  return rounding::sqrt_up(add_up(mul_up(dx, dx), mul_up(dy, dy)));
}

inline double hypot_down(double dx, double dy) {
  return rounding::sqrt_down(add_down(mul_down(dx, dx), mul_down(dy, dy)));
}

inline double box_lower(const CantorDustParams& params, const Node& n, Vec2 p) {
  const double s = params.side(n.depth).hi();
  const double dx = near_gap(p.x, n.x.lo(), add_up(n.x.hi(), s));
  const double dy = near_gap(p.y, n.y.lo(), add_up(n.y.hi(), s));
  return hypot_down(dx, dy);
}

inline double corner_upper(const CantorDustParams& params, const Node& n, Vec2 p) {
  const IntervalValue& s = params.side(n.depth);
  const IntervalValue x1 = n.x + s;
  const IntervalValue y1 = n.y + s;
  const double dx0 = far_gap(p.x, n.x), dx1 = far_gap(p.x, x1);
  const double dy0 = far_gap(p.y, n.y), dy1 = far_gap(p.y, y1);
  return std::min({hypot_up(dx0, dy0), hypot_up(dx1, dy0), hypot_up(dx1, dy1), hypot_up(dx0, dy1)});
}

// Best-first search; `done(lower, upper)` decides termination given the
// current global enclosure.
template <class Done>
DistanceResult search(const CantorDustParams& params, Vec2 p, const DistanceOptions& options,
                      Done&& done) {
  thread_local std::vector<Node> heap;
  heap.clear();
  const HeapAfter after;

  Node root{0.0, 0, 0, IntervalValue(0.0), IntervalValue(0.0)};
  root.lower = box_lower(params, root, p);
  double best_upper = corner_upper(params, root, p);
  heap.push_back(root);

  DistanceResult result;
  while (!heap.empty()) {
    const Node& top = heap.front();
    const double lower = std::min(top.lower, best_upper);
    if (done(lower, best_upper)) {
      result.lower = lower;
      result.upper = best_upper;
      return result;
    }
    const Node node = top;
    std::pop_heap(heap.begin(), heap.end(), after);
    heap.pop_back();
    if (node.lower > best_upper) continue;
    if (node.depth >= CantorDustParams::kMaxLevel || 2 * (node.depth + 1) > kWordBits)
      throw ResourceError("distance_to_attractor: square tree depth exhausted before tolerance was met");
    if (++result.nodes_expanded > options.node_cap)
      throw ResourceError("distance_to_attractor: node cap exceeded");

    const int child_depth = node.depth + 1;
    const IntervalValue& off = params.offset(node.depth);
    const int shift = kWordBits - 2 * child_depth;
    // Letters 1..4 translate by (0,0), (t,0), (t,t), (0,t).
    const bool shift_x[4] = {false, true, true, false};
    const bool shift_y[4] = {false, false, true, true};
    for (unsigned k = 0; k < 4; ++k) {
      Node child{0.0, node.word | (static_cast<WordBits>(k) << shift), child_depth,
                 shift_x[k] ? node.x + off : node.x, shift_y[k] ? node.y + off : node.y};
      child.lower = box_lower(params, child, p);
      best_upper = std::min(best_upper, corner_upper(params, child, p));
      if (child.lower <= best_upper) {
        heap.push_back(child);
        std::push_heap(heap.begin(), heap.end(), after);
      }
    }
  }
  // Every remaining square was pruned; the best witness is the distance.
  result.lower = best_upper;
  result.upper = best_upper;
  return result;
}

}  // namespace

DistanceResult distance_to_attractor(const CantorDustParams& params, Vec2 point, double tol,
                                     const DistanceOptions& options) {
  if (!(tol > 0.0)) throw ToleranceError("distance_to_attractor: tol must be positive");
  return search(params, point, options,
                [tol](double lower, double upper) { return sub_up(upper, lower) <= tol; });
}

const char* to_string(CellClass c) {
  switch (c) {
    case CellClass::Inside:
      return "inside";
    case CellClass::Outside:
      return "outside";
    case CellClass::Uncertain:
      return "uncertain";
  }
  return "?";
}

CellClass classify_cell(const CantorDustParams& params, const Rect& cell, double eps, double slack,
                        const DistanceOptions& options) {
  if (!(eps > 0.0)) throw DomainError("classify_cell: eps must be positive");
  const Vec2 c{cell.lo.x + (cell.hi.x - cell.lo.x) / 2, cell.lo.y + (cell.hi.y - cell.lo.y) / 2};
  const double hx = std::max(sub_up(cell.hi.x, c.x), sub_up(c.x, cell.lo.x));
  const double hy = std::max(sub_up(cell.hi.y, c.y), sub_up(c.y, cell.lo.y));
  const double halfdiag = hypot_up(hx, hy);
  const double tol = std::max(halfdiag * slack, 0x1p-1000);

  const auto inside = [&](double upper) { return add_up(upper, halfdiag) <= eps; };
  const auto outside = [&](double lower) { return sub_down(lower, halfdiag) >= eps; };
  const DistanceResult d = search(params, c, options, [&](double lower, double upper) {
    return inside(upper) || outside(lower) || sub_up(upper, lower) <= tol;
  });
  if (inside(d.upper)) return CellClass::Inside;
  if (outside(d.lower)) return CellClass::Outside;
  return CellClass::Uncertain;
}

}  // namespace dustlab
