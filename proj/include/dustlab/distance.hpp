#pragma once

// Certified Euclidean distance from a point to the attractor C^r.
//
// Branch and bound over the square tree of the construction: every level-n
// square S_w([0,1]^2) contains the part of C^r coded by w, so the distance
// to the square bounds the distance to that part from below, and its four
// corners (images of the fixed points of S_1..S_4) lie in C^r and bound it
// from above. The frontier is a min-heap keyed by (lower bound, word in
// lexicographic order); squares whose lower bound exceeds the best upper
// bound are never expanded. Square geometry is carried as enclosures and
// every bound is rounded outward.

#include <cstddef>

#include "dustlab/ifs.hpp"

namespace dustlab {

struct DistanceOptions {
  std::size_t node_cap = 1'000'000;
};

struct DistanceResult {
  double lower = 0;
  double upper = 0;
  std::size_t nodes_expanded = 0;

  double width() const { return upper - lower; }
};

/// Enclosure of dist(point, C^r) with upper - lower <= tol.
/// Throws ToleranceError for tol <= 0 and ResourceError past the node cap.
DistanceResult distance_to_attractor(const CantorDustParams& params, Vec2 point, double tol,
                                     const DistanceOptions& options = {});

enum class CellClass : unsigned char { Inside, Outside, Uncertain };

const char* to_string(CellClass c);

/// Classifies a closed axis-aligned cell against C^r_eps using the distance at
/// the cell center and the 1-Lipschitz property of the distance function.
/// The distance query stops as soon as the verdict is certified, or once its
/// width drops below slack * half-diagonal.
CellClass classify_cell(const CantorDustParams& params, const Rect& cell, double eps,
                        double slack = 0.125, const DistanceOptions& options = {});

}  // namespace dustlab
