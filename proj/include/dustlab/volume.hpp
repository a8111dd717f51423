#pragma once

// Certified area of the eps-parallel set C^r_eps, optionally restricted to a
// rectilinear region, by adaptive quadtree classification.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dustlab/distance.hpp"
#include "dustlab/interval.hpp"

namespace dustlab {

enum class RegionKind { Plane, UnitSquare, GammaCross, GammaMinusCenter };

const char* to_string(RegionKind kind);

/// Restriction domain for area queries. The cross Gamma is the unit square
/// minus its four corner squares of side 1/r; GammaMinusCenter further
/// removes the central square [1/r, 1-1/r]^2.
struct Region {
  RegionKind kind = RegionKind::Plane;
  double r = 0;

  static Region plane() { return {RegionKind::Plane, 0}; }
  static Region unit_square() { return {RegionKind::UnitSquare, 0}; }
  static Region gamma_cross(double r) { return {RegionKind::GammaCross, r}; }
  static Region gamma_minus_center(double r) { return {RegionKind::GammaMinusCenter, r}; }
};

/// Enclosure of the region's area. Throws DomainError for the plane.
IntervalValue region_area(const Region& region);

/// Enclosure of area(cell ∩ region).
IntervalValue clipped_area(const Region& region, const Rect& cell);

enum class Execution { Serial, Parallel };

struct LeafCell {
  Rect rect;
  CellClass cls;
  int level;
};

struct VolumeOptions {
  int max_depth = 40;
  double classifier_slack = 0.125;
  /// Upper bound on the number of live cells in one refinement level.
  std::size_t max_cells = 60'000'000;
  /// Parents refined per batch; the budget is re-checked between batches.
  std::size_t batch = 1 << 16;
  Execution execution = Execution::Parallel;
  DistanceOptions distance;
  /// When set, receives every final leaf cell (for rendering).
  std::vector<LeafCell>* leaves = nullptr;
};

struct VolumeResult {
  IntervalValue enclosure;
  std::uint64_t cells_inside = 0;
  std::uint64_t cells_outside = 0;
  std::uint64_t cells_uncertain = 0;
  int depth_reached = 0;
  bool budget_met = false;
};

/// Enclosure of area(C^r_eps ∩ region) with width <= err_budget unless the
/// depth or cell cap is reached first (then budget_met is false and the
/// enclosure is still valid). Results are bit-identical across Execution
/// modes and thread counts.
VolumeResult volume(const CantorDustParams& params, double eps, const Region& region,
                    double err_budget, const VolumeOptions& options = {});

/// Enclosure of area(C^r_eps) / eps^(2 - D_r).
IntervalValue normalized_volume(const CantorDustParams& params, double eps, double err_budget,
                                const VolumeOptions& options = {});

/// Split of area(C^r_eps) into the blue squares, red discs and the green
/// remainder, valid for eps in the level-n component window.
struct Decomposition {
  double blue = 0;
  double red = 0;
  IntervalValue green;
  VolumeResult total;
};

/// Throws EpsOutOfRange when eps is outside the window for level n.
Decomposition decompose_volume(const CantorDustParams& params, int n, double eps, double err_budget,
                               const VolumeOptions& options = {});

}  // namespace dustlab
