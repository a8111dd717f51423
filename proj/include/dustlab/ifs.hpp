#pragma once

// Similarities, the four-map lattice Cantor dust system S^r, and
// construction-step geometry.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dustlab/interval.hpp"

namespace dustlab {

struct Vec2 {
  double x = 0;
  double y = 0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Axis-aligned closed rectangle [lo.x, hi.x] x [lo.y, hi.y].
struct Rect {
  Vec2 lo;
  Vec2 hi;

  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
};

/// Contractive similarity x -> ratio * x + translation. The orthogonal part
/// is always the identity; rotations and reflections are not represented.
class Similarity {
 public:
  Similarity(double ratio, Vec2 translation);

  double ratio() const { return ratio_; }
  Vec2 translation() const { return translation_; }

  Vec2 apply(Vec2 p) const { return {ratio_ * p.x + translation_.x, ratio_ * p.y + translation_.y}; }
  Rect apply(const Rect& rc) const { return {apply(rc.lo), apply(rc.hi)}; }

  /// (*this) o inner.
  Similarity compose(const Similarity& inner) const;

 private:
  double ratio_;
  Vec2 translation_;
};

class SelfSimilarSystem {
 public:
  SelfSimilarSystem(std::vector<Similarity> maps, Rect feasible_set);

  const std::vector<Similarity>& maps() const { return maps_; }
  const Rect& feasible_set() const { return feasible_; }

  /// Open set condition for the feasible rectangle. Images must lie in the
  /// feasible set and their closures must be pairwise disjoint, so images
  /// that merely touch are rejected.
  bool satisfies_osc() const;

 private:
  std::vector<Similarity> maps_;
  Rect feasible_;
};

/// Parameter r > 2 of the Cantor dust C^r together with the enclosures the
/// geometric kernels need (the contraction 1/r and the level-n side r^-n).
class CantorDustParams {
 public:
  static constexpr int kMaxLevel = 64;

  explicit CantorDustParams(double r);

  double r() const { return r_; }
  /// ln 4 / ln r.
  double dimension() const { return dimension_; }
  IntervalValue dimension_enclosure() const;

  /// Enclosure of r^-level.
  const IntervalValue& side(int level) const { return side_[static_cast<std::size_t>(level)]; }
  /// Enclosure of (r-1)/r * r^-level, the offset of maps 2..4 at that level.
  const IntervalValue& offset(int level) const { return offset_[static_cast<std::size_t>(level)]; }

 private:
  double r_;
  double dimension_;
  std::array<IntervalValue, kMaxLevel + 1> side_;
  std::array<IntervalValue, kMaxLevel + 1> offset_;
};

/// Word over the alphabet {1,2,3,4}; S_w = S_{w_1} o ... o S_{w_n}.
struct Word {
  std::vector<std::uint8_t> letters;

  std::size_t size() const { return letters.size(); }
};

/// Closed square [corner, corner + side]^2.
struct Square {
  Vec2 corner;
  double side = 0;

  Rect rect() const { return {corner, {corner.x + side, corner.y + side}}; }
};

inline constexpr std::size_t kDefaultSquareCap = std::size_t{1} << 24;  // 4^12

/// The maps S^r_1..S^r_4 with the open unit square as feasible set.
/// Throws DomainError for r <= 2.
SelfSimilarSystem build_cantor_dust(double r);

/// ln 4 / ln r. Throws DomainError for r <= 2.
double minkowski_dimension(double r);

/// Image S_w([0,1]^2) of the unit square under a word.
Square word_square(const SelfSimilarSystem& system, const Word& word);

/// All 4^n level-n squares S_w([0,1]^2), words in lexicographic order.
std::vector<Square> construction_step(const SelfSimilarSystem& system, int n,
                                      std::size_t cap = kDefaultSquareCap);

/// Base e^a of the lattice generated by {ln r_i}, or nothing when the
/// log-ratios are not commensurable with denominators up to max_denominator.
std::optional<double> lattice_base(std::span<const double> ratios,
                                   std::int64_t max_denominator = 1'000'000);

}  // namespace dustlab
