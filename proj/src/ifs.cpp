#include "dustlab/ifs.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace dustlab {

Similarity::Similarity(double ratio, Vec2 translation) : ratio_(ratio), translation_(translation) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("similarity ratio must lie in (0,1)");
}

Similarity Similarity::compose(const Similarity& inner) const {
  return Similarity(ratio_ * inner.ratio_, apply(inner.translation_));
}

SelfSimilarSystem::SelfSimilarSystem(std::vector<Similarity> maps, Rect feasible_set)
    : maps_(std::move(maps)), feasible_(feasible_set) {
  if (maps_.size() < 2) throw DomainError("a self-similar system needs at least two maps");
}

bool SelfSimilarSystem::satisfies_osc() const {
  std::vector<Rect> images;
  images.reserve(maps_.size());
  for (const auto& m : maps_) {
    const Rect im = m.apply(feasible_);
    if (im.lo.x < feasible_.lo.x || im.lo.y < feasible_.lo.y || im.hi.x > feasible_.hi.x ||
        im.hi.y > feasible_.hi.y)
      return false;
    images.push_back(im);
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      const Rect& a = images[i];
      const Rect& b = images[j];
      const bool separated = a.hi.x < b.lo.x || b.hi.x < a.lo.x || a.hi.y < b.lo.y || b.hi.y < a.lo.y;
      if (!separated) return false;
    }
  }
  return true;
}

CantorDustParams::CantorDustParams(double r) : r_(r) {
  if (!(r > 2.0) || !std::isfinite(r)) throw DomainError("Cantor dust parameter r must satisfy r > 2");
  dimension_ = std::log(4.0) / std::log(r);
  const IntervalValue ratio = IntervalValue(1.0) / IntervalValue(r);
  const IntervalValue keep = IntervalValue(1.0) - ratio;
  side_[0] = IntervalValue(1.0);
  for (int n = 1; n <= kMaxLevel; ++n) side_[n] = side_[n - 1] * ratio;
  for (int n = 0; n <= kMaxLevel; ++n) offset_[n] = side_[n] * keep;
}

IntervalValue CantorDustParams::dimension_enclosure() const {
  return log(IntervalValue(4.0)) / log(IntervalValue(r_));
}

SelfSimilarSystem build_cantor_dust(double r) {
  if (!(r > 2.0)) throw DomainError("build_cantor_dust: r must exceed 2, got " + std::to_string(r));
  const double ratio = 1.0 / r;
  const double t = (r - 1.0) / r;
  std::vector<Similarity> maps{
      Similarity(ratio, {0.0, 0.0}),
      Similarity(ratio, {t, 0.0}),
      Similarity(ratio, {t, t}),
      Similarity(ratio, {0.0, t}),
  };
  return SelfSimilarSystem(std::move(maps), Rect{{0.0, 0.0}, {1.0, 1.0}});
}

double minkowski_dimension(double r) {
  if (!(r > 2.0)) throw DomainError("minkowski_dimension: r must exceed 2");
  return std::log(4.0) / std::log(r);
}

Square word_square(const SelfSimilarSystem& system, const Word& word) {
  const auto& maps = system.maps();
  Square sq{{0.0, 0.0}, 1.0};
  // S_{w_1} o ... o S_{w_n}: apply the innermost map first.
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
    if (*it < 1 || *it > maps.size()) throw DomainError("word letter outside the alphabet");
    const Similarity& m = maps[*it - 1u];
    sq = Square{m.apply(sq.corner), sq.side * m.ratio()};
  }
  return sq;
}

std::vector<Square> construction_step(const SelfSimilarSystem& system, int n, std::size_t cap) {
  if (n < 0) throw DomainError("construction_step: n must be non-negative");
  const std::size_t m = system.maps().size();
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) {
    if (count > cap / m) throw ResourceError("construction_step: square count exceeds cap");
    count *= m;
  }
  if (count > cap) throw ResourceError("construction_step: square count exceeds cap");

  // Each level-n square is S_w([0,1]^2); expanding level by level in letter
  // order keeps words lexicographic.
  std::vector<Square> level{Square{{0.0, 0.0}, 1.0}};
  for (int depth = 0; depth < n; ++depth) {
    std::vector<Square> next;
    next.reserve(level.size() * m);
    for (const auto& sq : level) {
      for (const auto& map : system.maps()) {
        // S_w o S_k maps the unit square to corner_w + side_w * S_k([0,1]^2).
        next.push_back(Square{{sq.corner.x + sq.side * map.translation().x,
                               sq.corner.y + sq.side * map.translation().y},
                              sq.side * map.ratio()});
      }
    }
    level = std::move(next);
  }
  return level;
}

namespace {

struct Fraction {
  std::int64_t num;
  std::int64_t den;
};

// Best rational approximation of x with denominator <= max_den, via
// continued fraction convergents.
std::optional<Fraction> rationalize(double x, std::int64_t max_den, double rel_tol) {
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rem = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_real = std::floor(rem);
    if (a_real > 9.0e15) break;
    const auto a = static_cast<std::int64_t>(a_real);
    const std::int64_t p2 = a * p1 + p0;
    const std::int64_t q2 = a * q1 + q0;
    if (q2 > max_den) break;
    if (std::abs(x - static_cast<double>(p2) / static_cast<double>(q2)) <= rel_tol * std::abs(x))
      return Fraction{p2, q2};
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = rem - a_real;
    if (frac <= 0.0) break;
    rem = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> lattice_base(std::span<const double> ratios, std::int64_t max_denominator) {
  if (ratios.empty()) return std::nullopt;
  std::vector<double> logs;
  logs.reserve(ratios.size());
  for (double q : ratios) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("lattice_base: ratios must lie in (0,1)");
    logs.push_back(-std::log(q));
  }
  // Express every log-ratio as (p_i / q_i) * logs[0].
  constexpr double kRelTol = 1e-13;
  std::vector<Fraction> fracs;
  std::int64_t common_den = 1;
  for (double l : logs) {
    const auto f = rationalize(l / logs[0], max_denominator, kRelTol);
    if (!f) return std::nullopt;
    fracs.push_back(*f);
    const std::int64_t g = std::gcd(common_den, f->den);
    if (common_den / g > max_denominator / f->den + 1) return std::nullopt;
    common_den = common_den / g * f->den;
    if (common_den > max_denominator) return std::nullopt;
  }
  // logs[i] = m_i * logs[0] / common_den with integer m_i; the generator is
  // logs[0] * gcd(m_i) / common_den.
  std::int64_t g = 0;
  for (const auto& f : fracs) g = std::gcd(g, f.num * (common_den / f.den));
  const double a = logs[0] * static_cast<double>(g) / static_cast<double>(common_den);
  return std::exp(a);
}

}  // namespace dustlab
