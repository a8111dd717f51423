#pragma once

// Closed interval arithmetic with outward rounding.
//
// Every arithmetic operation is evaluated in round-to-nearest and then pushed
// outward by (at least) one unit in the last place: the lower end toward
// -inf, the upper end toward +inf. IEEE 754 guarantees the nearest result is within half an
// ulp of the exact one, so the widened result always encloses the exact
// value. libm transcendentals (log, exp) are not correctly rounded; they are
// widened by kLibmUlps instead.

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <type_traits>

#include "dustlab/errors.hpp"

namespace dustlab {

namespace rounding {

// x + |x| * epsilon moves x by at least one ulp in either binade direction,
// and the product is an exact power-of-two scaling; denorm_min handles 0.
// Much cheaper than std::nextafter and at most two ulps wide.
template <class F>
inline F up(F x) {
  return x + std::abs(x) * std::numeric_limits<F>::epsilon() + std::numeric_limits<F>::denorm_min();
}

template <class F>
inline F down(F x) {
  return x - std::abs(x) * std::numeric_limits<F>::epsilon() - std::numeric_limits<F>::denorm_min();
}

template <class F>
inline F up(F x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = up(x);
  return x;
}

template <class F>
inline F down(F x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = down(x);
  return x;
}

// Directed scalar helpers used by the geometric kernels. A floating-point
// sum that comes out as zero is exact (gradual underflow), as is a product
// with a zero factor.
template <class F>
inline F add_down(F a, F b) { const F s = a + b; return s == F(0) ? s : down(s); }
template <class F>
inline F add_up(F a, F b) { const F s = a + b; return s == F(0) ? s : up(s); }
template <class F>
inline F sub_down(F a, F b) { const F s = a - b; return s == F(0) ? s : down(s); }
template <class F>
inline F sub_up(F a, F b) { const F s = a - b; return s == F(0) ? s : up(s); }
template <class F>
inline F mul_down(F a, F b) { return a == F(0) || b == F(0) ? F(0) : down(a * b); }
template <class F>
inline F mul_up(F a, F b) { return a == F(0) || b == F(0) ? F(0) : up(a * b); }
// sqrt is correctly rounded; one ulp is enough.
template <class F>
inline F sqrt_down(F a) { return a <= F(0) ? F(0) : down(std::sqrt(a)); }
template <class F>
inline F sqrt_up(F a) { return a == F(0) ? F(0) : up(std::sqrt(a)); }

}  // namespace rounding

template <class F>
class Interval {
 public:
  static constexpr int kLibmUlps = 3;

  constexpr Interval() = default;
  constexpr Interval(F value) : lo_(value), hi_(value) {}  // NOLINT: implicit by intent
  Interval(F lo, F hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw DomainError("interval with lo > hi");
  }

  F lo() const { return lo_; }
  F hi() const { return hi_; }
  F width() const { return rounding::sub_up(hi_, lo_); }
  F mid() const { return lo_ / 2 + hi_ / 2; }

  bool contains(F x) const { return lo_ <= x && x <= hi_; }
  bool overlaps(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  bool certainly_less(const Interval& o) const { return hi_ < o.lo_; }
  bool certainly_greater(const Interval& o) const { return lo_ > o.hi_; }

  static Interval hull(F a, F b) { return {std::min(a, b), std::max(a, b)}; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return raw(rounding::add_down(a.lo_, b.lo_), rounding::add_up(a.hi_, b.hi_));
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return raw(rounding::sub_down(a.lo_, b.hi_), rounding::sub_up(a.hi_, b.lo_));
  }
  friend Interval operator-(const Interval& a) { return raw(-a.hi_, -a.lo_); }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const F p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
    return raw(rounding::down(std::min({p1, p2, p3, p4})),
               rounding::up(std::max({p1, p2, p3, p4})));
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo_ <= F(0) && b.hi_ >= F(0)) throw DomainError("interval division by an interval containing 0");
    const F q1 = a.lo_ / b.lo_, q2 = a.lo_ / b.hi_, q3 = a.hi_ / b.lo_, q4 = a.hi_ / b.hi_;
    return raw(rounding::down(std::min({q1, q2, q3, q4})),
               rounding::up(std::max({q1, q2, q3, q4})));
  }
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  Interval& operator/=(const Interval& o) { return *this = *this / o; }

  friend Interval sqrt(const Interval& a) {
    if (a.hi_ < F(0)) throw DomainError("sqrt of a negative interval");
    return raw(rounding::sqrt_down(std::max(a.lo_, F(0))), rounding::sqrt_up(a.hi_));
  }
  friend Interval log(const Interval& a) {
    if (!(a.lo_ > F(0))) throw DomainError("log of an interval not bounded away from 0");
    return raw(rounding::down(std::log(a.lo_), kLibmUlps), rounding::up(std::log(a.hi_), kLibmUlps));
  }
  friend Interval exp(const Interval& a) {
    return raw(std::max(F(0), rounding::down(std::exp(a.lo_), kLibmUlps)),
               rounding::up(std::exp(a.hi_), kLibmUlps));
  }
  /// x^y for x > 0, evaluated as exp(y log x).
  friend Interval pow(const Interval& x, const Interval& y) { return exp(y * log(x)); }

  friend std::ostream& operator<<(std::ostream& os, const Interval& a) {
    return os << '[' << a.lo_ << ", " << a.hi_ << ']';
  }

 private:
  static Interval raw(F lo, F hi) {
    Interval out;
    out.lo_ = lo;
    out.hi_ = hi;
    return out;
  }

  F lo_{};
  F hi_{};
};

/// Enclosure of pi.
template <class F>
Interval<F> pi_enclosure() {
  if constexpr (std::is_same_v<F, double>) {
    // M_PI = 3.141592653589793116 rounds pi downward.
    return {3.141592653589793116, rounding::up(3.141592653589793116)};
  } else {
    const F p = 3.141592653589793238462643383279502884L;
    return {rounding::down(p), rounding::up(p)};
  }
}

using IntervalValue = Interval<double>;

// Uniform access so closed forms can be written once and instantiated for
// plain floating point and for intervals alike.
template <class T>
struct NumTraits;

template <>
struct NumTraits<double> {
  static double pi() { return 3.14159265358979323846; }
};
template <>
struct NumTraits<long double> {
  static long double pi() { return 3.141592653589793238462643383279502884L; }
};
template <class F>
struct NumTraits<Interval<F>> {
  static Interval<F> pi() { return pi_enclosure<F>(); }
};

}  // namespace dustlab
