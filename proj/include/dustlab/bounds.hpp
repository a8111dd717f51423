#pragma once

// Closed-form quantities for C^r: the component window for eps, the four
// eps-sequences, the green-area bounds, the ratio bounds for r >= 30, the
// function h, the conjectured lower/upper bounds f1 and f2 and the
// threshold root.
//
// Each closed form is written once as a template and instantiated for plain
// floating point (fast path) and for Interval<F> (certified path). The
// expressions keep the parenthesisation of the displayed fractions; no
// algebraic simplification is applied.

#include <cmath>

#include "dustlab/interval.hpp"

namespace dustlab {

struct EpsWindow {
  double lo = 0;
  double hi = 0;

  /// Membership with a relative slack so that sequences landing exactly on
  /// an endpoint are accepted despite rounding.
  bool contains(double eps, double rel_slack = 1e-12) const {
    return eps >= lo * (1.0 - rel_slack) && eps <= hi * (1.0 + rel_slack);
  }
};

/// sqrt(1/2) (r-2)/r r^-n <= eps <= (r-2)/2 r^-n: eps-neighbourhoods of the
/// 4^n level-n squares are disjoint, hole-free congruent components.
EpsWindow valid_eps_range(double r, int n);

enum class SequenceFamily { Thm41_1, Thm41_2, Conj_1, Conj_2 };

const char* to_string(SequenceFamily f);

struct SequenceSpec {
  SequenceFamily family;
  double r;
};

/// eps_n of the given null sequence, n >= 1.
double sequence_eps(const SequenceSpec& spec, int n);

namespace closed_form {

template <class T>
T log_r4(const T& r) {
  using std::log;
  return log(T(4)) / log(r);
}

/// (1 + 3 sqrt(1/2) + pi/2) / ((1/2) sqrt(2)^(log_r 4)).
template <class T>
T ratio_lower_bound_thm41(const T& r) {
  using std::pow;
  using std::sqrt;
  const T one(1), half = T(1) / T(2);
  const T pi = NumTraits<T>::pi();
  return (one + T(3) * sqrt(half) + pi / T(2)) / (half * pow(sqrt(T(2)), log_r4(r)));
}

template <class T>
T ratio_upper_bound_thm41() {
  return T(5) + NumTraits<T>::pi();
}

/// h = (1/2) ((r-2)/r) (1/r)^n sqrt(r^2 - 1).
template <class T>
T h_distance(const T& r, int n) {
  using std::sqrt;
  T power(1);
  for (int k = 0; k < n; ++k) power = power * (T(1) / r);
  return T(1) / T(2) * ((r - T(2)) / r) * power * sqrt(r * r - T(1));
}

template <class T>
T f1(const T& r) {
  using std::pow;
  using std::sqrt;
  const T one(1), two(2), three(3), four(4);
  const T pi = NumTraits<T>::pi();
  const T q = (r - two) / r;
  const T s = sqrt(r * r - one);
  const T L = log_r4(r);
  const T numerator = one + two * q * s + three * q - (three / r) * q * s + q * q * (r - s + r * r * pi / four);
  const T denominator = one / four * ((r - two) * (r - two)) * pow(one / two, -L) * pow(r - two, -L);
  return numerator / denominator;
}

template <class T>
T f2(const T& r) {
  using std::pow;
  using std::sqrt;
  const T one(1), two(2), eight(8);
  const T pi = NumTraits<T>::pi();
  const T q = (r - two) / r;
  const T L = log_r4(r);
  const T numerator = one + sqrt(eight) * q + pi / two * (q * q);
  const T denominator = one / two * (q * q) * pow(sqrt(one / two), -L) * pow(q, -L);
  return numerator / denominator;
}

}  // namespace closed_form

/// Certified enclosure of the lower bound for the normalized volume along
/// eps = sqrt(1/2) r^-n. Strictly increasing in r. Throws DomainError r <= 1.
IntervalValue ratio_lower_bound_thm41(double r);

/// Enclosure of 5 + pi, the upper bound along eps = r^-n.
IntervalValue ratio_upper_bound_thm41();

/// Bisection enclosure of the unique r* with ratio_lower_bound_thm41(r*) = 5 + pi.
IntervalValue threshold_root(double width = 1e-3);

double h_distance(double r, int n);

/// Certified enclosures of f1 and f2. Throw DomainError for r <= 2.
IntervalValue f1(double r);
IntervalValue f2(double r);

/// Uncertified hardware floating-point evaluations.
double f1_fast(double r);
double f2_fast(double r);

/// 4^n 4 (3/4) r^-n sqrt(1/2) r^-n; requires r >= 30.
IntervalValue green_lower_bound_thm41(double r, int n);

/// Convex-hull bound 4^n 4 eps r^-n on the green area at eps.
IntervalValue green_upper_convex_hull(double r, int n, double eps);
IntervalValue green_upper_convex_hull(const SequenceSpec& spec, int n);

}  // namespace dustlab
