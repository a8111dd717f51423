#include "dustlab/bounds.hpp"

#include <string>

namespace dustlab {

namespace {

void require_r_above_two(double r, const char* what) {
  if (!(r > 2.0) || !std::isfinite(r)) throw DomainError(std::string(what) + ": r must exceed 2");
}

}  // namespace

EpsWindow valid_eps_range(double r, int n) {
  require_r_above_two(r, "valid_eps_range");
  if (n < 0) throw DomainError("valid_eps_range: n must be non-negative");
  const double scale = std::pow(r, -static_cast<double>(n));
  return {std::sqrt(0.5) * ((r - 2.0) / r) * scale, ((r - 2.0) / 2.0) * scale};
}

const char* to_string(SequenceFamily f) {
  switch (f) {
    case SequenceFamily::Thm41_1:
      return "thm41_1";
    case SequenceFamily::Thm41_2:
      return "thm41_2";
    case SequenceFamily::Conj_1:
      return "conj_1";
    case SequenceFamily::Conj_2:
      return "conj_2";
  }
  return "?";
}

double sequence_eps(const SequenceSpec& spec, int n) {
  if (n < 1) throw DomainError("sequence_eps: n must be at least 1");
  const double r = spec.r;
  const double rn = std::pow(r, -static_cast<double>(n));
  switch (spec.family) {
    case SequenceFamily::Thm41_1:
      return std::sqrt(0.5) * rn;
    case SequenceFamily::Thm41_2:
      return rn;
    case SequenceFamily::Conj_1:
      return 0.5 * ((r - 2.0) / r) * std::pow(1.0 / r, static_cast<double>(n - 1));
    case SequenceFamily::Conj_2:
      return std::sqrt(0.5) * ((r - 2.0) / r) * std::pow(1.0 / r, static_cast<double>(n));
  }
  return 0.0;
}

IntervalValue ratio_lower_bound_thm41(double r) {
  if (!(r > 1.0) || !std::isfinite(r)) throw DomainError("ratio_lower_bound_thm41: r must exceed 1");
  return closed_form::ratio_lower_bound_thm41(IntervalValue(r));
}

IntervalValue ratio_upper_bound_thm41() { return closed_form::ratio_upper_bound_thm41<IntervalValue>(); }

IntervalValue threshold_root(double width) {
  // The bound increases strictly in r, so a certified sign change of
  // g(r) = bound(r) - (5 + pi) brackets the unique root.
  const IntervalValue target = ratio_upper_bound_thm41();
  auto sign = [&](double r) {
    const IntervalValue g = ratio_lower_bound_thm41(r) - target;
    if (g.hi() < 0.0) return -1;
    if (g.lo() > 0.0) return 1;
    return 0;
  };
  double a = 10.0, b = 100.0;
  if (sign(a) != -1 || sign(b) != 1) throw DegenerateError("threshold_root: initial bracket not certified");
  while (b - a > width) {
    const double m = a + (b - a) / 2;
    const int s = sign(m);
    if (s < 0)
      a = m;
    else if (s > 0)
      b = m;
    else
      break;  // enclosure of g straddles 0: cannot shrink further
  }
  return {a, b};
}

double h_distance(double r, int n) {
  require_r_above_two(r, "h_distance");
  if (n < 1) throw DomainError("h_distance: n must be at least 1");
  return closed_form::h_distance(r, n);
}

IntervalValue f1(double r) {
  require_r_above_two(r, "f1");
  return closed_form::f1(IntervalValue(r));
}

IntervalValue f2(double r) {
  require_r_above_two(r, "f2");
  return closed_form::f2(IntervalValue(r));
}

double f1_fast(double r) {
  require_r_above_two(r, "f1");
  return closed_form::f1(r);
}

double f2_fast(double r) {
  require_r_above_two(r, "f2");
  return closed_form::f2(r);
}

namespace {

IntervalValue four_pow(int n) {
  IntervalValue v(1.0);
  for (int k = 0; k < n; ++k) v = v * IntervalValue(4.0);
  return v;
}

IntervalValue inv_r_pow(double r, int n) {
  const IntervalValue inv = IntervalValue(1.0) / IntervalValue(r);
  IntervalValue v(1.0);
  for (int k = 0; k < n; ++k) v = v * inv;
  return v;
}

}  // namespace

IntervalValue green_lower_bound_thm41(double r, int n) {
  if (!(r >= 30.0) || !std::isfinite(r)) throw DomainError("green_lower_bound_thm41: requires r >= 30");
  if (n < 1) throw DomainError("green_lower_bound_thm41: n must be at least 1");
  const IntervalValue rn = inv_r_pow(r, n);
  return four_pow(n) * IntervalValue(4.0) * (IntervalValue(3.0) / IntervalValue(4.0)) * rn *
         sqrt(IntervalValue(0.5)) * rn;
}

IntervalValue green_upper_convex_hull(double r, int n, double eps) {
  require_r_above_two(r, "green_upper_convex_hull");
  if (n < 1) throw DomainError("green_upper_convex_hull: n must be at least 1");
  if (!(eps > 0.0)) throw DomainError("green_upper_convex_hull: eps must be positive");
  return four_pow(n) * IntervalValue(4.0) * IntervalValue(eps) * inv_r_pow(r, n);
}

IntervalValue green_upper_convex_hull(const SequenceSpec& spec, int n) {
  return green_upper_convex_hull(spec.r, n, sequence_eps(spec, n));
}

}  // namespace dustlab
