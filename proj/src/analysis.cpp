#include "dustlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace dustlab {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedHolds:
      return "CertifiedHolds";
    case Verdict::Inconclusive:
      return "Inconclusive";
    case Verdict::CertifiedFails:
      return "CertifiedFails";
  }
  return "?";
}

const char* to_string(Profile p) { return p == Profile::Fast ? "fast" : "certified"; }

const char* to_string(FamilyPair f) { return f == FamilyPair::Thm41 ? "thm41" : "conj"; }

Verdict compare_greater(const IntervalValue& a, const IntervalValue& b) {
  if (a.lo() > b.hi()) return Verdict::CertifiedHolds;
  if (a.hi() < b.lo()) return Verdict::CertifiedFails;
  return Verdict::Inconclusive;
}

std::size_t scan_grid_size(double r_min, double r_max, double step) {
  if (!(r_min > 2.0) || !std::isfinite(r_min)) throw DomainError("scan: r_min must exceed 2");
  if (!(r_max >= r_min) || !std::isfinite(r_max)) throw DomainError("scan: r_max must not be below r_min");
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("scan: step must be positive");
  // The relative slack keeps an endpoint such as 2.0001 + 279999e-4 = 30
  // inside the grid despite rounding in (r_max - r_min) / step.
  const double span = (r_max - r_min) / step;
  if (span > 1e9) throw ResourceError("scan: grid has more than 1e9 points");
  return static_cast<std::size_t>(std::floor(span * (1.0 + 1e-12) + 1e-9)) + 1;
}

namespace {

ScanRecord scan_point(double r, Profile profile) {
  ScanRecord rec{};
  rec.r = r;
  if (profile == Profile::Certified) {
    rec.f1 = f1(r);
    rec.f2 = f2(r);
  } else {
    rec.f1 = IntervalValue(f1_fast(r));
    rec.f2 = IntervalValue(f2_fast(r));
  }
  rec.margin = rec.f1.lo() - rec.f2.hi();
  rec.verdict = compare_greater(rec.f1, rec.f2);
  return rec;
}

}  // namespace

ScanReport scan_inequality(double r_min, double r_max, double step, Profile profile, Execution execution) {
  const std::size_t count = scan_grid_size(r_min, r_max, step);
  ScanReport report;
  report.r_min = r_min;
  report.r_max = r_max;
  report.step = step;
  report.profile = profile;
  report.records.resize(count);

  auto grid_point = [&](std::size_t k) {
    return std::min(r_min + static_cast<double>(k) * step, r_max);
  };
  const auto n = static_cast<std::int64_t>(count);
  if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n; ++k) report.records[k] = scan_point(grid_point(k), profile);
  } else {
    for (std::int64_t k = 0; k < n; ++k) report.records[k] = scan_point(grid_point(k), profile);
  }

  report.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& rec : report.records) {
    switch (rec.verdict) {
      case Verdict::CertifiedHolds:
        ++report.holds;
        break;
      case Verdict::Inconclusive:
        ++report.inconclusive;
        break;
      case Verdict::CertifiedFails:
        ++report.fails;
        break;
    }
    if (rec.margin < report.min_margin) {
      report.min_margin = rec.margin;
      report.min_margin_r = rec.r;
    }
  }
  if (report.fails > 0)
    report.verdict = Verdict::CertifiedFails;
  else if (report.inconclusive > 0)
    report.verdict = Verdict::Inconclusive;
  else
    report.verdict = Verdict::CertifiedHolds;
  return report;
}

OscillationReport oscillation_scan(const CantorDustParams& params, FamilyPair family, int n_max, double budget,
                                   const VolumeOptions& options) {
  if (n_max < 1) throw DomainError("oscillation_scan: n_max must be at least 1");
  if (!(budget > 0.0)) throw DomainError("oscillation_scan: budget must be positive");
  const double r = params.r();

  OscillationReport report;
  report.r = r;
  report.family = family;
  SequenceSpec s1{}, s2{};
  if (family == FamilyPair::Thm41) {
    report.bound1 = ratio_lower_bound_thm41(r);
    report.bound2 = ratio_upper_bound_thm41();
    s1 = {SequenceFamily::Thm41_1, r};
    s2 = {SequenceFamily::Thm41_2, r};
  } else {
    report.bound1 = f1(r);
    report.bound2 = f2(r);
    s1 = {SequenceFamily::Conj_1, r};
    s2 = {SequenceFamily::Conj_2, r};
  }

  const IntervalValue exponent = IntervalValue(2.0) - params.dimension_enclosure();
  double min_norm1 = std::numeric_limits<double>::infinity();
  double max_norm2 = -std::numeric_limits<double>::infinity();
  bool any_valid = false, all_hold = true, any_fail = false;

  for (int n = 1; n <= n_max; ++n) {
    OscillationRow row;
    row.n = n;
    row.eps1 = sequence_eps(s1, n);
    row.eps2 = sequence_eps(s2, n);
    const EpsWindow window = valid_eps_range(r, n);
    row.valid = window.contains(row.eps1) && window.contains(row.eps2);
    if (!row.valid) {
      report.rows.push_back(row);
      continue;
    }
    any_valid = true;
    // The budget is in normalized units; convert to area units per eps.
    const IntervalValue scale1 = pow(IntervalValue(row.eps1), exponent);
    const IntervalValue scale2 = pow(IntervalValue(row.eps2), exponent);
    const VolumeResult v1 = volume(params, row.eps1, Region::plane(), budget * scale1.lo(), options);
    const VolumeResult v2 = volume(params, row.eps2, Region::plane(), budget * scale2.lo(), options);
    row.norm1 = v1.enclosure / scale1;
    row.norm2 = v2.enclosure / scale2;
    row.budget_met = v1.budget_met && v2.budget_met;
    row.lower_check = compare_greater(*row.norm1, report.bound1);
    row.upper_check = compare_greater(report.bound2, *row.norm2);
    min_norm1 = std::min(min_norm1, row.norm1->lo());
    max_norm2 = std::max(max_norm2, row.norm2->hi());
    if (row.lower_check != Verdict::CertifiedHolds || row.upper_check != Verdict::CertifiedHolds) all_hold = false;
    if (row.lower_check == Verdict::CertifiedFails || row.upper_check == Verdict::CertifiedFails) any_fail = true;
    report.rows.push_back(row);
  }

  if (any_valid) report.gap = min_norm1 - max_norm2;
  if (any_fail)
    report.verdict = Verdict::CertifiedFails;
  else if (any_valid && all_hold && *report.gap > 0.0)
    report.verdict = Verdict::CertifiedHolds;
  else
    report.verdict = Verdict::Inconclusive;
  return report;
}

PolynomialSolution pluriphase_polynomial_solve(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("pluriphase_polynomial_solve: r must be positive");
  // Comparing the eps^2, eps^1 and eps^0 coefficients of
  //   a (eps/r)^2 + b (eps/r) + c = 2 r^-2 (a eps^2 + b eps + c + 1.5 pi eps^2)
  // gives a diagonal system
  //   (r^-2 - 2 r^-2) a = 3 pi r^-2
  //   (r^-1 - 2 r^-2) b = 0
  //   (1    - 2 r^-2) c = 0.
  const double inv = 1.0 / r;
  const double inv2 = inv * inv;
  const double pi = NumTraits<double>::pi();
  const double diag[3] = {inv2 - 2.0 * inv2, inv - 2.0 * inv2, 1.0 - 2.0 * inv2};
  const double rhs[3] = {3.0 * pi * inv2, 0.0, 0.0};
  const double scale[3] = {inv2, inv, 1.0};
  for (int k = 0; k < 3; ++k) {
    if (std::abs(diag[k]) <= 1e-12 * scale[k])
      throw DegenerateError("pluriphase_polynomial_solve: coefficient equation is singular for this r");
  }
  PolynomialSolution q;
  q.a = rhs[0] / diag[0];
  q.b = rhs[1] / diag[1];
  q.c = rhs[2] / diag[2];
  // a < 0, b <= 0, c <= 0 makes q negative on (0, inf).
  q.contradiction = q.a < 0.0 && q.b <= 0.0 && q.c <= 0.0;
  return q;
}

double pluriphase_residual(const PolynomialSolution& q, double r, double eps) {
  const double pi = NumTraits<double>::pi();
  return std::abs(q(eps / r) - 2.0 / (r * r) * (q(eps) + 1.5 * pi * eps * eps));
}

RecursionCheck pluriphase_recursion_check(const CantorDustParams& params, double eps, double budget,
                                          RecursionVariant variant, const VolumeOptions& options) {
  const double r = params.r();
  if (!(eps > 0.0) || !(eps < (r - 2.0) / (2.0 * r)))
    throw EpsOutOfRange("pluriphase_recursion_check: eps must lie in (0, (r-2)/(2r))");
  const Region region =
      variant == RecursionVariant::Gamma ? Region::gamma_cross(r) : Region::gamma_minus_center(r);

  const VolumeResult small = volume(params, eps / r, region, budget, options);
  const VolumeResult large = volume(params, eps, region, budget, options);

  const IntervalValue R(r), E(eps);
  const IntervalValue pi = pi_enclosure<double>();
  const IntervalValue two_over_r2 = IntervalValue(2.0) / (R * R);
  RecursionCheck check;
  check.lhs = small.enclosure;
  if (variant == RecursionVariant::Gamma) {
    check.rhs = two_over_r2 * (large.enclosure + IntervalValue(1.5) * pi * E * E);
  } else {
    check.rhs = two_over_r2 * large.enclosure + IntervalValue(4.0) * pi / (R * R) * E * E;
  }
  check.consistent = check.lhs.overlaps(check.rhs);
  check.relative_gap = std::abs(check.lhs.mid() - check.rhs.mid()) / std::abs(check.rhs.mid());
  check.budget_met = small.budget_met && large.budget_met;
  return check;
}

}  // namespace dustlab
