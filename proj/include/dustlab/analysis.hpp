#pragma once

// Verification campaigns: the f1/f2 r-grid scan, finite-depth oscillation of
// the normalized volume along paired eps-sequences, and the pluriphase
// contradiction for the gap cross.

#include <cstddef>
#include <optional>
#include <vector>

#include "dustlab/bounds.hpp"
#include "dustlab/volume.hpp"

namespace dustlab {

enum class Verdict { CertifiedHolds, Inconclusive, CertifiedFails };

const char* to_string(Verdict v);

/// Three-valued comparison a > b on enclosures.
Verdict compare_greater(const IntervalValue& a, const IntervalValue& b);

enum class Profile { Fast, Certified };

const char* to_string(Profile p);

struct ScanRecord {
  double r;
  IntervalValue f1;
  IntervalValue f2;
  double margin;  // f1.lo - f2.hi
  Verdict verdict;
};

struct ScanReport {
  double r_min = 0;
  double r_max = 0;
  double step = 0;
  Profile profile = Profile::Certified;
  std::vector<ScanRecord> records;
  std::size_t holds = 0;
  std::size_t inconclusive = 0;
  std::size_t fails = 0;
  /// Smallest margin over the grid and where it occurs.
  double min_margin = 0;
  double min_margin_r = 0;
  Verdict verdict = Verdict::Inconclusive;
};

/// Number of grid points r_min + k*step <= r_max. Throws DomainError unless
/// 2 < r_min <= r_max and step > 0.
std::size_t scan_grid_size(double r_min, double r_max, double step);

/// Evaluates f1 and f2 at every grid point. Grid points are independent and
/// computed in parallel; the report is identical to the serial one.
ScanReport scan_inequality(double r_min, double r_max, double step, Profile profile = Profile::Certified,
                           Execution execution = Execution::Parallel);

enum class FamilyPair { Thm41, Conj };

const char* to_string(FamilyPair f);

struct OscillationRow {
  int n = 0;
  double eps1 = 0;
  double eps2 = 0;
  bool valid = false;  // both eps inside the level-n component window
  std::optional<IntervalValue> norm1;
  std::optional<IntervalValue> norm2;
  bool budget_met = false;
  Verdict lower_check = Verdict::Inconclusive;  // norm1 > bound1
  Verdict upper_check = Verdict::Inconclusive;  // norm2 < bound2
};

struct OscillationReport {
  double r = 0;
  FamilyPair family = FamilyPair::Thm41;
  IntervalValue bound1;  // lower bound for the eps1 normalized volume
  IntervalValue bound2;  // upper bound for the eps2 normalized volume
  std::vector<OscillationRow> rows;
  /// min_n norm1.lo - max_n norm2.hi over valid rows; absent without any.
  std::optional<double> gap;
  Verdict verdict = Verdict::Inconclusive;
};

/// For n = 1..n_max samples the normalized volume at eps_{1,n} and eps_{2,n}
/// and checks them against the family's bounds. `budget` is the allowed
/// enclosure width in normalized units. Only finite-depth samples are
/// reported; no limit is claimed.
OscillationReport oscillation_scan(const CantorDustParams& params, FamilyPair family, int n_max,
                                   double budget, const VolumeOptions& options = {});

/// q(eps) = a eps^2 + b eps + c.
struct PolynomialSolution {
  double a = 0;
  double b = 0;
  double c = 0;
  /// The solution forces q(eps) < 0 for eps > 0, impossible for an area.
  bool contradiction = false;

  double operator()(double eps) const { return (a * eps + b) * eps + c; }
};

/// Matches coefficients of q(eps/r) = 2 r^-2 (q(eps) + (3/2) pi eps^2).
/// Throws DegenerateError when a matching equation is singular.
PolynomialSolution pluriphase_polynomial_solve(double r);

/// |q(eps/r) - 2 r^-2 (q(eps) + 1.5 pi eps^2)|.
double pluriphase_residual(const PolynomialSolution& q, double r, double eps);

enum class RecursionVariant {
  Gamma,  // area(C_eps ∩ Gamma)
  P,      // area(C_eps ∩ Gamma minus the central square)
};

struct RecursionCheck {
  IntervalValue lhs;
  IntervalValue rhs;
  bool consistent = false;
  /// |mid(lhs) - mid(rhs)| / |mid(rhs)|.
  double relative_gap = 0;
  bool budget_met = false;
};

/// Volume-level check of the scaling recursion on the gap cross. Requires
/// 0 < eps < (r-2)/(2r); throws EpsOutOfRange otherwise.
RecursionCheck pluriphase_recursion_check(const CantorDustParams& params, double eps, double budget,
                                          RecursionVariant variant = RecursionVariant::Gamma,
                                          const VolumeOptions& options = {});

}  // namespace dustlab
