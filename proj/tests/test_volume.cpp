#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dustlab/bounds.hpp"
#include "dustlab/volume.hpp"
#include "oracle.hpp"

using namespace dustlab;

namespace {

VolumeOptions with(Execution e) {
  VolumeOptions o;
  o.execution = e;
  return o;
}

bool identical(const VolumeResult& a, const VolumeResult& b) {
  return a.enclosure.lo() == b.enclosure.lo() && a.enclosure.hi() == b.enclosure.hi() &&
         a.cells_inside == b.cells_inside && a.cells_outside == b.cells_outside &&
         a.cells_uncertain == b.cells_uncertain && a.depth_reached == b.depth_reached &&
         a.budget_met == b.budget_met;
}

}  // namespace

TEST_CASE("containment examples") {
  for (double r : {2.5, 3.0, 30.0}) {
    const VolumeResult v = volume(CantorDustParams(r), 2.0, Region::plane(), 1e-2);
    CHECK(v.enclosure.lo() >= 1.0);
    CHECK(v.enclosure.hi() <= 25.0);
    CHECK(v.budget_met);
  }
  const VolumeResult v = volume(CantorDustParams(5.0), 1.0, Region::plane(), 1e-2);
  CHECK(v.enclosure.lo() >= 1.0);
  CHECK(v.enclosure.hi() <= 9.0);
  CHECK(v.enclosure.width() <= 1e-2);
}

TEST_CASE("region areas") {
  CHECK(region_area(Region::unit_square()).contains(1.0));
  CHECK(region_area(Region::gamma_cross(3.0)).contains(1.0 - 4.0 / 9.0));
  CHECK(region_area(Region::gamma_minus_center(3.0)).contains(1.0 - 4.0 / 9.0 - 1.0 / 9.0));
  CHECK(region_area(Region::gamma_cross(4.0)).contains(0.75));
  CHECK_THROWS_AS(region_area(Region::plane()), DomainError);
  CHECK_THROWS_AS(region_area(Region::gamma_cross(2.0)), DomainError);

  const Rect whole{{0, 0}, {1, 1}};
  CHECK(clipped_area(Region::gamma_cross(4.0), whole).contains(0.75));
  CHECK(clipped_area(Region::gamma_cross(4.0), Rect{{0, 0}, {0.25, 0.25}}).contains(0.0));
  CHECK(clipped_area(Region::gamma_cross(4.0), Rect{{0, 0}, {0.5, 0.5}}).contains(0.25 - 0.0625));
  CHECK(clipped_area(Region::gamma_minus_center(4.0), Rect{{0.25, 0.25}, {0.75, 0.75}}).contains(0.0));
  CHECK(clipped_area(Region::plane(), Rect{{-1, -1}, {2, 2}}).contains(9.0));
}

TEST_CASE("volume error paths") {
  const CantorDustParams p(3.0);
  CHECK_THROWS_AS(volume(p, 0.0, Region::plane(), 1e-3), DomainError);
  CHECK_THROWS_AS(volume(p, 0.05, Region::plane(), 0.0), DomainError);
  CHECK_THROWS_AS(volume(p, 0.05, Region::gamma_cross(4.0), 1e-3), DomainError);
  VolumeOptions bad;
  bad.max_depth = 0;
  CHECK_THROWS_AS(volume(p, 0.05, Region::plane(), 1e-3, bad), DomainError);
  for (Execution e : {Execution::Serial, Execution::Parallel}) {
    VolumeOptions starved = with(e);
    starved.distance.node_cap = 1;
    CHECK_THROWS_AS(volume(p, 0.05, Region::plane(), 1e-4, starved), ResourceError);
  }
}

TEST_CASE("depth cap leaves a valid but unmet enclosure") {
  VolumeOptions o;
  o.max_depth = 6;
  const VolumeResult v = volume(CantorDustParams(3.0), 0.05, Region::plane(), 1e-6, o);
  CHECK_FALSE(v.budget_met);
  CHECK(v.depth_reached <= 6);
  // Encloses a fine evaluation.
  const VolumeResult fine = volume(CantorDustParams(3.0), 0.05, Region::plane(), 1e-3);
  CHECK(v.enclosure.overlaps(fine.enclosure));
  CHECK(v.enclosure.lo() <= fine.enclosure.lo());
}

TEST_CASE("serial and parallel runs are bit-identical and deterministic") {
  for (const Region& region : {Region::plane(), Region::gamma_cross(3.0), Region::gamma_minus_center(3.0)}) {
    const CantorDustParams p(3.0);
    const VolumeResult s = volume(p, 0.05, region, 1e-3, with(Execution::Serial));
    const VolumeResult q = volume(p, 0.05, region, 1e-3, with(Execution::Parallel));
    const VolumeResult q2 = volume(p, 0.05, region, 1e-3, with(Execution::Parallel));
    CHECK(identical(s, q));
    CHECK(identical(q, q2));
  }
  // Batch boundaries are where the budget is re-checked; at a fixed batch
  // size the thread schedule does not matter.
  VolumeOptions small = with(Execution::Parallel);
  small.batch = 7;
  VolumeOptions small_serial = small;
  small_serial.execution = Execution::Serial;
  CHECK(identical(volume(CantorDustParams(5.0), 0.1, Region::plane(), 2e-3, small),
                  volume(CantorDustParams(5.0), 0.1, Region::plane(), 2e-3, small_serial)));
}

TEST_CASE("halving the budget refines the enclosure") {
  const CantorDustParams p(5.0);
  IntervalValue prev = volume(p, 0.1, Region::plane(), 1e-2).enclosure;
  for (double budget : {5e-3, 2.5e-3, 1.25e-3}) {
    const VolumeResult v = volume(p, 0.1, Region::plane(), budget);
    CHECK(v.budget_met);
    CHECK(v.enclosure.width() <= budget);
    CHECK(v.enclosure.overlaps(prev));
    prev = v.enclosure;
  }
}

TEST_CASE("area grows with eps") {
  const CantorDustParams p(3.0);
  double prev_lo = 0.0;
  for (double eps : {0.01, 0.02, 0.05, 0.1, 0.2}) {
    const VolumeResult v = volume(p, eps, Region::plane(), 2e-3);
    CHECK(v.enclosure.hi() >= prev_lo);
    prev_lo = v.enclosure.lo();
  }
}

TEST_CASE("leaf cells tile the query box") {
  std::vector<LeafCell> leaves;
  VolumeOptions o;
  o.leaves = &leaves;
  const double eps = 0.1;
  const VolumeResult v = volume(CantorDustParams(4.0), eps, Region::plane(), 5e-3, o);
  REQUIRE(!leaves.empty());
  double inside = 0, uncertain = 0, total = 0;
  for (const LeafCell& c : leaves) {
    const double a = c.rect.width() * c.rect.height();
    total += a;
    if (c.cls == CellClass::Inside) inside += a;
    if (c.cls == CellClass::Uncertain) uncertain += a;
  }
  CHECK(leaves.size() == v.cells_inside + v.cells_outside + v.cells_uncertain);
  CHECK(inside == doctest::Approx(v.enclosure.lo()).epsilon(1e-9));
  CHECK(inside + uncertain == doctest::Approx(v.enclosure.hi()).epsilon(1e-9));
  CHECK(total >= (1 + 2 * eps) * (1 + 2 * eps));
}

TEST_CASE("Gamma cross area agrees with Monte Carlo") {
  const double r = 3.0, eps = 0.05;
  const VolumeResult v = volume(CantorDustParams(r), eps, Region::gamma_cross(r), 1e-4);
  CHECK(v.budget_met);
  const double a = 1.0 / r, b = 1.0 - a;
  const auto in_corner = [a, b](double x, double y) { return (x < a || x > b) && (y < a || y > b); };
  const oracle::MonteCarlo mc = oracle::area(r, eps, 0.0, 1.0, 0.0, 1.0, 10'000'000, 2024, in_corner);
  CHECK(mc.unknown == 0);
  CHECK(mc.estimate >= v.enclosure.lo() - 3 * mc.std_error);
  CHECK(mc.estimate <= v.enclosure.hi() + 3 * mc.std_error);
}

TEST_CASE("normalized volume") {
  // D = 1 at r = 4.
  const CantorDustParams p4(4.0);
  const IntervalValue n4 = normalized_volume(p4, 0.1, 1e-3);
  const VolumeResult v4 = volume(p4, 0.1, Region::plane(), 1e-3);
  CHECK(n4.lo() <= v4.enclosure.lo() / 0.1);
  CHECK(n4.hi() >= v4.enclosure.hi() / 0.1);
  CHECK(n4.width() <= 1.1e-2);

  const CantorDustParams p30(30.0);
  const double eps2 = 1.0 / 30.0, eps1 = std::sqrt(0.5) / 30.0;
  const IntervalValue upper = normalized_volume(p30, eps2, 1e-5);
  CHECK(upper.certainly_less(ratio_upper_bound_thm41()));
  const IntervalValue lower = normalized_volume(p30, eps1, 1e-5);
  CHECK(lower.certainly_greater(ratio_lower_bound_thm41(30.0)));
}

TEST_CASE("decomposition") {
  const CantorDustParams p(30.0);
  const double pi = std::numbers::pi;
  const Decomposition d1 = decompose_volume(p, 1, std::sqrt(0.5) / 30.0, 1e-5);
  CHECK(d1.blue == doctest::Approx(4.0 / 900.0).epsilon(1e-14));
  CHECK(d1.red == doctest::Approx(4.0 * pi / 1800.0).epsilon(1e-14));
  CHECK(d1.green.lo() > 0.0);
  const Decomposition d2 = decompose_volume(p, 1, 1.0 / 30.0, 1e-5);
  CHECK(d2.red == doctest::Approx(4.0 * pi / 900.0).epsilon(1e-14));
  CHECK(d2.green.lo() <= d2.total.enclosure.hi() - d2.blue - d2.red);

  CHECK_THROWS_AS(decompose_volume(CantorDustParams(3.0), 1, 0.3, 1e-3), EpsOutOfRange);
  CHECK_THROWS_AS(decompose_volume(CantorDustParams(3.0), 1, 0.001, 1e-3), EpsOutOfRange);
}
