#include "dustlab/volume.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "dustlab/bounds.hpp"

namespace dustlab {

namespace {

using rounding::add_down;
using rounding::add_up;
using rounding::mul_down;
using rounding::mul_up;
using rounding::sub_down;
using rounding::sub_up;

struct HoleRect {
  IntervalValue x0, x1, y0, y1;
};

struct RegionGeometry {
  bool plane = true;
  std::vector<HoleRect> holes;
};

RegionGeometry geometry_of(const Region& region) {
  RegionGeometry g;
  if (region.kind == RegionKind::Plane) return g;
  g.plane = false;
  if (region.kind == RegionKind::UnitSquare) return g;
  if (!(region.r > 2.0)) throw DomainError("Gamma regions require r > 2");
  const IntervalValue a = IntervalValue(1.0) / IntervalValue(region.r);
  const IntervalValue b = IntervalValue(1.0) - a;
  const IntervalValue zero(0.0), one(1.0);
  g.holes = {{zero, a, zero, a}, {b, one, zero, a}, {b, one, b, one}, {zero, a, b, one}};
  if (region.kind == RegionKind::GammaMinusCenter) g.holes.push_back({a, b, a, b});
  return g;
}

inline IntervalValue overlap(double x0, double x1, const IntervalValue& c, const IntervalValue& d) {
  const double lo = std::max(0.0, sub_down(std::min(x1, d.lo()), std::max(x0, c.hi())));
  const double hi = std::max(0.0, sub_up(std::min(x1, d.hi()), std::max(x0, c.lo())));
  return {std::min(lo, hi), hi};
}

IntervalValue clip(const RegionGeometry& g, const Rect& cell) {
  const double w_lo = sub_down(cell.hi.x, cell.lo.x), w_hi = sub_up(cell.hi.x, cell.lo.x);
  const double h_lo = sub_down(cell.hi.y, cell.lo.y), h_hi = sub_up(cell.hi.y, cell.lo.y);
  double lo = mul_down(w_lo, h_lo);
  double hi = mul_up(w_hi, h_hi);
  if (g.plane) return {lo, hi};

  // The query box of a bounded region is the unit square itself, so only
  // the holes need clipping.
  double removed_lo = 0.0, removed_hi = 0.0;
  for (const auto& h : g.holes) {
    if (cell.lo.x >= h.x0.hi() && cell.hi.x <= h.x1.lo() && cell.lo.y >= h.y0.hi() &&
        cell.hi.y <= h.y1.lo())
      return {0.0, 0.0};
    if (cell.hi.x <= h.x0.lo() || cell.lo.x >= h.x1.hi() || cell.hi.y <= h.y0.lo() ||
        cell.lo.y >= h.y1.hi())
      continue;
    const IntervalValue ox = overlap(cell.lo.x, cell.hi.x, h.x0, h.x1);
    const IntervalValue oy = overlap(cell.lo.y, cell.hi.y, h.y0, h.y1);
    removed_lo = add_down(removed_lo, mul_down(ox.lo(), oy.lo()));
    removed_hi = add_up(removed_hi, mul_up(ox.hi(), oy.hi()));
  }
  lo = std::max(0.0, sub_down(lo, removed_hi));
  hi = std::max(0.0, sub_up(hi, removed_lo));
  return {std::min(lo, hi), hi};
}

// Neumaier compensated sum of non-negative terms with a rigorous error bound.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
    ++count_;
  }
  IntervalValue enclosure() const {
    constexpr double u = std::numeric_limits<double>::epsilon() / 2;
    const double value = sum_ + comp_;
    const double n = static_cast<double>(count_);
    const double err = mul_up(value, 2.0 * u + 4.0 * n * n * u * u) * 1.0001 +
                       std::numeric_limits<double>::denorm_min();
    return {std::max(0.0, sub_down(value, err)), add_up(value, err)};
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  std::uint64_t count_ = 0;
};

struct QCell {
  std::uint64_t i;
  std::uint64_t j;
};

struct Lattice {
  double origin;
  double length;
  int max_depth;

  double coord(std::uint64_t index, int level) const {
    const auto scaled = static_cast<double>(index << (max_depth - level));
    return origin + std::ldexp(length * scaled, -max_depth);
  }
  Rect rect(const QCell& c, int level) const {
    return {{coord(c.i, level), coord(c.j, level)}, {coord(c.i + 1, level), coord(c.j + 1, level)}};
  }
};

struct Classified {
  IntervalValue area;
  CellClass cls;
};

}  // namespace

const char* to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::Plane:
      return "plane";
    case RegionKind::UnitSquare:
      return "unit_square";
    case RegionKind::GammaCross:
      return "gamma_cross";
    case RegionKind::GammaMinusCenter:
      return "gamma_minus_center";
  }
  return "?";
}

IntervalValue region_area(const Region& region) {
  const IntervalValue one(1.0);
  switch (region.kind) {
    case RegionKind::Plane:
      throw DomainError("region_area: the plane has infinite area");
    case RegionKind::UnitSquare:
      return one;
    case RegionKind::GammaCross:
    case RegionKind::GammaMinusCenter: {
      if (!(region.r > 2.0)) throw DomainError("Gamma regions require r > 2");
      const IntervalValue a = one / IntervalValue(region.r);
      IntervalValue area = one - IntervalValue(4.0) * a * a;
      if (region.kind == RegionKind::GammaMinusCenter) {
        const IntervalValue c = one - IntervalValue(2.0) * a;
        area = area - c * c;
      }
      return area;
    }
  }
  return one;
}

IntervalValue clipped_area(const Region& region, const Rect& cell) {
  return clip(geometry_of(region), cell);
}

VolumeResult volume(const CantorDustParams& params, double eps, const Region& region, double err_budget,
                    const VolumeOptions& options) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("volume: eps must be positive");
  if (!(err_budget > 0.0)) throw DomainError("volume: err_budget must be positive");
  if (options.max_depth < 1 || options.max_depth > 52) throw DomainError("volume: max_depth must lie in [1, 52]");
  if (region.kind == RegionKind::GammaCross || region.kind == RegionKind::GammaMinusCenter) {
    if (region.r != params.r()) throw DomainError("volume: region and Cantor dust use different r");
  }

  const RegionGeometry geom = geometry_of(region);
  Lattice lat{0.0, 1.0, options.max_depth};
  if (geom.plane) {
    // C^r ⊆ [0,1]^2, so C^r_eps ⊆ [-eps, 1+eps]^2; pad so rounding in the
    // lattice map cannot shrink the box below that.
    const double pad = 1e-9 * (1.0 + eps);
    lat.origin = -(eps + pad);
    lat.length = add_up(1.0, 2.0 * (eps + pad));
    if (lat.coord(1, 0) < 1.0 + eps) throw DomainError("volume: eps too large for the lattice box");
  }

  VolumeResult result;
  CompensatedSum inside_lo, inside_hi;

  auto classify = [&](const QCell& c, int level) -> Classified {
    const Rect rc = lat.rect(c, level);
    const IntervalValue area = clip(geom, rc);
    if (area.hi() == 0.0) return {area, CellClass::Outside};
    return {area, classify_cell(params, rc, eps, options.classifier_slack, options.distance)};
  };

  // FIFO of uncertain cells: `current` holds level `level` (from `head` on),
  // `next` collects their uncertain children at level + 1.
  std::vector<QCell> current, next;
  std::vector<double> current_hi, next_hi;
  int level = 0;
  {
    const QCell root{0, 0};
    const Classified c = classify(root, 0);
    if (c.cls == CellClass::Inside) {
      inside_lo.add(c.area.lo());
      inside_hi.add(c.area.hi());
      ++result.cells_inside;
    } else if (c.cls == CellClass::Outside) {
      ++result.cells_outside;
    } else {
      current.push_back(root);
      current_hi.push_back(c.area.hi());
    }
    if (options.leaves && c.cls != CellClass::Uncertain) options.leaves->push_back({lat.rect(root, 0), c.cls, 0});
  }

  // suffix[k] bounds the uncertain area of current[k..] from above.
  std::vector<double> suffix;
  auto rebuild_suffix = [&] {
    suffix.assign(current.size() + 1, 0.0);
    for (std::size_t k = current.size(); k-- > 0;) suffix[k] = add_up(suffix[k + 1], current_hi[k]);
  };
  rebuild_suffix();
  std::size_t head = 0;
  double next_sum = 0.0;

  auto width_now = [&] {
    const double hi = add_up(add_up(inside_hi.enclosure().hi(), suffix[head]), next_sum);
    return sub_up(hi, inside_lo.enclosure().lo());
  };

  std::vector<Classified> batch_out;
  std::vector<QCell> batch_cells;
  while (true) {
    if (width_now() <= err_budget) {
      result.budget_met = true;
      break;
    }
    if (head == current.size()) {
      if (next.empty()) {
        result.budget_met = width_now() <= err_budget;
        break;
      }
      current.swap(next);
      current_hi.swap(next_hi);
      next.clear();
      next_hi.clear();
      next_sum = 0.0;
      head = 0;
      ++level;
      rebuild_suffix();
      continue;
    }
    if (level >= options.max_depth) break;
    if (4 * (current.size() - head + next.size()) > options.max_cells) break;

    const std::size_t end = std::min(current.size(), head + options.batch);
    const std::size_t parents = end - head;
    batch_cells.resize(4 * parents);
    batch_out.resize(4 * parents);
    for (std::size_t p = 0; p < parents; ++p) {
      const QCell& c = current[head + p];
      // Morton order of the four children.
      batch_cells[4 * p + 0] = {2 * c.i, 2 * c.j};
      batch_cells[4 * p + 1] = {2 * c.i + 1, 2 * c.j};
      batch_cells[4 * p + 2] = {2 * c.i, 2 * c.j + 1};
      batch_cells[4 * p + 3] = {2 * c.i + 1, 2 * c.j + 1};
    }
    const int child_level = level + 1;
    const auto count = static_cast<std::int64_t>(batch_cells.size());
    if (options.execution == Execution::Parallel) {
      // Exceptions may not leave the parallel region; the one from the
      // lowest cell index is rethrown, as in a serial run.
      std::int64_t failed_at = count;
      std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 64)
      for (std::int64_t k = 0; k < count; ++k) {
        try {
          batch_out[k] = classify(batch_cells[k], child_level);
        } catch (...) {
#pragma omp critical(dustlab_volume_failure)
          if (k < failed_at) {
            failed_at = k;
            failure = std::current_exception();
          }
        }
      }
      if (failure) std::rethrow_exception(failure);
    } else {
      for (std::int64_t k = 0; k < count; ++k) batch_out[k] = classify(batch_cells[k], child_level);
    }

    for (std::size_t k = 0; k < batch_cells.size(); ++k) {
      const Classified& c = batch_out[k];
      switch (c.cls) {
        case CellClass::Inside:
          inside_lo.add(c.area.lo());
          inside_hi.add(c.area.hi());
          ++result.cells_inside;
          break;
        case CellClass::Outside:
          ++result.cells_outside;
          break;
        case CellClass::Uncertain:
          next.push_back(batch_cells[k]);
          next_hi.push_back(c.area.hi());
          next_sum = add_up(next_sum, c.area.hi());
          break;
      }
      if (options.leaves && c.cls != CellClass::Uncertain)
        options.leaves->push_back({lat.rect(batch_cells[k], child_level), c.cls, child_level});
    }
    result.depth_reached = child_level;
    head = end;
  }

  result.cells_uncertain = (current.size() - head) + next.size();
  if (options.leaves) {
    for (std::size_t k = head; k < current.size(); ++k)
      options.leaves->push_back({lat.rect(current[k], level), CellClass::Uncertain, level});
    for (const auto& c : next) options.leaves->push_back({lat.rect(c, level + 1), CellClass::Uncertain, level + 1});
  }
  const double lo = inside_lo.enclosure().lo();
  const double hi = add_up(add_up(inside_hi.enclosure().hi(), suffix[head]), next_sum);
  result.enclosure = IntervalValue(std::min(lo, hi), hi);
  return result;
}

IntervalValue normalized_volume(const CantorDustParams& params, double eps, double err_budget,
                                const VolumeOptions& options) {
  const VolumeResult v = volume(params, eps, Region::plane(), err_budget, options);
  const IntervalValue exponent = IntervalValue(2.0) - params.dimension_enclosure();
  return v.enclosure / pow(IntervalValue(eps), exponent);
}

Decomposition decompose_volume(const CantorDustParams& params, int n, double eps, double err_budget,
                               const VolumeOptions& options) {
  if (n < 0) throw DomainError("decompose_volume: n must be non-negative");
  const EpsWindow window = valid_eps_range(params.r(), n);
  if (!window.contains(eps))
    throw EpsOutOfRange("decompose_volume: eps outside the level-" + std::to_string(n) + " component window");

  Decomposition d;
  d.blue = std::pow(4.0, n) * std::pow(params.r(), -2.0 * n);
  d.red = std::pow(4.0, n) * NumTraits<double>::pi() * eps * eps;

  IntervalValue count(1.0);
  for (int k = 0; k < n; ++k) count = count * IntervalValue(4.0);
  const IntervalValue side = params.side(n);
  const IntervalValue blue = count * side * side;
  const IntervalValue e(eps);
  const IntervalValue red = count * pi_enclosure<double>() * e * e;

  d.total = volume(params, eps, Region::plane(), err_budget, options);
  d.green = d.total.enclosure - blue - red;
  return d;
}

}  // namespace dustlab
