// dustlab: command-line front end for the Cantor dust verification campaigns.
//
// Exit codes: 0 certified pass, 1 inconclusive, 2 certified fail, 64 usage.

#include <omp.h>

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dustlab/analysis.hpp"
#include "dustlab/bounds.hpp"
#include "dustlab/report.hpp"
#include "dustlab/volume.hpp"

namespace {

using namespace dustlab;
using nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitInconclusive = 1;
constexpr int kExitFail = 2;
constexpr int kExitUsage = 64;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::CertifiedHolds:
      return kExitPass;
    case Verdict::Inconclusive:
      return kExitInconclusive;
    case Verdict::CertifiedFails:
      return kExitFail;
  }
  return kExitInconclusive;
}

std::string str(const IntervalValue& v) { return "[" + format_double(v.lo()) + ", " + format_double(v.hi()) + "]"; }

struct Common {
  std::string profile = "certified";
  double budget = 1e-4;
  int max_depth = 40;
  std::size_t node_cap = 1'000'000;
  int workers = 0;
  std::string out = ".";
  std::vector<std::string> formats{"csv", "json", "svg"};
};

void add_common(CLI::App* cmd, Common& c, bool out_is_dir = true) {
  cmd->add_option("--profile", c.profile, "fast | certified")
      ->check(CLI::IsMember({"fast", "certified"}))
      ->envname("DUSTLAB_PROFILE");
  cmd->add_option("--budget", c.budget, "error budget")->envname("DUSTLAB_BUDGET");
  cmd->add_option("--max-depth", c.max_depth, "maximum quadtree depth")->envname("DUSTLAB_MAX_DEPTH");
  cmd->add_option("--node-cap", c.node_cap, "distance oracle node cap")->envname("DUSTLAB_NODE_CAP");
  cmd->add_option("--workers", c.workers, "worker threads (0: all logical CPUs)")->envname("DUSTLAB_WORKERS");
  cmd->add_option("--out", c.out, out_is_dir ? "output directory" : "output file")->envname("DUSTLAB_OUT");
  cmd->add_option("--format", c.formats, "output formats (csv, json, svg)")->envname("DUSTLAB_FORMAT");
}

RunConfig make_config(const std::string& command, const Common& c) {
  RunConfig cfg;
  cfg.command = command;
  cfg.profile = c.profile == "fast" ? Profile::Fast : Profile::Certified;
  cfg.budget = c.budget;
  cfg.max_depth = c.max_depth;
  cfg.node_cap = c.node_cap;
  cfg.workers = c.workers;
  cfg.out_dir = c.out;
  cfg.formats = c.formats;
  return cfg;
}

VolumeOptions volume_options(const Common& c) {
  VolumeOptions o;
  o.max_depth = c.max_depth;
  o.distance.node_cap = c.node_cap;
  return o;
}

bool wants(const Common& c, const std::string& fmt) {
  return std::find(c.formats.begin(), c.formats.end(), fmt) != c.formats.end();
}

std::string in_dir(const Common& c, const std::string& name) {
  std::filesystem::create_directories(c.out);
  return (std::filesystem::path(c.out) / name).string();
}

Region parse_region(const std::string& name, double r) {
  if (name == "plane") return Region::plane();
  if (name == "unit") return Region::unit_square();
  if (name == "gamma") return Region::gamma_cross(r);
  if (name == "gamma-minus-center") return Region::gamma_minus_center(r);
  throw UsageError("unknown region " + name);
}

// --- scan -------------------------------------------------------------------

struct ScanArgs {
  double r_min = 2.0001;
  double r_max = 30.0;
  double step = 1e-4;
  double margin = 0.0;
};

int cmd_scan(const ScanArgs& a, const Common& c) {
  if (!(a.r_min > 2.0)) throw UsageError("--r-min must exceed 2");
  if (!(a.r_max >= a.r_min)) throw UsageError("--r-max must not be below --r-min");
  if (!(a.step > 0.0)) throw UsageError("--step must be positive");
  RunConfig cfg = make_config("scan", c);
  cfg.params = {{"r_min", format_double(a.r_min)},
                {"r_max", format_double(a.r_max)},
                {"step", format_double(a.step)},
                {"margin", format_double(a.margin)}};

  ScanReport report = scan_inequality(a.r_min, a.r_max, a.step, cfg.profile);
  if (a.margin > 0.0) {
    // A requested margin demotes points that hold by less than it.
    for (auto& rec : report.records) {
      if (rec.verdict == Verdict::CertifiedHolds && !(rec.margin > a.margin)) {
        rec.verdict = Verdict::Inconclusive;
        --report.holds;
        ++report.inconclusive;
      }
    }
    if (report.fails == 0) report.verdict = report.inconclusive ? Verdict::Inconclusive : Verdict::CertifiedHolds;
  }
  if (wants(c, "csv")) write_file(in_dir(c, "scan.csv"), scan_csv(report, cfg));
  if (wants(c, "json")) write_file(in_dir(c, "scan.json"), dump_with_hash(scan_json(report, cfg)));
  if (wants(c, "svg")) write_file(in_dir(c, "fig8.svg"), fig8_svg(report, cfg));

  std::cout << "points=" << report.records.size() << " holds=" << report.holds
            << " inconclusive=" << report.inconclusive << " fails=" << report.fails << "\n"
            << "min_margin=" << format_double(report.min_margin) << " at r=" << format_double(report.min_margin_r)
            << "\nverdict=" << to_string(report.verdict) << (cfg.profile == Profile::Fast ? " (uncertified)" : "")
            << "\n";
  if (cfg.profile == Profile::Fast && report.verdict == Verdict::CertifiedHolds) return kExitInconclusive;
  return exit_code(report.verdict);
}

// --- volume -----------------------------------------------------------------

struct VolumeArgs {
  double r = 3.0;
  double eps = 0.05;
  std::string region = "plane";
};

int cmd_volume(const VolumeArgs& a, const Common& c) {
  const CantorDustParams params(a.r);
  RunConfig cfg = make_config("volume", c);
  cfg.params = {{"r", format_double(a.r)}, {"eps", format_double(a.eps)}, {"region", a.region}};
  const Region region = parse_region(a.region, a.r);
  const VolumeResult v = volume(params, a.eps, region, c.budget, volume_options(c));
  ordered_json doc = volume_json(v, cfg);
  std::cout << "area " << str(v.enclosure) << " width=" << format_double(v.enclosure.width())
            << " depth=" << v.depth_reached << " inside=" << v.cells_inside << " outside=" << v.cells_outside
            << " uncertain=" << v.cells_uncertain << (v.budget_met ? "" : " BudgetNotMet") << "\n";
  if (region.kind == RegionKind::Plane) {
    const IntervalValue scale = pow(IntervalValue(a.eps), IntervalValue(2.0) - params.dimension_enclosure());
    const IntervalValue norm = v.enclosure / scale;
    doc["summary"]["normalized"] = to_json(norm);
    std::cout << "normalized " << str(norm) << "\n";
  }
  if (wants(c, "json")) write_file(in_dir(c, "volume.json"), dump_with_hash(doc));
  return v.budget_met ? kExitPass : kExitInconclusive;
}

// --- oscillate --------------------------------------------------------------

struct OscArgs {
  double r = 100.0;
  std::string family = "thm41";
  int n_max = 2;
  double budget = 0.05;
};

int cmd_oscillate(const OscArgs& a, const Common& c) {
  const CantorDustParams params(a.r);
  RunConfig cfg = make_config("oscillate", c);
  cfg.budget = a.budget;
  cfg.params = {{"r", format_double(a.r)}, {"family", a.family}, {"n_max", a.n_max}};
  const FamilyPair fam = a.family == "conj" ? FamilyPair::Conj : FamilyPair::Thm41;
  const OscillationReport rep = oscillation_scan(params, fam, a.n_max, a.budget, volume_options(c));
  std::cout << "bound1 " << str(rep.bound1) << "  bound2 " << str(rep.bound2) << "\n";
  for (const auto& row : rep.rows) {
    std::cout << "n=" << row.n << " eps1=" << format_double(row.eps1) << " eps2=" << format_double(row.eps2);
    if (!row.valid) {
      std::cout << " sequence-invalid\n";
      continue;
    }
    std::cout << " norm1=" << str(*row.norm1) << " norm2=" << str(*row.norm2)
              << " lower=" << to_string(row.lower_check) << " upper=" << to_string(row.upper_check)
              << (row.budget_met ? "" : " BudgetNotMet") << "\n";
  }
  if (rep.gap) std::cout << "gap=" << format_double(*rep.gap) << "\n";
  std::cout << "verdict=" << to_string(rep.verdict) << "\n";
  if (wants(c, "json")) write_file(in_dir(c, "oscillation.json"), dump_with_hash(oscillation_json(rep, cfg)));
  return exit_code(rep.verdict);
}

// --- pluriphase -------------------------------------------------------------

struct PluriArgs {
  double r = 3.0;
  double eps = 0.05;
};

int cmd_pluriphase(const PluriArgs& a, const Common& c) {
  const CantorDustParams params(a.r);
  RunConfig cfg = make_config("pluriphase", c);
  cfg.params = {{"r", format_double(a.r)}, {"eps", format_double(a.eps)}};
  const PolynomialSolution q = pluriphase_polynomial_solve(a.r);
  std::cout << "a=" << format_double(q.a) << " (-3pi=" << format_double(-3.0 * NumTraits<double>::pi()) << ")"
            << " b=" << format_double(q.b) << " c=" << format_double(q.c)
            << " contradiction=" << (q.contradiction ? "true" : "false") << "\n";

  ordered_json doc;
  doc["config"] = to_json(cfg);
  doc["records"] = ordered_json::array();
  bool consistent = true, met = true;
  for (auto variant : {RecursionVariant::Gamma, RecursionVariant::P}) {
    const RecursionCheck chk = pluriphase_recursion_check(params, a.eps, c.budget, variant, volume_options(c));
    const char* name = variant == RecursionVariant::Gamma ? "gamma" : "P";
    std::cout << name << ": lhs=" << str(chk.lhs) << " rhs=" << str(chk.rhs)
              << " consistent=" << (chk.consistent ? "true" : "false")
              << " relative_gap=" << format_double(chk.relative_gap) << (chk.budget_met ? "" : " BudgetNotMet") << "\n";
    doc["records"].push_back(ordered_json{{"variant", name},
                                          {"lhs", to_json(chk.lhs)},
                                          {"rhs", to_json(chk.rhs)},
                                          {"consistent", chk.consistent},
                                          {"relative_gap", format_double(chk.relative_gap)},
                                          {"budget_met", chk.budget_met}});
    consistent = consistent && chk.consistent;
    met = met && chk.budget_met;
  }
  std::cout << "recursion " << (consistent ? "consistent" : "INCONSISTENT") << "\n";
  doc["summary"] = ordered_json{{"a", format_double(q.a)},
                                {"b", format_double(q.b)},
                                {"c", format_double(q.c)},
                                {"contradiction", q.contradiction}};
  const Verdict v = !consistent || !q.contradiction ? Verdict::CertifiedFails
                    : met                           ? Verdict::CertifiedHolds
                                                    : Verdict::Inconclusive;
  doc["verdict"] = to_string(v);
  if (wants(c, "json")) write_file(in_dir(c, "pluriphase.json"), dump_with_hash(doc));
  return exit_code(v);
}

// --- bounds -----------------------------------------------------------------

struct BoundsArgs {
  std::string what = "all";
  double r = 30.0;
  int n = 1;
};

int cmd_bounds(const BoundsArgs& a) {
  const bool all = a.what == "all";
  bool any = false;
  auto show = [&](const std::string& key) { return all || a.what == key; };
  if (show("threshold")) {
    any = true;
    const IntervalValue t = threshold_root();
    std::cout << "threshold " << str(t) << " width=" << format_double(t.width()) << "\n";
  }
  if (show("thm41-lower")) {
    any = true;
    std::cout << "thm41_lower(r=" << format_double(a.r) << ") " << str(ratio_lower_bound_thm41(a.r)) << "\n";
  }
  if (show("thm41-upper")) {
    any = true;
    std::cout << "thm41_upper " << str(ratio_upper_bound_thm41()) << "\n";
  }
  if (show("f1")) {
    any = true;
    std::cout << "f1(r=" << format_double(a.r) << ") " << str(f1(a.r)) << "\n";
  }
  if (show("f2")) {
    any = true;
    std::cout << "f2(r=" << format_double(a.r) << ") " << str(f2(a.r)) << "\n";
  }
  if (show("window")) {
    any = true;
    const EpsWindow w = valid_eps_range(a.r, a.n);
    std::cout << "window(r=" << format_double(a.r) << ", n=" << a.n << ") [" << format_double(w.lo) << ", "
              << format_double(w.hi) << "]\n";
  }
  if (show("h")) {
    any = true;
    std::cout << "h(r=" << format_double(a.r) << ", n=" << a.n << ") " << format_double(h_distance(a.r, a.n))
              << "\n";
  }
  if (show("sequences")) {
    any = true;
    for (auto f : {SequenceFamily::Thm41_1, SequenceFamily::Thm41_2, SequenceFamily::Conj_1, SequenceFamily::Conj_2})
      std::cout << to_string(f) << "(n=" << a.n << ") " << format_double(sequence_eps({f, a.r}, a.n)) << "\n";
  }
  if (show("dimension")) {
    any = true;
    std::cout << "dimension(r=" << format_double(a.r) << ") " << format_double(minkowski_dimension(a.r)) << "\n";
  }
  if (!any) throw UsageError("unknown --what " + a.what);
  return kExitPass;
}

// --- render -----------------------------------------------------------------

struct RenderArgs {
  double r = 3.0;
  int n = 3;
  double eps = 0.0;
  double budget = 1e-2;
  std::string out = "render.svg";
};

int cmd_render(const RenderArgs& a, const Common& c) {
  RunConfig cfg = make_config("render", c);
  cfg.params = {{"r", format_double(a.r)}, {"n", a.n}, {"eps", format_double(a.eps)}};
  if (a.n < 0 || a.n > 8) throw UsageError("--n must lie in [0, 8]");
  if (a.eps > 0.0) {
    const CantorDustParams params(a.r);
    std::vector<LeafCell> leaves;
    VolumeOptions opt = volume_options(c);
    opt.leaves = &leaves;
    const VolumeResult v = volume(params, a.eps, Region::plane(), a.budget, opt);
    const Rect view{{-a.eps, -a.eps}, {1.0 + a.eps, 1.0 + a.eps}};
    write_file(a.out, cells_svg(leaves, view, cfg));
    std::cout << "cells=" << leaves.size() << " area " << str(v.enclosure) << "\n";
  } else {
    const SelfSimilarSystem sys = build_cantor_dust(a.r);
    write_file(a.out, construction_svg(sys, a.n, cfg));
    const auto squares = construction_step(sys, a.n);
    std::cout << "squares=" << squares.size() << " side=" << format_double(squares.front().side) << "\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dustlab: certified parallel-set areas of lattice Cantor dusts"};
  app.require_subcommand(1);

  Common common;
  ScanArgs scan_args;
  VolumeArgs volume_args;
  OscArgs osc_args;
  PluriArgs pluri_args;
  BoundsArgs bounds_args;
  RenderArgs render_args;

  auto* scan = app.add_subcommand("scan", "certified f1 > f2 scan over an r-grid");
  scan->add_option("--r-min", scan_args.r_min)->envname("DUSTLAB_R_MIN");
  scan->add_option("--r-max", scan_args.r_max)->envname("DUSTLAB_R_MAX");
  scan->add_option("--step", scan_args.step)->envname("DUSTLAB_STEP");
  scan->add_option("--margin", scan_args.margin, "required f1.lo - f2.hi")->envname("DUSTLAB_MARGIN");
  add_common(scan, common);

  auto* vol = app.add_subcommand("volume", "certified area of the eps-parallel set");
  vol->add_option("--r", volume_args.r)->envname("DUSTLAB_R");
  vol->add_option("--eps", volume_args.eps)->envname("DUSTLAB_EPS");
  vol->add_option("--region", volume_args.region, "plane | unit | gamma | gamma-minus-center")
      ->envname("DUSTLAB_REGION");
  add_common(vol, common);

  auto* osc = app.add_subcommand("oscillate", "normalized volume along paired eps-sequences");
  osc->add_option("--r", osc_args.r)->envname("DUSTLAB_R");
  osc->add_option("--family", osc_args.family)->check(CLI::IsMember({"thm41", "conj"}))->envname("DUSTLAB_FAMILY");
  osc->add_option("--n", osc_args.n_max, "deepest level n_max")->envname("DUSTLAB_N");
  osc->add_option("--width", osc_args.budget, "enclosure width in normalized units")->envname("DUSTLAB_WIDTH");
  add_common(osc, common);

  auto* pluri = app.add_subcommand("pluriphase", "coefficient solve and numeric recursion check");
  pluri->add_option("--r", pluri_args.r)->envname("DUSTLAB_R");
  pluri->add_option("--eps", pluri_args.eps)->envname("DUSTLAB_EPS");
  add_common(pluri, common);

  auto* bnd = app.add_subcommand("bounds", "closed-form bounds");
  bnd->add_option("--what", bounds_args.what,
                  "threshold | thm41-lower | thm41-upper | f1 | f2 | window | h | sequences | dimension | all")
      ->envname("DUSTLAB_WHAT");
  bnd->add_option("--r", bounds_args.r)->envname("DUSTLAB_R");
  bnd->add_option("--n", bounds_args.n)->envname("DUSTLAB_N");

  auto* render = app.add_subcommand("render", "SVG of construction squares or quadtree cells");
  render->add_option("--r", render_args.r)->envname("DUSTLAB_R");
  render->add_option("--n", render_args.n)->envname("DUSTLAB_N");
  render->add_option("--eps", render_args.eps, "draw quadtree cells of C_eps instead")->envname("DUSTLAB_EPS");
  render->add_option("--depth-budget", render_args.budget)->envname("DUSTLAB_DEPTH_BUDGET");
  render->add_option("--out", render_args.out, "output SVG file")->envname("DUSTLAB_OUT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (common.workers > 0) omp_set_num_threads(common.workers);
  try {
    if (*scan) return cmd_scan(scan_args, common);
    if (*vol) return cmd_volume(volume_args, common);
    if (*osc) return cmd_oscillate(osc_args, common);
    if (*pluri) return cmd_pluriphase(pluri_args, common);
    if (*bnd) return cmd_bounds(bounds_args);
    if (*render) return cmd_render(render_args, common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EpsOutOfRange& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    // Resource caps and similar: nothing was certified.
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconclusive;
  }
  return kExitUsage;
}
