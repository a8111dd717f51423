#include "dustlab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dustlab {

using nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ordered_json to_json(const RunConfig& config) {
  ordered_json j;
  j["command"] = config.command;
  j["profile"] = to_string(config.profile);
  j["budget"] = format_double(config.budget);
  j["max_depth"] = config.max_depth;
  j["node_cap"] = config.node_cap;
  j["workers"] = config.workers;
  j["formats"] = config.formats;
  j["params"] = config.params;
  return j;
}

ordered_json to_json(const IntervalValue& v) {
  return ordered_json{{"lo", format_double(v.lo())}, {"hi", format_double(v.hi())}};
}

std::string dump_with_hash(ordered_json doc) {
  const std::string body = doc.dump();
  doc["summary"]["content_hash"] = content_hash(body);
  return doc.dump(1) + "\n";
}

std::string scan_csv(const ScanReport& report, const RunConfig& config) {
  std::string out;
  out.reserve(report.records.size() * 96 + 256);
  out += kScanCsvHeader;
  out += '\n';
  for (const auto& rec : report.records) {
    out += format_double(rec.r);
    out += ',';
    out += format_double(rec.f1.lo());
    out += ',';
    out += format_double(rec.f1.hi());
    out += ',';
    out += format_double(rec.f2.lo());
    out += ',';
    out += format_double(rec.f2.hi());
    out += ',';
    out += format_double(rec.margin);
    out += ',';
    out += to_string(rec.verdict);
    out += '\n';
  }
  const std::string hash = content_hash(out);
  out += "# config=" + to_json(config).dump() + "\n";
  out += "# content_hash=" + hash + "\n";
  return out;
}

namespace {

ordered_json verdict_counts(const ScanReport& report) {
  return ordered_json{{"points", report.records.size()},
                      {"certified_holds", report.holds},
                      {"inconclusive", report.inconclusive},
                      {"certified_fails", report.fails},
                      {"min_margin", format_double(report.min_margin)},
                      {"min_margin_r", format_double(report.min_margin_r)},
                      {"certified", report.profile == Profile::Certified}};
}

}  // namespace

ordered_json scan_json(const ScanReport& report, const RunConfig& config) {
  ordered_json doc;
  doc["config"] = to_json(config);
  ordered_json records = ordered_json::array();
  for (const auto& rec : report.records) {
    records.push_back(ordered_json{{"r", format_double(rec.r)},
                                   {"f1", to_json(rec.f1)},
                                   {"f2", to_json(rec.f2)},
                                   {"margin", format_double(rec.margin)},
                                   {"verdict", to_string(rec.verdict)}});
  }
  doc["records"] = std::move(records);
  doc["summary"] = verdict_counts(report);
  doc["verdict"] = to_string(report.verdict);
  return doc;
}

ordered_json volume_json(const VolumeResult& result, const RunConfig& config) {
  ordered_json doc;
  doc["config"] = to_json(config);
  doc["records"] = ordered_json::array({ordered_json{{"enclosure", to_json(result.enclosure)},
                                                     {"cells_inside", result.cells_inside},
                                                     {"cells_outside", result.cells_outside},
                                                     {"cells_uncertain", result.cells_uncertain},
                                                     {"depth_reached", result.depth_reached},
                                                     {"budget_met", result.budget_met}}});
  doc["summary"] = ordered_json{{"width", format_double(result.enclosure.width())}};
  doc["verdict"] = result.budget_met ? "BudgetMet" : "BudgetNotMet";
  return doc;
}

ordered_json oscillation_json(const OscillationReport& report, const RunConfig& config) {
  ordered_json doc;
  doc["config"] = to_json(config);
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json j{{"n", row.n},
                   {"eps1", format_double(row.eps1)},
                   {"eps2", format_double(row.eps2)},
                   {"valid", row.valid}};
    j["norm1"] = row.norm1 ? to_json(*row.norm1) : ordered_json(nullptr);
    j["norm2"] = row.norm2 ? to_json(*row.norm2) : ordered_json(nullptr);
    j["budget_met"] = row.budget_met;
    j["lower_check"] = row.valid ? to_string(row.lower_check) : "SequenceInvalid";
    j["upper_check"] = row.valid ? to_string(row.upper_check) : "SequenceInvalid";
    rows.push_back(std::move(j));
  }
  doc["records"] = std::move(rows);
  doc["summary"] = ordered_json{{"r", format_double(report.r)},
                                {"family", to_string(report.family)},
                                {"bound1", to_json(report.bound1)},
                                {"bound2", to_json(report.bound2)},
                                {"gap", report.gap ? ordered_json(format_double(*report.gap)) : ordered_json(nullptr)},
                                {"note", "finite-depth samples only; accumulation points are not computed"}};
  doc["verdict"] = to_string(report.verdict);
  return doc;
}

namespace {

// SVG coordinates are printed with four decimals.
std::string fx(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string svg_open(double w, double h, const RunConfig& config) {
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fx(w) + "\" height=\"" + fx(h) +
       "\" viewBox=\"0 0 " + fx(w) + " " + fx(h) + "\">\n";
  std::string cfg = to_json(config).dump();
  // "--" may not appear inside an XML comment.
  for (std::size_t p = cfg.find("--"); p != std::string::npos; p = cfg.find("--")) cfg.replace(p, 2, "- -");
  s += "<!-- config: " + cfg + " -->\n";
  return s;
}

std::string svg_close(std::string body) {
  const std::string hash = content_hash(body);
  body += "<!-- content_hash: " + hash + " -->\n</svg>\n";
  return body;
}

}  // namespace

std::string fig8_svg(const ScanReport& report, const RunConfig& config) {
  const double W = 720, H = 480, ml = 60, mr = 20, mt = 30, mb = 50;
  std::string s = svg_open(W, H, config);
  s += "<rect x=\"0\" y=\"0\" width=\"" + fx(W) + "\" height=\"" + fx(H) + "\" fill=\"white\"/>\n";
  if (report.records.empty()) return svg_close(s);

  const double x0 = report.records.front().r, x1 = std::max(report.records.back().r, x0 + 1e-9);
  double y0 = std::numeric_limits<double>::infinity(), y1 = -y0;
  for (const auto& rec : report.records) {
    y0 = std::min({y0, rec.f1.lo(), rec.f2.lo()});
    y1 = std::max({y1, rec.f1.hi(), rec.f2.hi()});
  }
  if (y1 - y0 < 1e-9) y1 = y0 + 1.0;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double r) { return ml + (r - x0) / (x1 - x0) * (W - ml - mr); };
  auto py = [&](double v) { return H - mb - (v - y0) / (y1 - y0) * (H - mt - mb); };

  s += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  s += "<line x1=\"" + fx(ml) + "\" y1=\"" + fx(H - mb) + "\" x2=\"" + fx(W - mr) + "\" y2=\"" + fx(H - mb) + "\"/>\n";
  s += "<line x1=\"" + fx(ml) + "\" y1=\"" + fx(mt) + "\" x2=\"" + fx(ml) + "\" y2=\"" + fx(H - mb) + "\"/>\n";
  s += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int t = 0; t <= 5; ++t) {
    const double rv = x0 + (x1 - x0) * t / 5.0;
    const double yv = y0 + (y1 - y0) * t / 5.0;
    s += "<text x=\"" + fx(px(rv)) + "\" y=\"" + fx(H - mb + 16) + "\" text-anchor=\"middle\">" + fx(rv) + "</text>\n";
    s += "<text x=\"" + fx(ml - 6) + "\" y=\"" + fx(py(yv) + 4) + "\" text-anchor=\"end\">" + fx(yv) + "</text>\n";
  }
  s += "<text x=\"" + fx((W + ml) / 2) + "\" y=\"" + fx(H - 10) + "\" text-anchor=\"middle\">r</text>\n";
  s += "<text x=\"" + fx(ml + 10) + "\" y=\"" + fx(mt - 10) + "\" fill=\"blue\">f1</text>\n";
  s += "<text x=\"" + fx(ml + 40) + "\" y=\"" + fx(mt - 10) + "\" fill=\"red\">f2</text>\n";
  s += "</g>\n";

  // At most ~2000 vertices per series.
  const std::size_t stride = std::max<std::size_t>(1, report.records.size() / 2000);
  auto series = [&](bool first, const char* colour) {
    std::string pts;
    for (std::size_t k = 0; k < report.records.size(); k += stride) {
      const auto& rec = report.records[k];
      pts += fx(px(rec.r)) + "," + fx(py(first ? rec.f1.mid() : rec.f2.mid())) + " ";
    }
    const auto& last = report.records.back();
    pts += fx(px(last.r)) + "," + fx(py(first ? last.f1.mid() : last.f2.mid()));
    return "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"" + pts +
           "\"/>\n";
  };
  s += series(true, "blue");
  s += series(false, "red");
  return svg_close(s);
}

std::string construction_svg(const SelfSimilarSystem& system, int n, const RunConfig& config) {
  const double size = 600, margin = 10;
  std::string s = svg_open(size + 2 * margin, size + 2 * margin, config);
  static const char* palette[] = {"#dddddd", "#9ecae1", "#6baed6", "#4292c6", "#2171b5", "#08519c", "#08306b"};
  for (int level = 0; level <= n; ++level) {
    const char* colour = palette[std::min(level, 6)];
    s += "<g fill=\"" + std::string(colour) + "\" stroke=\"none\" data-level=\"" + std::to_string(level) + "\">\n";
    for (const auto& sq : construction_step(system, level)) {
      s += "<rect x=\"" + fx(margin + sq.corner.x * size) + "\" y=\"" +
           fx(margin + (1.0 - sq.corner.y - sq.side) * size) + "\" width=\"" + fx(sq.side * size) +
           "\" height=\"" + fx(sq.side * size) + "\"/>\n";
    }
    s += "</g>\n";
  }
  return svg_close(s);
}

std::string cells_svg(const std::vector<LeafCell>& leaves, const Rect& view, const RunConfig& config) {
  const double size = 600;
  const double scale = size / std::max(view.width(), view.height());
  std::string s = svg_open(size, size, config);
  auto colour = [](CellClass c) {
    switch (c) {
      case CellClass::Inside:
        return "#3182bd";
      case CellClass::Outside:
        return "#f7f7f7";
      case CellClass::Uncertain:
        return "#e6550d";
    }
    return "black";
  };
  for (const auto& leaf : leaves) {
    const Rect& rc = leaf.rect;
    s += "<rect x=\"" + fx((rc.lo.x - view.lo.x) * scale) + "\" y=\"" + fx((view.hi.y - rc.hi.y) * scale) +
         "\" width=\"" + fx(rc.width() * scale) + "\" height=\"" + fx(rc.height() * scale) + "\" fill=\"" +
         colour(leaf.cls) + "\" class=\"" + to_string(leaf.cls) + "\"/>\n";
  }
  return svg_close(s);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error("failed writing " + path);
}

}  // namespace dustlab
