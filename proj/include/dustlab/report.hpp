#pragma once

// Serialization of campaign results: CSV, JSON and SVG. Every artifact
// embeds the run configuration and a content hash; with the same
// configuration the bytes are identical between runs.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dustlab/analysis.hpp"
#include "dustlab/ifs.hpp"

namespace dustlab {

struct RunConfig {
  std::string command;
  Profile profile = Profile::Certified;
  double budget = 1e-4;
  int max_depth = 40;
  std::size_t node_cap = 1'000'000;
  int workers = 0;
  std::string out_dir = ".";
  std::vector<std::string> formats{"csv", "json", "svg"};
  /// Command-specific parameters (r, eps, n, ...).
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
};

nlohmann::ordered_json to_json(const RunConfig& config);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

/// 64-bit FNV-1a, hex encoded.
std::string content_hash(const std::string& bytes);

nlohmann::ordered_json to_json(const IntervalValue& v);

inline constexpr const char* kScanCsvHeader = "r,f1_lo,f1_hi,f2_lo,f2_hi,margin,verdict";

/// Header line, one row per grid point, then `#`-prefixed trailer lines with
/// the configuration and the hash of everything above them.
std::string scan_csv(const ScanReport& report, const RunConfig& config);
nlohmann::ordered_json scan_json(const ScanReport& report, const RunConfig& config);

nlohmann::ordered_json volume_json(const VolumeResult& result, const RunConfig& config);
nlohmann::ordered_json oscillation_json(const OscillationReport& report, const RunConfig& config);

/// Serializes with a content hash inserted under summary.content_hash.
std::string dump_with_hash(nlohmann::ordered_json doc);

/// Plot of f1 and f2 over the scanned range.
std::string fig8_svg(const ScanReport& report, const RunConfig& config);

/// Construction squares of levels 0..n, coloured by level.
std::string construction_svg(const SelfSimilarSystem& system, int n, const RunConfig& config);

/// Quadtree leaf cells coloured Inside / Outside / Uncertain.
std::string cells_svg(const std::vector<LeafCell>& leaves, const Rect& view, const RunConfig& config);

void write_file(const std::string& path, const std::string& content);

}  // namespace dustlab
