#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DUSTLAB_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dustlab_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("usage errors exit 64") {
  CHECK(run("").code == 64);
  CHECK(run("nonsense").code == 64);
  CHECK(run("scan --r-min 1").code == 64);
  CHECK(run("scan --r-min 5 --r-max 4").code == 64);
  CHECK(run("scan --r-min 3 --step 0").code == 64);
  CHECK(run("scan --profile sloppy").code == 64);
  CHECK(run("volume --r 2").code == 64);
  CHECK(run("volume --region everywhere").code == 64);
  CHECK(run("pluriphase --r 3 --eps 0.2").code == 64);
  CHECK(run("bounds --what nothing").code == 64);
  CHECK(run("render --n 20").code == 64);
  CHECK(run("--help").code == 0);
}

TEST_CASE("single-point scan writes the three artifacts") {
  const fs::path dir = scratch("scan");
  const Run r = run("scan --r-min 3 --r-max 3 --step 1 --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("points=1 holds=1") != std::string::npos);
  const std::string csv = slurp(dir / "scan.csv");
  std::istringstream lines(csv);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header == "r,f1_lo,f1_hi,f2_lo,f2_hi,margin,verdict");
  CHECK(row.rfind("3,", 0) == 0);
  const std::size_t last = row.rfind(','), prev = row.rfind(',', last - 1);
  CHECK(std::stod(row.substr(prev + 1, last - prev - 1)) == doctest::Approx(0.0977).epsilon(1e-3));

  const auto doc = nlohmann::json::parse(slurp(dir / "scan.json"));
  CHECK(doc["verdict"] == "CertifiedHolds");
  CHECK(slurp(dir / "fig8.svg").find("</svg>") != std::string::npos);

  // Same configuration, same bytes.
  const fs::path again = scratch("scan_again");
  CHECK(run("scan --r-min 3 --r-max 3 --step 1 --out " + again.string()).code == 0);
  CHECK(slurp(dir / "scan.csv") == slurp(again / "scan.csv"));
  CHECK(slurp(dir / "scan.json") == slurp(again / "scan.json"));
  CHECK(slurp(dir / "fig8.svg") == slurp(again / "fig8.svg"));
}

TEST_CASE("scan options and environment") {
  const fs::path dir = scratch("scan_env");
  CHECK(run("scan --r-min 3 --r-max 3.1 --step 0.05 --format csv --out " + dir.string()).code == 0);
  CHECK(fs::exists(dir / "scan.csv"));
  CHECK_FALSE(fs::exists(dir / "scan.json"));
  // A margin larger than f1 - f2 leaves the point inconclusive.
  CHECK(run("scan --r-min 3 --r-max 3 --step 1 --margin 0.5 --format csv --out " + dir.string()).code == 1);
  // The fast profile never certifies.
  CHECK(run("scan --r-min 3 --r-max 3 --step 1 --profile fast --format csv --out " + dir.string()).code == 1);
  CHECK(run("env DUSTLAB_R_MIN=1 " + std::string(DUSTLAB_CLI) + " scan --format csv --out " + dir.string()).code !=
        0);
}

TEST_CASE("bounds") {
  const Run t = run("bounds --what threshold");
  CHECK(t.code == 0);
  CHECK(t.out.find("threshold [29.44") != std::string::npos);
  const Run all = run("bounds --r 3 --n 1");
  CHECK(all.code == 0);
  CHECK(all.out.find("f1(r=3) [6.2505") != std::string::npos);
  CHECK(all.out.find("h(r=3, n=1) 0.1571") != std::string::npos);
  CHECK(all.out.find("conj_1(n=1) 0.1666") != std::string::npos);
  CHECK(run("bounds --what f1 --r 2").code == 64);
}

TEST_CASE("volume, pluriphase and oscillate") {
  const fs::path dir = scratch("volume");
  const Run v = run("volume --r 3 --eps 0.05 --budget 1e-2 --out " + dir.string());
  CHECK(v.code == 0);
  CHECK(v.out.find("area [0.6") != std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(dir / "volume.json"));
  CHECK(doc["verdict"] == "BudgetMet");
  CHECK(doc["summary"]["content_hash"].is_string());

  // A tiny depth cap cannot meet the budget.
  CHECK(run("volume --r 3 --eps 0.05 --budget 1e-6 --max-depth 3 --format csv").code == 1);
  // Node cap exhaustion is a resource error, not a verdict.
  CHECK(run("volume --r 3 --eps 0.05 --budget 1e-4 --node-cap 1 --format csv").code == 1);

  const Run p = run("pluriphase --r 3 --eps 0.05 --budget 2e-3 --format csv");
  CHECK(p.code == 0);
  CHECK(p.out.find("contradiction=true") != std::string::npos);
  CHECK(p.out.find("recursion consistent") != std::string::npos);
  CHECK(p.out.find("a=-9.42477796076938") != std::string::npos);

  const Run o = run("oscillate --r 2.5 --n 1 --format csv");
  CHECK(o.code == 1);
  CHECK(o.out.find("sequence-invalid") != std::string::npos);
  CHECK(run("oscillate --r 30 --n 1 --width 5e-3 --workers 1 --format csv").code == 0);
}

TEST_CASE("render") {
  const fs::path dir = scratch("render");
  const Run c = run("render --r 5 --n 2 --out " + (dir / "c5.svg").string());
  CHECK(c.code == 0);
  CHECK(c.out.find("squares=16 side=0.04") != std::string::npos);
  CHECK(slurp(dir / "c5.svg").rfind("<?xml", 0) == 0);
  const Run cells = run("render --r 3 --eps 0.1 --depth-budget 0.05 --out " + (dir / "cells.svg").string());
  CHECK(cells.code == 0);
  CHECK(fs::file_size(dir / "cells.svg") > 100);
}
