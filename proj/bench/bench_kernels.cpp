// Serial reference vs OpenMP kernels: r-grid scan and quadtree volume.
// Both paths must agree bit for bit; the benchmark checks that too.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "dustlab/analysis.hpp"
#include "dustlab/volume.hpp"

namespace {

using h_clock = std::chrono::high_resolution_clock;

template <class F>
double seconds(F&& f) {
  const auto t0 = h_clock::now();
  f();
  return std::chrono::duration<double>(h_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace dustlab;
  const double step = argc > 1 ? std::atof(argv[1]) : 1e-4;
  std::cout << "threads: " << omp_get_max_threads() << "\n";

  ScanReport serial, parallel;
  const double ts = seconds([&] { serial = scan_inequality(2.0001, 30.0, step, Profile::Certified, Execution::Serial); });
  const double tp = seconds([&] { parallel = scan_inequality(2.0001, 30.0, step, Profile::Certified, Execution::Parallel); });
  bool same = serial.records.size() == parallel.records.size();
  for (std::size_t k = 0; same && k < serial.records.size(); ++k)
    same = serial.records[k].f1.lo() == parallel.records[k].f1.lo() &&
           serial.records[k].f2.hi() == parallel.records[k].f2.hi();
  std::cout << "scan   points=" << serial.records.size() << " serial=" << ts << "s parallel=" << tp
            << "s speedup=" << ts / tp << " identical=" << (same ? "yes" : "NO") << "\n";

  const CantorDustParams params(3.0);
  VolumeOptions vs, vp;
  vs.execution = Execution::Serial;
  vp.execution = Execution::Parallel;
  VolumeResult a, b;
  const double vts = seconds([&] { a = volume(params, 0.05, Region::plane(), 1e-3, vs); });
  const double vtp = seconds([&] { b = volume(params, 0.05, Region::plane(), 1e-3, vp); });
  const bool vsame = a.enclosure.lo() == b.enclosure.lo() && a.enclosure.hi() == b.enclosure.hi();
  std::cout << "volume r=3 eps=0.05 budget=1e-3 serial=" << vts << "s parallel=" << vtp
            << "s speedup=" << vts / vtp << " identical=" << (vsame ? "yes" : "NO") << "\n";
  return same && vsame ? 0 : 1;
}
