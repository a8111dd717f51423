#pragma once

// Reference geometry for tests. Plain doubles, no enclosures; shares no code
// with the library kernels.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle {

struct Sq {
  double x, y, s;
};

// Level-n squares of C^r by repeated subdivision.
inline std::vector<Sq> squares(double r, int n) {
  std::vector<Sq> cur{{0.0, 0.0, 1.0}};
  for (int k = 0; k < n; ++k) {
    std::vector<Sq> next;
    next.reserve(cur.size() * 4);
    for (const Sq& q : cur) {
      const double s = q.s / r, o = q.s - s;
      next.push_back({q.x, q.y, s});
      next.push_back({q.x + o, q.y, s});
      next.push_back({q.x + o, q.y + o, s});
      next.push_back({q.x, q.y + o, s});
    }
    cur.swap(next);
  }
  return cur;
}

// Minimum distance from (px,py) to the corners of the given squares.
inline double corner_distance(const std::vector<Sq>& sq, double px, double py) {
  double best = std::numeric_limits<double>::infinity();
  for (const Sq& q : sq)
    for (int c = 0; c < 4; ++c) {
      const double cx = q.x + ((c & 1) ? q.s : 0.0), cy = q.y + ((c & 2) ? q.s : 0.0);
      best = std::min(best, std::hypot(px - cx, py - cy));
    }
  return best;
}

inline double box_distance(const Sq& q, double px, double py) {
  const double dx = std::max({q.x - px, 0.0, px - q.x - q.s});
  const double dy = std::max({q.y - py, 0.0, py - q.y - q.s});
  return std::hypot(dx, dy);
}

enum class Within { Yes, No, Unknown };

// Is dist((px,py), C^r) <= eps? Depth-first descent: a square farther than
// eps is discarded, a corner within eps settles it.
inline Within within(double r, double px, double py, double eps, Sq q = {0, 0, 1}, int depth = 0) {
  if (box_distance(q, px, py) > eps) return Within::No;
  for (int c = 0; c < 4; ++c) {
    const double cx = q.x + ((c & 1) ? q.s : 0.0), cy = q.y + ((c & 2) ? q.s : 0.0);
    if (std::hypot(px - cx, py - cy) <= eps) return Within::Yes;
  }
  if (depth >= 48) return Within::Unknown;
  const double s = q.s / r, o = q.s - s;
  const Sq kids[4] = {{q.x, q.y, s}, {q.x + o, q.y, s}, {q.x + o, q.y + o, s}, {q.x, q.y + o, s}};
  bool unknown = false;
  for (const Sq& k : kids) {
    const Within w = within(r, px, py, eps, k, depth + 1);
    if (w == Within::Yes) return w;
    if (w == Within::Unknown) unknown = true;
  }
  return unknown ? Within::Unknown : Within::No;
}

// splitmix64 stream of uniforms in [0,1).
struct Uniform {
  std::uint64_t state;
  double operator()() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }
};

struct MonteCarlo {
  double estimate;
  double std_error;
  std::uint64_t unknown;
};

// Area of C^r_eps inside [x0,x1]x[y0,y1], optionally excluding points for
// which `skip` returns true (those count as outside the sampled set).
template <class Skip>
MonteCarlo area(double r, double eps, double x0, double x1, double y0, double y1, std::uint64_t samples,
                std::uint64_t seed, Skip skip) {
  Uniform u{seed};
  std::uint64_t hits = 0, unknown = 0;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const double x = x0 + (x1 - x0) * u(), y = y0 + (y1 - y0) * u();
    if (skip(x, y)) continue;
    const Within w = within(r, x, y, eps);
    if (w == Within::Yes) ++hits;
    if (w == Within::Unknown) ++unknown;
  }
  const double box = (x1 - x0) * (y1 - y0);
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {box * p, box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), unknown};
}

inline MonteCarlo plane_area(double r, double eps, std::uint64_t samples, std::uint64_t seed) {
  return area(r, eps, -eps, 1.0 + eps, -eps, 1.0 + eps, samples, seed, [](double, double) { return false; });
}

}  // namespace oracle
