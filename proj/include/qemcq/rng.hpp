#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace qemcq {

// Deterministic random source. The raw mt19937_64 stream is pinned by the
// standard, but the std::*_distribution adaptors are not, so every
// distribution here is hand-rolled: identical seeds give bit-identical
// draw sequences on any conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution; consumes one engine draw.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1); resamples the measure-zero 0 outcome.
  double uniform_open01() {
    double u = uniform01();
    while (u == 0.0) u = uniform01();
    return u;
  }

  // Uniform integer on [lo, hi] inclusive, unbiased via bitmask rejection.
  int uniform_int(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
    const std::uint64_t range = static_cast<std::uint64_t>(hi) - lo;
    if (range == 0) return lo;
    std::uint64_t mask = range;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    std::uint64_t draw = next_u64() & mask;
    while (draw > range) draw = next_u64() & mask;
    return lo + static_cast<int>(draw);
  }

  // Standard normal via Box-Muller; always consumes exactly two uniforms
  // (no cached second value, so the draw count per call is fixed).
  double normal() {
    const double u1 = uniform_open01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

// Stateless mix for deriving independent stream seeds from a base seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace qemcq
