#pragma once

// Deterministic per-run random source. All draws go through explicit helper
// functions so a fixed seed reproduces a run bit for bit.

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace nes {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n).
  int uniform_int(int n) { return static_cast<int>(uniform01() * n) % n; }

  double normal(double mean, double stddev) {
    // Polar Box-Muller without caching the spare deviate.
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    return mean + stddev * u * std::sqrt(-2.0 * std::log(s) / s);
  }

  double cauchy(double location, double scale) {
    return location + scale * std::tan(M_PI * (uniform01() - 0.5));
  }

 private:
  std::mt19937_64 gen_;
};

// SplitMix64 step, used for deriving per-cell seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace nes
