#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace itdsim {

// Portable samplers on top of std::mt19937_64. The standard pins the
// engine's output sequence, so everything here is bit-reproducible across
// platforms (std::*_distribution is not, hence these hand-rolled forms).

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Substream seed for (grid point, repetition) under a master seed; serial
/// and parallel execution orders agree because each repetition draws from
/// its own engine.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t grid,
                                 std::uint64_t rep) {
  return splitmix64(splitmix64(master ^ splitmix64(grid + 1)) ^
                    splitmix64(rep + 0x9E3779B97F4A7C15ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on (0, 1), never exactly 0 or 1.
  double uniform() {
    return (double(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  std::int64_t binomial(std::int64_t n, double p) {
    std::int64_t successes = 0;
    for (std::int64_t i = 0; i < n; ++i) successes += bernoulli(p) ? 1 : 0;
    return successes;
  }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

  /// Box–Muller; draws two uniforms per call.
  double gaussian(double sigma) {
    const double u1 = uniform();
    const double u2 = uniform();
    return sigma * std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace itdsim
