#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace pdmpsync {

/// SplitMix64 finalizer; used to spread user seeds and to derive independent
/// per-trial streams from one master seed.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(master ^ mix64(stream + 1));
}

/// Deterministic random stream. All variates are generated by explicit
/// inverse-CDF / Box-Muller transforms of 53-bit uniforms so that the draw
/// count per sample is fixed and sequences are reproducible for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(mix64(seed)) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Exponential with the given rate; consumes exactly one uniform.
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  /// Standard normal via Box-Muller; two uniforms per generated pair.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace pdmpsync
