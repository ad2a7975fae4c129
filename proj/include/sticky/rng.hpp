#pragma once
#include <cmath>
#include <cstdint>
#include <random>

namespace sticky {

// Deterministic, splittable random streams.  Every replication owns one
// stream derived from (master_seed, run_index); kernels never share streams,
// so runs can execute in any order (or in parallel) and still produce
// byte-identical traces.

// SplitMix64 finalizer: full-avalanche 64-bit mixing.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Distinct run indices map to distinct (with overwhelming probability)
// generator seeds under the same master seed.
inline std::uint64_t derive_run_seed(std::uint64_t master, std::uint64_t run_index) {
  return mix64(mix64(master) ^ mix64(run_index * 0x9E3779B97F4A7C15ull + 1));
}

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}
  RngStream(std::uint64_t master, std::uint64_t run_index)
      : gen_(derive_run_seed(master, run_index)) {}

  // Uniform on [0, 1): top 53 bits of the generator output.
  double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos() { return 1.0 - uniform01(); }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Standard normal via plain Box-Muller (the radius/angle form, no caching
  // of the second variate).  std::normal_distribution is implementation
  // defined, which would break cross-platform trace stability.
  double gauss() {
    double u = uniform_pos();
    double v = uniform01();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925286766559 * v);
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace sticky
