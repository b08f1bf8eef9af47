#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ndncache {

/// One step of the splitmix64 generator. Advances `state` and returns the
/// mixed output.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed for replication k, derived from the master seed by iterating
/// splitmix64 k+1 times. Replications are independent and reproducible.
inline std::uint64_t replication_seed(std::uint64_t master_seed, int replication) {
  std::uint64_t state = master_seed;
  std::uint64_t out = 0;
  for (int i = 0; i <= replication; ++i) {
    out = splitmix64(state);
  }
  return out;
}

/// Deterministic random stream. mt19937_64 has a standard-pinned output
/// sequence; the variate transforms below are spelled out so that draws do
/// not depend on the standard library's distribution implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed), seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Exponentially distributed gap with the given mean (inverse CDF).
  double exponential(double mean) {
    return -mean * std::log1p(-next_double());
  }

  /// Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(static_cast<std::uint64_t>(next_double() * static_cast<double>(span)) % span);
  }

 private:
  std::mt19937_64 gen_;
  std::uint64_t seed_;
};

}  // namespace ndncache
