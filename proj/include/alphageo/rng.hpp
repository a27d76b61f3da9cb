#pragma once

#include <cstdint>
#include <vector>

#include "alphageo/measures.hpp"

namespace alphageo {

/// Deterministic 64-bit generator (splitmix64). Used for all fuzz inputs so
/// that seeded runs are reproducible bit for bit across platforms; the
/// standard-library distributions are implementation-defined and would not be.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double next_in(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

 private:
  std::uint64_t state_;
};

/// Random pmf: normalized i.i.d. exponential variates (inverse-CDF from the
/// splitmix stream), re-drawn until every entry clears `floor`.
inline FinitePmf random_pmf(SplitMix64& rng, std::size_t d,
                            double floor = 1e-6) {
  std::vector<double> v(d);
  for (;;) {
    double sum = 0.0;
    for (double& x : v) {
      x = -std::log(1.0 - rng.next_double());
      sum += x;
    }
    bool ok = sum > 0.0;
    for (double& x : v) {
      x /= sum;
      ok = ok && x >= floor;
    }
    if (ok) return FinitePmf(v);
  }
}

}  // namespace alphageo
