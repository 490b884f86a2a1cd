#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "loopyspectra/errors.hpp"

namespace loopyspectra {

// Seeded random source used by every generator.  The raw stream is
// std::mt19937_64, whose output sequence for a given seed is fixed by the
// C++ standard; the derived draws below are hand-rolled because the standard
// <random> distributions are allowed to differ between library
// implementations, and identical seeds must reproduce identical networks
// across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n); rejection sampling keeps every value exactly
  // equally likely.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) fail(Errc::invalid_argument, "uniform_below(0)");
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    // 2^64 mod n; values above the largest multiple of n are rejected.
    const std::uint64_t rem = (max % n + 1) % n;
    const std::uint64_t limit = max - rem;
    std::uint64_t x = next();
    while (x > limit) x = next();
    return x % n;
  }

  // Uniform double in [0, 1) using the top 53 bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Poisson draw by Knuth's product-of-uniforms method; cost grows linearly
  // with the mean, which suits the small means used here.  Large means are
  // split into chunks to keep exp(-mean) well above double underflow.
  std::int64_t poisson(double mean) {
    if (!(mean >= 0) || !std::isfinite(mean)) {
      fail(Errc::invalid_argument, "poisson mean must be finite and >= 0");
    }
    std::int64_t total = 0;
    while (mean > 500.0) {
      total += poisson_chunk(500.0);
      mean -= 500.0;
    }
    return total + poisson_chunk(mean);
  }

  // Fisher-Yates shuffle driven by uniform_below.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::int64_t poisson_chunk(double mean) {
    const double threshold = std::exp(-mean);
    std::int64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01();
    } while (p > threshold);
    return k - 1;
  }

  std::mt19937_64 engine_;
};

}  // namespace loopyspectra
