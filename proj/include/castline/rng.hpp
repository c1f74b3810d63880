#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "castline/types.hpp"

namespace castline {

/// Seeded RNG with hand-rolled distributions so that draws are reproducible
/// across standard libraries (std:: distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of mantissa.
  Scalar uniform() { return static_cast<Scalar>(engine_() >> 11) * 0x1.0p-53; }

  Scalar uniform(Scalar lo, Scalar hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Standard normal via Box-Muller (second draw cached).
  Scalar normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    Scalar u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0);
    u2 = uniform();
    const Scalar mag = std::sqrt(-2.0 * std::log(u1));
    cached_ = mag * std::sin(2.0 * kPi * u2);
    have_cached_ = true;
    return mag * std::cos(2.0 * kPi * u2);
  }

  Scalar normal(Scalar mean, Scalar stddev) { return mean + stddev * normal(); }

  /// Fisher-Yates shuffle.
  template <typename It>
  void shuffle(It first, It last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      std::swap(first[i - 1], first[uniform_int(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
  Scalar cached_ = 0;
  bool have_cached_ = false;
};

}  // namespace castline
