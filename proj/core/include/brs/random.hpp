#pragma once

#include <cstdint>
#include <random>

#include "brs/real.hpp"

namespace brs {

/// Deterministic sample source.  mt19937_64 output is pinned by the C++
/// standard, so identical seeds reproduce byte-identical artifacts across
/// platforms.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t next_word() { return rng_(); }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    // Rejection sampling keeps the distribution exact and deterministic.
    const std::uint64_t limit = n * (UINT64_MAX / n);
    std::uint64_t w;
    do {
      w = rng_();
    } while (w >= limit);
    return w % n;
  }

  /// Uniform real in [0, 1) with the full target precision.
  Real next_real(mpfr_prec_t prec) {
    Int acc = 0;
    long bits = 0;
    while (bits < prec) {
      acc <<= 64;
      acc += Int(static_cast<unsigned long>(rng_()));
      bits += 64;
    }
    Real r = Real::from_int(acc, prec);
    Real scale = Real::two_pow(-bits, prec);
    r *= scale;
    return r;
  }

  /// Random decimal string "0.d1...dn" with the given digit count.
  std::string next_decimal_string(size_t digits) {
    std::string s = "0.";
    for (size_t i = 0; i < digits; ++i)
      s += static_cast<char>('0' + next_below(10));
    return s;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace brs
