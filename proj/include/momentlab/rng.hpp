#pragma once

#include <cstdint>
#include <random>

#include "momentlab/rational.hpp"

namespace momentlab {

// Deterministic random source for instance generation and property tests.
// mt19937_64 has a standard-defined sequence, and bounded draws below use
// plain reduction, so identical seeds give identical streams everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform-ish integer in [lo, hi], inclusive.
  long long next_int(long long lo, long long hi) {
    if (hi < lo) std::swap(lo, hi);
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(engine_() % span);
  }

  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Rational with numerator in [lo_num, hi_num] and denominator in [1, max_den].
  Rational next_rational(long long lo_num, long long hi_num, long long max_den = 64) {
    return make_rational(next_int(lo_num, hi_num), next_int(1, max_den));
  }

  // Strictly positive rational in (0, 1] with bounded denominator.
  Rational next_unit_rational(long long max_den = 64) {
    const long long den = next_int(1, max_den);
    const long long num = next_int(1, den);
    return make_rational(num, den);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace momentlab
