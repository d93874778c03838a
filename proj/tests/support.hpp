#pragma once

#include "gaugeint/codings.hpp"

#include <random>

namespace testsupport {

using gaugeint::Int;
using gaugeint::Rat;

// Deterministic generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(n) - 1)); }
  bool coin() { return integer(0, 1) == 1; }

  // Rational in [lo, hi] with denominator at most maxDen.
  Rat rational(const Rat& lo, const Rat& hi, std::int64_t maxDen = 64) {
    std::int64_t d = integer(1, maxDen);
    Int a = gaugeint::ceilRat(lo * d), b = gaugeint::floorRat(hi * d);
    if (a > b) return lo;
    Int span = b - a;
    Int k = a + Int(integer(0, static_cast<std::int64_t>(span)));
    return Rat(k, Int(d));
  }
  Rat unit(std::int64_t maxDen = 64) { return rational(0, 1, maxDen); }
  // Strictly inside (0,1).
  Rat interior(std::int64_t maxDen = 64) {
    for (;;) {
      Rat r = unit(maxDen);
      if (r > 0 && r < 1) return r;
    }
  }

  std::string bits(std::size_t len) {
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s += coin() ? '1' : '0';
    return s;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Rat absRat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

}  // namespace testsupport
