#pragma once

#include "gaugeint/codings.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace gaugeint {

// Thrown by an approximation oracle that cannot produce a value (for example a
// limit whose modulus is undetermined at the queried point).
struct ApproxUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A real given by rationals q_n with |q_m - q_n| <= 2^-m for m <= n.
class FastReal {
 public:
  using Oracle = std::function<Rat(std::size_t)>;
  enum class Kind { Rational, CertIrrational, Composite };

  FastReal();
  explicit FastReal(Oracle oracle, Kind kind = Kind::Composite, std::string label = {});

  static FastReal fromRational(const Rat& q);
  // The caller vouches that the oracle converges to an irrational number.
  static FastReal certIrrational(Oracle oracle, std::string name);

  // Memoized; thread-safe.
  Rat approx(std::size_t n) const;

  Kind kind() const;
  const std::optional<Rat>& exact() const;
  const std::string& label() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

FastReal operator+(const FastReal& x, const FastReal& y);
FastReal operator-(const FastReal& x, const FastReal& y);
FastReal operator*(const FastReal& x, const FastReal& y);
FastReal operator-(const FastReal& x);
FastReal abs(const FastReal& x);

// sqrt(n)/d; requires n >= 0 and d > 0. Certified irrational when n is not a square.
FastReal sqrtOver(const Int& n, const Int& d);

enum class Cmp { Less, Greater, UnknownAtBudget };
struct CmpVerdict {
  Cmp cmp;
  std::size_t budget;
};

CmpVerdict compareBudgeted(const FastReal& x, const FastReal& y, std::size_t budget);
CmpVerdict compareBudgeted(const FastReal& x, const Rat& y, std::size_t budget);

enum class EqVerdict { EqualSoFar, Apart };
EqVerdict eqBudgeted(const FastReal& x, const FastReal& y, std::size_t budget);

// x < y certified within budget; exact when both sides are rational.
bool certifiedLess(const FastReal& x, const FastReal& y, std::size_t budget);

}  // namespace gaugeint
