#pragma once

#include "gaugeint/intervals.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gaugeint {

struct CodePair {
  IntervalUI U;
  IntervalR V;
  bool operator==(const CodePair&) const = default;
};

// Continuous piecewise-linear closed form on [0,1].
struct PLForm {
  std::vector<Rat> breaks;  // 0 = b_0 < ... < b_k = 1
  std::vector<Rat> slopes;
  std::vector<Rat> intercepts;

  Rat at(const Rat& x) const;
  // Exact min and max over [lo, hi] ⊆ [0,1].
  std::pair<Rat, Rat> rangeOn(const Rat& lo, const Rat& hi) const;
  Rat maxAbsSlope() const;
};

// A coded continuous function on [0,1]: the range of `pairs` is the set of
// (U, V) meaning f maps U into V.
struct ContCode {
  std::function<CodePair(const Nat&)> pairs;
  // Decidable membership when the code comes from an explicit rule.
  std::function<bool(const IntervalUI&, const IntervalR&)> rule;
  std::function<std::optional<Nat>(const CodePair&)> indexOf;
  // A pair with x ∈ U and ℓ(V) <= 2^-n, when one can be built directly.
  std::function<std::optional<CodePair>(const FastReal&, std::size_t)> witness;
  std::optional<Rat> lipschitz;
  std::optional<PLForm> closedForm;
  std::string description;
};

// The i-th candidate (p, q, r, s) of the fair enumeration, if it forms valid intervals.
std::optional<CodePair> candidatePair(const Nat& i);
Nat candidateIndex(const CodePair& pr);

ContCode mkLinear(const Rat& m, const Rat& c);
ContCode mkConst(const Rat& c);

// Throws std::invalid_argument on malformed breaks or a detected mismatch at a breakpoint.
ContCode mkPiecewise(const std::vector<Rat>& breaks, const std::vector<ContCode>& parts,
                     std::size_t checkBudget = 64);

// Piecewise-linear interpolation through (xs[i], ys[i]); xs starts at 0, ends at 1.
ContCode mkInterpolant(std::vector<Rat> xs, std::vector<Rat> ys);

// The clamped spike over U: 0 outside [p̄, q̄], slopes ±1, peak (q̄ - p̄)/2.
ContCode mkSpike(const IntervalUI& u);

// Spike measured against the unclamped code: min(z - p, q - z) clamped to [0, 1/2].
// Agrees with mkSpike when 0 <= p < q <= 1, and stays positive at 0 and 1 when
// U reaches past them.
ContCode mkCoverSpike(const IntervalUI& u);

// Term n may be absent (the zero function). Weights must be nonnegative.
struct ScaledSumSpec {
  std::function<std::optional<ContCode>(std::size_t)> terms;
  std::function<Rat(std::size_t)> weights;
  Rat uniformBound;
  std::function<Rat(std::size_t)> tailBound;
  std::optional<Rat> lipschitz;
  std::string description;
};
ContCode mkScaledSum(ScaledSumSpec spec);

// δ(x) = Σ 2^{-n-2} sp_n(x) over cover spikes of the given intervals.
ContCode mkSpikeSum(const std::vector<IntervalUI>& cover);

std::optional<Rat> evalAt(const ContCode& f, const FastReal& x, std::size_t n,
                          std::size_t budget = 4096);

// The value f(x) as a real; its approximants throw ApproxUnavailable on exhaustion.
FastReal valueAt(const ContCode& f, const FastReal& x, std::size_t budget = 4096);

// h(n) = n + ceil(log2 L) + 1 (at least 0); nullopt without a Lipschitz bound.
std::optional<std::size_t> modulusOf(const ContCode& f, std::size_t n);

// Exact value at a rational; needs a closed form.
std::optional<Rat> exactValue(const ContCode& f, const Rat& x);

}  // namespace gaugeint
