#pragma once

#include "gaugeint/contfun.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace gaugeint {

// Rank 0 wraps a continuous code; rank r >= 1 is a pointwise Cauchy sequence
// of rank r-1 codes.
struct BaireCode {
  std::size_t rank = 0;
  std::shared_ptr<const ContCode> base;
  std::function<BaireCode(std::size_t)> seq;
  // Index from which all terms at x lie within ε of each other; nullopt when undetermined.
  std::function<std::optional<std::size_t>(const FastReal&, const Rat&)> cauchyModulus;
  std::string description;
  // Set by liftBaire: the constant sequence's term, so values coincide exactly.
  std::shared_ptr<const BaireCode> liftedFrom;
};

BaireCode baireFromCont(const ContCode& f);
BaireCode liftBaire(const BaireCode& f);

// Value f(x) as a real, when every level carries a modulus. Approximants throw
// ApproxUnavailable where a modulus or an evaluation fails.
std::optional<FastReal> baireValue(const BaireCode& f, const FastReal& x, std::size_t budget = 4096);

// Term m evaluated at x, descending through nested sequences at the same index.
std::optional<Rat> baireSample(const BaireCode& f, const FastReal& x, std::size_t m, std::size_t n,
                               std::size_t budget = 4096);

enum class GeqVerdict { GeqSoFar, RefutedBelow };
// f(x) >= y in the limit sense; refutation scans q = y_k - 2^{-k+1} and needs a modulus.
GeqVerdict cmpGeqBudgeted(const BaireCode& f, const FastReal& x, const FastReal& y, std::size_t budget);
// f(x) > y fails exactly when f(x) <= y is certified.
bool strictGreaterCertified(const BaireCode& f, const FastReal& x, const FastReal& y, std::size_t budget);

// f_n on [0,1]: n x below 1/n, 1 above. Requires n >= 1.
ContCode heavisideApprox(std::size_t n);
// Sequence term i is f_{i+1}.
BaireCode mkHeaviside();

// δ_n(x) = |x - z_n| / 2 for rational z_n.
ContCode halfDistance(const Rat& z);
BaireCode mkClb1Gauge(std::function<Rat(std::size_t)> z, std::function<std::size_t(const Rat&)> cauchyRate,
                      std::string name = "clb1-gauge");
// z_n = floor(2^n sqrt(2)/2) / 2^n with rate ε -> ceil(log2(1/ε)).
BaireCode mkClb1Sqrt2Over2();

// δ_n for n >= 3 per the dyadic counterexample; sequence term i is δ_{i+3}.
ContCode dyadicCexTerm(std::size_t n);
BaireCode mkDyadicCex();
// Closed form of the limit at a rational.
Rat dyadicCexLimit(const Rat& x);

}  // namespace gaugeint
