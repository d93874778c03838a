#include "gaugeint/bairefun.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace gaugeint {

namespace {

Rat absR(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// Least k <= 64 with |x_k - c| > 2^{-k+1}, certifying |x - c| > 2^{-k}.
std::optional<long> separationExponent(const FastReal& x, const Rat& c) {
  try {
    for (long k = 0; k <= 64; ++k) {
      if (absR(x.approx(static_cast<std::size_t>(k)) - c) > pow2(1 - k)) return k;
    }
  } catch (const ApproxUnavailable&) {
  }
  return std::nullopt;
}

}  // namespace

BaireCode baireFromCont(const ContCode& f) {
  BaireCode b;
  b.rank = 0;
  b.base = std::make_shared<const ContCode>(f);
  b.description = f.description;
  return b;
}

BaireCode liftBaire(const BaireCode& f) {
  BaireCode b;
  b.rank = f.rank + 1;
  b.seq = [f](std::size_t) { return f; };
  b.cauchyModulus = [](const FastReal&, const Rat&) -> std::optional<std::size_t> { return 0; };
  b.description = "(lift " + f.description + ")";
  b.liftedFrom = std::make_shared<const BaireCode>(f);
  return b;
}

std::optional<FastReal> baireValue(const BaireCode& f, const FastReal& x, std::size_t budget) {
  if (f.rank == 0) return valueAt(*f.base, x, budget);
  if (f.liftedFrom) return baireValue(*f.liftedFrom, x, budget);
  if (!f.cauchyModulus) return std::nullopt;
  // Terms are reused across precisions; moduli are often constant at a point.
  struct Inner {
    std::mutex mu;
    std::map<std::size_t, std::optional<FastReal>> byIndex;
  };
  auto cache = std::make_shared<Inner>();
  return FastReal([f, x, budget, cache](std::size_t n) {
    Rat eps = pow2(-static_cast<long>(n) - 2);
    auto m = f.cauchyModulus(x, eps);
    if (!m) throw ApproxUnavailable("no Cauchy modulus at this point for " + f.description);
    std::optional<FastReal> inner;
    {
      std::lock_guard<std::mutex> lock(cache->mu);
      auto it = cache->byIndex.find(*m);
      if (it != cache->byIndex.end()) inner = it->second;
    }
    if (!inner) {
      inner = baireValue(f.seq(*m), x, budget);
      if (!inner) throw ApproxUnavailable("inner code lacks a modulus in " + f.description);
      std::lock_guard<std::mutex> lock(cache->mu);
      cache->byIndex.emplace(*m, inner);
    }
    return inner->approx(n + 2);
  });
}

std::optional<Rat> baireSample(const BaireCode& f, const FastReal& x, std::size_t m, std::size_t n,
                               std::size_t budget) {
  if (f.rank == 0) return evalAt(*f.base, x, n, budget);
  return baireSample(f.seq(m), x, m, n, budget);
}

GeqVerdict cmpGeqBudgeted(const BaireCode& f, const FastReal& x, const FastReal& y, std::size_t budget) {
  auto v = baireValue(f, x, budget);
  if (!v) return GeqVerdict::GeqSoFar;
  return compareBudgeted(*v, y, budget).cmp == Cmp::Less ? GeqVerdict::RefutedBelow : GeqVerdict::GeqSoFar;
}

bool strictGreaterCertified(const BaireCode& f, const FastReal& x, const FastReal& y, std::size_t budget) {
  auto v = baireValue(f, x, budget);
  return v && compareBudgeted(*v, y, budget).cmp == Cmp::Greater;
}

ContCode heavisideApprox(std::size_t n) {
  if (n == 0) throw std::invalid_argument("heavisideApprox: n must be positive");
  ContCode f = n == 1 ? mkInterpolant({Rat(0), Rat(1)}, {Rat(0), Rat(1)})
                      : mkInterpolant({Rat(0), Rat(1, n), Rat(1)}, {Rat(0), Rat(1), Rat(1)});
  f.description = "(heaviside-term " + std::to_string(n) + ")";
  return f;
}

BaireCode mkHeaviside() {
  BaireCode b;
  b.rank = 1;
  b.seq = [](std::size_t i) { return baireFromCont(heavisideApprox(i + 1)); };
  b.cauchyModulus = [](const FastReal& x, const Rat&) -> std::optional<std::size_t> {
    if (x.exact()) {
      const Rat& v = *x.exact();
      if (v == 0) return 0;
      if (v < 0) return std::nullopt;
      Int need = ceilRat(Rat(1) / v);
      return static_cast<std::size_t>(need > 1 ? need - 1 : Int(0));
    }
    auto k = separationExponent(x, 0);
    if (!k || x.approx(static_cast<std::size_t>(*k)) < 0) return std::nullopt;
    return (std::size_t(1) << *k) - 1;
  };
  b.description = "(heaviside)";
  return b;
}

ContCode halfDistance(const Rat& z) {
  ContCode f = (0 < z && z < 1) ? mkInterpolant({Rat(0), z, Rat(1)}, {Rat(z / 2), Rat(0), Rat((1 - z) / 2)})
                                : mkInterpolant({Rat(0), Rat(1)}, {Rat(absR(z) / 2), Rat(absR(1 - z) / 2)});
  f.description = "(half-distance " + formatRat(z) + ")";
  return f;
}

BaireCode mkClb1Gauge(std::function<Rat(std::size_t)> z, std::function<std::size_t(const Rat&)> cauchyRate,
                      std::string name) {
  BaireCode b;
  b.rank = 1;
  b.seq = [z](std::size_t i) { return baireFromCont(halfDistance(z(i))); };
  // |δ_m(x) - δ_n(x)| <= |z_m - z_n| / 2.
  b.cauchyModulus = [cauchyRate](const FastReal&, const Rat& eps) -> std::optional<std::size_t> {
    return cauchyRate(2 * eps);
  };
  b.description = "(" + name + ")";
  return b;
}

BaireCode mkClb1Sqrt2Over2() {
  auto z = [](std::size_t n) {
    Int scaled = isqrt((Int(1) << (2 * n)) / 2);
    return Rat(scaled, Int(1) << n);
  };
  auto rate = [](const Rat& eps) -> std::size_t {
    if (eps >= 1) return 0;
    return static_cast<std::size_t>(ceilLog2(Rat(1) / eps));
  };
  return mkClb1Gauge(z, rate, "clb1-gauge sqrt2-over-2");
}

ContCode dyadicCexTerm(std::size_t n) {
  if (n < 3) throw std::invalid_argument("dyadicCexTerm: n must be at least 3");
  Rat third(1, 3), w(1, n);
  ContCode f = mkInterpolant({Rat(0), Rat(third - w), third, Rat(third + w), Rat(1)},
                             {Rat(1, 6), Rat(w / 2), Rat(1), Rat(w / 2), Rat(1, 3)});
  f.description = "(dyadic-cex-term " + std::to_string(n) + ")";
  return f;
}

BaireCode mkDyadicCex() {
  BaireCode b;
  b.rank = 1;
  b.seq = [](std::size_t i) { return baireFromCont(dyadicCexTerm(i + 3)); };
  // Eventually constant at every point: δ_n(x) is the limit once 1/n <= |x - 1/3|.
  b.cauchyModulus = [](const FastReal& x, const Rat&) -> std::optional<std::size_t> {
    Rat third(1, 3);
    if (x.exact()) {
      Rat d = absR(*x.exact() - third);
      if (d == 0) return 0;
      Int need = ceilRat(Rat(1) / d);
      return static_cast<std::size_t>(need > 3 ? need - 3 : Int(0));
    }
    auto k = separationExponent(x, third);
    if (!k) return std::nullopt;
    std::size_t n = std::size_t(1) << *k;
    return n > 3 ? n - 3 : 0;
  };
  b.description = "(dyadic-cex)";
  return b;
}

Rat dyadicCexLimit(const Rat& x) {
  Rat third(1, 3);
  return x == third ? Rat(1) : Rat(absR(x - third) / 2);
}

}  // namespace gaugeint
