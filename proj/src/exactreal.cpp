#include "gaugeint/exactreal.hpp"

#include <mutex>
#include <unordered_map>

namespace gaugeint {

struct FastReal::State {
  Oracle oracle;
  Kind kind = Kind::Composite;
  std::string label;
  std::optional<Rat> exact;
  std::mutex mu;
  std::unordered_map<std::size_t, Rat> memo;
};

FastReal::FastReal() : FastReal(Oracle([](std::size_t) { return Rat(0); }), Kind::Rational, "0/1") {
  state_->exact = Rat(0);
}

FastReal::FastReal(Oracle oracle, Kind kind, std::string label) : state_(std::make_shared<State>()) {
  state_->oracle = std::move(oracle);
  state_->kind = kind;
  state_->label = std::move(label);
}

FastReal FastReal::fromRational(const Rat& q) {
  FastReal r([q](std::size_t) { return q; }, Kind::Rational, formatRat(q));
  r.state_->exact = q;
  return r;
}

FastReal FastReal::certIrrational(Oracle oracle, std::string name) {
  return FastReal(std::move(oracle), Kind::CertIrrational, std::move(name));
}

Rat FastReal::approx(std::size_t n) const {
  if (state_->exact) return *state_->exact;
  {
    std::lock_guard<std::mutex> lock(state_->mu);
    auto it = state_->memo.find(n);
    if (it != state_->memo.end()) return it->second;
  }
  // Computed unlocked: oracles may query other reals.
  Rat v = state_->oracle(n);
  std::lock_guard<std::mutex> lock(state_->mu);
  state_->memo.emplace(n, v);
  return v;
}

FastReal::Kind FastReal::kind() const { return state_->kind; }
const std::optional<Rat>& FastReal::exact() const { return state_->exact; }
const std::string& FastReal::label() const { return state_->label; }

FastReal operator+(const FastReal& x, const FastReal& y) {
  if (x.exact() && y.exact()) return FastReal::fromRational(*x.exact() + *y.exact());
  return FastReal([x, y](std::size_t n) { return x.approx(n + 1) + y.approx(n + 1); });
}

FastReal operator-(const FastReal& x, const FastReal& y) {
  if (x.exact() && y.exact()) return FastReal::fromRational(*x.exact() - *y.exact());
  return FastReal([x, y](std::size_t n) { return x.approx(n + 1) - y.approx(n + 1); });
}

FastReal operator*(const FastReal& x, const FastReal& y) {
  if (x.exact() && y.exact()) return FastReal::fromRational(*x.exact() * *y.exact());
  Rat a0 = x.approx(0), b0 = y.approx(0);
  Int bound = ceilRat(a0 < 0 ? Rat(-a0) : a0) + ceilRat(b0 < 0 ? Rat(-b0) : b0) + 2;
  std::size_t k = static_cast<std::size_t>(ceilLog2(Rat(bound)));
  return FastReal([x, y, k](std::size_t n) { return x.approx(n + k) * y.approx(n + k); });
}

FastReal operator-(const FastReal& x) {
  if (x.exact()) return FastReal::fromRational(-*x.exact());
  return FastReal([x](std::size_t n) { return Rat(-x.approx(n)); });
}

FastReal abs(const FastReal& x) {
  if (x.exact()) return FastReal::fromRational(*x.exact() < 0 ? Rat(-*x.exact()) : *x.exact());
  return FastReal([x](std::size_t n) {
    Rat v = x.approx(n);
    return v < 0 ? Rat(-v) : v;
  });
}

FastReal sqrtOver(const Int& n, const Int& d) {
  if (n < 0 || d <= 0) throw std::domain_error("sqrtOver: bad arguments");
  Int r = isqrt(n);
  if (r * r == n) return FastReal::fromRational(Rat(r, d));
  // floor(sqrt(n) 2^(n+1)) / 2^(n+1) is within 2^-(n+1); dividing by d >= 1 keeps it.
  auto oracle = [n, d](std::size_t k) {
    unsigned shift = static_cast<unsigned>(k + 1);
    Int s = isqrt(n << (2 * shift));
    return Rat(s, d << shift);
  };
  std::string name = "sqrt" + n.str() + "/" + d.str();
  return FastReal::certIrrational(oracle, name);
}

CmpVerdict compareBudgeted(const FastReal& x, const FastReal& y, std::size_t budget) {
  if (x.exact() && y.exact()) {
    if (*x.exact() < *y.exact()) return {Cmp::Less, 0};
    if (*x.exact() > *y.exact()) return {Cmp::Greater, 0};
    return {Cmp::UnknownAtBudget, budget};
  }
  try {
    for (std::size_t k = 0; k <= budget; ++k) {
      Rat xk = x.approx(k), yk = y.approx(k);
      Rat slack = pow2(1 - static_cast<long>(k));
      if (xk + slack < yk) return {Cmp::Less, k};
      if (yk + slack < xk) return {Cmp::Greater, k};
    }
  } catch (const ApproxUnavailable&) {
  }
  return {Cmp::UnknownAtBudget, budget};
}

CmpVerdict compareBudgeted(const FastReal& x, const Rat& y, std::size_t budget) {
  return compareBudgeted(x, FastReal::fromRational(y), budget);
}

EqVerdict eqBudgeted(const FastReal& x, const FastReal& y, std::size_t budget) {
  if (x.exact() && y.exact()) return *x.exact() == *y.exact() ? EqVerdict::EqualSoFar : EqVerdict::Apart;
  try {
    for (std::size_t k = 0; k <= budget; ++k) {
      Rat d = x.approx(k) - y.approx(k);
      if (d < 0) d = -d;
      if (d > pow2(1 - static_cast<long>(k))) return EqVerdict::Apart;
    }
  } catch (const ApproxUnavailable&) {
  }
  return EqVerdict::EqualSoFar;
}

bool certifiedLess(const FastReal& x, const FastReal& y, std::size_t budget) {
  return compareBudgeted(x, y, budget).cmp == Cmp::Less;
}

}  // namespace gaugeint
