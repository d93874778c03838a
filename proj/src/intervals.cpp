#include "gaugeint/intervals.hpp"

#include <algorithm>
#include <stdexcept>

namespace gaugeint {

IntervalR::IntervalR(Rat p_, Rat q_) : p(std::move(p_)), q(std::move(q_)) {
  if (!(p < q)) throw std::invalid_argument("IntervalR: requires p < q");
}

IntervalUI::IntervalUI(Rat p_, Rat q_) : p(std::move(p_)), q(std::move(q_)) {
  if (!(pbar() < qbar())) throw std::invalid_argument("IntervalUI: empty after clamping to [0,1]");
}

Rat IntervalUI::pbar() const { return std::max(p, Rat(0)); }
Rat IntervalUI::qbar() const { return std::min(q, Rat(1)); }

Rat lengthUI(const IntervalUI& u) { return std::max(Rat(u.qbar() - u.pbar()), Rat(0)); }
Rat lengthR(const IntervalR& v) { return v.q - v.p; }

bool intersects(const IntervalUI& a, const IntervalUI& b) {
  return a.pbar() < b.qbar() && b.pbar() < a.qbar();
}

bool intersects(const IntervalR& a, const IntervalR& b) { return a.p < b.q && b.p < a.q; }

bool containsInterval(const IntervalUI& inner, const IntervalUI& outer) {
  return (outer.p < 0 || outer.p <= inner.p) && (outer.q > 1 || outer.q >= inner.q);
}

bool containsInterval(const IntervalR& inner, const IntervalR& outer) {
  return inner.p >= outer.p && inner.q <= outer.q;
}

bool memberExact(const Rat& x, const IntervalUI& u) {
  return x >= 0 && x <= 1 && u.p < x && x < u.q;
}

bool memberExact(const Rat& x, const IntervalR& v) { return v.p < x && x < v.q; }

namespace {

// Sign of r - a: -1 or +1 when certified, 0 when undecided.
int certifiedSign(const FastReal& r, const Rat& a, std::size_t budget) {
  switch (compareBudgeted(r, a, budget).cmp) {
    case Cmp::Less: return -1;
    case Cmp::Greater: return 1;
    default: return 0;
  }
}

}  // namespace

Membership memberBudgeted(const FastReal& r, const IntervalUI& u, std::size_t budget) {
  if (r.exact()) return memberExact(*r.exact(), u) ? Membership::In : Membership::Out;
  // r is taken to lie in [0,1], so an end reaching past 0 or 1 needs no test.
  int vsLo = u.p < 0 ? 1 : certifiedSign(r, u.p, budget);
  int vsHi = u.q > 1 ? -1 : certifiedSign(r, u.q, budget);
  if (vsLo < 0 || vsHi > 0) return Membership::Out;
  if (vsLo > 0 && vsHi < 0) return Membership::In;
  return Membership::UnknownAtBudget;
}

Membership memberBudgeted(const FastReal& r, const IntervalR& v, std::size_t budget) {
  if (r.exact()) return memberExact(*r.exact(), v) ? Membership::In : Membership::Out;
  int vsLo = certifiedSign(r, v.p, budget);
  int vsHi = certifiedSign(r, v.q, budget);
  if (vsLo < 0 || vsHi > 0) return Membership::Out;
  if (vsLo > 0 && vsHi < 0) return Membership::In;
  return Membership::UnknownAtBudget;
}

std::string formatInterval(const IntervalUI& u) {
  return "(iv " + formatRat(u.p) + " " + formatRat(u.q) + ")";
}

}  // namespace gaugeint
