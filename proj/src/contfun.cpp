#include "gaugeint/contfun.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace gaugeint {

namespace {

Rat absR(const Rat& q) { return q < 0 ? Rat(-q) : q; }

std::optional<IntervalUI> intersectUI(const IntervalUI& a, const IntervalUI& b) {
  Rat p = std::max(a.p, b.p), q = std::min(a.q, b.q);
  if (!(std::max(p, Rat(0)) < std::min(q, Rat(1)))) return std::nullopt;
  return IntervalUI(p, q);
}

IntervalR hull(const IntervalR& a, const IntervalR& b) {
  return IntervalR(std::min(a.p, b.p), std::max(a.q, b.q));
}

// Attach the fair enumeration and index map for a decidable rule.
void attachRuleEnumeration(ContCode& f, const CodePair& fallback) {
  auto rule = f.rule;
  f.pairs = [rule, fallback](const Nat& i) {
    auto c = candidatePair(i);
    if (c && rule(c->U, c->V)) return *c;
    return fallback;
  };
  f.indexOf = [rule](const CodePair& pr) -> std::optional<Nat> {
    if (!rule(pr.U, pr.V)) return std::nullopt;
    return candidateIndex(pr);
  };
}

struct Segment {
  Rat start, slope, intercept;
};

// Pieces of `pl` covering [a, b], as segments starting at their left ends.
std::vector<Segment> restrictPL(const PLForm& pl, const Rat& a, const Rat& b) {
  std::vector<Segment> out;
  for (std::size_t j = 0; j + 1 < pl.breaks.size(); ++j) {
    Rat lo = std::max(pl.breaks[j], a), hi = std::min(pl.breaks[j + 1], b);
    if (lo < hi) out.push_back({lo, pl.slopes[j], pl.intercepts[j]});
  }
  return out;
}

PLForm fromSegments(const std::vector<Segment>& segs) {
  PLForm pl;
  for (const auto& s : segs) {
    // Merge collinear neighbours so equal functions get equal forms.
    if (!pl.slopes.empty() && pl.slopes.back() == s.slope && pl.intercepts.back() == s.intercept) continue;
    pl.breaks.push_back(s.start);
    pl.slopes.push_back(s.slope);
    pl.intercepts.push_back(s.intercept);
  }
  pl.breaks.push_back(Rat(1));
  return pl;
}

std::vector<Rat> strictlyIncreasing(std::vector<Rat> xs, std::vector<Rat>* ys) {
  std::vector<Rat> outX, outY;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!outX.empty() && outX.back() == xs[i]) continue;
    outX.push_back(xs[i]);
    if (ys) outY.push_back((*ys)[i]);
  }
  if (ys) *ys = outY;
  return outX;
}

}  // namespace

Rat PLForm::at(const Rat& x) const {
  std::size_t j = 0;
  while (j + 2 < breaks.size() && x > breaks[j + 1]) ++j;
  return slopes[j] * x + intercepts[j];
}

std::pair<Rat, Rat> PLForm::rangeOn(const Rat& lo, const Rat& hi) const {
  Rat a = at(lo), b = at(hi);
  Rat mn = std::min(a, b), mx = std::max(a, b);
  for (const auto& d : breaks) {
    if (lo < d && d < hi) {
      Rat v = at(d);
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
  }
  return {mn, mx};
}

Rat PLForm::maxAbsSlope() const {
  Rat m = 0;
  for (const auto& s : slopes) m = std::max(m, absR(s));
  return m;
}

std::optional<CodePair> candidatePair(const Nat& i) {
  auto [a, t1] = unpairCantor(i);
  auto [b, t2] = unpairCantor(t1);
  auto [c, d] = unpairCantor(t2);
  Rat p = ratAt(a), q = ratAt(b), r = ratAt(c), s = ratAt(d);
  if (!(std::max(p, Rat(0)) < std::min(q, Rat(1))) || !(r < s)) return std::nullopt;
  return CodePair{IntervalUI(p, q), IntervalR(r, s)};
}

Nat candidateIndex(const CodePair& pr) {
  return pairCantor(ratIndex(pr.U.p),
                    pairCantor(ratIndex(pr.U.q), pairCantor(ratIndex(pr.V.p), ratIndex(pr.V.q))));
}

ContCode mkLinear(const Rat& m, const Rat& c) {
  ContCode f;
  f.description = "(linear " + formatRat(m) + " " + formatRat(c) + ")";
  f.rule = [m, c](const IntervalUI& u, const IntervalR& v) {
    if (m > 0) return m * u.pbar() + c > v.p && m * u.qbar() + c < v.q;
    if (m < 0) return m * u.qbar() + c > v.p && m * u.pbar() + c < v.q;
    return v.p < c && c < v.q;
  };
  f.witness = [m, c](const FastReal& x, std::size_t n) -> std::optional<CodePair> {
    Rat half = pow2(-static_cast<long>(n) - 1);
    if (m == 0) return CodePair{IntervalUI(-1, 2), IntervalR(c - half, c + half)};
    // Radius 2^{-k+1} around x_k contains x strictly; |m| 2^{-k+1} < ε/2.
    long k = 0;
    while (pow2(-k) >= pow2(-static_cast<long>(n)) / (4 * absR(m))) ++k;
    Rat a = x.approx(static_cast<std::size_t>(k));
    Rat rad = pow2(1 - k);
    if (!(std::max(Rat(a - rad), Rat(0)) < std::min(Rat(a + rad), Rat(1)))) return std::nullopt;
    Rat y = m * a + c;
    return CodePair{IntervalUI(a - rad, a + rad), IntervalR(y - half, y + half)};
  };
  f.lipschitz = absR(m);
  f.closedForm = PLForm{{Rat(0), Rat(1)}, {m}, {c}};
  Rat y0 = c, y1 = m + c;
  attachRuleEnumeration(f, CodePair{IntervalUI(0, 1), IntervalR(std::min(y0, y1) - 1, std::max(y0, y1) + 1)});
  return f;
}

ContCode mkConst(const Rat& c) {
  ContCode f = mkLinear(0, c);
  f.description = "(const " + formatRat(c) + ")";
  return f;
}

ContCode mkPiecewise(const std::vector<Rat>& breaks, const std::vector<ContCode>& parts,
                     std::size_t checkBudget) {
  if (breaks.size() < 2 || breaks.front() != 0 || breaks.back() != 1) {
    throw std::invalid_argument("piecewise: breaks must run from 0 to 1");
  }
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1])) throw std::invalid_argument("piecewise: breaks must increase");
  }
  if (parts.size() + 1 != breaks.size()) throw std::invalid_argument("piecewise: need one part per gap");
  for (const auto& p : parts) {
    if (!p.rule) throw std::invalid_argument("piecewise: parts need a decidable rule");
  }
  for (std::size_t i = 1; i + 1 < breaks.size(); ++i) {
    FastReal d = FastReal::fromRational(breaks[i]);
    if (eqBudgeted(valueAt(parts[i - 1], d), valueAt(parts[i], d), checkBudget) == EqVerdict::Apart) {
      throw std::invalid_argument("piecewise: parts disagree at break " + formatRat(breaks[i]));
    }
  }

  ContCode f;
  f.description = "(piecewise";
  f.description += " (";
  for (std::size_t i = 0; i < breaks.size(); ++i) f.description += (i ? " " : "") + formatRat(breaks[i]);
  f.description += ")";
  for (const auto& p : parts) f.description += " " + p.description;
  f.description += ")";

  f.rule = [breaks, parts](const IntervalUI& u, const IntervalR& v) {
    for (std::size_t j = 0; j < parts.size(); ++j) {
      bool meets = breaks[j] < u.qbar() && u.pbar() < breaks[j + 1];
      if (meets && !parts[j].rule(u, v)) return false;
    }
    return true;
  };

  std::size_t k = parts.size();
  Rat gap = 1;
  for (std::size_t i = 0; i < k; ++i) gap = std::min(gap, Rat(breaks[i + 1] - breaks[i]));
  // Piece j restricted to its open gap, widened past 0 and 1 at the ends.
  auto window = [breaks, k](std::size_t lo, std::size_t hi) {
    Rat a = lo == 0 ? Rat(-1) : breaks[lo];
    Rat b = hi == k ? Rat(2) : breaks[hi];
    return IntervalUI(a, b);
  };
  f.witness = [breaks, parts, gap, k, window](const FastReal& x,
                                               std::size_t n) -> std::optional<CodePair> {
    std::size_t K = n + 2;
    while (pow2(-static_cast<long>(K)) * 8 > gap) ++K;
    for (int attempt = 0; attempt < 16; ++attempt, K += 4) {
      Rat a = x.approx(K);
      Rat rho = pow2(-static_cast<long>(K));
      std::optional<std::size_t> near;
      for (std::size_t i = 1; i < k; ++i) {
        if (absR(a - breaks[i]) <= 2 * rho) near = i;
      }
      if (!near) {
        std::size_t j = 0;
        while (j + 1 < k && a > breaks[j + 1]) ++j;
        if (!parts[j].witness) return std::nullopt;
        auto w = parts[j].witness(x, n);
        if (!w) return std::nullopt;
        auto u = intersectUI(w->U, window(j, j + 1));
        if (!u) return std::nullopt;
        return CodePair{*u, w->V};
      }
      // Near a break: witnesses taken at the break itself, halved precision each side.
      std::size_t i = *near;
      if (!parts[i - 1].witness || !parts[i].witness) return std::nullopt;
      FastReal d = FastReal::fromRational(breaks[i]);
      auto w1 = parts[i - 1].witness(d, n + 1);
      auto w2 = parts[i].witness(d, n + 1);
      if (!w1 || !w2) return std::nullopt;
      auto u = intersectUI(w1->U, w2->U);
      if (u) u = intersectUI(*u, window(i - 1, i + 1));
      if (!u) return std::nullopt;
      if (memberBudgeted(x, *u, K + 8) == Membership::In) return CodePair{*u, hull(w1->V, w2->V)};
    }
    return std::nullopt;
  };

  bool allLip = std::all_of(parts.begin(), parts.end(), [](const ContCode& p) { return p.lipschitz.has_value(); });
  if (allLip) {
    Rat L = 0;
    for (const auto& p : parts) L = std::max(L, *p.lipschitz);
    f.lipschitz = L;
  }
  bool allClosed = std::all_of(parts.begin(), parts.end(), [](const ContCode& p) { return p.closedForm.has_value(); });
  if (allClosed) {
    std::vector<Segment> segs;
    for (std::size_t j = 0; j < k; ++j) {
      auto s = restrictPL(*parts[j].closedForm, breaks[j], breaks[j + 1]);
      segs.insert(segs.end(), s.begin(), s.end());
    }
    f.closedForm = fromSegments(segs);
  }

  IntervalR fb = parts[0].pairs(0).V;
  for (const auto& p : parts) fb = hull(fb, p.pairs(0).V);
  attachRuleEnumeration(f, CodePair{IntervalUI(0, 1), fb});
  return f;
}

ContCode mkInterpolant(std::vector<Rat> xs, std::vector<Rat> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("interpolant: bad node lists");
  xs = strictlyIncreasing(xs, &ys);
  std::vector<ContCode> parts;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    Rat slope = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    parts.push_back(mkLinear(slope, ys[i] - slope * xs[i]));
  }
  return mkPiecewise(xs, parts);
}

ContCode mkSpike(const IntervalUI& u) {
  Rat p = u.pbar(), q = u.qbar(), m = (p + q) / 2;
  ContCode f = mkInterpolant({Rat(0), p, m, q, Rat(1)}, {Rat(0), Rat(0), Rat(m - p), Rat(0), Rat(0)});
  f.description = "(spike " + formatRat(u.p) + " " + formatRat(u.q) + ")";
  return f;
}

ContCode mkCoverSpike(const IntervalUI& u) {
  auto g = [&u](const Rat& z) {
    Rat v = std::min(Rat(z - u.p), Rat(u.q - z));
    return std::clamp(v, Rat(0), Rat(1, 2));
  };
  std::vector<Rat> xs{Rat(0), Rat(1)};
  for (const Rat& c : {u.p, Rat(u.p + Rat(1, 2)), Rat((u.p + u.q) / 2), Rat(u.q - Rat(1, 2)), u.q}) {
    if (0 < c && c < 1) xs.push_back(c);
  }
  std::sort(xs.begin(), xs.end());
  std::vector<Rat> ys;
  for (const auto& x : xs) ys.push_back(g(x));
  ContCode f = mkInterpolant(xs, ys);
  f.description = "(cover-spike " + formatRat(u.p) + " " + formatRat(u.q) + ")";
  return f;
}

ContCode mkScaledSum(ScaledSumSpec spec) {
  struct Cache {
    std::mutex mu;
    std::map<std::size_t, std::optional<ContCode>> terms;
  };
  auto cache = std::make_shared<Cache>();
  auto termsFn = spec.terms;
  auto term = [cache, termsFn](std::size_t k) {
    {
      std::lock_guard<std::mutex> lock(cache->mu);
      auto it = cache->terms.find(k);
      if (it != cache->terms.end()) return it->second;
    }
    auto t = termsFn(k);
    std::lock_guard<std::mutex> lock(cache->mu);
    cache->terms.emplace(k, t);
    return t;
  };
  auto weights = spec.weights;
  auto tail = spec.tailBound;

  ContCode f;
  f.description = spec.description;
  f.lipschitz = spec.lipschitz;

  f.witness = [term, weights, tail](const FastReal& x, std::size_t n) -> std::optional<CodePair> {
    std::size_t N = 0;
    while (tail(N) > pow2(-static_cast<long>(n) - 2)) {
      if (++N > 100000) return std::nullopt;
    }
    std::optional<IntervalUI> u = IntervalUI(-1, 2);
    Rat lo = 0, hi = 0;
    for (std::size_t k = 0; k < N; ++k) {
      auto t = term(k);
      if (!t) continue;
      Rat w = weights(k);
      if (w == 0) continue;
      long extra = w > 1 ? ceilLog2(w) : 0;
      if (!t->witness) return std::nullopt;
      auto wk = t->witness(x, n + 3 + k + static_cast<std::size_t>(extra));
      if (!wk) return std::nullopt;
      u = intersectUI(*u, wk->U);
      if (!u) return std::nullopt;
      lo += w * wk->V.p;
      hi += w * wk->V.q;
    }
    Rat T = tail(N);
    return CodePair{*u, IntervalR(lo - T, hi + T)};
  };

  // (U, V) is listed at stage N when the exact range of the N-term partial sum,
  // widened by the tail bound, sits inside V.
  auto accepts = [term, weights, tail](const CodePair& c, std::size_t N) {
    Rat lo = 0, hi = 0;
    for (std::size_t k = 0; k < N; ++k) {
      auto t = term(k);
      if (!t) continue;
      if (!t->closedForm) return false;
      auto [a, b] = t->closedForm->rangeOn(c.U.pbar(), c.U.qbar());
      lo += weights(k) * a;
      hi += weights(k) * b;
    }
    Rat T = tail(N);
    return lo - T > c.V.p && hi + T < c.V.q;
  };
  Rat B = tail(0);
  CodePair fallback{IntervalUI(0, 1), IntervalR(-B - 1, B + 1)};
  f.pairs = [accepts, fallback](const Nat& i) {
    auto [j, N] = unpairCantor(i);
    if (N > 4096) return fallback;
    auto c = candidatePair(j);
    if (c && accepts(*c, static_cast<std::size_t>(N))) return *c;
    return fallback;
  };
  f.indexOf = [term, weights, tail](const CodePair& pr) -> std::optional<Nat> {
    // accepts(pr, N) for N = 0, 1, ... with the partial range kept incrementally.
    Rat lo = 0, hi = 0;
    for (std::size_t N = 0; N <= 4096; ++N) {
      Rat T = tail(N);
      if (lo - T > pr.V.p && hi + T < pr.V.q) return pairCantor(candidateIndex(pr), Nat(N));
      auto t = term(N);
      if (!t) continue;
      if (!t->closedForm) return std::nullopt;
      auto [a, b] = t->closedForm->rangeOn(pr.U.pbar(), pr.U.qbar());
      lo += weights(N) * a;
      hi += weights(N) * b;
    }
    return std::nullopt;
  };
  return f;
}

ContCode mkSpikeSum(const std::vector<IntervalUI>& cover) {
  std::vector<ContCode> spikes;
  for (const auto& u : cover) spikes.push_back(mkCoverSpike(u));
  ScaledSumSpec spec;
  spec.terms = [spikes](std::size_t k) -> std::optional<ContCode> {
    if (k < spikes.size()) return spikes[k];
    return std::nullopt;
  };
  spec.weights = [](std::size_t k) { return pow2(-static_cast<long>(k) - 2); };
  spec.uniformBound = Rat(1, 2);
  spec.tailBound = [](std::size_t k) { return pow2(-static_cast<long>(k) - 2); };
  spec.lipschitz = Rat(1, 2);
  spec.description = "(spikesum";
  for (const auto& u : cover) spec.description += " " + formatInterval(u);
  spec.description += ")";
  ContCode f = mkScaledSum(spec);

  // A finite sum of piecewise-linear terms has an exact closed form.
  std::vector<Rat> cuts{Rat(0), Rat(1)};
  for (const auto& s : spikes) cuts.insert(cuts.end(), s.closedForm->breaks.begin(), s.closedForm->breaks.end());
  std::sort(cuts.begin(), cuts.end());
  cuts = strictlyIncreasing(cuts, nullptr);
  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rat mid = (cuts[i] + cuts[i + 1]) / 2;
    Rat slope = 0, icpt = 0;
    for (std::size_t k = 0; k < spikes.size(); ++k) {
      const PLForm& pl = *spikes[k].closedForm;
      std::size_t j = 0;
      while (j + 2 < pl.breaks.size() && mid > pl.breaks[j + 1]) ++j;
      Rat w = pow2(-static_cast<long>(k) - 2);
      slope += w * pl.slopes[j];
      icpt += w * pl.intercepts[j];
    }
    segs.push_back({cuts[i], slope, icpt});
  }
  f.closedForm = fromSegments(segs);
  return f;
}

std::optional<Rat> evalAt(const ContCode& f, const FastReal& x, std::size_t n, std::size_t budget) {
  Rat eps = pow2(-static_cast<long>(n));
  try {
    if (f.witness) {
      auto w = f.witness(x, n);
      if (w && lengthR(w->V) <= eps && memberBudgeted(x, w->U, budget + n) == Membership::In) {
        return w->V.midpoint();
      }
    }
    for (std::size_t i = 0; i < budget; ++i) {
      CodePair pr = f.pairs(Nat(i));
      if (lengthR(pr.V) <= eps && memberBudgeted(x, pr.U, budget) == Membership::In) return pr.V.midpoint();
    }
  } catch (const ApproxUnavailable&) {
  }
  return std::nullopt;
}

FastReal valueAt(const ContCode& f, const FastReal& x, std::size_t budget) {
  if (x.exact() && f.closedForm) return FastReal::fromRational(f.closedForm->at(*x.exact()));
  return FastReal([f, x, budget](std::size_t n) {
    auto v = evalAt(f, x, n + 1, budget);
    if (!v) throw ApproxUnavailable("evaluation exhausted for " + f.description);
    return *v;
  });
}

std::optional<std::size_t> modulusOf(const ContCode& f, std::size_t n) {
  if (!f.lipschitz) return std::nullopt;
  if (*f.lipschitz <= 0) return 0;
  long h = static_cast<long>(n) + ceilLog2(*f.lipschitz) + 1;
  return static_cast<std::size_t>(std::max(h, 0L));
}

std::optional<Rat> exactValue(const ContCode& f, const Rat& x) {
  if (!f.closedForm) return std::nullopt;
  return f.closedForm->at(x);
}

}  // namespace gaugeint
