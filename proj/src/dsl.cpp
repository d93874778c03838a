#include "gaugeint/dsl.hpp"

#include "gaugeint/cantor.hpp"

#include <cctype>

namespace gaugeint {

namespace {

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}

  SExpr read() {
    skip();
    if (i_ >= s_.size()) throw DslError("unexpected end of expression");
    SExpr e;
    e.pos = i_;
    if (s_[i_] == '(') {
      ++i_;
      e.isAtom = false;
      for (;;) {
        skip();
        if (i_ >= s_.size()) throw DslError("missing ')' for '(' at position " + std::to_string(e.pos));
        if (s_[i_] == ')') {
          ++i_;
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (s_[i_] == ')') throw DslError("unexpected ')' at position " + std::to_string(i_));
    std::size_t j = i_;
    while (j < s_.size() && !std::isspace(static_cast<unsigned char>(s_[j])) && s_[j] != '(' && s_[j] != ')') ++j;
    e.atom = s_.substr(i_, j - i_);
    i_ = j;
    return e;
  }

  void finish() {
    skip();
    if (i_ != s_.size()) throw DslError("trailing input at position " + std::to_string(i_));
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
};

const std::string& head(const SExpr& e) {
  if (e.isAtom || e.items.empty() || !e.items[0].isAtom) {
    throw DslError("expected a constructor form at position " + std::to_string(e.pos));
  }
  return e.items[0].atom;
}

void arity(const SExpr& e, std::size_t n) {
  if (e.items.size() != n + 1) {
    throw DslError("'" + head(e) + "' takes " + std::to_string(n) + " argument(s)");
  }
}

Rat ratArg(const SExpr& e) {
  if (!e.isAtom) throw DslError("expected a rational at position " + std::to_string(e.pos));
  try {
    return parseRat(e.atom);
  } catch (const std::invalid_argument&) {
    throw DslError("bad rational '" + e.atom + "' at position " + std::to_string(e.pos));
  }
}

std::size_t natArg(const SExpr& e) {
  if (!e.isAtom || e.atom.empty() || e.atom.size() > 9 || e.atom.find_first_not_of("0123456789") != std::string::npos) {
    throw DslError("expected a natural number at position " + std::to_string(e.pos));
  }
  return std::stoul(e.atom);
}

Gauge build(const SExpr& e);

ContCode contArg(const SExpr& e) {
  Gauge g = build(e);
  if (auto* c = std::get_if<ContCode>(&g)) return *c;
  throw DslError("expected a continuous function at position " + std::to_string(e.pos));
}

BaireCode baireArg(const SExpr& e) {
  Gauge g = build(e);
  if (auto* c = std::get_if<ContCode>(&g)) return baireFromCont(*c);
  if (auto* b = std::get_if<BaireCode>(&g)) return *b;
  throw DslError("expected a Baire code at position " + std::to_string(e.pos));
}

BaireCode namedGenerator(const SExpr& e) {
  if (!e.isAtom) throw DslError("expected a generator name at position " + std::to_string(e.pos));
  if (e.atom == "heaviside") return mkHeaviside();
  if (e.atom == "dyadic-cex") return mkDyadicCex();
  if (e.atom == "clb1-gauge") return mkClb1Sqrt2Over2();
  throw DslError("unknown generator '" + e.atom + "'");
}

BaireCode baireSeq(const SExpr& e) {
  if (e.items.size() < 3) throw DslError("'baire-seq' needs at least one term and a generator");
  std::vector<BaireCode> terms;
  for (std::size_t i = 1; i + 1 < e.items.size(); ++i) terms.push_back(baireArg(e.items[i]));
  std::size_t rank = terms[0].rank;
  for (const auto& t : terms) {
    if (t.rank != rank) throw DslError("'baire-seq' terms must share a rank");
  }
  const SExpr& genExpr = e.items.back();
  std::size_t k = terms.size();
  BaireCode b;
  b.rank = rank + 1;
  std::string desc = "(baire-seq";
  for (const auto& t : terms) desc += " " + t.description;
  desc += " " + (genExpr.isAtom ? genExpr.atom : std::string("?")) + ")";
  b.description = desc;
  if (genExpr.isAtom && genExpr.atom == "repeat") {
    b.seq = [terms, k](std::size_t i) { return terms[std::min(i, k - 1)]; };
    b.cauchyModulus = [k](const FastReal&, const Rat&) -> std::optional<std::size_t> { return k - 1; };
    return b;
  }
  BaireCode gen = namedGenerator(genExpr);
  if (gen.rank != b.rank) throw DslError("generator rank does not match the terms");
  b.seq = [terms, k, gen](std::size_t i) { return i < k ? terms[i] : gen.seq(i); };
  b.cauchyModulus = [k, gen](const FastReal& x, const Rat& eps) -> std::optional<std::size_t> {
    auto m = gen.cauchyModulus(x, eps);
    if (!m) return std::nullopt;
    return std::max(*m, k);
  };
  return b;
}

Gauge build(const SExpr& e) {
  const std::string& h = head(e);
  const auto& it = e.items;
  if (h == "const") {
    arity(e, 1);
    return mkConst(ratArg(it[1]));
  }
  if (h == "linear") {
    arity(e, 2);
    return mkLinear(ratArg(it[1]), ratArg(it[2]));
  }
  if (h == "piecewise") {
    if (it.size() < 3 || it[1].isAtom) throw DslError("'piecewise' needs a break list and parts");
    std::vector<Rat> breaks;
    for (const auto& d : it[1].items) breaks.push_back(ratArg(d));
    std::vector<ContCode> parts;
    for (std::size_t i = 2; i < it.size(); ++i) parts.push_back(contArg(it[i]));
    try {
      return mkPiecewise(breaks, parts);
    } catch (const std::invalid_argument& ex) {
      throw DslError(std::string("piecewise: ") + ex.what());
    }
  }
  if (h == "spike") {
    arity(e, 2);
    return mkSpike(IntervalUI(ratArg(it[1]), ratArg(it[2])));
  }
  if (h == "spikesum") {
    std::vector<IntervalUI> cover;
    for (std::size_t i = 1; i < it.size(); ++i) cover.push_back(parseInterval(it[i]));
    return mkSpikeSum(cover);
  }
  if (h == "spikesum-pi01") {
    arity(e, 1);
    Pi01Result balls = pi01Balls(natArg(it[1]), std::uint64_t(1) << 16);
    ContCode c = mkSpikeSum(balls.balls);
    c.description = "(spikesum-pi01 " + it[1].atom + ")";
    return c;
  }
  if (h == "lift") {
    arity(e, 1);
    return liftBaire(baireArg(it[1]));
  }
  if (h == "heaviside") {
    arity(e, 0);
    return mkHeaviside();
  }
  if (h == "clb1-gauge") {
    arity(e, 1);
    if (!it[1].isAtom || it[1].atom != "sqrt2-over-2") throw DslError("clb1-gauge supports sqrt2-over-2 only");
    return mkClb1Sqrt2Over2();
  }
  if (h == "dyadic-cex") {
    arity(e, 0);
    return mkDyadicCex();
  }
  if (h == "baire-seq") return baireSeq(e);
  if (h == "dirichlet") {
    arity(e, 1);
    Rat eps = ratArg(it[1]);
    if (eps <= 0) throw DslError("dirichlet: ε must be positive");
    return dirichletGauge(eps);
  }
  throw DslError("unknown constructor '" + h + "'");
}

}  // namespace

SExpr parseSExpr(const std::string& text) {
  Reader r(text);
  SExpr e = r.read();
  r.finish();
  return e;
}

IntervalUI parseInterval(const SExpr& e) {
  if (e.isAtom || e.items.size() != 3 || !e.items[0].isAtom || e.items[0].atom != "iv") {
    throw DslError("expected (iv p q) at position " + std::to_string(e.pos));
  }
  try {
    return IntervalUI(ratArg(e.items[1]), ratArg(e.items[2]));
  } catch (const DslError&) {
    throw;
  } catch (const std::invalid_argument& ex) {
    throw DslError(std::string("interval: ") + ex.what());
  }
}

Gauge parseGauge(const std::string& text) { return build(parseSExpr(text)); }

ContCode parseContinuous(const std::string& text) {
  Gauge g = parseGauge(text);
  if (auto* c = std::get_if<ContCode>(&g)) return *c;
  throw DslError("expected a continuous function, got " + describe(g));
}

}  // namespace gaugeint
