#include "gaugeint/l2logic.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace gaugeint {

TermP mkZero() { return std::make_shared<Term>(Term{Term::Kind::Zero, {}, nullptr, nullptr}); }
TermP mkOne() { return std::make_shared<Term>(Term{Term::Kind::One, {}, nullptr, nullptr}); }
TermP mkVar(std::string name) { return std::make_shared<Term>(Term{Term::Kind::Var, std::move(name), nullptr, nullptr}); }
TermP mkPlus(TermP a, TermP b) { return std::make_shared<Term>(Term{Term::Kind::Plus, {}, std::move(a), std::move(b)}); }
TermP mkTimes(TermP a, TermP b) { return std::make_shared<Term>(Term{Term::Kind::Times, {}, std::move(a), std::move(b)}); }

TermP mkNumeral(std::size_t k) {
  if (k == 0) return mkZero();
  TermP t = mkOne();
  for (std::size_t i = 1; i < k; ++i) t = mkPlus(t, mkOne());
  return t;
}

FormulaP mkAtom(Formula::Kind kind, TermP s, TermP t) {
  return std::make_shared<Formula>(Formula{kind, std::move(s), std::move(t), {}, nullptr, nullptr});
}
FormulaP mkIn(TermP s, std::string setVar) {
  return std::make_shared<Formula>(Formula{Formula::Kind::In, std::move(s), nullptr, std::move(setVar), nullptr, nullptr});
}
FormulaP mkNot(FormulaP a) {
  return std::make_shared<Formula>(Formula{Formula::Kind::Not, nullptr, nullptr, {}, std::move(a), nullptr});
}
FormulaP mkBinary(Formula::Kind kind, FormulaP a, FormulaP b) {
  return std::make_shared<Formula>(Formula{kind, nullptr, nullptr, {}, std::move(a), std::move(b)});
}
FormulaP mkQuant(Formula::Kind kind, std::string var, FormulaP body) {
  return std::make_shared<Formula>(Formula{kind, nullptr, nullptr, std::move(var), std::move(body), nullptr});
}
FormulaP mkBounded(Formula::Kind kind, std::string var, TermP bound, FormulaP body) {
  return std::make_shared<Formula>(Formula{kind, nullptr, std::move(bound), std::move(var), std::move(body), nullptr});
}

bool sameTerm(const TermP& x, const TermP& y) {
  if (!x || !y) return !x && !y;
  return *x == *y;
}

bool sameFormula(const FormulaP& x, const FormulaP& y) {
  if (!x || !y) return !x && !y;
  return *x == *y;
}

bool operator==(const Term& x, const Term& y) {
  return x.kind == y.kind && x.name == y.name && sameTerm(x.a, y.a) && sameTerm(x.b, y.b);
}

bool operator==(const Formula& x, const Formula& y) {
  return x.kind == y.kind && x.var == y.var && sameTerm(x.s, y.s) && sameTerm(x.t, y.t) && sameFormula(x.a, y.a) &&
         sameFormula(x.b, y.b);
}

namespace {

using K = Formula::Kind;

bool isQuant(K k) { return k == K::ForallNum || k == K::ExistsNum || k == K::ForallSet || k == K::ExistsSet; }
bool isSetVar(const std::string& s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

// ---- lexer ----

struct Token {
  enum class Kind { Ident, Number, Sym, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& src) {
  static const std::vector<std::pair<std::string, std::string>> symbols = {
      {"<->", "<->"}, {"->", "->"}, {"↔", "<->"}, {"→", "->"}, {"∧", "&"}, {"∨", "|"},
      {"¬", "~"}, {"∀", "A"}, {"∃", "E"}, {"∈", "in"}, {"(", "("}, {")", ")"}, {"[", "("}, {"]", ")"},
      {".", "."},     {"+", "+"},   {"*", "*"},       {"=", "="},      {"<", "<"},       {"~", "~"},
      {"&", "&"},     {"|", "|"},
  };
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\'')) ++j;
      out.push_back({Token::Kind::Ident, src.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Token::Kind::Number, src.substr(i, j - i), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& [spelling, canon] : symbols) {
      if (src.compare(i, spelling.size(), spelling) == 0) {
        // Quantifier and membership glyphs behave like their ASCII words.
        Token::Kind kind = (canon == "A" || canon == "E" || canon == "in") ? Token::Kind::Ident : Token::Kind::Sym;
        out.push_back({kind, canon, i});
        i += spelling.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw L2ParseError("unexpected character at position " + std::to_string(i), i);
  }
  out.push_back({Token::Kind::End, "", src.size()});
  return out;
}

// ---- parser ----

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormulaP parseAll() {
    FormulaP f = formula();
    if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  bool isSym(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Sym && peek(k).text == s;
  }
  bool isWord(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Ident && peek(k).text == s;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw L2ParseError(msg + " at position " + std::to_string(peek().pos), peek().pos);
  }
  void expectSym(const std::string& s) {
    if (!isSym(s)) fail("expected '" + s + "'");
    ++i_;
  }
  std::string ident() {
    if (peek().kind != Token::Kind::Ident || peek().text == "in") fail("expected a variable");
    return toks_[i_++].text;
  }

  FormulaP formula() {
    FormulaP a = implication();
    if (isSym("<->")) {
      ++i_;
      return mkBinary(K::Iff, a, formula());
    }
    return a;
  }

  FormulaP implication() {
    FormulaP a = disjunction();
    if (isSym("->")) {
      ++i_;
      return mkBinary(K::Implies, a, implication());
    }
    return a;
  }

  FormulaP disjunction() {
    FormulaP a = conjunction();
    while (isSym("|")) {
      ++i_;
      a = mkBinary(K::Or, a, conjunction());
    }
    return a;
  }

  FormulaP conjunction() {
    FormulaP a = unary();
    while (isSym("&")) {
      ++i_;
      a = mkBinary(K::And, a, unary());
    }
    return a;
  }

  bool atQuantifier(std::size_t k) const {
    return (isWord("A", k) || isWord("E", k)) && peek(k + 1).kind == Token::Kind::Ident && isSym(".", k + 2);
  }

  FormulaP unary() {
    if (isSym("~")) {
      ++i_;
      return mkNot(unary());
    }
    if (atQuantifier(0)) {
      bool all = peek().text == "A";
      ++i_;
      std::string v = ident();
      ++i_;  // '.'
      FormulaP body = formula();
      K k = isSetVar(v) ? (all ? K::ForallSet : K::ExistsSet) : (all ? K::ForallNum : K::ExistsNum);
      return mkQuant(k, v, body);
    }
    if (isSym("(") && (isWord("A", 1) || isWord("E", 1)) && peek(2).kind == Token::Kind::Ident && isSym("<", 3)) {
      ++i_;
      bool all = peek().text == "A";
      ++i_;
      std::size_t varPos = peek().pos;
      std::string v = ident();
      if (isSetVar(v)) throw L2ParseError("bounded quantifier over a set variable at position " + std::to_string(varPos), varPos);
      ++i_;  // '<'
      TermP bound = term();
      if (mentions(bound, v)) fail("bound mentions the bound variable");
      expectSym(")");
      FormulaP body = formula();
      return mkBounded(all ? K::BoundedForall : K::BoundedExists, v, bound, body);
    }
    if (isSym("(")) {
      std::size_t save = i_;
      try {
        ++i_;
        FormulaP f = formula();
        expectSym(")");
        return f;
      } catch (const L2ParseError& inner) {
        i_ = save;
        try {
          return atom();
        } catch (const L2ParseError& outer) {
          // Report whichever reading got further.
          if (inner.position > outer.position) throw;
          throw outer;
        }
      }
    }
    return atom();
  }

  static bool mentions(const TermP& t, const std::string& v) {
    if (!t) return false;
    if (t->kind == Term::Kind::Var) return t->name == v;
    return mentions(t->a, v) || mentions(t->b, v);
  }

  FormulaP atom() {
    TermP s = term();
    if (isSym("=")) {
      ++i_;
      return mkAtom(K::Eq, s, term());
    }
    if (isSym("<")) {
      ++i_;
      return mkAtom(K::Lt, s, term());
    }
    if (isWord("in")) {
      ++i_;
      std::size_t pos = peek().pos;
      std::string x = ident();
      if (!isSetVar(x)) throw L2ParseError("'" + x + "' is not a set variable at position " + std::to_string(pos), pos);
      return mkIn(s, x);
    }
    fail("expected '=', '<' or 'in'");
  }

  TermP term() {
    TermP a = product();
    while (isSym("+")) {
      ++i_;
      a = mkPlus(a, product());
    }
    return a;
  }

  TermP product() {
    TermP a = primary();
    while (isSym("*")) {
      ++i_;
      a = mkTimes(a, primary());
    }
    return a;
  }

  TermP primary() {
    const Token& tok = peek();
    if (tok.kind == Token::Kind::Number) {
      if (tok.text.size() > 5) fail("numeral too large");
      std::size_t k = std::stoul(tok.text);
      if (k > 10000) fail("numeral too large");
      ++i_;
      return mkNumeral(k);
    }
    if (tok.kind == Token::Kind::Ident && tok.text != "in") {
      if (isSetVar(tok.text)) fail("set variable '" + tok.text + "' used as a number");
      ++i_;
      return mkVar(tok.text);
    }
    if (isSym("(")) {
      ++i_;
      TermP t = term();
      expectSym(")");
      return t;
    }
    fail("expected a term");
  }
};

// ---- printer ----

const char* binOp(K k) {
  switch (k) {
    case K::And: return " & ";
    case K::Or: return " | ";
    case K::Implies: return " -> ";
    default: return " <-> ";
  }
}

std::string print(const FormulaP& f, bool tail) {
  switch (f->kind) {
    case K::Eq: return printTerm(f->s) + " = " + printTerm(f->t);
    case K::Lt: return printTerm(f->s) + " < " + printTerm(f->t);
    case K::In: return printTerm(f->s) + " in " + f->var;
    case K::Not: return "~" + print(f->a, tail);
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Iff: return "(" + print(f->a, false) + binOp(f->kind) + print(f->b, true) + ")";
    default: break;
  }
  std::string s;
  if (isQuant(f->kind)) {
    bool all = f->kind == K::ForallNum || f->kind == K::ForallSet;
    s = std::string(all ? "A " : "E ") + f->var + ". " + print(f->a, true);
  } else {
    s = std::string(f->kind == K::BoundedForall ? "(A " : "(E ") + f->var + " < " + printTerm(f->t) + ") " +
        print(f->a, true);
  }
  // A quantifier body extends as far right as possible.
  return tail ? s : "(" + s + ")";
}

// ---- classification ----

bool hasSetQuantifier(const FormulaP& f) {
  if (!f) return false;
  if (f->kind == K::ForallSet || f->kind == K::ExistsSet) return true;
  return hasSetQuantifier(f->a) || hasSetQuantifier(f->b);
}

HierClass unclassified(const FormulaP& at) {
  HierClass h;
  h.kind = HierClass::Kind::Unclassified;
  h.reason = "not in literal form at: " + print(at, true);
  return h;
}

HierClass classifyBlock(const FormulaP& f, unsigned order, K existsK, K forallK,
                        const std::function<HierClass(const FormulaP&)>& inner) {
  if (f->kind == existsK || f->kind == forallK) {
    K k = f->kind;
    FormulaP body = f;
    while (body->kind == k) body = body->a;
    HierClass r = inner(body);
    bool sigma = k == existsK;
    HierClass out;
    out.order = order;
    if (r.kind == HierClass::Kind::Both && r.level == 0 && r.order <= order) {
      out.kind = sigma ? HierClass::Kind::Sigma : HierClass::Kind::Pi;
      out.level = 1;
      return out;
    }
    if (r.order == order && ((sigma && r.kind == HierClass::Kind::Pi) || (!sigma && r.kind == HierClass::Kind::Sigma))) {
      out.kind = sigma ? HierClass::Kind::Sigma : HierClass::Kind::Pi;
      out.level = r.level + 1;
      return out;
    }
    if (r.kind == HierClass::Kind::Unclassified) return r;
    return unclassified(body);
  }
  return inner(f);
}

HierClass classifyArith(const FormulaP& f) {
  if (onlyBoundedQuantifiers(f)) return HierClass{HierClass::Kind::Both, 0, 0, {}};
  if (f->kind != K::ExistsNum && f->kind != K::ForallNum) return unclassified(f);
  return classifyBlock(f, 0, K::ExistsNum, K::ForallNum, classifyArith);
}

HierClass classifyAnalytic(const FormulaP& f) {
  if (!hasSetQuantifier(f)) {
    // Arithmetical formulas sit at level 0 of the analytical hierarchy.
    return HierClass{HierClass::Kind::Both, 1, 0, {}};
  }
  if (f->kind != K::ExistsSet && f->kind != K::ForallSet) return unclassified(f);
  return classifyBlock(f, 1, K::ExistsSet, K::ForallSet, classifyAnalytic);
}

// ---- free variables ----

void collectTerm(const TermP& t, const std::set<std::string>& bound, std::vector<std::string>& out) {
  if (!t) return;
  if (t->kind == Term::Kind::Var) {
    if (!bound.count(t->name) && std::find(out.begin(), out.end(), t->name) == out.end()) out.push_back(t->name);
    return;
  }
  collectTerm(t->a, bound, out);
  collectTerm(t->b, bound, out);
}

void collect(const FormulaP& f, std::set<std::string> bound, std::vector<std::string>& nums,
             std::vector<std::string>& sets) {
  if (!f) return;
  switch (f->kind) {
    case K::Eq:
    case K::Lt:
      collectTerm(f->s, bound, nums);
      collectTerm(f->t, bound, nums);
      return;
    case K::In:
      collectTerm(f->s, bound, nums);
      if (!bound.count(f->var) && std::find(sets.begin(), sets.end(), f->var) == sets.end()) sets.push_back(f->var);
      return;
    case K::BoundedForall:
    case K::BoundedExists:
      collectTerm(f->t, bound, nums);
      bound.insert(f->var);
      collect(f->a, bound, nums, sets);
      return;
    default:
      if (isQuant(f->kind)) {
        bound.insert(f->var);
        collect(f->a, bound, nums, sets);
        return;
      }
      collect(f->a, bound, nums, sets);
      collect(f->b, bound, nums, sets);
  }
}

// ---- evaluation ----

bool eval(const FormulaP& f, NumAssign& num, const SetAssign& sets) {
  switch (f->kind) {
    case K::Eq: return evalTerm(f->s, num) == evalTerm(f->t, num);
    case K::Lt: return evalTerm(f->s, num) < evalTerm(f->t, num);
    case K::In: {
      auto it = sets.find(f->var);
      if (it == sets.end()) throw L2EvalError("unassigned set variable '" + f->var + "'");
      return it->second(evalTerm(f->s, num));
    }
    case K::Not: return !eval(f->a, num, sets);
    case K::And: return eval(f->a, num, sets) && eval(f->b, num, sets);
    case K::Or: return eval(f->a, num, sets) || eval(f->b, num, sets);
    case K::Implies: return !eval(f->a, num, sets) || eval(f->b, num, sets);
    case K::Iff: return eval(f->a, num, sets) == eval(f->b, num, sets);
    case K::BoundedForall:
    case K::BoundedExists: {
      Nat bound = evalTerm(f->t, num);
      bool all = f->kind == K::BoundedForall;
      auto saved = num.find(f->var) != num.end() ? std::optional<Nat>(num[f->var]) : std::nullopt;
      bool result = all;
      for (Nat x = 0; x < bound; ++x) {
        num[f->var] = x;
        if (eval(f->a, num, sets) != all) {
          result = !all;
          break;
        }
      }
      if (saved) {
        num[f->var] = *saved;
      } else {
        num.erase(f->var);
      }
      return result;
    }
    default: throw L2EvalError("unbounded quantifier over '" + f->var + "'");
  }
}

}  // namespace

FormulaP parseFormula(const std::string& text) { return Parser(lex(text)).parseAll(); }

std::string printTerm(const TermP& t) {
  switch (t->kind) {
    case Term::Kind::Zero: return "0";
    case Term::Kind::One: return "1";
    case Term::Kind::Var: return t->name;
    case Term::Kind::Plus: return "(" + printTerm(t->a) + "+" + printTerm(t->b) + ")";
    case Term::Kind::Times: return "(" + printTerm(t->a) + "*" + printTerm(t->b) + ")";
  }
  return {};
}

std::string printFormula(const FormulaP& f) { return print(f, true); }

std::string normalize(const std::string& text) { return printFormula(parseFormula(text)); }

std::string HierClass::str() const {
  std::string tail = " " + std::to_string(order) + " " + std::to_string(level);
  switch (kind) {
    case Kind::Sigma: return "Sigma" + tail;
    case Kind::Pi: return "Pi" + tail;
    case Kind::Both: return "Sigma/Pi" + tail;
    case Kind::Unclassified: break;
  }
  return "Unclassified: " + reason;
}

bool onlyBoundedQuantifiers(const FormulaP& f) {
  if (!f) return true;
  if (isQuant(f->kind)) return false;
  return onlyBoundedQuantifiers(f->a) && onlyBoundedQuantifiers(f->b);
}

HierClass classify(const FormulaP& f) {
  if (!hasSetQuantifier(f)) return classifyArith(f);
  return classifyAnalytic(f);
}

std::vector<std::string> freeNumVars(const FormulaP& f) {
  std::vector<std::string> nums, sets;
  collect(f, {}, nums, sets);
  return nums;
}

std::vector<std::string> freeSetVars(const FormulaP& f) {
  std::vector<std::string> nums, sets;
  collect(f, {}, nums, sets);
  return sets;
}

FormulaP universalClosure(const FormulaP& f) {
  std::vector<std::string> nums, sets;
  collect(f, {}, nums, sets);
  FormulaP out = f;
  for (auto it = sets.rbegin(); it != sets.rend(); ++it) out = mkQuant(K::ForallSet, *it, out);
  for (auto it = nums.rbegin(); it != nums.rend(); ++it) out = mkQuant(K::ForallNum, *it, out);
  return out;
}

Nat evalTerm(const TermP& t, const NumAssign& num) {
  switch (t->kind) {
    case Term::Kind::Zero: return 0;
    case Term::Kind::One: return 1;
    case Term::Kind::Var: {
      auto it = num.find(t->name);
      if (it == num.end()) throw L2EvalError("unassigned variable '" + t->name + "'");
      return it->second;
    }
    case Term::Kind::Plus: return evalTerm(t->a, num) + evalTerm(t->b, num);
    case Term::Kind::Times: return evalTerm(t->a, num) * evalTerm(t->b, num);
  }
  return 0;
}

bool evalDelta00(const FormulaP& f, const NumAssign& num, const SetAssign& sets) {
  if (!onlyBoundedQuantifiers(f)) throw L2EvalError("formula has an unbounded quantifier");
  NumAssign scratch = num;
  return eval(f, scratch, sets);
}

Sigma01Result searchSigma01(const FormulaP& f, const Nat& budget, const NumAssign& num, const SetAssign& sets) {
  std::vector<std::string> vars;
  FormulaP body = f;
  while (body->kind == K::ExistsNum) {
    vars.push_back(body->var);
    body = body->a;
  }
  if (vars.empty() || !onlyBoundedQuantifiers(body)) {
    throw L2EvalError("searchSigma01 needs a block of number existentials over a bounded matrix");
  }
  NumAssign scratch = num;
  for (Nat i = 0; i < budget; ++i) {
    Nat rest = i;
    std::vector<Nat> tuple;
    for (std::size_t j = 0; j + 1 < vars.size(); ++j) {
      auto [head, tail] = unpairCantor(rest);
      tuple.push_back(head);
      rest = tail;
    }
    tuple.push_back(rest);
    for (std::size_t j = 0; j < vars.size(); ++j) scratch[vars[j]] = tuple[j];
    if (eval(body, scratch, sets)) {
      Sigma01Result r;
      r.found = true;
      for (std::size_t j = 0; j < vars.size(); ++j) r.witness.emplace_back(vars[j], tuple[j]);
      return r;
    }
  }
  return {};
}

std::function<bool(const Nat&)> parseFiniteSet(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') throw std::invalid_argument("set must look like {1,2,5}");
  auto members = std::make_shared<std::set<Nat>>();
  std::string body = s.substr(1, s.size() - 2);
  std::size_t start = 0;
  while (!body.empty() && start <= body.size()) {
    std::size_t comma = body.find(',', start);
    std::string item = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad set element '" + item + "'");
    }
    members->insert(Nat(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return [members](const Nat& n) { return members->count(n) > 0; };
}

}  // namespace gaugeint
