#pragma once

#include "gaugeint/codings.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaugeint {

struct Term;
using TermP = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Zero, One, Var, Plus, Times };
  Kind kind;
  std::string name;  // Var
  TermP a, b;        // Plus, Times
};

struct Formula;
using FormulaP = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind {
    Eq, Lt, In,
    Not, And, Or, Implies, Iff,
    ForallNum, ExistsNum, ForallSet, ExistsSet,
    BoundedForall, BoundedExists,
  };
  Kind kind;
  TermP s, t;       // Eq, Lt: s ? t.  In: s ∈ var.  Bounded: t is the bound.
  std::string var;  // quantified variable, or the set variable of In
  FormulaP a, b;    // operands; quantifier bodies live in a
};

TermP mkZero();
TermP mkOne();
TermP mkVar(std::string name);
TermP mkPlus(TermP a, TermP b);
TermP mkTimes(TermP a, TermP b);
// 1+1+...+1, left-nested; 0 for k = 0.
TermP mkNumeral(std::size_t k);

FormulaP mkAtom(Formula::Kind kind, TermP s, TermP t);
FormulaP mkIn(TermP s, std::string setVar);
FormulaP mkNot(FormulaP a);
FormulaP mkBinary(Formula::Kind kind, FormulaP a, FormulaP b);
FormulaP mkQuant(Formula::Kind kind, std::string var, FormulaP body);
FormulaP mkBounded(Formula::Kind kind, std::string var, TermP bound, FormulaP body);

bool operator==(const Term& x, const Term& y);
bool operator==(const Formula& x, const Formula& y);
bool sameTerm(const TermP& x, const TermP& y);
bool sameFormula(const FormulaP& x, const FormulaP& y);

struct L2ParseError : std::invalid_argument {
  std::size_t position;
  L2ParseError(const std::string& what, std::size_t pos) : std::invalid_argument(what), position(pos) {}
};

// Number variables start lowercase, set variables uppercase.
FormulaP parseFormula(const std::string& text);
std::string printTerm(const TermP& t);
std::string printFormula(const FormulaP& f);
std::string normalize(const std::string& text);

struct HierClass {
  enum class Kind { Sigma, Pi, Both, Unclassified };
  Kind kind = Kind::Unclassified;
  unsigned order = 0;
  std::size_t level = 0;
  std::string reason;  // Unclassified only
  std::string str() const;
  bool operator==(const HierClass&) const = default;
};

// Literal-form classification; no prenexing.
HierClass classify(const FormulaP& f);
bool onlyBoundedQuantifiers(const FormulaP& f);

FormulaP universalClosure(const FormulaP& f);
std::vector<std::string> freeNumVars(const FormulaP& f);
std::vector<std::string> freeSetVars(const FormulaP& f);

using NumAssign = std::map<std::string, Nat>;
using SetAssign = std::map<std::string, std::function<bool(const Nat&)>>;

struct L2EvalError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Nat evalTerm(const TermP& t, const NumAssign& num);
// Throws L2EvalError on unbounded quantifiers or unassigned variables.
bool evalDelta00(const FormulaP& f, const NumAssign& num, const SetAssign& sets);

struct Sigma01Result {
  bool found = false;
  std::vector<std::pair<std::string, Nat>> witness;
};
// Requires ∃y1...∃yk ψ with ψ bounded; scans tuples in nested pairing order below budget.
Sigma01Result searchSigma01(const FormulaP& f, const Nat& budget, const NumAssign& num = {},
                            const SetAssign& sets = {});

// {1,2,5} or {} as a finite set oracle.
std::function<bool(const Nat&)> parseFiniteSet(const std::string& text);

}  // namespace gaugeint
