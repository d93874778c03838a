#pragma once

#include "gaugeint/bairefun.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gaugeint {

struct TagPoint {
  enum class Kind { ExactRat, CertIrrational };
  Kind kind = Kind::ExactRat;
  Rat q;
  FastReal x;
  std::string name;

  static TagPoint rational(const Rat& q);
  // `x` must converge to an irrational; `name` is how it serializes.
  static TagPoint irrational(const FastReal& x, std::string name);
  FastReal real() const;
};

// Parses names of the form "sqrtN/D" or "sqrtN" with N not a perfect square.
TagPoint namedIrrational(const std::string& name);

struct TaggedPartition {
  std::vector<Rat> points;
  std::vector<TagPoint> tags;
  std::size_t size() const { return tags.size(); }
};

struct PartitionError : std::invalid_argument {
  std::size_t index;
  PartitionError(const std::string& what, std::size_t i) : std::invalid_argument(what), index(i) {}
};

// Checks x_0 = 0, x_ℓ = 1 and x_j < t_j < x_{j+1}; irrational tags are certified within budget.
TaggedPartition mkPartition(std::vector<Rat> points, std::vector<TagPoint> tags, std::size_t budget = 64);

struct SymbolicGauge {
  std::function<FastReal(const TagPoint&)> evalAtTag;
  std::string description;
};

using Gauge = std::variant<ContCode, BaireCode, SymbolicGauge>;
std::string describe(const Gauge& g);

enum class Fineness { Verified, Refuted, UnknownAtBudget };
struct FineVerdict {
  Fineness status;
  std::size_t index = 0;  // first refuted (or undecided) block
};

// Closed form: t_j - δ(t_j) <= x_j and t_j + δ(t_j) >= x_{j+1} for every j.
FineVerdict isDeltaFine(const Gauge& delta, const TaggedPartition& p, std::size_t budget = 64);

// A function evaluated at tags to within 2^-precision.
using TagFunction = std::function<Rat(const TagPoint&, std::size_t)>;
TagFunction chiQ();
TagFunction tagFunction(const ContCode& f, std::size_t budget = 4096);

struct TagEvaluationError : std::runtime_error {
  std::size_t index;
  TagEvaluationError(const std::string& what, std::size_t i) : std::runtime_error(what), index(i) {}
};

// Σ f(t_i)(x_{i+1} - x_i); throws TagEvaluationError naming the first failing tag.
Rat riemannSum(const TagFunction& f, const TaggedPartition& p, std::size_t precision);

TaggedPartition uniformMidpointPartition(std::size_t meshExp);

struct RiemannEstimate {
  Rat estimate;
  Rat errorBound;
};
// Midpoint rule on the 2^-meshExp mesh; nullopt without a Lipschitz bound.
std::optional<RiemannEstimate> riemannIntegrate(const ContCode& f, std::size_t meshExp);

using PartitionFinder = std::function<std::optional<TaggedPartition>(const Gauge&)>;
struct GaugeIntegral {
  Rat value;
  TaggedPartition partition;
  FineVerdict certificate;
};
// Throws std::runtime_error when the finder fails or its partition is not verified.
GaugeIntegral gaugeIntegrate(const TagFunction& f, const std::function<Gauge(const Rat&)>& family,
                             const PartitionFinder& finder, const Rat& eps, std::size_t precision = 32);

// δ(q_m) = 2^{-m-2} ε on the m-th rational of Q ∩ [0,1], δ = 1 on certified irrationals.
// Default order is Stern-Brocot.
SymbolicGauge dirichletGauge(const Rat& eps);
SymbolicGauge dirichletGauge(const Rat& eps, std::function<Rat(const Nat&)> enumQ, const Nat& indexBound);

std::string partitionToJson(const TaggedPartition& p);
// Throws std::invalid_argument on malformed input.
TaggedPartition partitionFromJson(const std::string& text, std::size_t budget = 64);

}  // namespace gaugeint
