#pragma once

#include "gaugeint/partition.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gaugeint {

// I_σ = [a_σ, b_σ] with b_σ - a_σ = 2^-|σ|.
Rat dyadicLeft(const BitString& s);
Rat dyadicRight(const BitString& s);
Rat dyadicMid(const BitString& s);

// δ↾n(x): the n-th approximant of δ at a rational point, or nullopt on failure.
using PointGauge = std::function<std::optional<Rat>(const Rat&, std::size_t)>;
PointGauge pointGauge(const ContCode& delta, std::size_t budget = 4096);

struct CousinTree {
  enum class Status { Finished, DepthExhausted };
  Status status = Status::Finished;
  std::vector<std::vector<BitString>> levels;  // levels[n] = T_n, sorted
  std::vector<BitString> frontier;             // minimal excluded strings, sorted
  BitString chain;                             // least survivor at the last level when exhausted
  std::size_t depth = 0;                       // first empty level, or the depth bound
};

struct GaugeEvaluationError : std::runtime_error {
  BitString sigma;
  GaugeEvaluationError(const std::string& what, BitString s) : std::runtime_error(what), sigma(std::move(s)) {}
};

// σ ∈ T_n iff its prefixes are in the tree and δ↾n(m_σ) <= 2^{-n+1}.
CousinTree cousinSearch(const PointGauge& delta, std::size_t maxDepth);

// Requires status Finished. Points are the a_σ of the sorted frontier, tags the m_σ.
TaggedPartition frontierPartition(const CousinTree& tree);

// y_e = Σ_{n<=e} 2^{-n-2} sp_n(q_e) over the cover spikes, with q_e the e-th approximant of r.
Rat spikePartialSum(const std::vector<ContCode>& spikes, const FastReal& r, std::size_t e);

struct SubcoverResult {
  std::vector<std::size_t> perTag;   // m_j
  std::vector<std::size_t> eValues;  // e_j
  std::vector<std::size_t> indices;  // sorted distinct m_j
  bool gridCovered = false;
};

// Throws std::runtime_error when the index search passes 2^16 (no gauge behind P).
SubcoverResult extractSubcover(const std::vector<IntervalUI>& cover, const TaggedPartition& p,
                               std::size_t gridExp = 12);

}  // namespace gaugeint
