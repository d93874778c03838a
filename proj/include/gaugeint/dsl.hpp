#pragma once

#include "gaugeint/partition.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gaugeint {

struct SExpr {
  bool isAtom = true;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t pos = 0;
};

struct DslError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

SExpr parseSExpr(const std::string& text);

// Continuous: (const q) (linear m c) (piecewise (d0 ... dk) e1 ... ek) (spike p q)
//             (spikesum (iv p q) ...) (spikesum-pi01 N)
// Baire:      (lift e) (heaviside) (clb1-gauge sqrt2-over-2) (dyadic-cex) (baire-seq e1 ... ek gen)
// Symbolic:   (dirichlet eps)
// In baire-seq, gen is repeat, heaviside, dyadic-cex or clb1-gauge and supplies the terms after ek.
Gauge parseGauge(const std::string& text);
ContCode parseContinuous(const std::string& text);
IntervalUI parseInterval(const SExpr& e);

}  // namespace gaugeint
