#pragma once

#include "gaugeint/exactreal.hpp"

#include <functional>
#include <string>

namespace gaugeint {

// Open interval (p, q) of the real line.
struct IntervalR {
  Rat p, q;
  IntervalR(Rat p, Rat q);
  Rat midpoint() const { return (p + q) / 2; }
  bool operator==(const IntervalR&) const = default;
};

// (p, q) ∩ [0,1], kept with its unclamped code.
struct IntervalUI {
  Rat p, q;
  IntervalUI(Rat p, Rat q);
  Rat pbar() const;
  Rat qbar() const;
  bool operator==(const IntervalUI&) const = default;
};

Rat lengthUI(const IntervalUI& u);
Rat lengthR(const IntervalR& v);

bool intersects(const IntervalUI& a, const IntervalUI& b);
bool intersects(const IntervalR& a, const IntervalR& b);

// inner ⊆ outer.
bool containsInterval(const IntervalUI& inner, const IntervalUI& outer);
bool containsInterval(const IntervalR& inner, const IntervalR& outer);

// Exact membership of a rational: x ∈ [0,1] and p < x < q.
bool memberExact(const Rat& x, const IntervalUI& u);
bool memberExact(const Rat& x, const IntervalR& v);

enum class Membership { In, Out, UnknownAtBudget };
// For IntervalUI, r is assumed to be a point of [0,1].
Membership memberBudgeted(const FastReal& r, const IntervalUI& u, std::size_t budget);
Membership memberBudgeted(const FastReal& r, const IntervalR& v, std::size_t budget);

// A coded open set: an enumeration of basic intervals.
struct OpenSet {
  std::function<IntervalUI(std::size_t)> enumerate;
};

std::string formatInterval(const IntervalUI& u);

}  // namespace gaugeint
