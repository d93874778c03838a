#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>

namespace gaugeint {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Nonnegative by convention; operations taking a Nat reject negative input.
using Nat = Int;

// Finite 0/1 string, one char per bit.
using BitString = std::string;

Nat pairCantor(const Nat& m, const Nat& n);
std::pair<Nat, Nat> unpairCantor(const Nat& k);
Nat pairCantor3(const Nat& m, const Nat& n, const Nat& k);

// Word-sized versions for the machine simulator and scans.
std::uint64_t pairCantor64(std::uint64_t m, std::uint64_t n);
std::pair<std::uint64_t, std::uint64_t> unpairCantor64(std::uint64_t k);

Nat pairSquare(const Nat& m, const Nat& n);

// Normal form of the integer coded by (m, n): (k, 0) or (0, k).
std::pair<Nat, Nat> canonInteger(const Nat& m, const Nat& n);

// Reduced with positive denominator. Throws std::domain_error when b == 0.
Rat canonRational(const Int& a, const Int& b);

Nat stringCode(const BitString& s);
BitString stringDecode(const Nat& n);
bool isBitString(const std::string& s);

// "num/den" in lowest terms.
std::string formatRat(const Rat& q);
// Accepts "a/b" or "a". Throws std::invalid_argument on bad text.
Rat parseRat(const std::string& text);

// 2^k for any integer k.
Rat pow2(long k);
// Least k with 2^k >= q; q must be positive.
long ceilLog2(const Rat& q);
// Greatest k with 2^k <= q; q must be positive.
long floorLog2(const Rat& q);
Int ceilRat(const Rat& q);
Int floorRat(const Rat& q);
Int isqrt(const Int& n);

// Stern-Brocot order on Q ∩ [0,1]: 0, 1, then the tree below 1/2 breadth first.
Rat sternBrocotAt(const Nat& index);
Nat sternBrocotIndex(const Rat& q);

// Bijection N -> Q: 0, then +cw(j), -cw(j) alternately over the Calkin-Wilf order.
Rat ratAt(const Nat& index);
Nat ratIndex(const Rat& q);

}  // namespace gaugeint
