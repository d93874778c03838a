#include "gaugeint/codings.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace gaugeint {

namespace {

void requireNat(const Int& v, const char* what) {
  if (v < 0) throw std::invalid_argument(std::string(what) + ": negative argument");
}

// Run-length encoded path: (bit, count) pairs.
using Runs = std::vector<std::pair<int, Int>>;

Int runsToInt(const Runs& topDown) {
  Int n = 1;
  for (const auto& [bit, count] : topDown) {
    unsigned k = static_cast<unsigned>(count);
    n <<= k;
    if (bit) n |= (Int(1) << k) - 1;
  }
  return n;
}

Runs intToRuns(const Int& n) {
  // Bits of n after the leading 1, grouped into runs, most significant first.
  Runs runs;
  if (n <= 1) return runs;
  unsigned top = boost::multiprecision::msb(n);
  for (int i = static_cast<int>(top) - 1; i >= 0; --i) {
    int bit = boost::multiprecision::bit_test(n, static_cast<unsigned>(i)) ? 1 : 0;
    if (!runs.empty() && runs.back().first == bit) {
      runs.back().second += 1;
    } else {
      runs.emplace_back(bit, Int(1));
    }
  }
  return runs;
}

// Path of a positive reduced a/b in the Stern-Brocot tree rooted at 1/1, top-down.
Runs sternBrocotPath(Int a, Int b) {
  Runs runs;
  while (a != b) {
    if (a < b) {
      Int k = (b - 1) / a;
      b -= k * a;
      runs.emplace_back(0, k);
    } else {
      Int k = (a - 1) / b;
      a -= k * b;
      runs.emplace_back(1, k);
    }
  }
  return runs;
}

Rat calkinWilfAt(const Nat& j) {
  // Node j+1 in heap order; bits below the leading 1 read top-down.
  Int a = 1, b = 1;
  for (const auto& [bit, count] : intToRuns(j + 1)) {
    if (bit == 0) {
      b += count * a;
    } else {
      a += count * b;
    }
  }
  return Rat(a, b);
}

Nat calkinWilfIndex(const Rat& q) {
  // Calkin-Wilf paths are Stern-Brocot paths reversed.
  Runs runs = sternBrocotPath(boost::multiprecision::numerator(q),
                              boost::multiprecision::denominator(q));
  std::reverse(runs.begin(), runs.end());
  return runsToInt(runs) - 1;
}

}  // namespace

Nat pairCantor(const Nat& m, const Nat& n) {
  requireNat(m, "pairCantor");
  requireNat(n, "pairCantor");
  Int s = m + n;
  return s * (s + 1) / 2 + m;
}

std::pair<Nat, Nat> unpairCantor(const Nat& k) {
  requireNat(k, "unpairCantor");
  Int w = (isqrt(8 * k + 1) - 1) / 2;
  Int t = w * (w + 1) / 2;
  Int m = k - t;
  return {m, w - m};
}

Nat pairCantor3(const Nat& m, const Nat& n, const Nat& k) {
  return pairCantor(m, pairCantor(n, k));
}

std::uint64_t pairCantor64(std::uint64_t m, std::uint64_t n) {
  std::uint64_t s = m + n;
  return (s % 2 == 0 ? (s / 2) * (s + 1) : s * ((s + 1) / 2)) + m;
}

std::pair<std::uint64_t, std::uint64_t> unpairCantor64(std::uint64_t k) {
  auto [m, n] = unpairCantor(Int(k));
  return {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n)};
}

Nat pairSquare(const Nat& m, const Nat& n) {
  requireNat(m, "pairSquare");
  requireNat(n, "pairSquare");
  Int s = m + n;
  return s * s + m;
}

std::pair<Nat, Nat> canonInteger(const Nat& m, const Nat& n) {
  requireNat(m, "canonInteger");
  requireNat(n, "canonInteger");
  if (m >= n) return {m - n, Int(0)};
  return {Int(0), n - m};
}

Rat canonRational(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("canonRational: zero denominator");
  Int num = b < 0 ? Int(-a) : a;
  Int den = b < 0 ? Int(-b) : b;
  Int g = boost::multiprecision::gcd(num < 0 ? Int(-num) : num, den);
  return Rat(num / g, den / g);
}

bool isBitString(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

Nat stringCode(const BitString& s) {
  if (!isBitString(s)) throw std::invalid_argument("stringCode: not a bit string");
  Int v = 1;
  for (char c : s) {
    v <<= 1;
    if (c == '1') v |= 1;
  }
  return v - 1;
}

BitString stringDecode(const Nat& n) {
  requireNat(n, "stringDecode");
  Int v = n + 1;
  unsigned top = boost::multiprecision::msb(v);
  BitString s;
  s.reserve(top);
  for (int i = static_cast<int>(top) - 1; i >= 0; --i) {
    s.push_back(boost::multiprecision::bit_test(v, static_cast<unsigned>(i)) ? '1' : '0');
  }
  return s;
}

std::string formatRat(const Rat& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

Rat parseRat(const std::string& text) {
  auto validInt = [](const std::string& s, bool allowSign) {
    std::size_t i = 0;
    if (allowSign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!validInt(num, true) || !validInt(den, false)) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  Int d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  return Rat(Int(num), d);
}

Rat pow2(long k) {
  if (k >= 0) return Rat(Int(1) << static_cast<unsigned>(k));
  return Rat(Int(1), Int(1) << static_cast<unsigned>(-k));
}

long floorLog2(const Rat& q) {
  if (q <= 0) throw std::domain_error("floorLog2: nonpositive argument");
  long e = static_cast<long>(boost::multiprecision::msb(boost::multiprecision::numerator(q))) -
           static_cast<long>(boost::multiprecision::msb(boost::multiprecision::denominator(q)));
  while (pow2(e) > q) --e;
  while (pow2(e + 1) <= q) ++e;
  return e;
}

long ceilLog2(const Rat& q) {
  long f = floorLog2(q);
  return pow2(f) == q ? f : f + 1;
}

Int floorRat(const Rat& q) {
  const Int& n = boost::multiprecision::numerator(q);
  const Int& d = boost::multiprecision::denominator(q);
  Int t = n / d;
  if (n % d != 0 && n < 0) t -= 1;
  return t;
}

Int ceilRat(const Rat& q) { return -floorRat(-q); }

Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt: negative argument");
  return boost::multiprecision::sqrt(n);
}

Rat sternBrocotAt(const Nat& index) {
  requireNat(index, "sternBrocotAt");
  if (index == 0) return Rat(0);
  if (index == 1) return Rat(1);
  Int ln = 0, ld = 1, rn = 1, rd = 1;
  Int nn = 1, nd = 2;
  for (const auto& [bit, count] : intToRuns(index - 1)) {
    if (bit == 0) {
      rn = (count - 1) * ln + nn;
      rd = (count - 1) * ld + nd;
      nn = count * ln + nn;
      nd = count * ld + nd;
    } else {
      ln = (count - 1) * rn + nn;
      ld = (count - 1) * rd + nd;
      nn = count * rn + nn;
      nd = count * rd + nd;
    }
  }
  return Rat(nn, nd);
}

Nat sternBrocotIndex(const Rat& q) {
  if (q < 0 || q > 1) throw std::domain_error("sternBrocotIndex: outside [0,1]");
  if (q == 0) return 0;
  if (q == 1) return 1;
  Runs runs = sternBrocotPath(boost::multiprecision::numerator(q),
                              boost::multiprecision::denominator(q));
  // Every q in (0,1) starts with a left move from 1/1 onto 1/2.
  runs.front().second -= 1;
  if (runs.front().second == 0) runs.erase(runs.begin());
  return runsToInt(runs) + 1;
}

Rat ratAt(const Nat& index) {
  requireNat(index, "ratAt");
  if (index == 0) return Rat(0);
  Int j = (index - 1) / 2;
  Rat v = calkinWilfAt(j);
  return (index % 2 == 1) ? v : Rat(-v);
}

Nat ratIndex(const Rat& q) {
  if (q == 0) return 0;
  Nat j = calkinWilfIndex(q < 0 ? Rat(-q) : q);
  return q > 0 ? 2 * j + 1 : 2 * j + 2;
}

}  // namespace gaugeint
