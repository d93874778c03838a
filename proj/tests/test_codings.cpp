#include "gaugeint/codings.hpp"
#include "support.hpp"

#include <doctest.h>

#include <deque>
#include <set>

using namespace gaugeint;

TEST_CASE("pairCantor examples") {
  CHECK(pairCantor(0, 0) == 0);
  CHECK(pairCantor(0, 1) == 1);
  CHECK(pairCantor(1, 0) == 2);
  CHECK(pairCantor3(1, 2, 3) == pairCantor(1, pairCantor(2, 3)));
}

TEST_CASE("pairCantor is a bijection on an initial segment") {
  for (std::uint64_t k = 0; k < 1000000; ++k) {
    auto [m, n] = unpairCantor64(k);
    REQUIRE(pairCantor64(m, n) == k);
  }
  for (std::uint64_t m = 0; m < 1000; ++m) {
    for (std::uint64_t n = 0; n < 1000; ++n) {
      // (m+n)(m+n+1)/2 + m, written out independently.
      std::uint64_t s = m + n;
      REQUIRE(pairCantor64(m, n) == s * (s + 1) / 2 + m);
    }
  }
  // The arbitrary-precision version agrees and inverts on large inputs.
  Nat big = (Nat(1) << 200) + 12345;
  auto [m, n] = unpairCantor(pairCantor(big, big + 7));
  CHECK(m == big);
  CHECK(n == big + 7);
  CHECK(pairCantor(37, 91) == Nat(pairCantor64(37, 91)));
}

TEST_CASE("pairSquare") {
  CHECK(pairSquare(0, 0) == 0);
  CHECK(pairSquare(1, 1) == 5);
  CHECK(pairSquare(2, 0) == 6);
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < 2000; ++m) {
    for (std::uint64_t n = 0; n < 2000; ++n) {
      std::uint64_t v = static_cast<std::uint64_t>(pairSquare(m, n));
      REQUIRE(v == (m + n) * (m + n) + m);
      REQUIRE(seen.insert(v).second);
    }
  }
  // Not surjective: 3 = (m+n)^2 + m has no solution.
  bool hit3 = false;
  for (std::uint64_t m = 0; m < 4; ++m) {
    for (std::uint64_t n = 0; n < 4; ++n) hit3 |= pairSquare(m, n) == 3;
  }
  CHECK_FALSE(hit3);
}

TEST_CASE("canonRational examples and class invariance") {
  CHECK(formatRat(canonRational(2, 4)) == "1/2");
  CHECK(formatRat(canonRational(-3, -6)) == "1/2");
  CHECK(formatRat(canonRational(0, 7)) == "0/1");
  CHECK_THROWS_AS(canonRational(1, 0), std::domain_error);
  for (int a = -50; a <= 50; a += 3) {
    for (int b = -50; b <= 50; b += 7) {
      if (b == 0) continue;
      for (int c = -50; c <= 50; c += 5) {
        for (int d = -50; d <= 50; d += 2) {
          if (d == 0) continue;
          bool same = canonRational(a, b) == canonRational(c, d);
          REQUIRE(same == (a * d == b * c));
        }
      }
    }
  }
}

TEST_CASE("canonInteger picks the normal form") {
  CHECK(canonInteger(5, 3) == std::pair<Nat, Nat>(2, 0));
  CHECK(canonInteger(3, 5) == std::pair<Nat, Nat>(0, 2));
  CHECK(canonInteger(4, 4) == std::pair<Nat, Nat>(0, 0));
  // Minimal code in the class, found by brute force.
  for (int m = 0; m < 30; ++m) {
    for (int n = 0; n < 30; ++n) {
      auto [k0, k1] = canonInteger(m, n);
      Nat best = -1;
      std::pair<Nat, Nat> arg;
      for (int p = 0; p < 60; ++p) {
        for (int q = 0; q < 60; ++q) {
          if (m + q != n + p) continue;
          Nat code = pairSquare(p, q);
          if (best < 0 || code < best) {
            best = code;
            arg = {p, q};
          }
        }
      }
      REQUIRE(arg == std::pair<Nat, Nat>(k0, k1));
    }
  }
}

TEST_CASE("string coding") {
  CHECK(stringCode("") == 0);
  CHECK(stringCode("0110") == 21);
  CHECK(stringCode("1") == 2);
  CHECK(stringDecode(21) == "0110");
  for (std::size_t len = 0; len <= 20; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v) {
      std::string s;
      for (std::size_t i = 0; i < len; ++i) s += ((v >> (len - 1 - i)) & 1) ? '1' : '0';
      Nat code = stringCode(s);
      // n + 1 = 1 followed by the bits of s.
      REQUIRE(code == Nat((std::uint64_t(1) << len) + v - 1));
      REQUIRE(stringDecode(code) == s);
    }
  }
  CHECK(isBitString("0101"));
  CHECK(isBitString(""));
  CHECK_FALSE(isBitString("012"));
}

TEST_CASE("rational text round trip") {
  CHECK(formatRat(Rat(-3, 4)) == "-3/4");
  CHECK(formatRat(Rat(0)) == "0/1");
  CHECK(formatRat(Rat(5)) == "5/1");
  CHECK(parseRat("6/8") == Rat(3, 4));
  CHECK(parseRat("-2") == Rat(-2));
  CHECK_THROWS_AS(parseRat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parseRat("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parseRat(""), std::invalid_argument);
  testsupport::Gen g(7);
  for (int i = 0; i < 500; ++i) {
    Rat q = g.rational(-20, 20, 1000);
    REQUIRE(parseRat(formatRat(q)) == q);
  }
}

TEST_CASE("dyadic helpers") {
  CHECK(pow2(3) == 8);
  CHECK(pow2(-3) == Rat(1, 8));
  CHECK(ceilLog2(Rat(1)) == 0);
  CHECK(ceilLog2(Rat(3)) == 2);
  CHECK(ceilLog2(Rat(1, 3)) == -1);
  CHECK(floorLog2(Rat(1, 3)) == -2);
  CHECK(floorLog2(Rat(8)) == 3);
  testsupport::Gen g(11);
  for (int i = 0; i < 500; ++i) {
    Rat q = g.rational(Rat(1, 1000), 1000, 1000);
    long c = ceilLog2(q), f = floorLog2(q);
    REQUIRE(pow2(c) >= q);
    REQUIRE(pow2(c - 1) < q);
    REQUIRE(pow2(f) <= q);
    REQUIRE(pow2(f + 1) > q);
  }
  CHECK(isqrt(Int(99)) == 9);
  CHECK(isqrt(Int(100)) == 10);
  CHECK(floorRat(Rat(-1, 2)) == -1);
  CHECK(ceilRat(Rat(-1, 2)) == 0);
}

TEST_CASE("Stern-Brocot order against a breadth-first mediant oracle") {
  std::vector<Rat> oracle{Rat(0), Rat(1)};
  // Each node (a/b) carries its bounding fractions; children are mediants.
  struct Node {
    Int ln, ld, rn, rd;
  };
  std::deque<Node> queue{{0, 1, 1, 1}};
  while (oracle.size() < 5000) {
    Node nd = queue.front();
    queue.pop_front();
    Int mn = nd.ln + nd.rn, md = nd.ld + nd.rd;
    oracle.emplace_back(mn, md);
    queue.push_back({nd.ln, nd.ld, mn, md});
    queue.push_back({mn, md, nd.rn, nd.rd});
  }
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    REQUIRE(sternBrocotAt(i) == oracle[i]);
    REQUIRE(sternBrocotIndex(oracle[i]) == i);
  }
  CHECK(sternBrocotAt(2) == Rat(1, 2));
  CHECK_THROWS(sternBrocotIndex(Rat(3, 2)));
}

TEST_CASE("ratAt enumerates Q injectively with a Calkin-Wilf core") {
  // Newman's successor generates the Calkin-Wilf sequence 1, 1/2, 2, 1/3, 3/2, ...
  std::vector<Rat> cw{Rat(1)};
  while (cw.size() < 2000) {
    const Rat& x = cw.back();
    cw.push_back(1 / (2 * Rat(floorRat(x)) - x + 1));
  }
  CHECK(ratAt(0) == 0);
  for (std::size_t j = 0; j < cw.size(); ++j) {
    REQUIRE(ratAt(2 * j + 1) == cw[j]);
    REQUIRE(ratAt(2 * j + 2) == -cw[j]);
  }
  for (std::uint64_t i = 0; i < 4000; ++i) REQUIRE(ratIndex(ratAt(i)) == i);
}
