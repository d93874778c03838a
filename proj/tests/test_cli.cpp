#include "gaugeint/dsl.hpp"
#include "support.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

using namespace gaugeint;

namespace {

struct Outcome {
  int code;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Outcome cli(const std::vector<std::string>& args) {
  std::string cmd = quote(GAUGEINT_CLI);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("s-expression reader") {
  SExpr e = parseSExpr(" (piecewise (0/1 1/2 1/1) (const 1) (linear 2 0)) ");
  REQUIRE_FALSE(e.isAtom);
  REQUIRE(e.items.size() == 4);
  CHECK(e.items[0].atom == "piecewise");
  CHECK(e.items[1].items.size() == 3);
  CHECK(e.items[3].items[1].atom == "2");
  CHECK_THROWS_AS(parseSExpr("(const 1"), DslError);
  CHECK_THROWS_AS(parseSExpr("(const 1))"), DslError);
  CHECK_THROWS_AS(parseSExpr(""), DslError);
}

TEST_CASE("gauge DSL") {
  CHECK(*exactValue(parseContinuous("(const 3/4)"), Rat(1, 5)) == Rat(3, 4));
  CHECK(*exactValue(parseContinuous("(linear 2 -1/2)"), Rat(1, 2)) == Rat(1, 2));
  CHECK(*exactValue(parseContinuous("(spike 0 1)"), Rat(1, 4)) == Rat(1, 4));
  ContCode pw = parseContinuous("(piecewise (0 1/2 1) (const 1/2) (linear -1 1))");
  CHECK(*exactValue(pw, Rat(1, 4)) == Rat(1, 2));
  CHECK(*exactValue(pw, Rat(3, 4)) == Rat(1, 4));
  ContCode ss = parseContinuous("(spikesum (iv -1 2/3) (iv 1/3 2))");
  CHECK(*exactValue(ss, Rat(1, 2)) > 0);
  CHECK(std::holds_alternative<BaireCode>(parseGauge("(heaviside)")));
  CHECK(std::get<BaireCode>(parseGauge("(lift (const 1))")).rank == 1);
  CHECK(std::holds_alternative<SymbolicGauge>(parseGauge("(dirichlet 1/4)")));
  CHECK(std::holds_alternative<ContCode>(parseGauge("(spikesum-pi01 4)")));
  BaireCode seq = std::get<BaireCode>(parseGauge("(baire-seq (const 1) (const 1/2) repeat)"));
  CHECK(*exactValue(*seq.seq(0).base, Rat(1, 3)) == 1);
  CHECK(*exactValue(*seq.seq(5).base, Rat(1, 3)) == Rat(1, 2));
  for (std::string bad : {"(const)", "(const x)", "(linear 1)", "(piecewise (0 1) (const 1) (const 2))", "(wibble 1)",
                          "(spike 1/2 1/4)", "(baire-seq (const 1) forever)", "const"}) {
    CAPTURE(bad);
    CHECK_THROWS(parseGauge(bad));
  }
}

TEST_CASE("CLI golden outputs and exit codes") {
  Outcome c = cli({"cousin", "--gauge", "(const 1/1)", "--max-depth", "8"});
  CHECK(c.code == 0);
  CHECK(c.out ==
        R"({"points":["0/1","1/4","1/2","3/4","1/1"],"tags":[{"kind":"rat","value":"1/8"},{"kind":"rat","value":"3/8"},)"
        R"({"kind":"rat","value":"5/8"},{"kind":"rat","value":"7/8"}]})"
        "\n");
  CHECK(cli({"classify", "--formula", "A n. ~(n+1=0)"}).out == "Pi 0 1\n");
  Outcome r = cli({"integrate", "--function", "(linear 1/1 0/1)", "--mode", "riemann", "--mesh", "8"});
  CHECK(r.code == 0);
  CHECK(r.out == "1/2 ± 1/256\n");

  CHECK(cli({"cousin", "--gauge", "(const 1/256)", "--max-depth", "3"}).code == 2);
  CHECK(cli({"eval", "--formula", "E y. (y < 0)", "--budget", "50"}).code == 2);
  CHECK(cli({"eval", "--formula", "E y. (y + y = 4)"}).out == "true witness y=2\n");
  CHECK(cli({"eval", "--formula", "x in X", "--assign", "x=5", "--set", "X={1,2,5}"}).out == "true\n");
  CHECK(cli({"classify", "--formula", "x"}).code == 1);
  CHECK(cli({"bogus"}).code == 1);
  CHECK(cli({"cousin", "--gauge", "(const"}).code == 1);
  CHECK(cli({"integrate", "--function", "(linear 1 0)", "--mode", "sideways"}).code == 1);
  CHECK(cli({"embed", "--bits", "1", "--precision", "10"}).out == "2/3\n");
  CHECK(cli({"gauge-eval", "--gauge", "(dyadic-cex)", "--at", "1/2"}).out == "1/12\n");
  Outcome pi = cli({"pi01", "--count", "3"});
  CHECK(pi.code == 0);
  CHECK(pi.out.find("total-length") != std::string::npos);

  std::string prog = "gaugeint_cli_test_prog.txt";
  std::ofstream(prog) << "INC 0\nHALT\n";
  CHECK(cli({"run", "--prog", prog, "--input", "5"}).out == "Halted 6 2\n");
  std::remove(prog.c_str());

  // A partition written by cousin verifies against its gauge.
  std::string part = "gaugeint_cli_test_part.json";
  REQUIRE(cli({"cousin", "--gauge", "(spikesum (iv -1/2 1/2) (iv 1/3 3/2))", "--max-depth", "12", "--out", part}).code == 0);
  Outcome v = cli({"verify-partition", "--gauge", "(spikesum (iv -1/2 1/2) (iv 1/3 3/2))", "--partition", part});
  CHECK(v.code == 0);
  CHECK(v.out.rfind("Verified", 0) == 0);
  Outcome refuted = cli({"verify-partition", "--gauge", "(const 1/1024)", "--partition", part});
  CHECK(refuted.code == 2);
  std::remove(part.c_str());
}
