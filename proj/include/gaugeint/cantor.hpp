#pragma once

#include "gaugeint/exactreal.hpp"
#include "gaugeint/intervals.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace gaugeint {

// Counter machine with registers R0..R3. Input arrives in R0; the output is R0.
struct Instr {
  enum class Op { Halt, Inc, DecJz, Ask };
  Op op = Op::Halt;
  unsigned reg = 0;
  std::size_t addr = 0;
  bool operator==(const Instr&) const = default;
};

struct ToyProgram {
  std::vector<Instr> instrs;
  // Invalid codes run as a program that halts at once with output 0.
  bool valid = true;
  bool operator==(const ToyProgram&) const = default;
};

constexpr unsigned kRegisters = 4;

ToyProgram decodeProgram(const Nat& e);
// Requires a valid program.
Nat encodeProgram(const ToyProgram& p);
// One instruction per line: INC r, DECJZ r addr, ASK r addr, HALT. Blank lines and '#' comments are skipped.
ToyProgram parseProgram(const std::string& text);
std::string printProgram(const ToyProgram& p);

// Clears R0, then counts up to v.
ToyProgram constantProgram(std::uint64_t v);

struct RunResult {
  bool halted = false;
  std::uint64_t value = 0;
  std::size_t steps = 0;
};

// A decidable set consulted by ASK r addr (jump when R_r is in the set).
using SetOracle = std::function<bool(std::uint64_t)>;

// Registers are 64-bit; inputs must stay below 2^62 so no run can overflow.
RunResult runProgram(const ToyProgram& p, std::uint64_t input, std::size_t steps, const SetOracle* oracle = nullptr);
RunResult runMachine(const Nat& e, std::uint64_t input, std::size_t steps);

using ProgramEnumeration = std::function<ToyProgram(const Nat&)>;
ProgramEnumeration defaultEnumeration();
// Overrides selected indices; everything else decodes as usual.
ProgramEnumeration seededEnumeration(std::map<Nat, ToyProgram> seeds);

// Membership in the diagonal tree: excluded when some e < |σ| has φ_e(e) = σ_e within |σ| steps.
// Simulations are resumed rather than restarted across queries.
class DiagTree {
 public:
  explicit DiagTree(ProgramEnumeration enumeration = defaultEnumeration());
  bool member(const BitString& s);
  RunResult diagonalRun(std::uint64_t e, std::size_t steps);

 private:
  struct Run;
  ProgramEnumeration enumeration_;
  std::shared_ptr<std::vector<std::shared_ptr<Run>>> runs_;
  std::shared_ptr<std::mutex> mu_;
};

bool diagTreeMember(const BitString& s);

struct Pi01Result {
  std::vector<IntervalUI> balls;
  std::vector<std::uint64_t> programs;
  bool partial = false;
};
// Scans (e, s) in pairing order below searchBound for φ_e(e+3) halting within s steps;
// emits B(c, 2^{-e-3}) with c the Stern-Brocot rational numbered by the output.
Pi01Result pi01Balls(std::size_t k, std::uint64_t searchBound, const ProgramEnumeration& enumeration = defaultEnumeration());

using InfBitOracle = std::function<int(std::size_t)>;

struct MetricResult {
  bool exact = false;  // false: the prefixes agree through the budget
  Rat value;
};
MetricResult cantorMetric(const InfBitOracle& x, const InfBitOracle& y, std::size_t budget);

// g(X) = Σ 2 X_n / 3^{n+1}.
FastReal embedMiddleThirds(const InfBitOracle& x);

// Whether oracle machine e halts on input e within `stage` steps.
bool jumpStage(const SetOracle& a, const Nat& e, std::size_t stage,
               const ProgramEnumeration& enumeration = defaultEnumeration());

// Settles halting by simulation with repeated-state detection; nullopt past maxSteps.
std::optional<bool> decideHaltingFragment(const ToyProgram& p, std::uint64_t input, const SetOracle* oracle,
                                          std::size_t maxSteps);

// Column n of the reference point is the stage-bounded jump of column n-1; column 0 is empty.
InfBitOracle jumpHierarchyPoint(const ProgramEnumeration& enumeration, std::size_t stage);

struct ColumnGaugeResult {
  bool determined = false;
  Rat value;
  std::size_t k = 0;
};
ColumnGaugeResult columnGauge(const InfBitOracle& y, std::size_t columnBound, std::size_t stage,
                              std::size_t probeCount = 16,
                              const ProgramEnumeration& enumeration = defaultEnumeration());

// Decides n ∈ A from computable B, C with A = proj(B) and A^c = proj(C).
std::optional<bool> decideByInterleaving(const std::function<bool(std::uint64_t, std::uint64_t)>& b,
                                         const std::function<bool(std::uint64_t, std::uint64_t)>& c,
                                         std::uint64_t n, std::uint64_t maxK);

}  // namespace gaugeint
