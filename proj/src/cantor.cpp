#include "gaugeint/cantor.hpp"

#include <array>
#include <set>
#include <sstream>
#include <unordered_map>

namespace gaugeint {

namespace {

constexpr std::uint64_t kInputLimit = std::uint64_t(1) << 62;

std::optional<Instr> decodeInstr(const Nat& h, std::size_t length) {
  unsigned op = static_cast<unsigned>(h % 4);
  Nat rest = h / 4;
  Instr in;
  switch (op) {
    case 0:
      if (rest != 0) return std::nullopt;
      in.op = Instr::Op::Halt;
      return in;
    case 1:
      if (rest >= kRegisters) return std::nullopt;
      in.op = Instr::Op::Inc;
      in.reg = static_cast<unsigned>(rest);
      return in;
    default: {
      auto [r, a] = unpairCantor(rest);
      if (r >= kRegisters || a >= length) return std::nullopt;
      in.op = op == 2 ? Instr::Op::DecJz : Instr::Op::Ask;
      in.reg = static_cast<unsigned>(r);
      in.addr = static_cast<std::size_t>(a);
      return in;
    }
  }
}

Nat encodeInstr(const Instr& in) {
  switch (in.op) {
    case Instr::Op::Halt: return 0;
    case Instr::Op::Inc: return 4 * Nat(in.reg) + 1;
    case Instr::Op::DecJz: return 4 * pairCantor(in.reg, in.addr) + 2;
    case Instr::Op::Ask: return 4 * pairCantor(in.reg, in.addr) + 3;
  }
  return 0;
}

struct Machine {
  ToyProgram prog;
  std::array<std::uint64_t, kRegisters> regs{};
  std::size_t pc = 0;
  std::size_t t = 0;
  bool halted = false;
  std::uint64_t value = 0;

  Machine(ToyProgram p, std::uint64_t input) : prog(std::move(p)) {
    if (input >= kInputLimit) throw std::invalid_argument("machine input too large");
    regs[0] = input;
  }

  bool finished() const { return halted; }

  // One transition; the caller checks `halted` first.
  void step(const SetOracle* oracle) {
    if (!prog.valid) {
      halted = true;
      value = 0;
      t = 1;
      return;
    }
    const Instr& in = prog.instrs[pc];
    ++t;
    switch (in.op) {
      case Instr::Op::Halt:
        halted = true;
        value = regs[0];
        return;
      case Instr::Op::Inc:
        ++regs[in.reg];
        ++pc;
        break;
      case Instr::Op::DecJz:
        if (regs[in.reg] == 0) {
          pc = in.addr;
        } else {
          --regs[in.reg];
          ++pc;
        }
        break;
      case Instr::Op::Ask:
        pc = (oracle && (*oracle)(regs[in.reg])) ? in.addr : pc + 1;
        break;
    }
    if (pc >= prog.instrs.size()) {
      halted = true;
      value = regs[0];
    }
  }

  void advance(std::size_t limit, const SetOracle* oracle) {
    while (!halted && t < limit) step(oracle);
  }

  RunResult result(std::size_t limit) const {
    if (halted && t <= limit) return {true, value, t};
    return {false, 0, limit};
  }
};

}  // namespace

ToyProgram decodeProgram(const Nat& e) {
  std::vector<Nat> codes;
  Nat cur = e;
  while (cur != 0) {
    auto [h, t] = unpairCantor(cur - 1);
    codes.push_back(h);
    cur = t;
  }
  ToyProgram p;
  if (codes.empty()) {
    p.valid = false;
    return p;
  }
  for (const auto& h : codes) {
    auto in = decodeInstr(h, codes.size());
    if (!in) return ToyProgram{{}, false};
    p.instrs.push_back(*in);
  }
  return p;
}

Nat encodeProgram(const ToyProgram& p) {
  if (!p.valid || p.instrs.empty()) throw std::invalid_argument("encodeProgram: invalid program");
  Nat code = 0;
  for (auto it = p.instrs.rbegin(); it != p.instrs.rend(); ++it) {
    if (it->reg >= kRegisters || (it->op >= Instr::Op::DecJz && it->addr >= p.instrs.size())) {
      throw std::invalid_argument("encodeProgram: instruction out of range");
    }
    code = 1 + pairCantor(encodeInstr(*it), code);
  }
  return code;
}

ToyProgram parseProgram(const std::string& text) {
  ToyProgram p;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(lines, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string op;
    if (!(words >> op)) continue;
    Instr in;
    long long reg = 0, addr = 0;
    auto fail = [&] { throw std::invalid_argument("program line " + std::to_string(lineNo) + ": bad instruction"); };
    if (op == "HALT") {
      in.op = Instr::Op::Halt;
    } else if (op == "INC") {
      if (!(words >> reg)) fail();
      in.op = Instr::Op::Inc;
    } else if (op == "DECJZ" || op == "ASK") {
      if (!(words >> reg >> addr) || addr < 0) fail();
      in.op = op == "DECJZ" ? Instr::Op::DecJz : Instr::Op::Ask;
      in.addr = static_cast<std::size_t>(addr);
    } else {
      fail();
    }
    std::string extra;
    if (words >> extra || reg < 0 || reg >= static_cast<long long>(kRegisters)) fail();
    in.reg = static_cast<unsigned>(reg);
    p.instrs.push_back(in);
  }
  if (p.instrs.empty()) throw std::invalid_argument("program is empty");
  for (const auto& in : p.instrs) {
    if ((in.op == Instr::Op::DecJz || in.op == Instr::Op::Ask) && in.addr >= p.instrs.size()) {
      throw std::invalid_argument("jump address " + std::to_string(in.addr) + " out of range");
    }
  }
  return p;
}

std::string printProgram(const ToyProgram& p) {
  if (!p.valid) return "# invalid\n";
  std::ostringstream out;
  for (const auto& in : p.instrs) {
    switch (in.op) {
      case Instr::Op::Halt: out << "HALT\n"; break;
      case Instr::Op::Inc: out << "INC " << in.reg << "\n"; break;
      case Instr::Op::DecJz: out << "DECJZ " << in.reg << " " << in.addr << "\n"; break;
      case Instr::Op::Ask: out << "ASK " << in.reg << " " << in.addr << "\n"; break;
    }
  }
  return out.str();
}

ToyProgram constantProgram(std::uint64_t v) {
  ToyProgram p;
  p.instrs.push_back({Instr::Op::DecJz, 0, 2});
  p.instrs.push_back({Instr::Op::DecJz, 1, 0});
  for (std::uint64_t i = 0; i < v; ++i) p.instrs.push_back({Instr::Op::Inc, 0, 0});
  p.instrs.push_back({Instr::Op::Halt, 0, 0});
  return p;
}

RunResult runProgram(const ToyProgram& p, std::uint64_t input, std::size_t steps, const SetOracle* oracle) {
  Machine m(p, input);
  m.advance(steps, oracle);
  return m.result(steps);
}

RunResult runMachine(const Nat& e, std::uint64_t input, std::size_t steps) {
  return runProgram(decodeProgram(e), input, steps);
}

ProgramEnumeration defaultEnumeration() { return [](const Nat& e) { return decodeProgram(e); }; }

ProgramEnumeration seededEnumeration(std::map<Nat, ToyProgram> seeds) {
  auto shared = std::make_shared<const std::map<Nat, ToyProgram>>(std::move(seeds));
  return [shared](const Nat& e) {
    auto it = shared->find(e);
    return it != shared->end() ? it->second : decodeProgram(e);
  };
}

struct DiagTree::Run {
  Machine machine;
};

DiagTree::DiagTree(ProgramEnumeration enumeration)
    : enumeration_(std::move(enumeration)),
      runs_(std::make_shared<std::vector<std::shared_ptr<Run>>>()),
      mu_(std::make_shared<std::mutex>()) {}

RunResult DiagTree::diagonalRun(std::uint64_t e, std::size_t steps) {
  std::lock_guard<std::mutex> lock(*mu_);
  auto& runs = *runs_;
  while (runs.size() <= e) {
    std::uint64_t i = runs.size();
    runs.push_back(std::make_shared<Run>(Run{Machine(enumeration_(Nat(i)), i)}));
  }
  Machine& m = runs[e]->machine;
  m.advance(steps, nullptr);
  return m.result(steps);
}

bool DiagTree::member(const BitString& s) {
  for (std::size_t e = 0; e < s.size(); ++e) {
    RunResult r = diagonalRun(e, s.size());
    if (r.halted && r.value == static_cast<std::uint64_t>(s[e] - '0')) return false;
  }
  return true;
}

bool diagTreeMember(const BitString& s) {
  static DiagTree tree;
  return tree.member(s);
}

Pi01Result pi01Balls(std::size_t k, std::uint64_t searchBound, const ProgramEnumeration& enumeration) {
  Pi01Result res;
  std::set<std::uint64_t> found;
  std::unordered_map<std::uint64_t, ToyProgram> programs;
  for (std::uint64_t i = 0; i < searchBound && res.balls.size() < k; ++i) {
    auto [e, s] = unpairCantor64(i);
    if (found.count(e)) continue;
    auto it = programs.find(e);
    if (it == programs.end()) it = programs.emplace(e, enumeration(Nat(e))).first;
    RunResult r = runProgram(it->second, e + 3, s);
    if (!r.halted) continue;
    Rat c = sternBrocotAt(Nat(r.value));
    Rat rad = pow2(-static_cast<long>(e) - 3);
    res.balls.emplace_back(c - rad, c + rad);
    res.programs.push_back(e);
    found.insert(e);
  }
  res.partial = res.balls.size() < k;
  return res;
}

MetricResult cantorMetric(const InfBitOracle& x, const InfBitOracle& y, std::size_t budget) {
  for (std::size_t n = 0; n < budget; ++n) {
    if (x(n) != y(n)) return {true, pow2(-static_cast<long>(n))};
  }
  return {false, Rat(0)};
}

FastReal embedMiddleThirds(const InfBitOracle& x) {
  return FastReal(
      [x](std::size_t n) {
        // Tail after N terms is 3^{-N}; take N least with 3^N >= 2^{n+1}.
        Int target = Int(1) << (n + 1);
        Int pow3 = 1;
        Rat sum = 0;
        for (std::size_t k = 0; pow3 < target; ++k) {
          pow3 *= 3;
          if (x(k)) sum += Rat(Int(2), pow3);
        }
        return sum;
      },
      FastReal::Kind::Composite, "middle-thirds");
}

bool jumpStage(const SetOracle& a, const Nat& e, std::size_t stage, const ProgramEnumeration& enumeration) {
  if (e >= kInputLimit) throw std::invalid_argument("jumpStage: index too large");
  return runProgram(enumeration(e), static_cast<std::uint64_t>(e), stage, &a).halted;
}

std::optional<bool> decideHaltingFragment(const ToyProgram& p, std::uint64_t input, const SetOracle* oracle,
                                          std::size_t maxSteps) {
  Machine m(p, input);
  std::set<std::pair<std::size_t, std::array<std::uint64_t, kRegisters>>> seen;
  while (m.t < maxSteps) {
    if (m.halted) return true;
    if (!seen.emplace(m.pc, m.regs).second) return false;
    m.step(oracle);
  }
  if (m.halted) return true;
  return std::nullopt;
}

InfBitOracle jumpHierarchyPoint(const ProgramEnumeration& enumeration, std::size_t stage) {
  struct Memo {
    std::mutex mu;
    std::unordered_map<std::uint64_t, int> bits;
  };
  auto memo = std::make_shared<Memo>();
  auto self = std::make_shared<std::function<int(std::size_t)>>();
  std::weak_ptr<std::function<int(std::size_t)>> weak = self;
  *self = [memo, weak, enumeration, stage](std::size_t k) -> int {
    {
      std::lock_guard<std::mutex> lock(memo->mu);
      if (auto it = memo->bits.find(k); it != memo->bits.end()) return it->second;
    }
    auto [e, n] = unpairCantor64(k);
    int bit = 0;
    if (n > 0) {
      auto rec = weak.lock();
      SetOracle column = [rec, n = n](std::uint64_t j) { return (*rec)(pairCantor64(j, n - 1)) != 0; };
      bit = jumpStage(column, Nat(e), stage, enumeration) ? 1 : 0;
    }
    std::lock_guard<std::mutex> lock(memo->mu);
    memo->bits.emplace(k, bit);
    return bit;
  };
  // The returned closure keeps the recursive function alive.
  return [self](std::size_t k) { return (*self)(k); };
}

ColumnGaugeResult columnGauge(const InfBitOracle& y, std::size_t columnBound, std::size_t stage,
                              std::size_t probeCount, const ProgramEnumeration& enumeration) {
  std::optional<std::pair<std::uint64_t, std::uint64_t>> diff;
  for (std::uint64_t n = 0; n <= columnBound && !diff; ++n) {
    SetOracle prev = [&y, n](std::uint64_t j) { return n > 0 && y(pairCantor64(j, n - 1)) != 0; };
    for (std::uint64_t e = 0; e < probeCount; ++e) {
      int expected = n == 0 ? 0 : (jumpStage(prev, Nat(e), stage, enumeration) ? 1 : 0);
      if (y(pairCantor64(e, n)) != expected) {
        diff = {e, n};
        break;
      }
    }
  }
  if (!diff) return {};
  auto [e, n] = *diff;
  // A difference from the reference point shows up either at (e, n) itself or in
  // column n-1 at an index the stage-bounded run could have queried.
  std::uint64_t limit = pairCantor64(e, n);
  if (n > 0) limit = std::max(limit, pairCantor64(e + stage, n - 1));
  InfBitOracle x = jumpHierarchyPoint(enumeration, stage);
  for (std::uint64_t k = 0; k <= limit; ++k) {
    if (y(k) != x(k)) return {true, pow2(-static_cast<long>(k) - 1), static_cast<std::size_t>(k)};
  }
  return {};
}

std::optional<bool> decideByInterleaving(const std::function<bool(std::uint64_t, std::uint64_t)>& b,
                                         const std::function<bool(std::uint64_t, std::uint64_t)>& c,
                                         std::uint64_t n, std::uint64_t maxK) {
  for (std::uint64_t k = 0; k <= maxK; ++k) {
    if (b(n, k)) return true;
    if (c(n, k)) return false;
  }
  return std::nullopt;
}

}  // namespace gaugeint
