#include "gaugeint/cantor.hpp"
#include "gaugeint/cousin.hpp"
#include "gaugeint/dsl.hpp"
#include "gaugeint/l2logic.hpp"
#include "gaugeint/partition.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace gaugeint;

namespace {

constexpr int kUsage = 1;
constexpr int kExhausted = 2;
constexpr int kInternal = 3;

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TagPoint parseTag(const std::string& text) {
  if (text.rfind("sqrt", 0) == 0) return namedIrrational(text);
  return TagPoint::rational(parseRat(text));
}

std::string fineName(Fineness f) {
  switch (f) {
    case Fineness::Verified: return "Verified";
    case Fineness::Refuted: return "Refuted";
    default: return "UnknownAtBudget";
  }
}

// Tries the irrational-tag partition first, then uniform midpoint meshes.
std::optional<TaggedPartition> findPartition(const Gauge& g, std::size_t maxDepth) {
  if (const auto* c = std::get_if<ContCode>(&g)) {
    CousinTree t = cousinSearch(pointGauge(*c), maxDepth);
    if (t.status != CousinTree::Status::Finished) return std::nullopt;
    return frontierPartition(t);
  }
  TaggedPartition irr = mkPartition({Rat(0), Rat(1)}, {namedIrrational("sqrt2/2")});
  if (isDeltaFine(g, irr).status == Fineness::Verified) return irr;
  for (std::size_t k = 1; k <= maxDepth; ++k) {
    TaggedPartition p = uniformMidpointPartition(k);
    if (isDeltaFine(g, p).status == Fineness::Verified) return p;
  }
  return std::nullopt;
}

int runIntegrate(const std::string& fn, const std::string& mode, std::size_t mesh, const std::string& epsText,
                 std::size_t maxDepth) {
  if (mode == "riemann") {
    ContCode f = parseContinuous(fn);
    auto est = riemannIntegrate(f, mesh);
    if (!est) {
      std::cerr << "function has no Lipschitz certificate\n";
      return kExhausted;
    }
    std::cout << formatRat(est->estimate) << " ± " << formatRat(est->errorBound) << "\n";
    return 0;
  }
  if (mode != "gauge") throw std::invalid_argument("--mode must be riemann or gauge");
  Rat eps = parseRat(epsText);
  if (eps <= 0) throw std::invalid_argument("--eps must be positive");
  TagFunction f;
  std::function<Gauge(const Rat&)> family;
  if (fn == "chi-q") {
    f = chiQ();
    family = [](const Rat& e) -> Gauge { return dirichletGauge(e); };
  } else {
    ContCode c = parseContinuous(fn);
    if (!c.lipschitz) {
      std::cerr << "function has no Lipschitz certificate\n";
      return kExhausted;
    }
    f = tagFunction(c);
    // Blocks of a fine partition for the constant gauge 2^-k are at most 2^{1-k} long.
    Rat lip = *c.lipschitz;
    family = [lip](const Rat& e) -> Gauge {
      long k = 1 - floorLog2(e / (lip + 1));
      return mkConst(pow2(-std::max(k, 0L)));
    };
  }
  try {
    GaugeIntegral r = gaugeIntegrate(f, family, [maxDepth](const Gauge& g) { return findPartition(g, maxDepth); }, eps);
    std::cout << formatRat(r.value) << " ± " << formatRat(eps) << "\n";
    std::cout << partitionToJson(r.partition) << "\n";
    return 0;
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExhausted;
  }
}

int runCousin(const std::string& gaugeText, std::size_t maxDepth, const std::string& outPath) {
  ContCode g = parseContinuous(gaugeText);
  CousinTree t = cousinSearch(pointGauge(g), maxDepth);
  if (t.status == CousinTree::Status::DepthExhausted) {
    std::cout << "DepthExhausted " << t.chain << "\n";
    return kExhausted;
  }
  std::string json = partitionToJson(frontierPartition(t));
  if (!outPath.empty()) {
    std::ofstream out(outPath);
    out << json << "\n";
  }
  std::cout << json << "\n";
  return 0;
}

int runVerify(const std::string& gaugeText, const std::string& partitionPath, std::size_t budget) {
  Gauge g = parseGauge(gaugeText);
  TaggedPartition p = partitionFromJson(readFile(partitionPath), budget);
  FineVerdict v = isDeltaFine(g, p, budget);
  std::cout << fineName(v.status);
  if (v.status != Fineness::Verified) std::cout << " " << v.index;
  std::cout << "\n";
  return v.status == Fineness::Verified ? 0 : kExhausted;
}

int runEval(const std::string& text, const std::vector<std::string>& assigns, const std::vector<std::string>& sets,
            const std::string& budgetText) {
  FormulaP f = parseFormula(text);
  NumAssign num;
  for (const auto& a : assigns) {
    auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--assign expects x=n");
    std::string v = a.substr(eq + 1);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("--assign value must be a natural number");
    }
    num[a.substr(0, eq)] = Nat(v);
  }
  SetAssign setAssign;
  for (const auto& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--set expects X={...}");
    setAssign[s.substr(0, eq)] = parseFiniteSet(s.substr(eq + 1));
  }
  if (onlyBoundedQuantifiers(f)) {
    std::cout << (evalDelta00(f, num, setAssign) ? "true" : "false") << "\n";
    return 0;
  }
  Sigma01Result r = searchSigma01(f, Nat(budgetText), num, setAssign);
  if (!r.found) {
    std::cout << "ExhaustedAtBudget\n";
    return kExhausted;
  }
  std::cout << "true witness";
  for (const auto& [name, value] : r.witness) std::cout << " " << name << "=" << value;
  std::cout << "\n";
  return 0;
}

int runTreeDiag(std::size_t depth) {
  if (depth > 20) throw std::invalid_argument("--depth is limited to 20");
  std::vector<BitString> level{BitString()};
  for (std::size_t n = 0;; ++n) {
    std::cout << "level " << n << ": " << level.size() << " members";
    if (!level.empty()) std::cout << ", least " << (level.front().empty() ? "ε" : level.front());
    std::cout << "\n";
    if (n == depth || level.empty()) break;
    std::vector<BitString> next;
    for (const auto& s : level) {
      for (char c : {'0', '1'}) {
        if (diagTreeMember(s + c)) next.push_back(s + c);
      }
    }
    level = std::move(next);
  }
  return level.empty() ? kExhausted : 0;
}

int runPi01(std::size_t count, std::uint64_t bound) {
  Pi01Result r = pi01Balls(count, bound);
  Rat total = 0;
  for (std::size_t i = 0; i < r.balls.size(); ++i) {
    const auto& b = r.balls[i];
    std::cout << "e=" << r.programs[i] << " " << formatInterval(b) << "\n";
    total += lengthUI(b);
  }
  std::cout << "total-length " << formatRat(total) << "\n";
  if (r.partial) {
    std::cout << "partial " << r.balls.size() << "/" << count << "\n";
    return kExhausted;
  }
  return 0;
}

int runRun(const std::string& progPath, std::uint64_t input, std::size_t steps) {
  ToyProgram p = parseProgram(readFile(progPath));
  RunResult r = runProgram(p, input, steps);
  if (r.halted) {
    std::cout << "Halted " << r.value << " " << r.steps << "\n";
    return 0;
  }
  std::cout << "StillRunning " << r.steps << "\n";
  return kExhausted;
}

int runEmbed(const std::string& prefix, bool periodic, std::size_t precision) {
  if (!isBitString(prefix) || (periodic && prefix.empty())) throw std::invalid_argument("--bits must be a 0/1 string");
  InfBitOracle x = [prefix, periodic](std::size_t n) -> int {
    if (n < prefix.size()) return prefix[n] - '0';
    return periodic ? prefix[n % prefix.size()] - '0' : 0;
  };
  std::cout << formatRat(embedMiddleThirds(x).approx(precision)) << "\n";
  return 0;
}

int runGaugeEval(const std::string& gaugeText, const std::string& at, std::size_t precision, std::size_t budget) {
  Gauge g = parseGauge(gaugeText);
  TagPoint t = parseTag(at);
  std::optional<Rat> v;
  if (const auto* c = std::get_if<ContCode>(&g)) {
    v = evalAt(*c, t.real(), precision, budget);
  } else if (const auto* b = std::get_if<BaireCode>(&g)) {
    if (auto val = baireValue(*b, t.real(), budget)) {
      try {
        v = val->approx(precision);
      } catch (const ApproxUnavailable& e) {
        std::cerr << e.what() << "\n";
      }
    }
  } else {
    try {
      v = std::get<SymbolicGauge>(g).evalAtTag(t).approx(precision);
    } catch (const ApproxUnavailable& e) {
      std::cerr << e.what() << "\n";
    }
  }
  if (!v) {
    std::cout << "Exhausted\n";
    return kExhausted;
  }
  std::cout << formatRat(*v) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaugeint: gauge integrals, Cousin's lemma and computability constructions"};
  app.require_subcommand(1);

  std::string fn, mode = "riemann", eps = "1/16", gauge, partition, formula, out, prog, bits, at, budgetText = "10000";
  std::size_t mesh = 8, maxDepth = 16, depth = 8, count = 8, steps = 1000, precision = 32, budget = 64;
  std::uint64_t bound = 65536, input = 0;
  bool periodic = false;
  std::vector<std::string> assigns, sets;

  auto* integrate = app.add_subcommand("integrate", "Riemann estimate or gauge integral on [0,1]");
  integrate->add_option("--function", fn, "function DSL, or chi-q")->required();
  integrate->add_option("--mode", mode, "riemann or gauge")->check(CLI::IsMember({"riemann", "gauge"}));
  integrate->add_option("--mesh", mesh, "midpoint mesh exponent")->check(CLI::Range(0, 24));
  integrate->add_option("--eps", eps, "target accuracy for gauge mode");
  integrate->add_option("--max-depth", maxDepth, "partition search depth for gauge mode");

  auto* cousin = app.add_subcommand("cousin", "dyadic search for a δ-fine partition");
  cousin->add_option("--gauge", gauge, "gauge DSL")->required();
  cousin->add_option("--max-depth", maxDepth, "depth bound")->check(CLI::Range(1, 40));
  cousin->add_option("--out", out, "also write the partition JSON here");

  auto* verify = app.add_subcommand("verify-partition", "check δ-fineness of a partition");
  verify->add_option("--gauge", gauge, "gauge DSL")->required();
  verify->add_option("--partition", partition, "partition JSON file")->required();
  verify->add_option("--budget", budget, "comparison budget");

  auto* classifyCmd = app.add_subcommand("classify", "hierarchy class of a formula");
  classifyCmd->add_option("--formula", formula, "formula text")->required();

  auto* eval = app.add_subcommand("eval", "evaluate a bounded or Σ01 formula");
  eval->add_option("--formula", formula, "formula text")->required();
  eval->add_option("--assign", assigns, "x=n");
  eval->add_option("--set", sets, "X={1,2,5}");
  eval->add_option("--budget", budgetText, "witness search budget");

  auto* tree = app.add_subcommand("tree", "tree constructions");
  auto* diag = tree->add_subcommand("diag", "diagonal tree level sizes");
  diag->add_option("--depth", depth, "deepest level")->check(CLI::Range(0, 20));
  tree->require_subcommand(1);

  auto* pi01 = app.add_subcommand("pi01", "balls of the Π01 class construction");
  pi01->add_option("--count", count, "number of balls");
  pi01->add_option("--bound", bound, "search bound on (e,s) codes");

  auto* run = app.add_subcommand("run", "run a counter-machine program");
  run->add_option("--prog", prog, "program file")->required();
  run->add_option("--input", input, "input in R0")->check(CLI::Range(std::uint64_t(0), (std::uint64_t(1) << 62) - 1));
  run->add_option("--steps", steps, "step bound");

  auto* embed = app.add_subcommand("embed", "middle-thirds image of a bit sequence");
  embed->add_option("--bits", bits, "prefix; later bits are 0")->required();
  embed->add_flag("--periodic", periodic, "repeat the prefix instead");
  embed->add_option("--precision", precision, "approximant index");

  auto* gaugeEval = app.add_subcommand("gauge-eval", "evaluate a gauge at a point");
  gaugeEval->add_option("--gauge", gauge, "gauge DSL")->required();
  gaugeEval->add_option("--at", at, "rational p/q or sqrtN/D")->required();
  gaugeEval->add_option("--precision", precision, "approximant index");
  gaugeEval->add_option("--budget", budget, "evaluation budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*integrate) return runIntegrate(fn, mode, mesh, eps, maxDepth);
    if (*cousin) return runCousin(gauge, maxDepth, out);
    if (*verify) return runVerify(gauge, partition, budget);
    if (*classifyCmd) {
      std::cout << classify(parseFormula(formula)).str() << "\n";
      return 0;
    }
    if (*eval) return runEval(formula, assigns, sets, budgetText);
    if (*diag) return runTreeDiag(depth);
    if (*pi01) return runPi01(count, bound);
    if (*run) return runRun(prog, input, steps);
    if (*embed) return runEmbed(bits, periodic, precision);
    if (*gaugeEval) return runGaugeEval(gauge, at, precision, budget);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GaugeEvaluationError& e) {
    std::cerr << e.what() << "\n";
    return kExhausted;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
