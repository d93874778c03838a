#include "gaugeint/partition.hpp"

#include <json.hpp>

#include <regex>

namespace gaugeint {

TagPoint TagPoint::rational(const Rat& q) {
  TagPoint t;
  t.kind = Kind::ExactRat;
  t.q = q;
  t.x = FastReal::fromRational(q);
  t.name = formatRat(q);
  return t;
}

TagPoint TagPoint::irrational(const FastReal& x, std::string name) {
  TagPoint t;
  t.kind = Kind::CertIrrational;
  t.x = x;
  t.name = std::move(name);
  return t;
}

FastReal TagPoint::real() const { return x; }

TagPoint namedIrrational(const std::string& name) {
  static const std::regex re(R"(sqrt([0-9]+)(?:/([0-9]+))?)");
  std::smatch m;
  if (!std::regex_match(name, m, re)) throw std::invalid_argument("unknown irrational '" + name + "'");
  Int n(m[1].str());
  Int d(m[2].matched ? m[2].str() : std::string("1"));
  Int r = isqrt(n);
  if (d == 0 || r * r == n) throw std::invalid_argument("'" + name + "' is not a certified irrational");
  return TagPoint::irrational(sqrtOver(n, d), name);
}

TaggedPartition mkPartition(std::vector<Rat> points, std::vector<TagPoint> tags, std::size_t budget) {
  if (tags.empty() || points.size() != tags.size() + 1) {
    throw PartitionError("partition needs one more point than tags", 0);
  }
  if (points.front() != 0) throw PartitionError("first point must be 0", 0);
  if (points.back() != 1) throw PartitionError("last point must be 1", points.size() - 1);
  for (std::size_t j = 0; j < tags.size(); ++j) {
    const TagPoint& t = tags[j];
    bool ok;
    if (t.kind == TagPoint::Kind::ExactRat) {
      ok = points[j] < t.q && t.q < points[j + 1];
    } else {
      ok = compareBudgeted(t.x, points[j], budget).cmp == Cmp::Greater &&
           compareBudgeted(t.x, points[j + 1], budget).cmp == Cmp::Less;
    }
    if (!ok) throw PartitionError("tag " + std::to_string(j) + " is not strictly inside its block", j);
  }
  return TaggedPartition{std::move(points), std::move(tags)};
}

std::string describe(const Gauge& g) {
  return std::visit([](const auto& v) { return v.description; }, g);
}

namespace {

// Verdict for D >= gap.
Fineness coversGap(const FastReal& d, const FastReal& gap, std::size_t budget) {
  if (d.exact() && gap.exact()) return *d.exact() >= *gap.exact() ? Fineness::Verified : Fineness::Refuted;
  switch (compareBudgeted(d, gap, budget).cmp) {
    case Cmp::Greater: return Fineness::Verified;
    case Cmp::Less: return Fineness::Refuted;
    default: return Fineness::UnknownAtBudget;
  }
}

}  // namespace

FineVerdict isDeltaFine(const Gauge& delta, const TaggedPartition& p, std::size_t budget) {
  std::optional<std::size_t> firstUnknown;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const TagPoint& t = p.tags[j];
    FastReal tr = t.real();
    FastReal left = tr - FastReal::fromRational(p.points[j]);
    FastReal right = FastReal::fromRational(p.points[j + 1]) - tr;
    Fineness a = Fineness::UnknownAtBudget, b = Fineness::UnknownAtBudget;
    if (const auto* bc = std::get_if<BaireCode>(&delta)) {
      // Refutation goes through the limit comparison; verification needs a strict certificate.
      // One memoized limit value serves both sides.
      auto v = baireValue(*bc, tr, budget);
      if (v) {
        a = coversGap(*v, left, budget);
        b = coversGap(*v, right, budget);
      }
    } else {
      FastReal d = std::holds_alternative<ContCode>(delta) ? valueAt(std::get<ContCode>(delta), tr)
                                                           : std::get<SymbolicGauge>(delta).evalAtTag(t);
      a = coversGap(d, left, budget);
      b = coversGap(d, right, budget);
    }
    if (a == Fineness::Refuted || b == Fineness::Refuted) return {Fineness::Refuted, j};
    if ((a != Fineness::Verified || b != Fineness::Verified) && !firstUnknown) firstUnknown = j;
  }
  if (firstUnknown) return {Fineness::UnknownAtBudget, *firstUnknown};
  return {Fineness::Verified, 0};
}

TagFunction chiQ() {
  return [](const TagPoint& t, std::size_t) { return t.kind == TagPoint::Kind::ExactRat ? Rat(1) : Rat(0); };
}

TagFunction tagFunction(const ContCode& f, std::size_t budget) {
  return [f, budget](const TagPoint& t, std::size_t precision) {
    if (t.kind == TagPoint::Kind::ExactRat) {
      if (auto v = exactValue(f, t.q)) return *v;
    }
    auto v = evalAt(f, t.real(), precision, budget);
    if (!v) throw ApproxUnavailable("evaluation exhausted at tag " + t.name);
    return *v;
  };
}

Rat riemannSum(const TagFunction& f, const TaggedPartition& p, std::size_t precision) {
  Rat sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rat v;
    try {
      v = f(p.tags[i], precision);
    } catch (const ApproxUnavailable& e) {
      throw TagEvaluationError(e.what(), i);
    }
    sum += v * (p.points[i + 1] - p.points[i]);
  }
  return sum;
}

TaggedPartition uniformMidpointPartition(std::size_t meshExp) {
  std::size_t n = std::size_t(1) << meshExp;
  std::vector<Rat> points;
  std::vector<TagPoint> tags;
  for (std::size_t i = 0; i <= n; ++i) points.emplace_back(Int(i), Int(n));
  for (std::size_t i = 0; i < n; ++i) tags.push_back(TagPoint::rational(Rat(Int(2 * i + 1), Int(2 * n))));
  return TaggedPartition{std::move(points), std::move(tags)};
}

std::optional<RiemannEstimate> riemannIntegrate(const ContCode& f, std::size_t meshExp) {
  if (!f.lipschitz) return std::nullopt;
  TaggedPartition p = uniformMidpointPartition(meshExp);
  Rat bound = *f.lipschitz * pow2(-static_cast<long>(meshExp));
  std::size_t precision = meshExp + 8;
  // Exact tag values contribute no evaluation slack.
  if (!f.closedForm) bound += pow2(-static_cast<long>(precision));
  return RiemannEstimate{riemannSum(tagFunction(f), p, precision), bound};
}

GaugeIntegral gaugeIntegrate(const TagFunction& f, const std::function<Gauge(const Rat&)>& family,
                             const PartitionFinder& finder, const Rat& eps, std::size_t precision) {
  Gauge g = family(eps);
  auto p = finder(g);
  if (!p) throw std::runtime_error("no partition found for " + describe(g));
  FineVerdict cert = isDeltaFine(g, *p);
  if (cert.status != Fineness::Verified) throw std::runtime_error("found partition is not verified fine");
  return GaugeIntegral{riemannSum(f, *p, precision), *p, cert};
}

namespace {

FastReal dyadicScaled(const Nat& m, const Rat& eps) {
  // 2^{-m-2} ε, kept exact while the exponent is representable.
  if (m <= 100000) return FastReal::fromRational(pow2(-static_cast<long>(m) - 2) * eps);
  long epsExp = ceilLog2(eps);
  return FastReal([m, epsExp](std::size_t n) {
    // The value is below 2^{epsExp - m - 2}, far under 2^{-n}.
    if (Nat(n) + epsExp + 2 < m) return Rat(0);
    throw ApproxUnavailable("gauge value too small to represent");
  });
}

}  // namespace

SymbolicGauge dirichletGauge(const Rat& eps) {
  if (eps <= 0) throw std::invalid_argument("dirichletGauge: ε must be positive");
  SymbolicGauge g;
  g.description = "(dirichlet " + formatRat(eps) + ")";
  g.evalAtTag = [eps](const TagPoint& t) {
    if (t.kind == TagPoint::Kind::CertIrrational) return FastReal::fromRational(1);
    return dyadicScaled(sternBrocotIndex(t.q), eps);
  };
  return g;
}

SymbolicGauge dirichletGauge(const Rat& eps, std::function<Rat(const Nat&)> enumQ, const Nat& indexBound) {
  if (eps <= 0) throw std::invalid_argument("dirichletGauge: ε must be positive");
  SymbolicGauge g;
  g.description = "(dirichlet " + formatRat(eps) + " custom-order)";
  g.evalAtTag = [eps, enumQ, indexBound](const TagPoint& t) {
    if (t.kind == TagPoint::Kind::CertIrrational) return FastReal::fromRational(1);
    for (Nat m = 0; m < indexBound; ++m) {
      if (enumQ(m) == t.q) return dyadicScaled(m, eps);
    }
    throw std::out_of_range("rational tag " + formatRat(t.q) + " not enumerated below the index bound");
  };
  return g;
}

std::string partitionToJson(const TaggedPartition& p) {
  nlohmann::json j;
  j["points"] = nlohmann::json::array();
  for (const auto& x : p.points) j["points"].push_back(formatRat(x));
  j["tags"] = nlohmann::json::array();
  for (const auto& t : p.tags) {
    if (t.kind == TagPoint::Kind::ExactRat) {
      j["tags"].push_back({{"kind", "rat"}, {"value", formatRat(t.q)}});
    } else {
      j["tags"].push_back({{"kind", "irr"}, {"name", t.name}});
    }
  }
  return j.dump();
}

TaggedPartition partitionFromJson(const std::string& text, std::size_t budget) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("partition JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("points") || !j.contains("tags") || !j["points"].is_array() ||
      !j["tags"].is_array()) {
    throw std::invalid_argument("partition JSON: expected {\"points\": [...], \"tags\": [...]}");
  }
  std::vector<Rat> points;
  for (const auto& v : j["points"]) {
    if (!v.is_string()) throw std::invalid_argument("partition JSON: points must be strings");
    points.push_back(parseRat(v.get<std::string>()));
  }
  std::vector<TagPoint> tags;
  for (const auto& v : j["tags"]) {
    std::string kind = v.value("kind", "");
    if (kind == "rat" && v.contains("value") && v["value"].is_string()) {
      tags.push_back(TagPoint::rational(parseRat(v["value"].get<std::string>())));
    } else if (kind == "irr" && v.contains("name") && v["name"].is_string()) {
      tags.push_back(namedIrrational(v["name"].get<std::string>()));
    } else {
      throw std::invalid_argument("partition JSON: bad tag entry");
    }
  }
  return mkPartition(std::move(points), std::move(tags), budget);
}

}  // namespace gaugeint
