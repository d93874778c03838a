#include "gaugeint/cousin.hpp"

#include <algorithm>

namespace gaugeint {

Rat dyadicLeft(const BitString& s) {
  Int num = 0;
  for (char c : s) num = 2 * num + (c == '1' ? 1 : 0);
  return Rat(num, Int(1) << s.size());
}

Rat dyadicRight(const BitString& s) { return dyadicLeft(s) + pow2(-static_cast<long>(s.size())); }

Rat dyadicMid(const BitString& s) { return dyadicLeft(s) + pow2(-static_cast<long>(s.size()) - 1); }

PointGauge pointGauge(const ContCode& delta, std::size_t budget) {
  return [delta, budget](const Rat& x, std::size_t n) {
    return evalAt(delta, FastReal::fromRational(x), n, budget);
  };
}

CousinTree cousinSearch(const PointGauge& delta, std::size_t maxDepth) {
  CousinTree tree;
  std::vector<BitString> candidates{BitString()};
  for (std::size_t n = 0;; ++n) {
    std::vector<BitString> level;
    Rat bound = pow2(1 - static_cast<long>(n));
    for (const auto& s : candidates) {
      auto v = delta(dyadicMid(s), n);
      if (!v) throw GaugeEvaluationError("gauge evaluation failed at midpoint of '" + s + "'", s);
      if (*v <= bound) {
        level.push_back(s);
      } else {
        tree.frontier.push_back(s);
      }
    }
    tree.levels.push_back(level);
    if (level.empty()) {
      tree.status = CousinTree::Status::Finished;
      tree.depth = n;
      break;
    }
    if (n == maxDepth) {
      tree.status = CousinTree::Status::DepthExhausted;
      tree.depth = n;
      tree.chain = level.front();
      break;
    }
    candidates.clear();
    for (const auto& s : level) {
      candidates.push_back(s + '0');
      candidates.push_back(s + '1');
    }
  }
  std::sort(tree.frontier.begin(), tree.frontier.end());
  return tree;
}

TaggedPartition frontierPartition(const CousinTree& tree) {
  if (tree.status != CousinTree::Status::Finished) {
    throw std::invalid_argument("frontierPartition: search did not finish");
  }
  std::vector<Rat> points;
  std::vector<TagPoint> tags;
  for (const auto& s : tree.frontier) {
    points.push_back(dyadicLeft(s));
    tags.push_back(TagPoint::rational(dyadicMid(s)));
  }
  points.push_back(Rat(1));
  return mkPartition(std::move(points), std::move(tags));
}

Rat spikePartialSum(const std::vector<ContCode>& spikes, const FastReal& r, std::size_t e) {
  Rat q = r.approx(e);
  Rat y = 0;
  for (std::size_t n = 0; n <= e && n < spikes.size(); ++n) {
    y += pow2(-static_cast<long>(n) - 2) * *exactValue(spikes[n], q);
  }
  return y;
}

SubcoverResult extractSubcover(const std::vector<IntervalUI>& cover, const TaggedPartition& p,
                               std::size_t gridExp) {
  std::vector<ContCode> spikes;
  for (const auto& u : cover) spikes.push_back(mkCoverSpike(u));
  const std::size_t cap = std::size_t(1) << 16;

  SubcoverResult res;
  for (std::size_t j = 0; j < p.size(); ++j) {
    FastReal r = p.tags[j].real();
    std::optional<std::size_t> e;
    for (std::size_t k = 0; k <= cap && !e; ++k) {
      // y_k >= (3k+1) 2^{-k-1}
      if (spikePartialSum(spikes, r, k) >= Rat(3 * k + 1) * pow2(-static_cast<long>(k) - 1)) e = k;
    }
    if (!e) throw std::runtime_error("subcover index search passed 2^16 at tag " + std::to_string(j));
    Rat qe = r.approx(*e);
    Rat threshold = Rat(3 * *e + 1) * pow2(-static_cast<long>(*e));
    std::optional<std::size_t> m;
    for (std::size_t i = 0; i <= *e && i < spikes.size() && !m; ++i) {
      if (*exactValue(spikes[i], qe) > threshold) m = i;
    }
    if (!m) throw std::runtime_error("no spike index at tag " + std::to_string(j));
    res.perTag.push_back(*m);
    res.eValues.push_back(*e);
  }
  res.indices = res.perTag;
  std::sort(res.indices.begin(), res.indices.end());
  res.indices.erase(std::unique(res.indices.begin(), res.indices.end()), res.indices.end());

  // Every grid point of block j must lie in U_{m_j}.
  const Int gridN = Int(1) << gridExp;
  res.gridCovered = true;
  for (std::size_t j = 0; j < p.size() && res.gridCovered; ++j) {
    Int first = ceilRat(p.points[j] * Rat(gridN));
    Int last = floorRat(p.points[j + 1] * Rat(gridN));
    for (Int i = first; i <= last; ++i) {
      if (!memberExact(Rat(i, gridN), cover[res.perTag[j]])) {
        res.gridCovered = false;
        break;
      }
    }
  }
  return res;
}

}  // namespace gaugeint
