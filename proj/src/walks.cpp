#include "prism/walks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "prism/rng.hpp"

namespace prism {

void WalkConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (length < 1) throw std::invalid_argument("walk length must be at least 1");
  if (num_walks < 1) throw std::invalid_argument("walk count must be at least 1");
  if (top_k < 1) throw std::invalid_argument("top_k must be at least 1");
}

double p_star(std::size_t labels, std::size_t length) {
  if (labels < 1 || length < 1) throw std::invalid_argument("p_star needs labels >= 1 and length >= 1");
  if (labels == 1) return 1.0 + static_cast<double>(length);
  const double e = static_cast<double>(labels);
  return 1.0 + e * (std::pow(e, static_cast<double>(length)) - 1.0) / (e - 1.0);
}

namespace {

double tht_walk_term(double epsilon, std::size_t length) {
  const double span = static_cast<double>(length) - 1.0;
  return span * span / (4.0 * epsilon * epsilon);
}

std::uint64_t checked_ceil(double value) {
  if (!std::isfinite(value) || value > static_cast<double>(kMaxWalkCount))
    throw std::overflow_error("required walk count exceeds 2^48");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(value)));
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
}

}  // namespace

std::uint64_t optimal_walk_count(double epsilon, std::size_t labels, std::size_t length) {
  check_epsilon(epsilon);
  const double p = p_star(labels, length);
  const double path_term = p * (kEulerGamma + std::log(p)) / (epsilon * epsilon);
  return checked_ceil(std::max(tht_walk_term(epsilon, length), path_term));
}

std::uint64_t topk_walk_count(double epsilon, std::size_t labels, std::size_t length, std::size_t k) {
  check_epsilon(epsilon);
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const double p = p_star(labels, length);
  const double path_term =
      (static_cast<double>(k + 1) * (kEulerGamma + std::log(p)) - 1.0) / (epsilon * epsilon);
  return checked_ceil(std::max(tht_walk_term(epsilon, length), path_term));
}

WalkStats::WalkStats(NodeId source, std::size_t length, std::uint64_t num_walks,
                     std::vector<PathSignature> signatures, std::vector<TargetStats> targets)
    : source_(source),
      length_(length),
      num_walks_(num_walks),
      signatures_(std::move(signatures)),
      targets_(std::move(targets)) {
  if (source_ >= targets_.size()) throw std::invalid_argument("source is not a node of the walk stats");
  for (const auto& t : targets_) {
    std::uint64_t total = 0;
    for (const auto& c : t.counts) {
      const auto& sig = signatures_.at(c.signature);
      if (sig.is_null() || sig.length() > length_)
        throw std::invalid_argument("signature length must lie in 1..L");
      total += c.count;
    }
    if (total != t.hits || t.hits > num_walks_)
      throw std::invalid_argument("signature counts must sum to hits <= N");
  }
}

std::map<PathSignature, std::uint64_t> WalkStats::signature_counts(NodeId node) const {
  std::map<PathSignature, std::uint64_t> out;
  const auto& t = target(node);
  for (const auto& c : t.counts) out[signatures_[c.signature]] += c.count;
  if (node != source_ && t.hits < num_walks_) out[PathSignature{}] += num_walks_ - t.hits;
  return out;
}

std::vector<NodeId> WalkStats::reached() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < targets_.size(); ++v)
    if (v != source_ && targets_[v].hits > 0) out.push_back(v);
  return out;
}

std::vector<NodeId> WalkStats::unreached() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < targets_.size(); ++v)
    if (v != source_ && targets_[v].hits == 0) out.push_back(v);
  return out;
}

namespace {

/// Interns signatures as a trie: a signature is its parent plus one label.
class SignatureTrie {
 public:
  SignatureTrie() : children_(1) {}

  SignatureId child(SignatureId parent, LabelId label) {
    for (const auto& [l, id] : children_[parent])
      if (l == label) return id;
    const auto id = static_cast<SignatureId>(children_.size());
    children_.emplace_back();
    parent_.push_back(parent);
    label_.push_back(label);
    children_[parent].emplace_back(label, id);
    return id;
  }

  std::size_t size() const { return children_.size(); }

  PathSignature materialize(SignatureId id) const {
    std::vector<LabelId> labels;
    while (id != 0) {
      labels.push_back(label_[id - 1]);
      id = parent_[id - 1];
    }
    std::reverse(labels.begin(), labels.end());
    return PathSignature(std::move(labels));
  }

 private:
  std::vector<std::vector<std::pair<LabelId, SignatureId>>> children_;
  std::vector<SignatureId> parent_;  // indexed by id - 1
  std::vector<LabelId> label_;
};

}  // namespace

WalkStats run_walks(const LabeledHypergraph& h, NodeId source, const WalkConfig& cfg) {
  cfg.validate();
  const std::size_t n = h.node_count();
  if (source >= n) throw std::invalid_argument("source is not a node of the hypergraph");
  if (h.incident(source).empty()) throw std::invalid_argument("source has no incident edges");

  Rng rng(stream_seed(cfg.seed, source));
  SignatureTrie trie;
  constexpr auto kNever = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> last_walk(n, kNever);
  std::vector<std::uint64_t> hits(n, 0), time_sum(n, 0), time_sq_sum(n, 0);
  std::vector<std::unordered_map<SignatureId, std::uint64_t>> counts(n);

  for (std::uint64_t w = 0; w < cfg.num_walks; ++w) {
    NodeId at = source;
    SignatureId sig = 0;
    last_walk[source] = w;
    for (std::uint64_t step = 1; step <= cfg.length; ++step) {
      const auto incident = h.incident(at);
      const auto& edge = h.edge(incident[rng.below(incident.size())]);
      if (edge.nodes.size() > 1) {
        // Uniform over the members other than `at`.
        const auto self = static_cast<std::size_t>(
            std::lower_bound(edge.nodes.begin(), edge.nodes.end(), at) - edge.nodes.begin());
        std::size_t pick = rng.below(edge.nodes.size() - 1);
        if (pick >= self) ++pick;
        at = edge.nodes[pick];
      }
      sig = trie.child(sig, edge.label);
      if (last_walk[at] != w) {
        last_walk[at] = w;
        ++hits[at];
        time_sum[at] += step;
        time_sq_sum[at] += step * step;
        ++counts[at][sig];
      }
    }
  }

  std::vector<PathSignature> signatures;
  signatures.reserve(trie.size());
  for (SignatureId id = 0; id < trie.size(); ++id) signatures.push_back(trie.materialize(id));

  const double big_n = static_cast<double>(cfg.num_walks);
  const double len = static_cast<double>(cfg.length);
  std::vector<TargetStats> targets(n);
  for (NodeId v = 0; v < n; ++v) {
    if (v == source) continue;
    auto& t = targets[v];
    t.hits = hits[v];
    const double misses = big_n - static_cast<double>(hits[v]);
    const double sum = static_cast<double>(time_sum[v]) + misses * len;
    const double sq = static_cast<double>(time_sq_sum[v]) + misses * len * len;
    t.tht_estimate = sum / big_n;
    t.tht_sample_sd = cfg.num_walks > 1
                          ? std::sqrt(std::max(0.0, (sq - sum * sum / big_n) / (big_n - 1.0)))
                          : 0.0;
    t.counts.reserve(counts[v].size());
    for (const auto& [s, c] : counts[v]) t.counts.push_back({s, c});
    std::sort(t.counts.begin(), t.counts.end(),
              [](const SignatureCount& a, const SignatureCount& b) { return a.signature < b.signature; });
  }
  return WalkStats(source, cfg.length, cfg.num_walks, std::move(signatures), std::move(targets));
}

std::vector<double> exact_tht(const LabeledHypergraph& h, NodeId source, std::size_t length) {
  const std::size_t n = h.node_count();
  if (source >= n) throw std::invalid_argument("source is not a node of the hypergraph");

  // Transition rows: (next node, probability), accumulated per pair.
  std::vector<std::vector<std::pair<NodeId, double>>> rows(n);
  for (NodeId v = 0; v < n; ++v) {
    std::map<NodeId, double> row;
    const auto incident = h.incident(v);
    for (EdgeId e : incident) {
      const auto& nodes = h.edge(e).nodes;
      const double pe = 1.0 / static_cast<double>(incident.size());
      if (nodes.size() == 1) {
        row[v] += pe;
        continue;
      }
      for (NodeId w : nodes)
        if (w != v) row[w] += pe / static_cast<double>(nodes.size() - 1);
    }
    rows[v].assign(row.begin(), row.end());
  }

  // E[min(tau, L)] = sum_{t=0}^{L-1} P(tau > t), with the walk absorbed at
  // the target.
  std::vector<double> out(n, 0.0);
  std::vector<double> mass(n), next(n);
  for (NodeId target = 0; target < n; ++target) {
    if (target == source) continue;
    std::fill(mass.begin(), mass.end(), 0.0);
    mass[source] = 1.0;
    double total = 0.0;
    for (std::size_t t = 0; t < length; ++t) {
      double alive = 0.0;
      for (double m : mass) alive += m;
      total += alive;
      std::fill(next.begin(), next.end(), 0.0);
      for (NodeId v = 0; v < n; ++v) {
        if (mass[v] == 0.0) continue;
        for (const auto& [w, p] : rows[v])
          if (w != target) next[w] += mass[v] * p;
      }
      mass.swap(next);
    }
    out[target] = total;
  }
  return out;
}

}  // namespace prism
