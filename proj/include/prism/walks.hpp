#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "prism/hypergraph.hpp"

namespace prism {

/// Euler-Mascheroni constant as used by the walk-count bounds.
inline constexpr double kEulerGamma = 0.5772156649;

/// Walk counts above this are rejected as overflow.
inline constexpr std::uint64_t kMaxWalkCount = std::uint64_t{1} << 48;

struct WalkConfig {
  double epsilon = 0.1;
  std::size_t length = 1;
  std::uint64_t num_walks = 1;
  std::size_t top_k = 3;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Upper bound on the number of distinct signatures of length <= L over an
/// alphabet of `labels`, counting the null path: 1 + sum_{l=1..L} e^l.
double p_star(std::size_t labels, std::size_t length);

/// Walks needed for expected relative error <= epsilon on every hitting time
/// and every path probability:
/// ceil(max{(L-1)^2 / (4 eps^2), P* (gamma + ln P*) / eps^2}).
std::uint64_t optimal_walk_count(double epsilon, std::size_t labels, std::size_t length);

/// Walks needed for the k-th most probable path:
/// ceil(((k+1)(gamma + ln P*) - 1) / eps^2), never below the hitting-time
/// term ceil((L-1)^2 / (4 eps^2)).
std::uint64_t topk_walk_count(double epsilon, std::size_t labels, std::size_t length, std::size_t k);

/// Ordered sequence of edge labels; the empty sequence is the null path.
class PathSignature {
 public:
  PathSignature() = default;
  explicit PathSignature(std::vector<LabelId> labels) : labels_(std::move(labels)) {}

  std::span<const LabelId> labels() const { return labels_; }
  std::size_t length() const { return labels_.size(); }
  bool is_null() const { return labels_.empty(); }

  auto operator<=>(const PathSignature&) const = default;

 private:
  std::vector<LabelId> labels_;
};

using SignatureId = std::uint32_t;

struct SignatureCount {
  SignatureId signature;
  std::uint64_t count;
};

struct TargetStats {
  double tht_estimate = 0.0;
  double tht_sample_sd = 0.0;
  std::uint64_t hits = 0;
  std::vector<SignatureCount> counts;  // sorted by signature id, counts > 0
};

/// Truncated-hitting-time estimates and first-hit signature counts of N
/// walks of length L from one source.
///
/// Signatures are interned in a table shared by all targets; ids are only
/// meaningful within one WalkStats. The source's own entry has no hits and
/// a zero hitting time.
class WalkStats {
 public:
  WalkStats() = default;
  /// Throws std::invalid_argument if the per-target invariants do not hold
  /// (counts summing to hits, hits <= N, signature lengths within 1..L).
  WalkStats(NodeId source, std::size_t length, std::uint64_t num_walks,
            std::vector<PathSignature> signatures, std::vector<TargetStats> targets);

  NodeId source() const { return source_; }
  std::size_t length() const { return length_; }
  std::uint64_t num_walks() const { return num_walks_; }
  std::size_t node_count() const { return targets_.size(); }

  const TargetStats& target(NodeId node) const { return targets_.at(node); }
  const PathSignature& signature(SignatureId id) const { return signatures_.at(id); }
  std::size_t signature_count() const { return signatures_.size(); }

  /// Counts keyed by signature, plus the null path for walks that never hit.
  std::map<PathSignature, std::uint64_t> signature_counts(NodeId node) const;

  /// Non-source nodes with at least one hit, in id order.
  std::vector<NodeId> reached() const;
  /// Non-source nodes never hit, in id order.
  std::vector<NodeId> unreached() const;

 private:
  NodeId source_ = 0;
  std::size_t length_ = 0;
  std::uint64_t num_walks_ = 0;
  std::vector<PathSignature> signatures_;
  std::vector<TargetStats> targets_;
};

/// Runs `cfg.num_walks` walks of `cfg.length` steps from `source`.
///
/// One step picks an incident edge uniformly, then a member of it other than
/// the current node uniformly (a single-node edge keeps the walker in place).
/// Each node is credited only at its first hit within a walk. The random
/// stream depends on (cfg.seed, source) alone.
WalkStats run_walks(const LabeledHypergraph& h, NodeId source, const WalkConfig& cfg);

/// Exact truncated hitting times E[min(tau_j, L)] from `source` to every
/// node under the walk of run_walks; zero for the source itself.
std::vector<double> exact_tht(const LabeledHypergraph& h, NodeId source, std::size_t length);

}  // namespace prism
