#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "prism/hypergraph.hpp"
#include "prism/hypothesis.hpp"

namespace prism {

struct RunConfig {
  double epsilon = 0.1;
  double alpha = 0.01;
  std::size_t top_k = 3;
  std::size_t proj_dim = 2;
  double lambda2_max = 0.8;
  std::size_t n_min = 8;
  /// Upper bound on the walk length; 0 disables the cap.
  std::size_t length_cap = 5;
  std::uint64_t seed = 0;
  /// Worker threads; never changes the result.
  std::size_t threads = 1;
  bool hcluster = true;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
  /// Equality over the fields that reach the report (all but `threads`).
  bool same_settings(const RunConfig& other) const;
};

struct ConceptEntry {
  std::vector<std::string> members;
  /// Representative hitting time of the distance set the concept came from.
  double parent_tht = 0.0;
  std::vector<LengthTest> tests;

  bool operator==(const ConceptEntry&) const = default;
};

struct SourceEntry {
  std::string source;
  std::vector<std::string> unreached;
  std::vector<ConceptEntry> concepts;

  bool operator==(const SourceEntry&) const = default;
};

struct SubhypergraphEntry {
  std::size_t id = 0;
  std::vector<std::string> nodes;
  std::size_t edges = 0;
  std::size_t diameter = 0;
  std::size_t length = 0;
  std::uint64_t num_walks = 0;
  std::vector<SourceEntry> sources;

  bool operator==(const SubhypergraphEntry&) const = default;
};

/// Seconds spent per stage, summed over worker threads.
struct StageTimes {
  double partition = 0.0;
  double walks = 0.0;
  double clustering = 0.0;
};

struct ConceptReport {
  std::optional<RunConfig> config;
  std::vector<SubhypergraphEntry> subhypergraphs;
  /// Not serialized; excluded from equality.
  StageTimes times;

  bool operator==(const ConceptReport& other) const;
};

/// Connected components, optional spectral clustering of each, then per
/// sub-hypergraph: L = min(diameter, cap), N = topk_walk_count, and for every
/// source node walks, distance sets and path-symmetric concepts.
///
/// Sub-hypergraphs are ordered by component, then by smallest member;
/// sources by node id; concepts by parent set, then smallest member. Work
/// items run on `cfg.threads` threads and each owns its random stream, so
/// the report does not depend on the thread count. Progress lines go to
/// `log` when given.
ConceptReport get_communities(const LabeledHypergraph& h, const RunConfig& cfg, std::ostream* log = nullptr);

}  // namespace prism
