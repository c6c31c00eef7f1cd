#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "prism/hypergraph.hpp"

namespace prism {

/// Raised when an iterative eigensolver misses its tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpectralConfig {
  /// Recursion stops once the second Laplacian eigenvalue exceeds this.
  double lambda2_max = 0.8;
  /// Cuts that leave a side with fewer nodes than this are rejected.
  std::size_t n_min = 8;
  double eig_tolerance = 1e-8;
  std::size_t eig_max_iters = 10000;
  /// Seeds the deterministic start vector of the power iteration.
  std::uint64_t eig_seed = 0x9e3779b97f4a7c15ULL;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;  // unit norm
};

/// Second smallest eigenpair of L_sym = I - D^-1/2 W D^-1/2.
///
/// Power iteration on 2I - L_sym (positive semi-definite, same
/// eigenvectors) with the trivial eigenvector D^1/2 1 projected out after
/// every step. The returned vector has its first non-negligible component
/// positive. Throws std::invalid_argument for graphs with fewer than two
/// nodes or that are disconnected, NonConvergence when the residual
/// ||L_sym v - lambda v|| stays above `eig_tolerance`.
Eigenpair second_eigenpair(const WeightedGraph& g, const SpectralConfig& cfg);

struct SweepCut {
  std::vector<NodeId> side;        // sorted
  std::vector<NodeId> complement;  // sorted
  double conductance = 0.0;
};

/// cut(S) / min(vol(S), vol(V \ S)) with weighted-degree volumes.
double conductance(const WeightedGraph& g, std::span<const NodeId> side);

/// Best of the n-1 prefix sets of the nodes ordered by `v2` (ties by id).
SweepCut cheeger_sweep_cut(const WeightedGraph& g, std::span<const double> v2);

/// Recursive spectral bipartition; returns leaf node sets ordered by their
/// smallest member. A disconnected (sub)graph is cut between its first
/// component and the rest, with the same size rule as a sweep cut.
std::vector<std::vector<NodeId>> get_clusters(const WeightedGraph& g, const SpectralConfig& cfg);

/// Clique expansion, recursive clustering, then majority-rule conversion of
/// the node clusters back into sub-hypergraphs.
std::vector<LabeledHypergraph> hcluster(const LabeledHypergraph& h, const SpectralConfig& cfg);

}  // namespace prism
