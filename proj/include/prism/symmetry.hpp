#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "prism/hypergraph.hpp"
#include "prism/hypothesis.hpp"
#include "prism/walks.hpp"

namespace prism {

struct DistanceSet {
  std::vector<NodeId> members;  // sorted by id
  /// Mean of the members' estimated hitting times.
  double representative_tht = 0.0;
};

struct DistancePartition {
  /// Ordered by increasing hitting time.
  std::vector<DistanceSet> sets;
  /// Non-source nodes no walk reached; they belong to no set.
  std::vector<NodeId> unreached;
  double theta = 0.0;
};

/// Single-linkage sweep over the reached nodes sorted by hitting time (ties
/// by id): a gap above theta_sym(alpha, L, N) starts a new set.
DistancePartition partition_distance_symmetric(const WalkStats& stats, double alpha);

/// Same sweep with an explicit threshold.
DistancePartition partition_distance_symmetric_at(const WalkStats& stats, double theta);

/// Row-major n x d matrix of projected points.
using PointMatrix = std::vector<std::vector<double>>;

/// Standardizes every column of `rows` to zero mean and unit variance,
/// dropping columns with variance below 1e-12, and returns the scores on the
/// top `dim` principal components. Missing components are zero.
PointMatrix standardize_and_project(const std::vector<std::vector<double>>& rows, std::size_t dim);

/// 2-means on the given rows of `points`. Seeds are the point farthest from
/// the centroid and the point farthest from that one; at most 100 Lloyd
/// rounds; equal distances go to the first seed. Returns positions into
/// `subset`, sorted, with the part holding subset[0] first. Coincident
/// points are split into halves by position.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> binary_split(
    const PointMatrix& points, std::span<const std::size_t> subset);

/// Convenience overload over all rows.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> binary_split(const PointMatrix& points);

struct SymmetryOptions {
  std::size_t proj_dim = 2;
  PathTestOptions path_test;
};

/// Splits `members` (all distinct from the source) into path-symmetric sets:
/// the whole set if it passes, otherwise a worklist of binary splits of the
/// projected signature counts, keeping sides that pass or are singletons.
/// Output sets are sorted and ordered by smallest member.
std::vector<std::vector<NodeId>> prism_paths(std::span<const NodeId> members, const WalkStats& stats,
                                             double alpha, const SymmetryOptions& opts = {});

struct Concept {
  std::vector<NodeId> members;
  std::size_t parent = 0;  // index into DistancePartition::sets
  /// Path test of the final cluster, from length L down; empty for singletons.
  std::vector<LengthTest> tests;
};

struct SymmetryPartition {
  NodeId source = 0;
  DistancePartition distance;
  /// Ordered by parent set, then smallest member.
  std::vector<Concept> concepts;
};

/// Distance sets followed by prism_paths on each set.
SymmetryPartition symmetry_cluster(const WalkStats& stats, double alpha, const SymmetryOptions& opts = {});

}  // namespace prism
