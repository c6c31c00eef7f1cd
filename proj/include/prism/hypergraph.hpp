#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace prism {

using NodeId = std::uint32_t;
using LabelId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Hyperedge {
  LabelId label = 0;
  std::vector<NodeId> nodes;  // sorted, unique, non-empty
  /// Members in the order they were given (atom argument order, duplicates
  /// kept). Only serialization reads this.
  std::vector<NodeId> arguments;

  std::size_t cardinality() const { return nodes.size(); }
};

/// Labeled hypergraph with an incidence index.
///
/// Nodes and labels carry names so sub-hypergraphs and reports can always be
/// mapped back to the constants and predicates of the source database. Node
/// ids are dense and assigned in insertion order; edges keep their member ids
/// sorted. Once built, a hypergraph is only read, so it can be shared between
/// worker threads without synchronization.
class LabeledHypergraph {
 public:
  /// Returns the id of `name`, inserting it if it is new.
  NodeId add_node(std::string_view name);
  LabelId add_label(std::string_view name);

  /// Adds an edge over `nodes`. The member set is deduplicated and sorted;
  /// the given order is kept as the edge's argument list. Throws
  /// std::invalid_argument for an empty node list or unknown ids.
  EdgeId add_edge(LabelId label, std::vector<NodeId> nodes);

  std::size_t node_count() const { return node_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  /// Size of the label alphabet.
  std::size_t label_count() const { return label_names_.size(); }
  bool empty() const { return node_names_.empty(); }

  const std::string& node_name(NodeId id) const { return node_names_.at(id); }
  const std::string& label_name(LabelId id) const { return label_names_.at(id); }
  std::optional<NodeId> find_node(std::string_view name) const;
  std::optional<LabelId> find_label(std::string_view name) const;

  const Hyperedge& edge(EdgeId id) const { return edges_.at(id); }
  std::span<const Hyperedge> edges() const { return edges_; }
  std::span<const EdgeId> incident(NodeId id) const { return incidence_.at(id); }

 private:
  std::vector<std::string> node_names_;
  std::vector<std::string> label_names_;
  std::unordered_map<std::string, NodeId> node_index_;
  std::unordered_map<std::string, LabelId> label_index_;
  std::vector<Hyperedge> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
};

/// Undirected graph with strictly positive accumulated pair weights.
class WeightedGraph {
 public:
  struct Neighbor {
    NodeId node;
    double weight;
  };
  struct Pair {
    NodeId a;
    NodeId b;
    double weight;
  };

  WeightedGraph() = default;
  /// Builds the graph from weighted pairs; repeated pairs accumulate.
  /// Self-loops and non-positive weights are rejected.
  WeightedGraph(std::size_t n, std::span<const Pair> pairs);

  std::size_t size() const { return adjacency_.size(); }
  std::span<const Neighbor> neighbors(NodeId i) const { return adjacency_.at(i); }
  double weight(NodeId i, NodeId j) const;
  double degree(NodeId i) const { return degree_.at(i); }
  double total_weight() const;

  /// Subgraph induced by `nodes`; node k of the result is nodes[k].
  WeightedGraph induced(std::span<const NodeId> nodes) const;

  /// Connected components as sorted node lists, ordered by smallest member.
  std::vector<std::vector<NodeId>> components() const;

 private:
  std::vector<std::vector<Neighbor>> adjacency_;  // sorted by node
  std::vector<double> degree_;
};

/// Length, in traversed edges, of the longest shortest path between two
/// connected nodes. Disconnected pairs are ignored, so a disconnected
/// hypergraph reports the largest component diameter.
std::size_t diameter(const LabeledHypergraph& h);

/// Clique expansion: each edge of cardinality c >= 2 adds 1/(c-1) to every
/// member pair.
WeightedGraph to_weighted_graph(const LabeledHypergraph& h);

/// Pair weight contributed by one hyperedge of the given cardinality.
double clique_pair_weight(std::size_t cardinality);

/// Sub-hypergraph holding the listed edges of `h`. Nodes keep the relative
/// order of their ids in `h`; `extra_nodes` are included even if no listed
/// edge touches them. Only labels that occur in the listed edges are kept.
LabeledHypergraph sub_hypergraph(const LabeledHypergraph& h,
                                 std::span<const EdgeId> edges,
                                 std::span<const NodeId> extra_nodes = {});

/// Rebuilds one hypergraph per part. An edge goes to the part holding a
/// strict majority of its members; with no such part, to the part holding
/// its lowest node id. Out-of-part members of an assigned edge join that
/// part's hypergraph. Throws std::invalid_argument if `parts` is not a
/// partition of the nodes of `h`.
std::vector<LabeledHypergraph> majority_subhypergraph(
    const LabeledHypergraph& h, std::span<const std::vector<NodeId>> parts);

/// Maximal connected sub-hypergraphs, ordered by smallest node id.
std::vector<LabeledHypergraph> connected_components(const LabeledHypergraph& h);

}  // namespace prism
