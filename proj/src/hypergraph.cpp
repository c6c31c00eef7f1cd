#include "prism/hypergraph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace prism {

NodeId LabeledHypergraph::add_node(std::string_view name) {
  auto it = node_index_.find(std::string(name));
  if (it != node_index_.end()) return it->second;
  const auto id = static_cast<NodeId>(node_names_.size());
  node_names_.emplace_back(name);
  node_index_.emplace(std::string(name), id);
  incidence_.emplace_back();
  return id;
}

LabelId LabeledHypergraph::add_label(std::string_view name) {
  auto it = label_index_.find(std::string(name));
  if (it != label_index_.end()) return it->second;
  const auto id = static_cast<LabelId>(label_names_.size());
  label_names_.emplace_back(name);
  label_index_.emplace(std::string(name), id);
  return id;
}

EdgeId LabeledHypergraph::add_edge(LabelId label, std::vector<NodeId> nodes) {
  if (nodes.empty()) throw std::invalid_argument("hyperedge must contain at least one node");
  if (label >= label_names_.size()) throw std::invalid_argument("unknown label id");
  std::vector<NodeId> arguments = nodes;
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (nodes.back() >= node_names_.size()) throw std::invalid_argument("unknown node id");
  const auto id = static_cast<EdgeId>(edges_.size());
  for (NodeId v : nodes) incidence_[v].push_back(id);
  edges_.push_back(Hyperedge{label, std::move(nodes), std::move(arguments)});
  return id;
}

std::optional<NodeId> LabeledHypergraph::find_node(std::string_view name) const {
  auto it = node_index_.find(std::string(name));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<LabelId> LabeledHypergraph::find_label(std::string_view name) const {
  auto it = label_index_.find(std::string(name));
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

WeightedGraph::WeightedGraph(std::size_t n, std::span<const Pair> pairs)
    : adjacency_(n), degree_(n, 0.0) {
  for (const auto& p : pairs) {
    if (p.a >= n || p.b >= n) throw std::invalid_argument("pair endpoint out of range");
    if (p.a == p.b) throw std::invalid_argument("self-loops are not allowed");
    if (!(p.weight > 0.0)) throw std::invalid_argument("pair weights must be positive");
    adjacency_[p.a].push_back({p.b, p.weight});
    adjacency_[p.b].push_back({p.a, p.weight});
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = adjacency_[i];
    std::sort(row.begin(), row.end(),
              [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
    std::vector<Neighbor> merged;
    merged.reserve(row.size());
    for (const auto& nb : row) {
      if (!merged.empty() && merged.back().node == nb.node)
        merged.back().weight += nb.weight;
      else
        merged.push_back(nb);
    }
    row = std::move(merged);
    for (const auto& nb : row) degree_[i] += nb.weight;
  }
}

double WeightedGraph::weight(NodeId i, NodeId j) const {
  const auto& row = adjacency_.at(i);
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const Neighbor& nb, NodeId v) { return nb.node < v; });
  return (it != row.end() && it->node == j) ? it->weight : 0.0;
}

double WeightedGraph::total_weight() const {
  return std::accumulate(degree_.begin(), degree_.end(), 0.0) / 2.0;
}

WeightedGraph WeightedGraph::induced(std::span<const NodeId> nodes) const {
  std::vector<NodeId> local(size(), std::numeric_limits<NodeId>::max());
  for (std::size_t k = 0; k < nodes.size(); ++k) local.at(nodes[k]) = static_cast<NodeId>(k);
  std::vector<Pair> pairs;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    for (const auto& nb : adjacency_[nodes[k]]) {
      const NodeId other = local[nb.node];
      if (other != std::numeric_limits<NodeId>::max() && other > k)
        pairs.push_back({static_cast<NodeId>(k), other, nb.weight});
    }
  }
  return WeightedGraph(nodes.size(), pairs);
}

std::vector<std::vector<NodeId>> WeightedGraph::components() const {
  std::vector<std::vector<NodeId>> out;
  std::vector<char> seen(size(), 0);
  for (NodeId start = 0; start < size(); ++start) {
    if (seen[start]) continue;
    std::vector<NodeId> comp{start};
    seen[start] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (const auto& nb : adjacency_[comp[head]]) {
        if (!seen[nb.node]) {
          seen[nb.node] = 1;
          comp.push_back(nb.node);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::size_t diameter(const LabeledHypergraph& h) {
  const std::size_t n = h.node_count();
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(n);
  std::vector<char> edge_done(h.edge_count());
  std::size_t best = 0;
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    std::fill(edge_done.begin(), edge_done.end(), 0);
    std::deque<NodeId> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop_front();
      // An edge only needs expanding from the first member that reaches it.
      for (EdgeId e : h.incident(v)) {
        if (edge_done[e]) continue;
        edge_done[e] = 1;
        for (NodeId w : h.edge(e).nodes) {
          if (dist[w] == kUnseen) {
            dist[w] = dist[v] + 1;
            best = std::max(best, dist[w]);
            queue.push_back(w);
          }
        }
      }
    }
  }
  return best;
}

double clique_pair_weight(std::size_t cardinality) {
  return cardinality < 2 ? 0.0 : 1.0 / static_cast<double>(cardinality - 1);
}

WeightedGraph to_weighted_graph(const LabeledHypergraph& h) {
  std::vector<WeightedGraph::Pair> pairs;
  for (const auto& e : h.edges()) {
    const double w = clique_pair_weight(e.cardinality());
    for (std::size_t a = 0; a < e.nodes.size(); ++a)
      for (std::size_t b = a + 1; b < e.nodes.size(); ++b)
        pairs.push_back({e.nodes[a], e.nodes[b], w});
  }
  return WeightedGraph(h.node_count(), pairs);
}

LabeledHypergraph sub_hypergraph(const LabeledHypergraph& h, std::span<const EdgeId> edges,
                                 std::span<const NodeId> extra_nodes) {
  std::vector<NodeId> members(extra_nodes.begin(), extra_nodes.end());
  std::vector<EdgeId> sorted_edges(edges.begin(), edges.end());
  std::sort(sorted_edges.begin(), sorted_edges.end());
  for (EdgeId e : sorted_edges)
    members.insert(members.end(), h.edge(e).nodes.begin(), h.edge(e).nodes.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  std::vector<LabelId> labels;
  for (EdgeId e : sorted_edges) labels.push_back(h.edge(e).label);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  LabeledHypergraph out;
  std::unordered_map<NodeId, NodeId> local;
  for (NodeId v : members) local.emplace(v, out.add_node(h.node_name(v)));
  std::unordered_map<LabelId, LabelId> local_label;
  for (LabelId l : labels) local_label.emplace(l, out.add_label(h.label_name(l)));
  for (EdgeId e : sorted_edges) {
    const auto& edge = h.edge(e);
    std::vector<NodeId> nodes;
    nodes.reserve(edge.arguments.size());
    for (NodeId v : edge.arguments) nodes.push_back(local.at(v));
    out.add_edge(local_label.at(edge.label), std::move(nodes));
  }
  return out;
}

std::vector<LabeledHypergraph> majority_subhypergraph(
    const LabeledHypergraph& h, std::span<const std::vector<NodeId>> parts) {
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> owner(h.node_count(), kNone);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (NodeId v : parts[p]) {
      if (v >= h.node_count()) throw std::invalid_argument("part references an unknown node");
      if (owner[v] != kNone) throw std::invalid_argument("parts overlap");
      owner[v] = p;
    }
  }
  if (std::find(owner.begin(), owner.end(), kNone) != owner.end())
    throw std::invalid_argument("parts do not cover every node");

  std::vector<std::vector<EdgeId>> assigned(parts.size());
  std::vector<std::size_t> tally(parts.size(), 0);
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    const auto& nodes = h.edge(e).nodes;
    std::fill(tally.begin(), tally.end(), 0);
    std::size_t target = owner[nodes.front()];  // lowest node id: members are sorted
    for (NodeId v : nodes) {
      if (2 * ++tally[owner[v]] > nodes.size()) {
        target = owner[v];
        break;
      }
    }
    assigned[target].push_back(e);
  }

  std::vector<LabeledHypergraph> out;
  out.reserve(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p) {
    std::vector<NodeId> own(parts[p]);
    out.push_back(sub_hypergraph(h, assigned[p], own));
  }
  return out;
}

std::vector<LabeledHypergraph> connected_components(const LabeledHypergraph& h) {
  const std::size_t n = h.node_count();
  std::vector<NodeId> comp_of(n, std::numeric_limits<NodeId>::max());
  std::vector<std::vector<NodeId>> comps;
  for (NodeId s = 0; s < n; ++s) {
    if (comp_of[s] != std::numeric_limits<NodeId>::max()) continue;
    const auto c = static_cast<NodeId>(comps.size());
    std::vector<NodeId> members{s};
    comp_of[s] = c;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (EdgeId e : h.incident(members[head])) {
        for (NodeId w : h.edge(e).nodes) {
          if (comp_of[w] == std::numeric_limits<NodeId>::max()) {
            comp_of[w] = c;
            members.push_back(w);
          }
        }
      }
    }
    comps.push_back(std::move(members));
  }
  std::vector<std::vector<EdgeId>> edges(comps.size());
  for (EdgeId e = 0; e < h.edge_count(); ++e) edges[comp_of[h.edge(e).nodes.front()]].push_back(e);

  std::vector<LabeledHypergraph> out;
  out.reserve(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) out.push_back(sub_hypergraph(h, edges[c], comps[c]));
  return out;
}

}  // namespace prism
