#include "prism/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "prism/rng.hpp"

namespace prism {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void remove_component(std::vector<double>& x, std::span<const double> unit) {
  const double c = dot(x, unit);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * unit[i];
}

bool normalize(std::vector<double>& x) {
  const double norm = std::sqrt(dot(x, x));
  if (norm == 0.0) return false;
  for (double& xi : x) xi /= norm;
  return true;
}

}  // namespace

void SpectralConfig::validate() const {
  if (!(lambda2_max > 0.0 && lambda2_max <= 2.0))
    throw std::invalid_argument("lambda2_max must lie in (0, 2]");
  if (n_min < 2) throw std::invalid_argument("n_min must be at least 2");
  if (!(eig_tolerance > 0.0)) throw std::invalid_argument("eig_tolerance must be positive");
  if (eig_max_iters == 0) throw std::invalid_argument("eig_max_iters must be positive");
}

Eigenpair second_eigenpair(const WeightedGraph& g, const SpectralConfig& cfg) {
  const std::size_t n = g.size();
  if (n < 2) throw std::invalid_argument("second_eigenpair needs at least two nodes");
  if (g.components().size() != 1) throw std::invalid_argument("second_eigenpair needs a connected graph");

  std::vector<double> inv_sqrt_deg(n), trivial(n);
  for (NodeId i = 0; i < n; ++i) {
    trivial[i] = std::sqrt(g.degree(i));
    inv_sqrt_deg[i] = 1.0 / trivial[i];
  }
  normalize(trivial);

  // Applies 2I - L_sym = I + D^-1/2 W D^-1/2.
  const auto apply = [&](std::span<const double> x, std::vector<double>& y) {
    for (NodeId i = 0; i < n; ++i) {
      double acc = 0.0;
      for (const auto& nb : g.neighbors(i)) acc += nb.weight * inv_sqrt_deg[nb.node] * x[nb.node];
      y[i] = x[i] + inv_sqrt_deg[i] * acc;
    }
  };

  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = static_cast<double>(splitmix64(cfg.eig_seed + i) >> 11) * 0x1.0p-53 - 0.5;
  }
  remove_component(x, trivial);
  if (!normalize(x)) {
    x.assign(n, 0.0);
    x[0] = 1.0;
    remove_component(x, trivial);
    normalize(x);
  }

  double shifted = 0.0;
  bool converged = false;
  for (std::size_t iter = 0; iter < cfg.eig_max_iters; ++iter) {
    apply(x, y);
    remove_component(y, trivial);
    shifted = dot(x, y);
    double residual2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual2 += (y[i] - shifted * x[i]) * (y[i] - shifted * x[i]);
    if (std::sqrt(residual2) <= cfg.eig_tolerance) {
      converged = true;
      break;
    }
    x.swap(y);
    normalize(x);
  }
  if (!converged)
    throw NonConvergence("power iteration did not reach tolerance within " +
                         std::to_string(cfg.eig_max_iters) + " iterations");

  for (double xi : x) {
    if (std::abs(xi) > 1e-12) {
      if (xi < 0.0)
        for (double& v : x) v = -v;
      break;
    }
  }
  return Eigenpair{2.0 - shifted, std::move(x)};
}

double conductance(const WeightedGraph& g, std::span<const NodeId> side) {
  std::vector<char> in(g.size(), 0);
  for (NodeId v : side) in.at(v) = 1;
  double vol_side = 0.0, cut = 0.0;
  for (NodeId v : side) {
    vol_side += g.degree(v);
    for (const auto& nb : g.neighbors(v))
      if (!in[nb.node]) cut += nb.weight;
  }
  const double vol_rest = 2.0 * g.total_weight() - vol_side;
  const double denom = std::min(vol_side, vol_rest);
  return denom > 0.0 ? cut / denom : 0.0;
}

SweepCut cheeger_sweep_cut(const WeightedGraph& g, std::span<const double> v2) {
  const std::size_t n = g.size();
  if (n < 2) throw std::invalid_argument("a sweep cut needs at least two nodes");
  if (v2.size() != n) throw std::invalid_argument("eigenvector size does not match the graph");

  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return v2[a] < v2[b]; });

  // Incremental cut and volume as nodes move into the prefix.
  const double total_vol = 2.0 * g.total_weight();
  std::vector<char> in(n, 0);
  double cut = 0.0, vol = 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_len = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const NodeId v = order[k];
    in[v] = 1;
    vol += g.degree(v);
    for (const auto& nb : g.neighbors(v)) cut += in[nb.node] ? -nb.weight : nb.weight;
    const double denom = std::min(vol, total_vol - vol);
    const double phi = denom > 0.0 ? cut / denom : std::numeric_limits<double>::infinity();
    if (phi < best) {
      best = phi;
      best_len = k + 1;
    }
  }

  SweepCut out;
  out.side.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_len));
  out.complement.assign(order.begin() + static_cast<std::ptrdiff_t>(best_len), order.end());
  std::sort(out.side.begin(), out.side.end());
  std::sort(out.complement.begin(), out.complement.end());
  out.conductance = std::isfinite(best) ? best : conductance(g, out.side);
  return out;
}

namespace {

void cluster_into(const WeightedGraph& g, std::span<const NodeId> labels, const SpectralConfig& cfg,
                  std::vector<std::vector<NodeId>>& out) {
  const auto keep_whole = [&] { out.emplace_back(labels.begin(), labels.end()); };
  if (g.size() < 2) return keep_whole();

  std::vector<NodeId> first, second;
  const auto comps = g.components();
  if (comps.size() > 1) {
    first = comps.front();
    for (std::size_t c = 1; c < comps.size(); ++c) second.insert(second.end(), comps[c].begin(), comps[c].end());
    std::sort(second.begin(), second.end());
  } else {
    const auto pair = second_eigenpair(g, cfg);
    if (pair.value > cfg.lambda2_max) return keep_whole();
    auto cut = cheeger_sweep_cut(g, pair.vector);
    first = std::move(cut.side);
    second = std::move(cut.complement);
  }
  if (first.size() < cfg.n_min || second.size() < cfg.n_min) return keep_whole();

  for (const auto* part : {&first, &second}) {
    std::vector<NodeId> sub_labels;
    sub_labels.reserve(part->size());
    for (NodeId v : *part) sub_labels.push_back(labels[v]);
    cluster_into(g.induced(*part), sub_labels, cfg, out);
  }
}

}  // namespace

std::vector<std::vector<NodeId>> get_clusters(const WeightedGraph& g, const SpectralConfig& cfg) {
  cfg.validate();
  std::vector<std::vector<NodeId>> out;
  if (g.size() == 0) return out;
  std::vector<NodeId> labels(g.size());
  std::iota(labels.begin(), labels.end(), NodeId{0});
  cluster_into(g, labels, cfg, out);
  for (auto& c : out) std::sort(c.begin(), c.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

std::vector<LabeledHypergraph> hcluster(const LabeledHypergraph& h, const SpectralConfig& cfg) {
  if (h.empty()) return {};
  const auto clusters = get_clusters(to_weighted_graph(h), cfg);
  return majority_subhypergraph(h, clusters);
}

}  // namespace prism
