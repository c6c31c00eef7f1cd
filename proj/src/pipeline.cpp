#include "prism/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "prism/rng.hpp"
#include "prism/spectral.hpp"
#include "prism/symmetry.hpp"
#include "prism/walks.hpp"

namespace prism {

void RunConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (top_k < 1) throw std::invalid_argument("top-k must be at least 1");
  if (proj_dim < 1) throw std::invalid_argument("proj-dim must be at least 1");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  SpectralConfig{lambda2_max, n_min}.validate();
}

bool RunConfig::same_settings(const RunConfig& o) const {
  return epsilon == o.epsilon && alpha == o.alpha && top_k == o.top_k && proj_dim == o.proj_dim &&
         lambda2_max == o.lambda2_max && n_min == o.n_min && length_cap == o.length_cap && seed == o.seed &&
         hcluster == o.hcluster;
}

bool ConceptReport::operator==(const ConceptReport& other) const {
  if (config.has_value() != other.config.has_value()) return false;
  if (config && !config->same_settings(*other.config)) return false;
  return subhypergraphs == other.subhypergraphs;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs task(i) for i in [0, count) on `threads` workers. The exception of
// the lowest failing index is rethrown, so failures are deterministic too.
template <typename F>
void parallel_for(std::size_t count, std::size_t threads, F task) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t extra = std::min(threads, count) > 0 ? std::min(threads, count) - 1 : 0;
  std::vector<std::thread> pool;
  pool.reserve(extra);
  for (std::size_t t = 0; t < extra; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<std::string> names_of(const LabeledHypergraph& h, std::span<const NodeId> ids) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (NodeId v : ids) out.push_back(h.node_name(v));
  return out;
}

}  // namespace

ConceptReport get_communities(const LabeledHypergraph& h, const RunConfig& cfg, std::ostream* log) {
  cfg.validate();
  ConceptReport report;
  report.config = cfg;

  auto start = Clock::now();
  SpectralConfig spectral;
  spectral.lambda2_max = cfg.lambda2_max;
  spectral.n_min = cfg.n_min;
  std::vector<LabeledHypergraph> parts;
  for (auto& comp : connected_components(h)) {
    if (!cfg.hcluster) {
      parts.push_back(std::move(comp));
      continue;
    }
    for (auto& sub : prism::hcluster(comp, spectral)) parts.push_back(std::move(sub));
  }
  report.times.partition = seconds_since(start);
  if (log) *log << "partition: " << parts.size() << " sub-hypergraphs\n";

  struct Task {
    std::size_t part;
    NodeId source;
  };
  std::vector<Task> tasks;
  report.subhypergraphs.resize(parts.size());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& sub = parts[k];
    auto& entry = report.subhypergraphs[k];
    entry.id = k;
    std::vector<NodeId> all(sub.node_count());
    for (NodeId v = 0; v < all.size(); ++v) all[v] = v;
    entry.nodes = names_of(sub, all);
    entry.edges = sub.edge_count();
    entry.diameter = diameter(sub);
    entry.length = cfg.length_cap > 0 ? std::min(entry.diameter, cfg.length_cap) : entry.diameter;
    if (entry.length < 1 || sub.node_count() < 2) continue;
    entry.num_walks = topk_walk_count(cfg.epsilon, sub.label_count(), entry.length, cfg.top_k);
    for (NodeId v = 0; v < sub.node_count(); ++v)
      if (!sub.incident(v).empty()) tasks.push_back({k, v});
  }
  if (log) *log << "walks: " << tasks.size() << " sources\n";

  std::vector<SourceEntry> results(tasks.size());
  std::mutex time_lock;
  parallel_for(tasks.size(), cfg.threads, [&](std::size_t i) {
    const auto& [k, source] = tasks[i];
    const auto& sub = parts[k];
    const auto& entry = report.subhypergraphs[k];

    const auto walk_start = Clock::now();
    WalkConfig wc;
    wc.epsilon = cfg.epsilon;
    wc.length = entry.length;
    wc.num_walks = entry.num_walks;
    wc.top_k = cfg.top_k;
    wc.seed = splitmix64(cfg.seed + k);
    const auto stats = run_walks(sub, source, wc);
    const double walk_time = seconds_since(walk_start);

    const auto cluster_start = Clock::now();
    SymmetryOptions so;
    so.proj_dim = cfg.proj_dim;
    const auto sym = symmetry_cluster(stats, cfg.alpha, so);
    SourceEntry out;
    out.source = sub.node_name(source);
    out.unreached = names_of(sub, sym.distance.unreached);
    for (const auto& c : sym.concepts)
      out.concepts.push_back({names_of(sub, c.members), sym.distance.sets[c.parent].representative_tht, c.tests});
    results[i] = std::move(out);
    const double cluster_time = seconds_since(cluster_start);

    std::lock_guard lock(time_lock);
    report.times.walks += walk_time;
    report.times.clustering += cluster_time;
  });

  for (std::size_t i = 0; i < tasks.size(); ++i)
    report.subhypergraphs[tasks[i].part].sources.push_back(std::move(results[i]));
  if (log)
    *log << "times: partition " << report.times.partition << " s, walks " << report.times.walks
         << " s, clustering " << report.times.clustering << " s\n";
  return report;
}

}  // namespace prism
