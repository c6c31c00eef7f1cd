// prism: mine path-symmetric concepts from a relational database.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "prism/hypergraph.hpp"
#include "prism/pipeline.hpp"
#include "prism/relational_io.hpp"
#include "prism/report.hpp"
#include "prism/spectral.hpp"

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kInput = 2, kNumeric = 3 };

int run_stats(const std::string& db_path) {
  const auto h = prism::build_hypergraph(prism::read_database_file(db_path));
  std::cout << "nodes\t" << h.node_count() << "\nedges\t" << h.edge_count() << "\nlabels\t" << h.label_count()
            << '\n';
  const auto comps = prism::connected_components(h);
  std::cout << "components\t" << comps.size() << '\n';
  for (std::size_t i = 0; i < comps.size(); ++i) {
    std::cout << "component " << i << "\tnodes " << comps[i].node_count() << "\tedges " << comps[i].edge_count()
              << "\tdiameter " << prism::diameter(comps[i]) << '\n';
  }
  return kOk;
}

int run_mine(const std::string& db_path, const prism::RunConfig& cfg, const std::string& output,
             prism::ReportFormat format) {
  cfg.validate();
  const auto h = prism::build_hypergraph(prism::read_database_file(db_path));
  std::cerr << "loaded " << h.node_count() << " nodes, " << h.edge_count() << " edges\n";
  const auto report = prism::get_communities(h, cfg, &std::cerr);
  std::ofstream out(output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + output + "'");
  prism::emit_report(report, format, out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine path-symmetric node sets (abstract concepts) from ground atoms"};
  app.require_subcommand(1);

  prism::RunConfig cfg;
  std::string db_path, output, format_name = "json";
  bool no_hcluster = false;

  auto* mine = app.add_subcommand("mine", "Run the full pipeline and write a report");
  mine->add_option("--db", db_path, "Input .db file")->required();
  mine->add_option("--epsilon", cfg.epsilon, "Relative error target")->capture_default_str();
  mine->add_option("--alpha", cfg.alpha, "Significance level")->capture_default_str();
  mine->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  mine->add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();
  mine->add_option("--output", output, "Report path")->required();
  mine->add_option("--format", format_name, "json or tsv")
      ->check(CLI::IsMember({"json", "tsv"}))
      ->capture_default_str();
  mine->add_option("--lambda2-max", cfg.lambda2_max, "Stop splitting above this lambda_2")->capture_default_str();
  mine->add_option("--n-min", cfg.n_min, "Smallest side a cut may leave")->capture_default_str();
  mine->add_option("--top-k", cfg.top_k, "Walk count targets the k most probable paths")->capture_default_str();
  mine->add_option("--max-length", cfg.length_cap, "Walk length cap, 0 for none")->capture_default_str();
  mine->add_option("--proj-dim", cfg.proj_dim, "PCA dimension for splitting")->capture_default_str();
  mine->add_flag("--no-hcluster", no_hcluster, "Skip spectral pre-clustering");

  auto* stats = app.add_subcommand("stats", "Print a hypergraph summary");
  stats->add_option("--db", db_path, "Input .db file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*stats) return run_stats(db_path);
    cfg.hcluster = !no_hcluster;
    return run_mine(db_path, cfg, output, format_name == "tsv" ? prism::ReportFormat::tsv : prism::ReportFormat::json);
  } catch (const prism::ParseError& e) {
    std::cerr << "error: " << db_path << ": " << e.what() << '\n';
    return kInput;
  } catch (const prism::NonConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
}
