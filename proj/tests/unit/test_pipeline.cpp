#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "prism/pipeline.hpp"
#include "prism/report.hpp"

using namespace prism;

namespace {

using NameSets = std::vector<std::vector<std::string>>;

NameSets concept_sets(const SourceEntry& s) {
  NameSets out;
  for (const auto& c : s.concepts) out.push_back(c.members);
  std::sort(out.begin(), out.end());
  return out;
}

const SourceEntry& source(const SubhypergraphEntry& sub, std::string_view name) {
  for (const auto& s : sub.sources)
    if (s.source == name) return s;
  throw std::out_of_range(std::string(name));
}

}  // namespace

TEST_CASE("empty input gives the empty report") {
  const auto r = get_communities(LabeledHypergraph{}, RunConfig{});
  CHECK(r.subhypergraphs.empty());
  ConceptReport bare;
  CHECK(report_to_json(bare) == R"({"schema_version":1,"subhypergraphs":[]})");
  CHECK(parse_report(report_to_json(bare)) == bare);
}

TEST_CASE("config validation") {
  const auto bad = [](auto mutate) {
    RunConfig c;
    mutate(c);
    return c;
  };
  CHECK_NOTHROW(RunConfig{}.validate());
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.epsilon = 0.0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.epsilon = 1.0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.alpha = 0.0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.alpha = 1.0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.top_k = 0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.proj_dim = 0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](RunConfig& c) { c.threads = 0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(get_communities(fixtures::load("toy_department.db"), bad([](RunConfig& c) { c.alpha = 2.0; })),
                  std::invalid_argument);

  RunConfig a, b;
  b.threads = 8;
  CHECK(a.same_settings(b));
  b.seed = 1;
  CHECK_FALSE(a.same_settings(b));
}

TEST_CASE("toy department: concepts from P1") {
  const auto h = fixtures::load("toy_department.db");
  const NameSets want = {{"B1", "B2", "B3"}, {"P2"}, {"P3", "P4", "P5", "P6"}};
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RunConfig cfg;
    cfg.seed = seed;
    const auto r = get_communities(h, cfg);
    REQUIRE(r.subhypergraphs.size() == 1);
    const auto& sub = r.subhypergraphs[0];
    CHECK(sub.diameter == 2);
    CHECK(sub.length == 2);
    CHECK(sub.num_walks == 910);
    CHECK(sub.sources.size() == 9);
    hits += concept_sets(source(sub, "P1")) == want;
  }
  CHECK(hits >= 9);
}

TEST_CASE("two departments of diameter 4 with every edge kept") {
  const auto h = fixtures::load("two_departments.db");
  const auto r = get_communities(h, RunConfig{});
  REQUIRE(r.subhypergraphs.size() == 2);
  std::size_t edges = 0;
  std::set<std::string> nodes;
  for (const auto& sub : r.subhypergraphs) {
    CHECK(sub.diameter == 4);
    CHECK(sub.length == 4);
    CHECK(sub.num_walks == 1505);
    edges += sub.edges;
    nodes.insert(sub.nodes.begin(), sub.nodes.end());
  }
  CHECK(edges == h.edge_count());
  CHECK(nodes.size() == h.node_count());
  CHECK(std::count(r.subhypergraphs[0].nodes.begin(), r.subhypergraphs[0].nodes.end(), "P1") == 1);
  CHECK(std::count(r.subhypergraphs[1].nodes.begin(), r.subhypergraphs[1].nodes.end(), "P15") == 1);

  RunConfig flat;
  flat.hcluster = false;
  const auto whole = get_communities(h, flat);
  REQUIRE(whole.subhypergraphs.size() == 1);
  CHECK(whole.subhypergraphs[0].diameter == 8);
  CHECK(whole.subhypergraphs[0].length == 5);

  flat.length_cap = 0;
  CHECK(get_communities(h, flat).subhypergraphs[0].length == 8);
}

TEST_CASE("concepts cover each source's reached nodes exactly once") {
  const auto h = fixtures::load("two_departments.db");
  const auto r = get_communities(h, RunConfig{});
  for (const auto& sub : r.subhypergraphs) {
    CHECK(sub.sources.size() == sub.nodes.size());
    for (const auto& s : sub.sources) {
      std::vector<std::string> seen = s.unreached;
      for (const auto& c : s.concepts) {
        CHECK(!c.members.empty());
        CHECK(std::is_sorted(c.members.begin(), c.members.end()));
        CHECK(c.parent_tht > 0.0);
        CHECK(c.parent_tht <= static_cast<double>(sub.length));
        CHECK(c.tests.empty() == (c.members.size() == 1));
        seen.insert(seen.end(), c.members.begin(), c.members.end());
      }
      seen.push_back(s.source);
      std::sort(seen.begin(), seen.end());
      auto all = sub.nodes;
      std::sort(all.begin(), all.end());
      CHECK(seen == all);
    }
  }
}

TEST_CASE("single-edge database gives singleton concepts") {
  const auto h = build_hypergraph(parse_database("R(a,b)"));
  const auto r = get_communities(h, RunConfig{});
  REQUIRE(r.subhypergraphs.size() == 1);
  const auto& sub = r.subhypergraphs[0];
  CHECK(sub.length == 1);
  REQUIRE(sub.sources.size() == 2);
  CHECK(concept_sets(source(sub, "a")) == NameSets{{"b"}});
  CHECK(concept_sets(source(sub, "b")) == NameSets{{"a"}});
}

TEST_CASE("single-node components are listed but not walked") {
  const auto h = build_hypergraph(parse_database("U(x)\nR(a,b)\nS(b,c)"));
  const auto r = get_communities(h, RunConfig{});
  REQUIRE(r.subhypergraphs.size() == 2);
  const auto& lone = r.subhypergraphs[0];
  CHECK(lone.nodes == std::vector<std::string>{"x"});
  CHECK(lone.edges == 1);
  CHECK(lone.length == 0);
  CHECK(lone.num_walks == 0);
  CHECK(lone.sources.empty());
  CHECK(r.subhypergraphs[1].nodes == std::vector<std::string>{"a", "b", "c"});
  CHECK(r.subhypergraphs[1].sources.size() == 3);
}

TEST_CASE("report does not depend on the thread count") {
  const auto h = fixtures::load("two_departments.db");
  RunConfig cfg;
  cfg.seed = 17;
  auto one = get_communities(h, cfg);
  one.config = cfg;
  for (std::size_t t : {2u, 3u, 8u}) {
    cfg.threads = t;
    auto many = get_communities(h, cfg);
    many.config = cfg;
    CHECK(many == one);
    CHECK(report_to_json(many) == report_to_json(one));
  }
  cfg.threads = 1;
  cfg.seed = 18;
  CHECK_FALSE(get_communities(h, cfg) == one);
}

TEST_CASE("JSON round trip") {
  const auto h = fixtures::load("two_departments.db");
  RunConfig cfg;
  cfg.seed = 3;
  cfg.epsilon = 0.2;
  auto r = get_communities(h, cfg);
  r.config = cfg;
  const auto text = report_to_json(r);
  const auto back = parse_report(text);
  CHECK(back == r);
  CHECK(report_to_json(back) == text);
  CHECK(text.find("threads") == std::string::npos);
  CHECK(text.find("\"times\"") == std::string::npos);

  CHECK_THROWS_AS(parse_report("{"), std::runtime_error);
  CHECK_THROWS_AS(parse_report(R"({"schema_version":2,"subhypergraphs":[]})"), std::runtime_error);
  CHECK_THROWS_AS(parse_report(R"({"subhypergraphs":[]})"), std::runtime_error);
}

TEST_CASE("TSV has a header and one row per concept") {
  const auto h = fixtures::load("toy_department.db");
  auto r = get_communities(h, RunConfig{});
  const auto tsv = report_to_tsv(r);
  std::istringstream in(tsv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "sub_hypergraph\tsource\tconcept_members\tparent_tht");
  std::size_t rows = 0, concepts = 0;
  bool found = false;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), '\t') == 3);
    found = found || line.rfind("0\tP1\tP3,P4,P5,P6\t", 0) == 0;
  }
  for (const auto& s : r.subhypergraphs[0].sources) concepts += s.concepts.size();
  CHECK(rows == concepts);
  CHECK(found);

  std::ostringstream out;
  emit_report(r, ReportFormat::json, out);
  CHECK(out.str() == report_to_json(r) + "\n");
  CHECK(report_to_tsv(ConceptReport{}) == "sub_hypergraph\tsource\tconcept_members\tparent_tht\n");
}

TEST_CASE("progress log mentions each stage") {
  std::ostringstream log;
  get_communities(fixtures::load("toy_department.db"), RunConfig{}, &log);
  CHECK(log.str().find("partition") != std::string::npos);
  CHECK(log.str().find("walks") != std::string::npos);
}
