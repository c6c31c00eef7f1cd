#include "prism/report.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace prism {

namespace {

using nlohmann::json;

json config_to_json(const RunConfig& c) {
  return json{{"epsilon", c.epsilon},         {"alpha", c.alpha},     {"top_k", c.top_k},
              {"proj_dim", c.proj_dim},       {"lambda2_max", c.lambda2_max}, {"n_min", c.n_min},
              {"length_cap", c.length_cap},   {"seed", c.seed},       {"hcluster", c.hcluster}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  j.at("epsilon").get_to(c.epsilon);
  j.at("alpha").get_to(c.alpha);
  j.at("top_k").get_to(c.top_k);
  j.at("proj_dim").get_to(c.proj_dim);
  j.at("lambda2_max").get_to(c.lambda2_max);
  j.at("n_min").get_to(c.n_min);
  j.at("length_cap").get_to(c.length_cap);
  j.at("seed").get_to(c.seed);
  j.at("hcluster").get_to(c.hcluster);
  return c;
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string report_to_json(const ConceptReport& r) {
  json root;
  root["schema_version"] = kReportSchemaVersion;
  if (r.config) root["config"] = config_to_json(*r.config);
  json subs = json::array();
  for (const auto& s : r.subhypergraphs) {
    json sources = json::array();
    for (const auto& src : s.sources) {
      json concepts = json::array();
      for (const auto& c : src.concepts) {
        json tests = json::array();
        for (const auto& t : c.tests)
          tests.push_back({{"length", t.length},
                           {"q", t.q},
                           {"critical", t.critical},
                           {"categories", t.categories},
                           {"passed", t.passed}});
        concepts.push_back({{"members", c.members}, {"parent_tht", c.parent_tht}, {"tests", tests}});
      }
      sources.push_back({{"source", src.source}, {"unreached", src.unreached}, {"concepts", concepts}});
    }
    subs.push_back({{"id", s.id},
                    {"nodes", s.nodes},
                    {"edges", s.edges},
                    {"diameter", s.diameter},
                    {"length", s.length},
                    {"num_walks", s.num_walks},
                    {"sources", sources}});
  }
  root["subhypergraphs"] = std::move(subs);
  return root.dump();
}

std::string report_to_tsv(const ConceptReport& r) {
  std::string out = "sub_hypergraph\tsource\tconcept_members\tparent_tht\n";
  for (const auto& s : r.subhypergraphs) {
    for (const auto& src : s.sources) {
      for (const auto& c : src.concepts) {
        out += std::to_string(s.id);
        out += '\t';
        out += src.source;
        out += '\t';
        for (std::size_t i = 0; i < c.members.size(); ++i) {
          if (i) out += ',';
          out += c.members[i];
        }
        out += '\t';
        out += format_double(c.parent_tht);
        out += '\n';
      }
    }
  }
  return out;
}

void emit_report(const ConceptReport& r, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::json)
    out << report_to_json(r) << '\n';
  else
    out << report_to_tsv(r);
  if (!out) throw std::runtime_error("failed to write the report");
}

ConceptReport parse_report(std::string_view text) {
  try {
    const json root = json::parse(text);
    if (root.at("schema_version").get<int>() != kReportSchemaVersion)
      throw std::runtime_error("unsupported report schema version");
    ConceptReport r;
    if (root.contains("config")) r.config = config_from_json(root.at("config"));
    for (const auto& js : root.at("subhypergraphs")) {
      SubhypergraphEntry s;
      js.at("id").get_to(s.id);
      js.at("nodes").get_to(s.nodes);
      js.at("edges").get_to(s.edges);
      js.at("diameter").get_to(s.diameter);
      js.at("length").get_to(s.length);
      js.at("num_walks").get_to(s.num_walks);
      for (const auto& jsrc : js.at("sources")) {
        SourceEntry src;
        jsrc.at("source").get_to(src.source);
        jsrc.at("unreached").get_to(src.unreached);
        for (const auto& jc : jsrc.at("concepts")) {
          ConceptEntry c;
          jc.at("members").get_to(c.members);
          jc.at("parent_tht").get_to(c.parent_tht);
          for (const auto& jt : jc.at("tests")) {
            LengthTest t;
            jt.at("length").get_to(t.length);
            jt.at("q").get_to(t.q);
            jt.at("critical").get_to(t.critical);
            jt.at("categories").get_to(t.categories);
            jt.at("passed").get_to(t.passed);
            c.tests.push_back(t);
          }
          src.concepts.push_back(std::move(c));
        }
        s.sources.push_back(std::move(src));
      }
      r.subhypergraphs.push_back(std::move(s));
    }
    return r;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed report: ") + e.what());
  }
}

}  // namespace prism
