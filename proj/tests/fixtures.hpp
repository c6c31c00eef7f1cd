// Toy datasets shared by the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "prism/hypergraph.hpp"
#include "prism/relational_io.hpp"

namespace fixtures {

inline std::string data_path(std::string_view file) { return std::string(PRISM_TEST_DATA) + "/" + std::string(file); }

inline prism::LabeledHypergraph load(std::string_view file) {
  return prism::build_hypergraph(prism::read_database_file(data_path(file)));
}

/// Physics department plus the cross-department Reads(P8,B4) link, which
/// hcluster assigns to physics.
inline prism::LabeledHypergraph physics_with_link() {
  return prism::build_hypergraph(prism::parse_database(
      "Teaches(P4,P1)\nTeaches(P4,P3)\nTeaches(P4,P6)\nTeaches(P4,P7)\nTeaches(P4,P8)\n"
      "Teaches(P5,P2)\nTeaches(P5,P3)\nTeaches(P5,P6)\nTeaches(P5,P7)\nTeaches(P5,P8)\n"
      "Reads(P1,B1)\nReads(P2,B1)\nReads(P3,B1)\nReads(P6,B2)\nReads(P7,B2)\nReads(P8,B2)\n"
      "Reads(P8,B4)\n"));
}

inline prism::NodeId id(const prism::LabeledHypergraph& h, std::string_view name) { return *h.find_node(name); }

inline std::vector<prism::NodeId> ids(const prism::LabeledHypergraph& h, std::initializer_list<std::string_view> names) {
  std::vector<prism::NodeId> out;
  for (auto n : names) out.push_back(id(h, n));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> names(const prism::LabeledHypergraph& h, const std::vector<prism::NodeId>& v) {
  std::vector<std::string> out;
  for (auto x : v) out.push_back(h.node_name(x));
  std::sort(out.begin(), out.end());
  return out;
}

/// Node sets as sorted name lists, themselves sorted, for order-free compares.
inline std::vector<std::vector<std::string>> name_sets(const prism::LabeledHypergraph& h,
                                                       const std::vector<std::vector<prism::NodeId>>& sets) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : sets) out.push_back(names(h, s));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fixtures
