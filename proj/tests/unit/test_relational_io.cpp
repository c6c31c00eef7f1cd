#include <doctest.h>

#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "prism/relational_io.hpp"

using namespace prism;

TEST_CASE("two atoms parse with their arities") {
  const auto db = parse_database("Teaches(P1,P3)\nReads(P3,B1)");
  CHECK(db.size() == 2);
  CHECK(db.predicate_arities() == std::map<std::string, std::size_t>{{"Reads", 2}, {"Teaches", 2}});
  CHECK(db.atoms()[0] == GroundAtom{"Teaches", {"P1", "P3"}});
  CHECK(db.atoms()[1] == GroundAtom{"Reads", {"P3", "B1"}});
}

TEST_CASE("arity mismatch is reported at its line") {
  try {
    parse_database("Teaches(P1,P3)\nTeaches(P1)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("Teaches") != std::string::npos);
  }
}

TEST_CASE("empty input gives an empty database") {
  CHECK(parse_database("").empty());
  CHECK(parse_database("\n  \n// only a comment\n").empty());
}

TEST_CASE("comments, blank lines and padding are skipped") {
  const auto db = parse_database("// header\n\n  Reads( P3 , B1 )  \r\n// Reads(P9,B9)\n");
  REQUIRE(db.size() == 1);
  CHECK(db.atoms()[0] == GroundAtom{"Reads", {"P3", "B1"}});
}

TEST_CASE("syntax errors carry line numbers") {
  const std::vector<std::pair<std::string, std::size_t>> bad = {
      {"Reads(P1,B1\n", 1},  {"A(x)\nReads P1 B1\n", 2}, {"A(x)\n\nB(x,)\n", 3},
      {"1Reads(x)\n", 1},    {"Reads()\n", 1},           {"R(a(b))\n", 1},
  };
  for (const auto& [text, line] : bad) {
    CAPTURE(text);
    try {
      parse_database(text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
    }
  }
}

TEST_CASE("predicate names follow the identifier rule") {
  CHECK(is_valid_predicate_name("Teaches"));
  CHECK(is_valid_predicate_name("_x9"));
  CHECK_FALSE(is_valid_predicate_name(""));
  CHECK_FALSE(is_valid_predicate_name("9x"));
  CHECK_FALSE(is_valid_predicate_name("has-dash"));
}

TEST_CASE("names are case sensitive") {
  const auto db = parse_database("R(a)\nR(A)\nr(a,b)\n");
  CHECK(db.size() == 3);
  CHECK(db.predicate_arities().size() == 2);
}

TEST_CASE("toy department dataset builds the expected hypergraph") {
  const auto h = fixtures::load("toy_department.db");
  CHECK(h.node_count() == 9);
  CHECK(h.edge_count() == 20);
  CHECK(h.label_count() == 2);
  CHECK(h.find_label("Teaches"));
  CHECK(h.find_label("Reads"));
  for (const auto& e : h.edges()) CHECK(e.cardinality() == 2);
}

TEST_CASE("an atom repeating a constant is a single-node edge") {
  const auto h = build_hypergraph(parse_database("R(a,a)"));
  CHECK(h.node_count() == 1);
  REQUIRE(h.edge_count() == 1);
  CHECK(h.edge(0).cardinality() == 1);
}

TEST_CASE("duplicate atoms collapse to one edge") {
  const auto h = build_hypergraph(parse_database("R(a,b)\nR(a,b)\n"));
  CHECK(h.edge_count() == 1);
}

TEST_CASE("serialization round-trips the deduplicated database") {
  for (const char* text : {"R(a,a)\nS(b,a,b)\nR(b,a)\nT(c)\nR(b,a)\n", "Teaches(P1,P3)\nReads(P3,B1)\n"}) {
    const auto db = parse_database(text);
    const auto h = build_hypergraph(db);
    const auto again = parse_database(serialize_hypergraph(h));
    const std::set<GroundAtom> a(db.atoms().begin(), db.atoms().end());
    const std::set<GroundAtom> b(again.atoms().begin(), again.atoms().end());
    CHECK(a == b);
  }
  const auto h = fixtures::load("two_departments.db");
  const auto text = serialize_hypergraph(h);
  CHECK(serialize_hypergraph(build_hypergraph(parse_database(text))) == text);
  CHECK(std::count(text.begin(), text.end(), '\n') == 33);
}

TEST_CASE("serialized lines are sorted by predicate then constants") {
  const auto h = build_hypergraph(parse_database("S(b)\nR(b,a)\nR(a,c)\n"));
  CHECK(serialize_hypergraph(h) == "R(a,c)\nR(b,a)\nS(b)\n");
}

TEST_CASE("RelationalDatabase::add rejects malformed atoms") {
  RelationalDatabase db;
  CHECK(db.add({"R", {"a"}}));
  CHECK_FALSE(db.add({"R", {"a"}}));
  CHECK_THROWS_AS(db.add({"R", {"a", "b"}}), std::invalid_argument);
  CHECK_THROWS_AS(db.add({"S", {}}), std::invalid_argument);
  CHECK_THROWS_AS(db.add({"S", {""}}), std::invalid_argument);
  CHECK_THROWS_AS(db.add({"-S", {"a"}}), std::invalid_argument);
}

TEST_CASE("missing file is an error") {
  CHECK_THROWS(read_database_file("/nonexistent/file.db"));
}
