#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "prism/hypergraph.hpp"

namespace prism {

struct GroundAtom {
  std::string predicate;
  std::vector<std::string> constants;

  auto operator<=>(const GroundAtom&) const = default;
};

/// Deduplicated ground atoms in first-seen order, with the arity each
/// predicate was first used with.
class RelationalDatabase {
 public:
  /// Adds an atom. Returns false if it was already present. Throws
  /// std::invalid_argument on a malformed atom or an arity mismatch.
  bool add(GroundAtom atom);

  const std::vector<GroundAtom>& atoms() const { return atoms_; }
  const std::map<std::string, std::size_t>& predicate_arities() const { return arities_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }

 private:
  std::vector<GroundAtom> atoms_;
  std::map<std::string, std::size_t> arities_;
  std::map<GroundAtom, std::size_t> index_;
};

/// Syntax or arity error in a `.db` file; `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

bool is_valid_predicate_name(std::string_view name);

/// Parses Alchemy-style ground atoms, one `Pred(c1,...,ck)` per line. Blank
/// lines and `//` comments are skipped; whitespace around tokens is ignored.
RelationalDatabase parse_database(std::istream& in);
RelationalDatabase parse_database(std::string_view text);
RelationalDatabase read_database_file(const std::string& path);

/// One node per constant (first-seen order), one edge per atom labeled with
/// its predicate.
LabeledHypergraph build_hypergraph(const RelationalDatabase& db);

/// Atoms represented by the edges of `h`, sorted by predicate then constants.
std::vector<GroundAtom> hypergraph_atoms(const LabeledHypergraph& h);

std::string format_atom(const GroundAtom& atom);

/// `.db` text for the edges of `h`, one atom per line in sorted order.
std::string serialize_hypergraph(const LabeledHypergraph& h);

}  // namespace prism
