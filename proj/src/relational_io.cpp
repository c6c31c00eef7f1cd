#include "prism/relational_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace prism {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

GroundAtom parse_atom(std::string_view text, std::size_t line) {
  const auto open = text.find('(');
  if (open == std::string_view::npos) throw ParseError(line, "expected '(' after predicate name");
  if (text.back() != ')') throw ParseError(line, "expected ')' at end of atom");
  const auto predicate = trim(text.substr(0, open));
  if (!is_valid_predicate_name(predicate))
    throw ParseError(line, "invalid predicate name '" + std::string(predicate) + "'");

  GroundAtom atom;
  atom.predicate = std::string(predicate);
  const auto args = text.substr(open + 1, text.size() - open - 2);
  if (args.find_first_of("()") != std::string_view::npos)
    throw ParseError(line, "unexpected parenthesis in argument list");
  std::size_t start = 0;
  while (true) {
    const auto comma = args.find(',', start);
    const auto token = trim(args.substr(start, comma == std::string_view::npos ? args.npos : comma - start));
    if (token.empty()) throw ParseError(line, "empty constant in atom of " + atom.predicate);
    atom.constants.emplace_back(token);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return atom;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

bool is_valid_predicate_name(std::string_view name) {
  if (name.empty()) return false;
  const auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!alpha(name.front())) return false;
  return std::all_of(name.begin(), name.end(),
                     [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

bool RelationalDatabase::add(GroundAtom atom) {
  if (!is_valid_predicate_name(atom.predicate))
    throw std::invalid_argument("invalid predicate name '" + atom.predicate + "'");
  if (atom.constants.empty()) throw std::invalid_argument("atom of " + atom.predicate + " has no constants");
  if (std::any_of(atom.constants.begin(), atom.constants.end(), [](const auto& c) { return c.empty(); }))
    throw std::invalid_argument("atom of " + atom.predicate + " has an empty constant");
  auto [it, fresh] = arities_.emplace(atom.predicate, atom.constants.size());
  if (it->second != atom.constants.size())
    throw std::invalid_argument("arity mismatch for predicate " + atom.predicate + ": expected " +
                                std::to_string(it->second) + ", got " +
                                std::to_string(atom.constants.size()));
  if (index_.contains(atom)) return false;
  index_.emplace(atom, atoms_.size());
  atoms_.push_back(std::move(atom));
  return true;
}

RelationalDatabase parse_database(std::istream& in) {
  RelationalDatabase db;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto text = trim(raw);
    if (text.empty() || text.starts_with("//")) continue;
    auto atom = parse_atom(text, line);
    const auto known = db.predicate_arities().find(atom.predicate);
    if (known != db.predicate_arities().end() && known->second != atom.constants.size()) {
      throw ParseError(line, "arity mismatch for predicate " + atom.predicate + ": expected " +
                                 std::to_string(known->second) + ", got " +
                                 std::to_string(atom.constants.size()));
    }
    db.add(std::move(atom));
  }
  return db;
}

RelationalDatabase parse_database(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_database(in);
}

RelationalDatabase read_database_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open database file '" + path + "'");
  return parse_database(in);
}

LabeledHypergraph build_hypergraph(const RelationalDatabase& db) {
  LabeledHypergraph h;
  for (const auto& atom : db.atoms()) {
    const LabelId label = h.add_label(atom.predicate);
    std::vector<NodeId> nodes;
    nodes.reserve(atom.constants.size());
    for (const auto& c : atom.constants) nodes.push_back(h.add_node(c));
    h.add_edge(label, std::move(nodes));
  }
  return h;
}

std::vector<GroundAtom> hypergraph_atoms(const LabeledHypergraph& h) {
  std::vector<GroundAtom> atoms;
  atoms.reserve(h.edge_count());
  for (const auto& e : h.edges()) {
    GroundAtom atom{h.label_name(e.label), {}};
    for (NodeId v : e.arguments) atom.constants.push_back(h.node_name(v));
    atoms.push_back(std::move(atom));
  }
  std::sort(atoms.begin(), atoms.end());
  return atoms;
}

std::string format_atom(const GroundAtom& atom) {
  std::string out = atom.predicate + "(";
  for (std::size_t i = 0; i < atom.constants.size(); ++i) {
    if (i) out += ',';
    out += atom.constants[i];
  }
  return out + ")";
}

std::string serialize_hypergraph(const LabeledHypergraph& h) {
  std::string out;
  for (const auto& atom : hypergraph_atoms(h)) {
    out += format_atom(atom);
    out += '\n';
  }
  return out;
}

}  // namespace prism
