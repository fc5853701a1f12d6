#pragma once

#include <any>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "modaldoc/adjunction.hpp"
#include "modaldoc/comonad.hpp"
#include "modaldoc/instances.hpp"
#include "modaldoc/temporal.hpp"

namespace modaldoc {

struct Position {
  std::size_t line = 0, column = 0;
};

struct Entry {
  std::string key;
  std::vector<std::string> atoms;
  Position pos;
  std::vector<Position> atom_pos;
};

struct Declaration {
  std::string kind, name;
  std::vector<Entry> entries;
  Position pos;
  const Entry* find(const std::string& key) const;
};

struct Document {
  std::vector<Declaration> declarations;
  const Declaration* find(const std::string& name) const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(Position pos, const std::string& message);
  Position pos;
};

const std::vector<std::string>& block_kinds();
// Syntax, unique names and references (each must name an earlier declaration of the right kind).
Document parse_document(const std::string& text);
Document parse_file(const std::string& path);
std::string serialize(const Document& doc);
// Equality of kinds, names, keys and atoms; positions are ignored.
bool same_document(const Document& a, const Document& b);

// Atom helpers: "{a,b}" and "x->y".
std::vector<std::string> parse_set_atom(const std::string& atom);
std::pair<std::string, std::string> split_arrow(const std::string& atom);

struct CategoryValue {
  CatPtr cat;
  std::optional<SetCat> sets;  // present for finite-set categories
};

// Builds the objects of a document on demand; throws ModelError on bad data.
class Model {
 public:
  explicit Model(Document doc);
  const Document& document() const { return doc_; }

  PosetPtr poset(const std::string& name);
  CategoryValue category(const std::string& name);
  DocPtr doctrine(const std::string& name);
  InteriorOp interior(const std::string& name);
  DoctrineAdjunction adjunction(const std::string& name);
  DoctrineComonad comonad(const std::string& name);
  KripkeFrame frame(const std::string& name);
  CatPtr frame_category(const std::string& name);
  FiniteQuantale quantale(const std::string& name);
  FiniteTopSpace space(const std::string& name);
  FinPresheaf presheaf(const std::string& name);
  FCoalgebra coalgebra(const std::string& name);

  // Law violations of one declaration; empty for kinds without laws.
  Violations check(const std::string& name);
  bool checkable(const std::string& name) const;

 private:
  const Declaration& decl(const std::string& name, const std::string& kind) const;
  template <class T, class F>
  T cached(const std::string& name, F&& build);

  Document doc_;
  std::map<std::string, std::any> cache_;
};

struct Verdict {
  std::string check;
  bool pass = false;
  std::vector<std::string> witnesses;
};

struct Report {
  std::string command;
  std::vector<Verdict> verdicts;
  nlohmann::ordered_json derived = nlohmann::ordered_json::object();
  bool pass() const;
};

std::string render_text(const Report& r);
std::string render_json(const Report& r);

struct CommandOptions {
  std::string command;
  std::string file;                // empty when absent
  std::vector<std::string> names;  // check targets, or the em/factor target
  bool all = false;
  std::string from_kind, from_name, construction;
  std::string op, coalgebra, alpha;
  bool json = false;
  std::uint64_t seed = 7;
  std::size_t max_size = 1048576;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws UsageError, ParseError, ModelError or CapExceeded.
Report build_report(const CommandOptions& o);
// Exit status: 0 all verdicts pass, 1 some verdict fails, 2 usage, parse or model error.
int run_command(const CommandOptions& o, std::ostream& out, std::ostream& err);

}  // namespace modaldoc
