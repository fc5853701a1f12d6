#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "modaldoc/cli.hpp"

namespace modaldoc {

namespace {

std::string where(Position p) { return "line " + std::to_string(p.line) + ", column " + std::to_string(p.column); }

class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  bool eof() const { return i_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[i_]; }
  Position pos() const { return {line_, col_}; }

  char next() {
    char c = text_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip() {
    while (!eof()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        next();
      } else if (peek() == '#') {
        while (!eof() && peek() != '\n') next();
      } else {
        break;
      }
    }
  }

  std::string word() {
    std::string out;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-' || peek() == '_')) out += next();
    return out;
  }

  std::string name() {
    std::string out;
    while (!eof() && !std::isspace(static_cast<unsigned char>(peek())) && std::string("{};:#").find(peek()) == std::string::npos)
      out += next();
    return out;
  }

  // Whitespace inside brackets is dropped, so atoms come out canonical.
  std::string atom() {
    std::string out;
    std::vector<char> stack;
    const auto start = pos();
    while (!eof()) {
      char c = peek();
      if (stack.empty() && (std::isspace(static_cast<unsigned char>(c)) || c == ';' || c == '#' || c == '}')) break;
      if (!stack.empty() && (c == ';' || c == '#')) throw ParseError(start, "unterminated bracket in '" + out + "'");
      if (!stack.empty() && std::isspace(static_cast<unsigned char>(c))) {
        next();
        continue;
      }
      if (c == '(' || c == '[' || c == '{') stack.push_back(c == '(' ? ')' : c == '[' ? ']' : '}');
      if (c == ')' || c == ']' || c == '}') {
        if (stack.empty() || stack.back() != c) throw ParseError(pos(), std::string("unbalanced '") + c + "'");
        stack.pop_back();
      }
      out += next();
    }
    if (!stack.empty()) throw ParseError(start, "unterminated bracket in '" + out + "'");
    return out;
  }

 private:
  const std::string& text_;
  std::size_t i_ = 0, line_ = 1, col_ = 1;
};

// Keys whose atoms name earlier declarations, with the kind they must have ("" for any).
const std::map<std::string, std::string>& reference_keys() {
  static const std::map<std::string, std::string> keys{
      {"base", "category"},      {"doctrine", "doctrine"},   {"frame", "kripke-frame"},
      {"quantale", "quantale"},  {"interior", "interior"},   {"adjunction", "adjunction"},
      {"comonad", "comonad"},    {"coalgebra", "coalgebra"}, {"coalgebras", "coalgebra"},
      {"presheaves", "presheaf"}, {"spaces", "topspace"},    {"values", "poset"},
      {"poset", "poset"},        {"check", ""}};
  return keys;
}

void resolve(const Document& doc) {
  std::map<std::string, std::string> seen;
  for (const auto& d : doc.declarations) {
    for (const auto& e : d.entries) {
      auto it = reference_keys().find(e.key);
      if (it == reference_keys().end()) continue;
      for (std::size_t k = 0; k < e.atoms.size(); ++k) {
        const auto& a = e.atoms[k];
        auto s = seen.find(a);
        if (s == seen.end())
          throw ParseError(e.atom_pos[k], "unresolved reference '" + a + "' in " + d.kind + " " + d.name);
        if (!it->second.empty() && s->second != it->second)
          throw ParseError(e.atom_pos[k], "'" + a + "' is a " + s->second + ", expected a " + it->second);
      }
    }
    seen.emplace(d.name, d.kind);
  }
}

}  // namespace

ParseError::ParseError(Position p, const std::string& message) : std::runtime_error(where(p) + ": " + message), pos(p) {}

const Entry* Declaration::find(const std::string& key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

const Declaration* Document::find(const std::string& name) const {
  for (const auto& d : declarations)
    if (d.name == name) return &d;
  return nullptr;
}

const std::vector<std::string>& block_kinds() {
  static const std::vector<std::string> kinds{"poset",     "category",     "doctrine", "interior",
                                              "adjunction", "comonad",     "kripke-frame", "quantale",
                                              "topspace",  "presheaf",     "coalgebra", "query"};
  return kinds;
}

Document parse_document(const std::string& text) {
  Document doc;
  Cursor c(text);
  std::set<std::string> names;
  for (c.skip(); !c.eof(); c.skip()) {
    Declaration d;
    d.pos = c.pos();
    d.kind = c.word();
    if (d.kind.empty()) throw ParseError(d.pos, "expected a block kind");
    const auto& kinds = block_kinds();
    if (std::find(kinds.begin(), kinds.end(), d.kind) == kinds.end())
      throw ParseError(d.pos, "unknown block kind '" + d.kind + "'");
    c.skip();
    const auto npos = c.pos();
    d.name = c.name();
    if (d.name.empty()) throw ParseError(npos, "expected a name after '" + d.kind + "'");
    if (!names.insert(d.name).second) throw ParseError(npos, "duplicate name '" + d.name + "'");
    c.skip();
    if (c.peek() != '{') throw ParseError(c.pos(), "expected '{' after " + d.kind + " " + d.name);
    c.next();
    std::set<std::string> keys;
    for (;;) {
      c.skip();
      if (c.eof()) throw ParseError(c.pos(), "unterminated block " + d.kind + " " + d.name);
      if (c.peek() == '}') {
        c.next();
        break;
      }
      Entry e;
      e.pos = c.pos();
      e.key = c.word();
      if (e.key.empty()) throw ParseError(e.pos, "expected a key in " + d.kind + " " + d.name);
      if (!keys.insert(e.key).second) throw ParseError(e.pos, "duplicate key '" + e.key + "' in " + d.name);
      c.skip();
      if (c.peek() != ':') throw ParseError(c.pos(), "expected ':' after key '" + e.key + "'");
      c.next();
      for (;;) {
        c.skip();
        if (c.peek() == ';') {
          c.next();
          break;
        }
        // The last entry of a block may omit its ';'.
        if (c.peek() == '}' && !e.atoms.empty()) break;
        if (c.eof() || c.peek() == '}') throw ParseError(c.pos(), "expected ';' after the values of '" + e.key + "'");
        const auto apos = c.pos();
        auto a = c.atom();
        if (a.back() == ':') throw ParseError(apos, "expected ';' before key '" + a.substr(0, a.size() - 1) + "'");
        e.atom_pos.push_back(apos);
        e.atoms.push_back(std::move(a));
      }
      d.entries.push_back(std::move(e));
    }
    doc.declarations.push_back(std::move(d));
  }
  resolve(doc);
  return doc;
}

Document parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return parse_document(s.str());
}

std::string serialize(const Document& doc) {
  std::string out;
  for (std::size_t i = 0; i < doc.declarations.size(); ++i) {
    const auto& d = doc.declarations[i];
    if (i) out += "\n";
    out += d.kind + " " + d.name + " {\n";
    for (const auto& e : d.entries) {
      out += "  " + e.key + ":";
      for (const auto& a : e.atoms) out += " " + a;
      out += ";\n";
    }
    out += "}\n";
  }
  return out;
}

bool same_document(const Document& a, const Document& b) {
  if (a.declarations.size() != b.declarations.size()) return false;
  for (std::size_t i = 0; i < a.declarations.size(); ++i) {
    const auto& x = a.declarations[i];
    const auto& y = b.declarations[i];
    if (x.kind != y.kind || x.name != y.name || x.entries.size() != y.entries.size()) return false;
    for (std::size_t k = 0; k < x.entries.size(); ++k)
      if (x.entries[k].key != y.entries[k].key || x.entries[k].atoms != y.entries[k].atoms) return false;
  }
  return true;
}

std::vector<std::string> parse_set_atom(const std::string& atom) {
  if (atom.size() < 2 || atom.front() != '{' || atom.back() != '}')
    throw ModelError("expected a set like {a,b}, got '" + atom + "'");
  std::vector<std::string> out;
  const auto body = atom.substr(1, atom.size() - 2);
  if (body.empty()) return out;
  std::string cur;
  for (char ch : body) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  for (const auto& x : out)
    if (x.empty()) throw ModelError("empty element in '" + atom + "'");
  return out;
}

std::pair<std::string, std::string> split_arrow(const std::string& atom) {
  auto k = atom.find("->");
  if (k == std::string::npos || k == 0 || k + 2 >= atom.size())
    throw ModelError("expected a pair like a->b, got '" + atom + "'");
  return {atom.substr(0, k), atom.substr(k + 2)};
}

}  // namespace modaldoc
