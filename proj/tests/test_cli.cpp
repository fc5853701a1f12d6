#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "modaldoc/cli.hpp"

using namespace modaldoc;

namespace {

const std::string kModels = MODALDOC_MODELS_DIR;

std::string path(const std::string& name) { return kModels + "/" + name + ".model"; }

struct Run {
  int code;
  std::string out, err;
};

Run run(CommandOptions o) {
  std::ostringstream out, err;
  int code = run_command(o, out, err);
  return {code, out.str(), err.str()};
}

CommandOptions check_all(const std::string& model) {
  CommandOptions o;
  o.command = "check";
  o.file = path(model);
  o.all = true;
  return o;
}

Position error_at(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e.pos;
  }
  FAIL("no parse error");
  return {};
}

std::string error_text(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

// Random documents without reference keys, so resolution never fails.
Document random_document(std::mt19937_64& rng) {
  const std::vector<std::string> keys{"worlds", "rel", "states", "step", "at", "opens", "mul", "closure"};
  const std::vector<std::string> atoms{"a", "w1", "x->y", "{a,b}", "{}", "s0->(s1,s2)", "s2->()", "w1->w2[a:*,b:*]",
                                       "1={*}", "e*g=g", "X={a}/{}/{a}", "refl-trans", "1/2", "-3"};
  Document d;
  const auto n = rng() % 5;
  for (std::size_t i = 0; i < n; ++i) {
    Declaration decl;
    decl.kind = block_kinds()[rng() % block_kinds().size()];
    decl.name = "N" + std::to_string(i);
    auto ks = keys;
    std::shuffle(ks.begin(), ks.end(), rng);
    ks.resize(rng() % 4);
    for (const auto& k : ks) {
      Entry e;
      e.key = k;
      const auto m = 1 + rng() % 4;
      for (std::size_t j = 0; j < m; ++j) e.atoms.push_back(atoms[rng() % atoms.size()]);
      decl.entries.push_back(std::move(e));
    }
    d.declarations.push_back(std::move(decl));
  }
  return d;
}

}  // namespace

TEST_CASE("parse: frame block with refl-trans closure") {
  Model m(parse_document("kripke-frame K { worlds: w1 w2; rel: w1->w2; closure: refl-trans }"));
  const auto f = m.frame("K");
  CHECK(f.worlds == std::vector<std::string>{"w1", "w2"});
  CHECK(f.succ == std::vector<Mask>{0b11, 0b10});
}

TEST_CASE("parse: closure matches the library closure on a three-world line") {
  Model m(parse_document("kripke-frame L { worlds: a b c; rel: a->b b->c; closure: refl-trans; }\n"
                         "kripke-frame R { worlds: a b c; rel: a->b b->c; }"));
  const auto raw = m.frame("R");
  CHECK(raw.succ == std::vector<Mask>{0b010, 0b100, 0b000});
  CHECK(m.frame("L").succ == refl_trans_closure(raw).succ);
  CHECK(m.frame("L").succ == std::vector<Mask>{0b111, 0b110, 0b100});
}

TEST_CASE("parse: empty file and comments give an empty document") {
  CHECK(parse_document("").declarations.empty());
  CHECK(parse_document("  # only a comment\n\n").declarations.empty());
}

TEST_CASE("parse: the last entry may omit its semicolon") {
  const auto d = parse_document("poset P {\n  elements: a b\n}\n");
  REQUIRE(d.declarations.size() == 1);
  CHECK(d.declarations[0].entries[0].atoms == std::vector<std::string>{"a", "b"});
  CHECK(error_at("poset P { elements: }").column == 21);
}

TEST_CASE("parse: error positions") {
  SUBCASE("unknown kind") {
    auto p = error_at("\n\n  widget W { }");
    CHECK(p.line == 3);
    CHECK(p.column == 3);
    CHECK(error_text("widget W { }").find("unknown block kind 'widget'") != std::string::npos);
  }
  SUBCASE("missing colon") {
    auto p = error_at("poset P {\n  elements a;\n}");
    CHECK(p.line == 2);
    CHECK(p.column == 12);
  }
  SUBCASE("missing semicolon between entries") {
    auto p = error_at("poset P {\n  elements: a\n  order: a->a;\n}");
    CHECK(p.line == 3);
    CHECK(p.column == 3);
    CHECK(error_text("poset P {\n  elements: a\n  order: a->a;\n}").find("before key 'order'") != std::string::npos);
  }
  SUBCASE("unterminated block") {
    auto p = error_at("poset P {\n  elements: a;\n");
    CHECK(p.line == 3);
    CHECK(p.column == 1);
  }
  SUBCASE("unbalanced bracket") {
    auto p = error_at("presheaf D { at: w1={a,b; }");
    CHECK(p.line == 1);
    CHECK(p.column == 18);
  }
  SUBCASE("duplicate name") {
    auto p = error_at("poset P { elements: a; }\nposet P { elements: b; }");
    CHECK(p.line == 2);
    CHECK(p.column == 7);
  }
  SUBCASE("duplicate key") {
    auto p = error_at("poset P { elements: a; elements: b; }");
    CHECK(p.column == 24);
  }
  CHECK(error_text("poset P {\n  elements a;\n}").rfind("line 2, column 12: ", 0) == 0);
}

TEST_CASE("parse: dangling and mistyped references name the identifier") {
  const auto text = error_text("query Q {\n  check: Missing;\n  expect: pass;\n}");
  CHECK(text.find("'Missing'") != std::string::npos);
  CHECK(text.rfind("line 2, column 10", 0) == 0);
  CHECK(error_text("poset P { elements: a; }\ninterior I { type: identity; doctrine: P; }")
            .find("'P' is a poset, expected a doctrine") != std::string::npos);
  // References must point backwards.
  CHECK(error_text("interior I { type: identity; doctrine: D; }\ndoctrine D { type: powerset; }")
            .find("unresolved reference 'D'") != std::string::npos);
}

TEST_CASE("serialize: round-trip on the shipped models") {
  for (const auto* name : {"kripke", "nontransitive", "presheaf", "quantale", "topology", "temporal"}) {
    CAPTURE(name);
    const auto d = parse_file(path(name));
    CHECK(!d.declarations.empty());
    const auto text = serialize(d);
    const auto again = parse_document(text);
    CHECK(same_document(d, again));
    CHECK(serialize(again) == text);
  }
}

TEST_CASE("serialize: round-trip on random documents") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto d = random_document(rng);
    const auto text = serialize(d);
    CAPTURE(text);
    CHECK(same_document(parse_document(text), d));
  }
}

TEST_CASE("atoms: sets and arrows") {
  CHECK(parse_set_atom("{a,b}") == std::vector<std::string>{"a", "b"});
  CHECK(parse_set_atom("{}").empty());
  CHECK_THROWS_AS(parse_set_atom("a,b"), ModelError);
  CHECK_THROWS_AS(parse_set_atom("{a,,b}"), ModelError);
  CHECK(split_arrow("w1->w2") == std::pair<std::string, std::string>{"w1", "w2"});
  CHECK(split_arrow("s0->(s1,s2)").second == "(s1,s2)");
  CHECK_THROWS_AS(split_arrow("w1"), ModelError);
  // Whitespace inside brackets is dropped.
  CHECK(parse_document("topspace T { opens: { a , b }; }").declarations[0].entries[0].atoms[0] == "{a,b}");
}

TEST_CASE("model: presheaf default and explicit actions") {
  Model m(parse_document("kripke-frame C { worlds: w1 w2; rel: w1->w2; closure: refl-trans; }\n"
                         "presheaf D { frame: C; at: w1={a,b} w2={*}; }\n"
                         "presheaf F { frame: C; at: w1={a,b} w2={x,y}; act: w1->w2[a:y,b:y]; }\n"
                         "presheaf G { frame: C; at: w1={a,b} w2={x,y,z}; }"));
  const auto d = m.presheaf("D");
  CHECK(check_presheaf(d).empty());
  const auto& C = *d.base;
  const auto f = C.hom(1, 0);  // w1 R w2
  REQUIRE(f.size() == 1);
  CHECK(d.act[f[0]] == std::vector<std::size_t>{0, 0});
  CHECK(m.presheaf("F").act[f[0]] == std::vector<std::size_t>{1, 1});
  CHECK_THROWS_AS(m.presheaf("G"), ModelError);
}

TEST_CASE("model: construction errors") {
  Model m(parse_document("coalgebra S { kind: stream; states: a b; step: a->b; }\n"
                         "coalgebra T { kind: tree; states: a; step: a->b; }\n"
                         "quantale Q { type: monoid; elements: e g; mul: e*e=e; unit: e; }\n"
                         "poset P { elements: a b; order: a->b b->a; }\n"
                         "category K { objects: x; arrows: f:x->x; compose: f.f=g; }"));
  CHECK_THROWS_AS(m.coalgebra("S"), ModelError);
  CHECK_THROWS_AS(m.coalgebra("T"), ModelError);
  CHECK_THROWS_AS(m.quantale("Q"), ModelError);
  CHECK_THROWS_AS(m.poset("P"), ModelError);
  CHECK(!m.check("P").empty());
  CHECK_THROWS_AS(m.check("K"), ModelError);
}

TEST_CASE("model: explicit posets and categories") {
  Model m(parse_document("poset P { elements: a b c; order: a->b b->c; }\n"
                         "poset N { elements: a b; order: a->b; closure: none; }\n"
                         "category C { poset: P; }\n"
                         "category E { objects: x y; arrows: f:x->y; }"));
  const auto p = m.poset("P");
  CHECK(p->leq(0, 2));
  CHECK(!p->leq(2, 0));
  CHECK(!m.check("N").empty());  // not reflexive
  CHECK(m.check("C").empty());
  CHECK(m.category("C").cat->num_arrows() == 6);
  CHECK(m.check("E").empty());
  CHECK(m.category("E").cat->num_arrows() == 3);
}

TEST_CASE("check: exit codes") {
  auto ok = run(check_all("kripke"));
  CHECK(ok.code == 0);
  CHECK(ok.err.empty());
  CHECK(ok.out.find("PASS interior Box") != std::string::npos);

  auto bad = run(check_all("nontransitive"));
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL interior Box") != std::string::npos);
  CHECK(bad.out.find("4 1:[{0,1}]") != std::string::npos);

  auto missing = run(check_all("no-such-model"));
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot read") != std::string::npos);

  for (const auto* name : {"presheaf", "quantale", "topology", "temporal"}) {
    CAPTURE(name);
    CHECK(run(check_all(name)).code == 0);
  }
}

TEST_CASE("check: empty document passes vacuously") {
  const auto file = std::string(MODALDOC_BINARY_DIR) + "/empty.model";
  { std::ofstream(file) << "# nothing\n"; }
  auto o = check_all("kripke");
  o.file = file;
  auto r = run(o);
  CHECK(r.code == 0);
  CHECK(r.out.find("checked: 0") != std::string::npos);
}

TEST_CASE("check: refusal above --max-size exits 2") {
  auto o = check_all("quantale");
  o.max_size = 8;
  auto r = run(o);
  CHECK(r.code == 2);
  CHECK(r.err.rfind("refused: ", 0) == 0);
  CHECK(r.err.find("above --max-size 8") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("check: named targets and usage errors") {
  auto o = check_all("kripke");
  o.all = false;
  o.names = {"Box"};
  auto r = run(o);
  CHECK(r.code == 0);
  CHECK(r.out.find("checked: 1") != std::string::npos);
  o.names = {"Chain"};
  CHECK(run(o).code == 2);
  o.names = {"Nope"};
  CHECK(run(o).code == 2);
  o.command = "explode";
  CHECK(run(o).code == 2);
}

TEST_CASE("query: a failing expectation fails the report") {
  const auto file = std::string(MODALDOC_BINARY_DIR) + "/query.model";
  {
    std::ofstream(file) << "category S { sets: 1={*}; }\n"
                           "kripke-frame L { worlds: 0 1 2; rel: 0->0 1->1 2->2 0->1 1->2; }\n"
                           "interior B { type: kripke; frame: L; base: S; }\n"
                           "query BFails { check: B; expect: fail; }\n"
                           "query BPasses { check: B; expect: pass; }\n";
  }
  auto o = check_all("kripke");
  o.file = file;
  o.all = false;
  o.names = {"BFails"};
  CHECK(run(o).code == 0);
  o.names = {"BPasses"};
  auto r = run(o);
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL query BPasses") != std::string::npos);
}

TEST_CASE("temporal: EG on the tree M prints {s0,s1}") {
  CommandOptions o;
  o.command = "temporal";
  o.op = "EG";
  o.coalgebra = "M";
  o.alpha = "{s0,s1}";
  auto r = run(o);
  CHECK(r.code == 0);
  CHECK(r.out.find("result: {s0,s1}") != std::string::npos);

  o.file = path("temporal");
  r = run(o);
  CHECK(r.code == 0);
  CHECK(r.out.find("result: {s0,s1}") != std::string::npos);

  o.op = "AG";
  r = run(o);
  CHECK(r.out.find("result: {s1}") != std::string::npos);

  o.op = "G";  // stream operator on a tree coalgebra
  CHECK(run(o).code == 2);
  o.op = "XF";
  CHECK(run(o).code == 2);
}

TEST_CASE("temporal: exhaustive mode covers every subset") {
  CommandOptions o;
  o.command = "temporal";
  o.op = "G";
  o.coalgebra = "S1";
  o.json = true;
  auto r = run(o);
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto n = j["derived"]["results"].size();
  CHECK((n & (n - 1)) == 0);  // 2^|states|
  o.max_size = 1;
  CHECK(run(o).code == 2);
}

TEST_CASE("derive: box table agrees with the Kripke box") {
  CommandOptions o;
  o.command = "derive";
  o.file = path("kripke");
  o.from_kind = "interior";
  o.from_name = "Box";
  o.json = true;
  auto r = run(o);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto& one = j["derived"]["box"]["1"];
  CHECK(one["[{}]"] == "[{}]");
  CHECK(one["[{w1}]"] == "[{}]");
  CHECK(one["[{w2}]"] == "[{w2}]");
  CHECK(one["[{w1,w2}]"] == "[{w1,w2}]");

  for (const auto* c : {"MC", "MA"}) {
    o.construction = c;
    CHECK(run(o).code == 0);
  }
  o.construction = "bogus";
  CHECK(run(o).code == 2);
}

TEST_CASE("derive: adjunction constructions") {
  CommandOptions o;
  o.command = "derive";
  o.file = path("quantale");
  o.from_kind = "adjunction";
  o.from_name = "Core";
  for (const auto* c : {"AM", "CM", "vertical"}) {
    CAPTURE(c);
    o.construction = c;
    CHECK(run(o).code == 0);
  }
  o.file = path("presheaf");
  o.from_name = "Restrict";
  o.construction = "AM";
  CHECK(run(o).code == 0);
  o.construction = "vertical";
  CHECK(run(o).code == 2);
  o.from_kind = "poset";
  CHECK(run(o).code == 2);
}

TEST_CASE("em and factor") {
  CommandOptions o;
  o.command = "em";
  o.file = path("topology");
  o.names = {"C"};
  auto r = run(o);
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS CM = AM of the EM adjunction") != std::string::npos);
  o.file = path("kripke");
  o.names = {"MC"};
  CHECK(run(o).code == 0);

  o.command = "factor";
  o.file = path("quantale");
  o.names = {"Core"};
  r = run(o);
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS triviality biconditionals") != std::string::npos);
  o.names = {};
  CHECK(run(o).code == 2);
}

TEST_CASE("json: stable key order and identical bytes across runs") {
  CommandOptions o;
  o.command = "suite";
  o.json = true;
  const auto a = run(o);
  const auto b = run(o);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::ordered_json::parse(a.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"command", "verdicts", "derived", "pass"});
  CHECK(j["verdicts"].size() == 11);

  auto c = run(check_all("kripke"));
  auto d = run(check_all("kripke"));
  CHECK(c.out == d.out);
}
