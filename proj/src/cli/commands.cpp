#include <sstream>

#include "modaldoc/bundled.hpp"
#include "modaldoc/cli.hpp"
#include "modaldoc/suite.hpp"

namespace modaldoc {

namespace {

using nlohmann::ordered_json;

std::vector<std::string> render(const Violations& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.witness.empty() ? v.law : v.law + " " + v.witness);
  return out;
}

Verdict verdict(const std::string& check, const Violations& vs) { return {check, vs.empty(), render(vs)}; }

Verdict flag(const std::string& check, bool ok, std::vector<std::string> witnesses = {}) {
  if (ok) witnesses.clear();
  return {check, ok, std::move(witnesses)};
}

// object -> element -> image, over the fiber names.
ordered_json box_table(const InteriorOp& op) {
  ordered_json t = ordered_json::object();
  const auto& C = *op.doctrine->base;
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    ordered_json row = ordered_json::object();
    const auto& P = *op.doctrine->fiber[x];
    for (std::size_t a = 0; a < P.size(); ++a) row[P.name(a)] = P.name(op.box[x](a));
    t[C.object_name(x)] = std::move(row);
  }
  return t;
}

ordered_json fiber_sizes(const DocPtr& d) {
  ordered_json t = ordered_json::object();
  for (std::size_t x = 0; x < d->base->num_objects(); ++x) t[d->base->object_name(x)] = d->fiber[x]->size();
  return t;
}

Model load(const CommandOptions& o) {
  if (o.file.empty()) throw UsageError(o.command + " needs a model file");
  return Model(parse_file(o.file));
}

const std::string& single_name(const CommandOptions& o) {
  if (o.names.size() != 1) throw UsageError(o.command + " takes exactly one declaration name");
  return o.names[0];
}

Verdict query_verdict(Model& m, const Declaration& q) {
  const auto label = "query " + q.name;
  const auto* expect = q.find("expect");
  if (!expect || expect->atoms.size() != 1) throw ModelError(label + " needs one 'expect' value");
  const auto& want = expect->atoms[0];
  if (const auto* c = q.find("check")) {
    if (c->atoms.size() != 1) throw ModelError(label + ": 'check' takes one name");
    if (want != "pass" && want != "fail") throw ModelError(label + ": expect must be pass or fail");
    const auto vs = m.check(c->atoms[0]);
    const bool ok = vs.empty() == (want == "pass");
    auto w = render(vs);
    if (w.empty()) w.push_back("no violations");
    return flag(label, ok, w);
  }
  if (const auto* t = q.find("temporal")) {
    const auto* cname = q.find("coalgebra");
    const auto* alpha = q.find("alpha");
    if (t->atoms.size() != 1 || !cname || cname->atoms.size() != 1 || !alpha || alpha->atoms.size() != 1)
      throw ModelError(label + " needs one temporal, coalgebra and alpha value");
    const auto c = m.coalgebra(cname->atoms[0]);
    const auto op = parse_temporal_op(t->atoms[0]);
    Mask a = 0, e = 0;
    for (const auto& s : parse_set_atom(alpha->atoms[0])) {
      auto i = std::find(c.states.begin(), c.states.end(), s);
      if (i == c.states.end()) throw ModelError(label + ": unknown state '" + s + "'");
      a |= Mask{1} << (i - c.states.begin());
    }
    for (const auto& s : parse_set_atom(want)) {
      auto i = std::find(c.states.begin(), c.states.end(), s);
      if (i == c.states.end()) throw ModelError(label + ": unknown state '" + s + "'");
      e |= Mask{1} << (i - c.states.begin());
    }
    const auto got = gfp_modality(c, lift_of(op), a).value;
    return flag(label, got == e, {"got " + subset_name(c.states, got)});
  }
  throw ModelError(label + " needs 'check' or 'temporal'");
}

Report check_command(const CommandOptions& o) {
  auto m = load(o);
  Report r{"check", {}, {}};
  std::vector<std::string> names = o.names;
  if (o.all || names.empty())
    for (const auto& d : m.document().declarations) names.push_back(d.name);
  std::size_t checked = 0;
  for (const auto& n : names) {
    const auto* d = m.document().find(n);
    if (!d) throw UsageError("no declaration named '" + n + "'");
    if (d->kind == "query") {
      r.verdicts.push_back(query_verdict(m, *d));
    } else if (m.checkable(n)) {
      r.verdicts.push_back(verdict(d->kind + " " + n, m.check(n)));
    } else {
      if (!o.names.empty() && !o.all) throw UsageError("a " + d->kind + " has no laws to check");
      continue;
    }
    ++checked;
  }
  r.derived["checked"] = checked;
  return r;
}

Report derive_command(const CommandOptions& o) {
  auto m = load(o);
  Report r{"derive", {}, {}};
  const auto& name = o.from_name;
  if (name.empty()) throw UsageError("derive needs --from KIND NAME");
  r.derived["from"] = o.from_kind + " " + name;
  if (o.from_kind == "interior") {
    const auto op = m.interior(name);
    const auto c = o.construction.empty() ? std::string("box") : o.construction;
    r.derived["construction"] = c;
    if (c == "box") {
      r.verdicts.push_back(verdict("interior laws", check_interior(op)));
      r.derived["box"] = box_table(op);
    } else if (c == "MC") {
      const auto k = mc(op);
      r.verdicts.push_back(verdict("comonad laws", check_comonad(k)));
      if (!r.verdicts.back().pass) return r;
      const auto em = em_doctrine(k);
      std::vector<std::string> w;
      for (std::size_t i = 0; i < em.coalgebras.carrier.size(); ++i) {
        const auto x = em.coalgebras.carrier[i];
        if (em.embed[i] != stable_elements(op, x)) w.push_back(op.doctrine->base->object_name(x));
      }
      r.verdicts.push_back(flag("EM fibers are the stable elements", w.empty(), w));
      r.verdicts.push_back(verdict("EM bundle invariants", check_em_bundle(k, em)));
      r.derived["EM fibers"] = fiber_sizes(em.em);
    } else if (c == "MA") {
      const auto a = ma(op);
      r.verdicts.push_back(verdict("adjunction laws", check_adjunction(a.adjunction)));
      r.verdicts.push_back(flag("MA agrees with EM(MC)", a.matches_em));
      r.verdicts.push_back(flag("AM(MA) = identity on the interior", same_interior(am_modality(a.adjunction).op, op)));
      r.derived["stable fibers"] = fiber_sizes(a.stable.doctrine);
    } else {
      throw UsageError("an interior derives box, MC or MA");
    }
    return r;
  }
  if (o.from_kind == "adjunction") {
    const auto a = m.adjunction(name);
    r.verdicts.push_back(verdict("adjunction laws", check_adjunction(a)));
    if (!r.verdicts.back().pass) return r;
    const auto c = o.construction.empty() ? std::string("AM") : o.construction;
    r.derived["construction"] = c;
    if (c == "AM") {
      const auto am = am_modality(a);
      r.verdicts.push_back(verdict("interior laws", check_interior(am.op)));
      r.derived["box"] = box_table(am.op);
    } else if (c == "CM") {
      const auto k = cmd_of_adjunction(a);
      r.verdicts.push_back(verdict("comonad laws", check_comonad(k)));
      const auto cm = cm_modality(k);
      r.verdicts.push_back(verdict("interior laws", check_interior(cm.op)));
      const auto cmp = modality_comparison_check(a);
      auto w = cmp.mismatches;
      if (!cmp.modal_arrow_valid) w.push_back("comparison arrow is not modal");
      r.verdicts.push_back(flag("AM(A) and CM(C(A)) agree along the comparison arrow", cmp.ok(), w));
      r.derived["box"] = box_table(cm.op);
    } else if (c == "vertical") {
      if (!is_vertical(a)) throw UsageError("adjunction " + name + " is not vertical");
      const auto op = vertical_modality(a);
      r.verdicts.push_back(verdict("interior laws", check_interior(op)));
      r.verdicts.push_back(flag("vertical modality = AM(A)", same_interior(op, am_modality(a).op)));
      r.derived["box"] = box_table(op);
    } else {
      throw UsageError("an adjunction derives AM, CM or vertical");
    }
    return r;
  }
  if (o.from_kind == "comonad") {
    const auto k = m.comonad(name);
    r.verdicts.push_back(verdict("comonad laws", check_comonad(k)));
    if (!r.verdicts.back().pass) return r;
    const auto c = o.construction.empty() ? std::string("CM") : o.construction;
    r.derived["construction"] = c;
    if (c != "CM") throw UsageError("a comonad derives CM");
    const auto cm = cm_modality(k);
    r.verdicts.push_back(verdict("interior laws", check_interior(cm.op)));
    r.derived["box"] = box_table(cm.op);
    return r;
  }
  throw UsageError("--from takes interior, adjunction or comonad");
}

Report em_command(const CommandOptions& o) {
  auto m = load(o);
  Report r{"em", {}, {}};
  const auto k = m.comonad(single_name(o));
  r.verdicts.push_back(verdict("comonad laws", check_comonad(k)));
  if (!r.verdicts.back().pass) return r;
  const auto em = em_doctrine(k);
  const auto& C = *em.coalgebras.cat;
  ordered_json coalgebras = ordered_json::array();
  for (std::size_t x = 0; x < C.num_objects(); ++x) coalgebras.push_back(C.object_name(x));
  r.derived["coalgebras"] = std::move(coalgebras);
  r.derived["fibers"] = fiber_sizes(em.em);
  r.verdicts.push_back(verdict("EM bundle invariants", check_em_bundle(k, em)));
  const auto ea = em_adjunction(k, em);
  r.verdicts.push_back(verdict("EM adjunction laws", check_adjunction(ea)));
  r.verdicts.push_back(flag("comonad of the EM adjunction = comonad", same_comonad_data(cmd_of_adjunction(ea), k)));
  r.verdicts.push_back(flag("CM = AM of the EM adjunction", same_interior(cm_modality(k, em).op, am_modality(ea).op)));
  return r;
}

Report factor_command(const CommandOptions& o) {
  auto m = load(o);
  Report r{"factor", {}, {}};
  const auto a = m.adjunction(single_name(o));
  r.verdicts.push_back(verdict("adjunction laws", check_adjunction(a)));
  if (!r.verdicts.back().pass) return r;
  const auto f = factorize(a);
  r.verdicts.push_back(verdict("vertical part", check_adjunction(f.vertical)));
  r.verdicts.push_back(verdict("base-change part", check_adjunction(f.base_change)));
  r.verdicts.push_back(flag("left adjoints compose back", f.left_composite_equal));
  r.verdicts.push_back(flag("right adjoints compose back", f.right_composite_equal));
  const auto rep = factorize2_report(a);
  std::vector<std::string> w;
  ordered_json objects = ordered_json::object();
  for (const auto& x : rep.objects) {
    objects[x.object] = ordered_json{{"lambda lands in stable", x.lambda_lands_in_stable},
                                     {"lambda surjective", x.lambda_surjective},
                                     {"pullback injective", x.pullback_injective}};
    for (const auto& s : x.surjectivity_witnesses) w.push_back(x.object + ": " + s);
    for (const auto& s : x.injectivity_witnesses) w.push_back(x.object + ": " + s);
  }
  if (!rep.square_lambda) w.push_back("square u.lam^ = lam");
  if (!rep.square_pullback) w.push_back("square pb^.box^ = pb");
  if (!rep.square_box) w.push_back("square u.box^ = box");
  if (!rep.box_identity_on_stable) w.push_back("box^ is not the identity on stable elements");
  if (!rep.arrows_valid) w.push_back("factor arrows");
  r.verdicts.push_back(flag("factorization through the stable subdoctrine", rep.ok(), w));
  r.derived["objects"] = std::move(objects);
  if (is_vertical(a)) {
    std::vector<std::string> bad;
    ordered_json triv = ordered_json::object();
    for (const auto& t : triviality_checks(a)) {
      triv[t.object] = ordered_json{{"LR = id", t.lr_identity}, {"RL = id", t.rl_identity}};
      if (!t.lrl_equals_l || !t.rlr_equals_r) bad.push_back(t.object + ": triangle identities");
      if (!t.first_biconditional()) bad.push_back(t.object + ": LR = id / rho injective / lambda surjective");
      if (!t.second_biconditional()) bad.push_back(t.object + ": RL = id / lambda injective / rho surjective");
    }
    r.verdicts.push_back(flag("triviality biconditionals", bad.empty(), bad));
    r.derived["triviality"] = std::move(triv);
  }
  return r;
}

FCoalgebra find_coalgebra(const CommandOptions& o) {
  if (o.coalgebra.empty()) throw UsageError("temporal needs --coalgebra");
  if (!o.file.empty()) return load(o).coalgebra(o.coalgebra);
  for (const auto& list : {bundled_stream_coalgebras(), bundled_tree_coalgebras()})
    for (const auto& c : list)
      if (c.name == o.coalgebra) return c;
  throw UsageError("no bundled coalgebra named '" + o.coalgebra + "'");
}

Report temporal_command(const CommandOptions& o) {
  Report r{"temporal", {}, {}};
  if (o.op.empty()) throw UsageError("temporal needs --op");
  const auto op = parse_temporal_op(o.op);
  const auto c = find_coalgebra(o);
  r.verdicts.push_back(verdict("coalgebra " + c.name, check_coalgebra(c)));
  if (!r.verdicts.back().pass) return r;
  if (kind_of(op) != c.kind) throw ModelError(op_name(op) + " does not apply to coalgebra " + c.name);
  const auto lift = lift_of(op);
  r.derived["op"] = op_name(op);
  r.derived["coalgebra"] = c.name;
  if (!o.alpha.empty()) {
    Mask a = 0;
    for (const auto& s : parse_set_atom(o.alpha)) {
      auto i = std::find(c.states.begin(), c.states.end(), s);
      if (i == c.states.end()) throw ModelError("unknown state '" + s + "'");
      a |= Mask{1} << (i - c.states.begin());
    }
    const auto g = gfp_modality(c, lift, a);
    const auto oracle = temporal_oracle(c, op, a);
    r.derived["alpha"] = subset_name(c.states, a);
    r.derived["result"] = subset_name(c.states, g.value);
    r.derived["iterations"] = g.iterations;
    r.verdicts.push_back(flag("agrees with the path oracle", g.value == oracle, {"oracle " + subset_name(c.states, oracle)}));
    return r;
  }
  const auto n = c.states.size();
  if (n >= 63) throw CapExceeded("2^" + std::to_string(n) + " subsets above --max-size " + std::to_string(o.max_size));
  enforce_cap(std::size_t{1} << n, "subsets of " + c.name);
  ordered_json table = ordered_json::object();
  std::vector<std::string> bad;
  for (Mask a = 0; a < (Mask{1} << n); ++a) {
    const auto g = gfp_modality(c, lift, a);
    table[subset_name(c.states, a)] = subset_name(c.states, g.value);
    if (g.value != temporal_oracle(c, op, a)) bad.push_back(subset_name(c.states, a));
  }
  r.derived["results"] = std::move(table);
  r.verdicts.push_back(flag("agrees with the path oracle on every subset", bad.empty(), bad));
  return r;
}

Report suite_command(const CommandOptions& o) {
  Report r{"suite", {}, {}};
  r.derived["seed"] = o.seed;
  for (const auto& c : run_acceptance(o.seed)) {
    auto label = std::to_string(c.id) + " " + c.title;
    r.derived[label] = c.details;
    r.verdicts.push_back({label, c.pass, c.pass ? std::vector<std::string>{} : c.details});
  }
  return r;
}

void render_value(std::ostringstream& s, const ordered_json& v, const std::string& indent) {
  for (const auto& [k, x] : v.items()) {
    if (x.is_object()) {
      s << indent << k << ":\n";
      render_value(s, x, indent + "  ");
    } else if (x.is_array()) {
      s << indent << k << ":";
      const char* sep = " ";
      for (const auto& e : x) {
        s << sep << (e.is_string() ? e.get<std::string>() : e.dump());
        sep = "; ";
      }
      s << "\n";
    } else {
      s << indent << k << ": " << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
    }
  }
}

}  // namespace

bool Report::pass() const {
  for (const auto& v : verdicts)
    if (!v.pass) return false;
  return true;
}

std::string render_text(const Report& r) {
  std::ostringstream s;
  s << r.command << "\n";
  render_value(s, r.derived, "  ");
  for (const auto& v : r.verdicts) {
    s << (v.pass ? "PASS " : "FAIL ") << v.check << "\n";
    for (const auto& w : v.witnesses) s << "  " << w << "\n";
  }
  s << (r.pass() ? "PASS" : "FAIL") << "\n";
  return s.str();
}

std::string render_json(const Report& r) {
  ordered_json j;
  j["command"] = r.command;
  j["verdicts"] = ordered_json::array();
  for (const auto& v : r.verdicts) j["verdicts"].push_back({{"check", v.check}, {"pass", v.pass}, {"witnesses", v.witnesses}});
  j["derived"] = r.derived;
  j["pass"] = r.pass();
  return j.dump(2) + "\n";
}

Report build_report(const CommandOptions& o) {
  EnumerationCap cap(o.max_size);
  if (o.command == "check") return check_command(o);
  if (o.command == "derive") return derive_command(o);
  if (o.command == "em") return em_command(o);
  if (o.command == "factor") return factor_command(o);
  if (o.command == "temporal") return temporal_command(o);
  if (o.command == "suite") return suite_command(o);
  throw UsageError("unknown command '" + o.command + "'");
}

int run_command(const CommandOptions& o, std::ostream& out, std::ostream& err) {
  try {
    const auto r = build_report(o);
    out << (o.json ? render_json(r) : render_text(r));
    return r.pass() ? 0 : 1;
  } catch (const CapExceeded& e) {
    err << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace modaldoc
