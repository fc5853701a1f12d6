#include <random>

#include "modaldoc/bundled.hpp"
#include "modaldoc/cli.hpp"

namespace modaldoc {

namespace {

std::string label(const Declaration& d) { return d.kind + " " + d.name; }

const Entry& need(const Declaration& d, const std::string& key) {
  const auto* e = d.find(key);
  if (!e || e->atoms.empty()) throw ModelError(label(d) + " needs '" + key + "'");
  return *e;
}

std::string one(const Declaration& d, const std::string& key) {
  const auto& e = need(d, key);
  if (e.atoms.size() != 1) throw ModelError(label(d) + ": '" + key + "' takes one value");
  return e.atoms[0];
}

std::vector<std::string> atoms(const Declaration& d, const std::string& key) {
  const auto* e = d.find(key);
  return e ? e->atoms : std::vector<std::string>{};
}

std::string optional(const Declaration& d, const std::string& key, const std::string& fallback) {
  return d.find(key) ? one(d, key) : fallback;
}

std::size_t index_in(const std::vector<std::string>& names, const std::string& x, const std::string& what) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == x) return i;
  throw ModelError("unknown " + what + " '" + x + "'");
}

Mask subset_mask(const std::vector<std::string>& ground, const std::string& atom, const std::string& what) {
  Mask m = 0;
  for (const auto& x : parse_set_atom(atom)) m |= Mask{1} << index_in(ground, x, what);
  return m;
}

// "name=value" split at the first '='.
std::pair<std::string, std::string> split_eq(const std::string& atom) {
  auto k = atom.find('=');
  if (k == std::string::npos || k == 0) throw ModelError("expected name=value, got '" + atom + "'");
  return {atom.substr(0, k), atom.substr(k + 1)};
}

std::vector<std::string> split_commas(const std::string& body) {
  std::vector<std::string> out;
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
  return out;
}

std::vector<std::pair<std::string, std::string>> pairs(const Declaration& d, const std::string& key) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& a : atoms(d, key)) out.push_back(split_arrow(a));
  return out;
}

// Reflexive-transitive closure of a relation on names.
std::vector<std::pair<std::string, std::string>> closure(const std::vector<std::string>& names,
                                                         const std::vector<std::pair<std::string, std::string>>& rel) {
  const auto n = names.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (const auto& [a, b] : rel) r[index_in(names, a, "element")][index_in(names, b, "element")] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r[i][j]) out.emplace_back(names[i], names[j]);
  return out;
}

Checked<PosetPtr> poset_of(const Declaration& d) {
  auto elems = need(d, "elements").atoms;
  auto rel = pairs(d, "order");
  const auto mode = optional(d, "closure", "refl-trans");
  if (mode == "refl-trans") {
    rel = closure(elems, rel);
  } else if (mode != "none") {
    throw ModelError(label(d) + ": closure must be refl-trans or none");
  }
  return check_poset(elems, rel);
}

Checked<CatPtr> explicit_category(const Declaration& d) {
  CategoryData data;
  data.objects = need(d, "objects").atoms;
  for (const auto& a : atoms(d, "arrows")) {
    auto k = a.find(':');
    if (k == std::string::npos) throw ModelError("expected f:x->y, got '" + a + "'");
    auto [x, y] = split_arrow(a.substr(k + 1));
    data.arrows.push_back({a.substr(0, k), index_in(data.objects, x, "object"), index_in(data.objects, y, "object")});
  }
  data.identities = atoms(d, "identities");
  for (const auto& c : atoms(d, "compose")) {
    auto [lhs, h] = split_eq(c);
    auto k = lhs.find('.');
    if (k == std::string::npos) throw ModelError("expected g.f=h, got '" + c + "'");
    data.compose.emplace_back(lhs.substr(0, k), lhs.substr(k + 1), h);
  }
  return check_category(data);
}

SetCat finite_sets(const CategoryValue& c, const std::string& who) {
  if (!c.sets) throw ModelError(who + " needs a category of finite sets");
  return *c.sets;
}

TemporalOp op_of(const std::string& s) { return parse_temporal_op(s); }

}  // namespace

Model::Model(Document doc) : doc_(std::move(doc)) {}

const Declaration& Model::decl(const std::string& name, const std::string& kind) const {
  const auto* d = doc_.find(name);
  if (!d) throw ModelError("no declaration named '" + name + "'");
  if (!kind.empty() && d->kind != kind) throw ModelError("'" + name + "' is a " + d->kind + ", expected a " + kind);
  return *d;
}

template <class T, class F>
T Model::cached(const std::string& name, F&& build) {
  auto it = cache_.find(name);
  if (it != cache_.end()) return std::any_cast<T>(it->second);
  T v = build();
  cache_.emplace(name, v);
  return v;
}

PosetPtr Model::poset(const std::string& name) {
  return cached<PosetPtr>(name, [&] {
    const auto& d = decl(name, "poset");
    auto c = poset_of(d);
    if (!c.ok()) throw ModelError(label(d) + " fails " + c.violations.front().law + " " + c.violations.front().witness);
    return *c.value;
  });
}

CategoryValue Model::category(const std::string& name) {
  return cached<CategoryValue>(name, [&]() -> CategoryValue {
    const auto& d = decl(name, "category");
    if (d.find("sets")) {
      std::vector<std::string> names;
      std::vector<std::vector<std::string>> sets;
      for (const auto& a : need(d, "sets").atoms) {
        auto [n, s] = split_eq(a);
        names.push_back(n);
        sets.push_back(parse_set_atom(s));
      }
      auto sc = finset_category(names, sets);
      return {sc.cat, sc};
    }
    if (d.find("poset")) return {poset_category(*poset(one(d, "poset"))), std::nullopt};
    if (d.find("frame")) return {frame_category(one(d, "frame")), std::nullopt};
    auto c = explicit_category(d);
    if (!c.ok()) throw ModelError(label(d) + " fails " + c.violations.front().law + " " + c.violations.front().witness);
    return {*c.value, std::nullopt};
  });
}

DocPtr Model::doctrine(const std::string& name) {
  return cached<DocPtr>(name, [&]() -> DocPtr {
    const auto& d = decl(name, "doctrine");
    const auto type = one(d, "type");
    auto base = category(one(d, "base"));
    if (type == "powerset") return powerset_doctrine(finite_sets(base, label(d)));
    if (type == "subobject") return subobject_doctrine_finset(finite_sets(base, label(d)));
    if (type == "exponential") return exponential_doctrine(finite_sets(base, label(d)), poset(one(d, "values")));
    if (type == "quantale") return quantale_doctrine(quantale(one(d, "quantale")), finite_sets(base, label(d))).full;
    if (type == "constant") {
      auto p = poset(one(d, "values"));
      auto out = std::make_shared<Doctrine>();
      out->base = base.cat;
      out->fiber.assign(base.cat->num_objects(), p);
      out->reindex.assign(base.cat->num_arrows(), identity_map(p));
      return out;
    }
    throw ModelError(label(d) + ": unknown type '" + type + "'");
  });
}

InteriorOp Model::interior(const std::string& name) {
  return cached<InteriorOp>(name, [&]() -> InteriorOp {
    const auto& d = decl(name, "interior");
    const auto type = one(d, "type");
    if (type == "identity") return identity_interior(doctrine(one(d, "doctrine")));
    if (type == "kripke") return kripke_doctrine(frame(one(d, "frame")), finite_sets(category(one(d, "base")), label(d)));
    if (type == "fam") {
      auto f = frame(one(d, "frame"));
      std::vector<IndexedFamily> fams;
      for (const auto& a : need(d, "families").atoms) {
        auto [n, rest] = split_eq(a);
        std::vector<std::string> parts;
        std::string cur;
        for (char ch : rest) {
          if (ch == '/') {
            parts.push_back(cur);
            cur.clear();
          } else {
            cur += ch;
          }
        }
        parts.push_back(cur);
        IndexedFamily x{n, parse_set_atom(parts[0]), {}};
        for (std::size_t k = 1; k < parts.size(); ++k) x.parts.push_back(subset_mask(x.carrier, parts[k], "element"));
        fams.push_back(std::move(x));
      }
      return fam_doctrine(f, fams).op;
    }
    if (type == "topology") {
      std::vector<FiniteTopSpace> sp;
      for (const auto& s : need(d, "spaces").atoms) sp.push_back(space(s));
      return topological_doctrine(sp).op;
    }
    if (type == "bang") {
      auto q = quantale(one(d, "quantale"));
      const auto sets = finite_sets(category(one(d, "base")), label(d));
      const auto core = optional(d, "core", "real");
      if (core == "fake") return quantale_doctrine(q, sets, fake_quantale_core(q)).bang;
      if (core != "real") throw ModelError(label(d) + ": core must be real or fake");
      return quantale_doctrine(q, sets).bang;
    }
    if (type == "presheaf" || type == "presheaf-box") {
      std::vector<FinPresheaf> ps;
      for (const auto& p : need(d, "presheaves").atoms) ps.push_back(presheaf(p));
      if (type == "presheaf-box") return presheaf_box_doctrine(presheaf_category(ps));
      auto base = ps.front().base;
      return presheaf_instance(base, ps).modality.op;
    }
    if (type == "conjunction") return conjunction_modality(doctrine(one(d, "doctrine"))).op;
    if (type == "forall") {
      const auto sets = finite_sets(category(one(d, "base")), label(d));
      auto x = sets.cat->find_object(one(d, "over"));
      if (!x) throw ModelError(label(d) + ": unknown object '" + one(d, "over") + "'");
      return forall_modality(sets, *x).op;
    }
    if (type == "temporal") {
      std::vector<FCoalgebra> cs;
      for (const auto& c : need(d, "coalgebras").atoms) cs.push_back(coalgebra(c));
      return temporal_doctrine(cs, op_of(one(d, "op"))).modality;
    }
    throw ModelError(label(d) + ": unknown type '" + type + "'");
  });
}

DoctrineAdjunction Model::adjunction(const std::string& name) {
  return cached<DoctrineAdjunction>(name, [&]() -> DoctrineAdjunction {
    const auto& d = decl(name, "adjunction");
    const auto type = one(d, "type");
    if (type == "identity") return identity_adjunction(doctrine(one(d, "doctrine")));
    if (type == "quantale") {
      auto q = quantale(one(d, "quantale"));
      const auto sets = finite_sets(category(one(d, "base")), label(d));
      const auto core = optional(d, "core", "real");
      if (core == "fake") return quantale_doctrine(q, sets, fake_quantale_core(q)).adjunction;
      if (core != "real") throw ModelError(label(d) + ": core must be real or fake");
      return quantale_doctrine(q, sets).adjunction;
    }
    if (type == "conjunction") return conjunction_modality(doctrine(one(d, "doctrine"))).adjunction;
    if (type == "forall") {
      const auto sets = finite_sets(category(one(d, "base")), label(d));
      auto x = sets.cat->find_object(one(d, "over"));
      if (!x) throw ModelError(label(d) + ": unknown object '" + one(d, "over") + "'");
      return forall_modality(sets, *x).adjunction;
    }
    if (type == "ma") return ma(interior(one(d, "interior"))).adjunction;
    if (type == "presheaf") {
      std::vector<FinPresheaf> ps;
      for (const auto& p : need(d, "presheaves").atoms) ps.push_back(presheaf(p));
      auto base = ps.front().base;
      return presheaf_instance(base, ps).adjunction;
    }
    if (type == "random") {
      std::mt19937_64 rng(std::stoull(optional(d, "seed", "7")));
      return random_vertical_adjunction(rng, std::stoul(optional(d, "max-fiber", "16")));
    }
    throw ModelError(label(d) + ": unknown type '" + type + "'");
  });
}

DoctrineComonad Model::comonad(const std::string& name) {
  return cached<DoctrineComonad>(name, [&]() -> DoctrineComonad {
    const auto& d = decl(name, "comonad");
    const auto type = one(d, "type");
    if (type == "identity") return identity_comonad(doctrine(one(d, "doctrine")));
    if (type == "mc") return mc(interior(one(d, "interior")));
    if (type == "adjunction") return cmd_of_adjunction(adjunction(one(d, "adjunction")));
    throw ModelError(label(d) + ": unknown type '" + type + "'");
  });
}

KripkeFrame Model::frame(const std::string& name) {
  return cached<KripkeFrame>(name, [&] {
    const auto& d = decl(name, "kripke-frame");
    auto f = make_frame(need(d, "worlds").atoms, pairs(d, "rel"));
    const auto mode = optional(d, "closure", "none");
    if (mode == "refl-trans") return refl_trans_closure(f);
    if (mode != "none") throw ModelError(label(d) + ": closure must be refl-trans or none");
    return f;
  });
}

CatPtr Model::frame_category(const std::string& name) {
  return cached<CatPtr>("frame-base:" + name, [&] { return frame_base(frame(name)); });
}

FiniteQuantale Model::quantale(const std::string& name) {
  return cached<FiniteQuantale>(name, [&]() -> FiniteQuantale {
    const auto& d = decl(name, "quantale");
    const auto type = one(d, "type");
    if (type == "boolean") return boolean_quantale();
    if (type == "lukasiewicz3") return lukasiewicz3_quantale();
    if (type == "monoid") {
      const auto elems = need(d, "elements").atoms;
      const auto m = elems.size();
      std::vector<std::size_t> mul(m * m, m);
      for (const auto& a : need(d, "mul").atoms) {
        auto [lhs, c] = split_eq(a);
        auto k = lhs.find('*');
        if (k == std::string::npos) throw ModelError("expected a*b=c, got '" + a + "'");
        auto x = index_in(elems, lhs.substr(0, k), "element");
        auto y = index_in(elems, lhs.substr(k + 1), "element");
        mul[x * m + y] = index_in(elems, c, "element");
      }
      for (auto v : mul)
        if (v == m) throw ModelError(label(d) + ": the multiplication table is incomplete");
      return powerset_monoid_quantale(elems, mul, index_in(elems, one(d, "unit"), "element"));
    }
    throw ModelError(label(d) + ": unknown type '" + type + "'");
  });
}

FiniteTopSpace Model::space(const std::string& name) {
  return cached<FiniteTopSpace>(name, [&]() -> FiniteTopSpace {
    const auto& d = decl(name, "topspace");
    const auto type = optional(d, "type", "explicit");
    if (type == "sierpinski") return sierpinski_space(name);
    const auto pts = need(d, "points").atoms;
    if (type == "discrete") return discrete_space(name, pts);
    if (type == "indiscrete") return indiscrete_space(name, pts);
    if (type != "explicit") throw ModelError(label(d) + ": unknown type '" + type + "'");
    FiniteTopSpace s{name, pts, {}};
    for (const auto& o : need(d, "opens").atoms) s.opens.push_back(subset_mask(pts, o, "point"));
    return s;
  });
}

FinPresheaf Model::presheaf(const std::string& name) {
  return cached<FinPresheaf>(name, [&] {
    const auto& d = decl(name, "presheaf");
    const auto fname = one(d, "frame");
    auto f = frame(fname);
    auto base = frame_category(fname);
    FinPresheaf p{name, base, std::vector<std::vector<std::string>>(f.worlds.size()), {}};
    std::vector<bool> given(f.worlds.size(), false);
    for (const auto& a : need(d, "at").atoms) {
      auto [w, s] = split_eq(a);
      auto i = index_in(f.worlds, w, "world");
      p.at[i] = parse_set_atom(s);
      given[i] = true;
    }
    for (std::size_t w = 0; w < given.size(); ++w)
      if (!given[w]) throw ModelError(label(d) + " has no value at " + f.worlds[w]);
    // "x->y[a:b,...]": the restriction D(x) -> D(y) along x R y.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> acts;
    for (const auto& a : atoms(d, "act")) {
      auto k = a.find('[');
      if (k == std::string::npos || a.back() != ']') throw ModelError("expected x->y[a:b,...], got '" + a + "'");
      auto [x, y] = split_arrow(a.substr(0, k));
      auto ix = index_in(f.worlds, x, "world"), iy = index_in(f.worlds, y, "world");
      std::vector<std::size_t> t(p.at[ix].size(), p.at[iy].size());
      for (const auto& m : split_commas(a.substr(k + 1, a.size() - k - 2))) {
        auto c = m.find(':');
        if (c == std::string::npos) throw ModelError("expected a:b in '" + a + "'");
        t[index_in(p.at[ix], m.substr(0, c), "element")] = index_in(p.at[iy], m.substr(c + 1), "element");
      }
      for (auto v : t)
        if (v == p.at[iy].size()) throw ModelError("action '" + a + "' is not total");
      acts[{ix, iy}] = std::move(t);
    }
    const auto& C = *base;
    for (std::size_t a = 0; a < C.num_arrows(); ++a) {
      const auto v = C.src(a), w = C.dst(a);
      const auto n = p.at[w].size(), m = p.at[v].size();
      std::vector<std::size_t> t(n);
      auto it = acts.find({w, v});
      if (it != acts.end()) {
        t = it->second;
      } else if (C.is_identity(a) || (m != 1 && m == n)) {
        for (std::size_t x = 0; x < n; ++x) t[x] = x;
      } else if (m == 1) {
        std::fill(t.begin(), t.end(), 0);
      } else {
        throw ModelError(label(d) + " needs an action for " + f.worlds[w] + "->" + f.worlds[v]);
      }
      p.act.push_back(std::move(t));
    }
    return p;
  });
}

FCoalgebra Model::coalgebra(const std::string& name) {
  return cached<FCoalgebra>(name, [&] {
    const auto& d = decl(name, "coalgebra");
    const auto kind = one(d, "kind");
    if (kind != "stream" && kind != "tree") throw ModelError(label(d) + ": kind must be stream or tree");
    FCoalgebra c{name, kind == "stream" ? CoalgebraKind::Stream : CoalgebraKind::Tree, need(d, "states").atoms, {}};
    std::vector<std::optional<std::vector<std::size_t>>> step(c.states.size());
    for (const auto& a : need(d, "step").atoms) {
      auto [x, rhs] = split_arrow(a);
      std::vector<std::size_t> t;
      if (c.kind == CoalgebraKind::Tree) {
        if (rhs.size() < 2 || rhs.front() != '(' || rhs.back() != ')')
          throw ModelError("tree steps look like s->(a,b), got '" + a + "'");
        for (const auto& y : split_commas(rhs.substr(1, rhs.size() - 2))) t.push_back(index_in(c.states, y, "state"));
      } else {
        t.push_back(index_in(c.states, rhs, "state"));
      }
      step[index_in(c.states, x, "state")] = std::move(t);
    }
    for (std::size_t x = 0; x < step.size(); ++x) {
      if (!step[x]) throw ModelError(label(d) + " has no step for " + c.states[x]);
      c.step.push_back(*step[x]);
    }
    return c;
  });
}

bool Model::checkable(const std::string& name) const {
  static const std::vector<std::string> kinds{"poset",   "category", "doctrine", "interior", "adjunction",
                                              "comonad", "topspace", "presheaf", "coalgebra"};
  const auto& k = decl(name, "").kind;
  return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
}

Violations Model::check(const std::string& name) {
  const auto& d = decl(name, "");
  if (d.kind == "poset") return poset_of(d).violations;
  if (d.kind == "category") {
    if (d.find("objects")) return explicit_category(d).violations;
    return check_category_laws(*category(name).cat);
  }
  if (d.kind == "doctrine") return check_doctrine(*doctrine(name));
  if (d.kind == "interior") return check_interior(interior(name));
  if (d.kind == "adjunction") return check_adjunction(adjunction(name));
  if (d.kind == "comonad") return check_comonad(comonad(name));
  if (d.kind == "topspace") return check_space(space(name));
  if (d.kind == "presheaf") return check_presheaf(presheaf(name));
  if (d.kind == "coalgebra") return check_coalgebra(coalgebra(name));
  return {};
}

}  // namespace modaldoc
