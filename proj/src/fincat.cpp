#include "modaldoc/fincat.hpp"

#include <unordered_map>

namespace modaldoc {

FinCategory::FinCategory(
    std::vector<std::string> objects, std::vector<ArrowInfo> arrows, std::vector<std::size_t> identity,
    const std::function<std::optional<std::size_t>(std::size_t, std::size_t)>& compose)
    : objects_(std::move(objects)), arrows_(std::move(arrows)), identity_(std::move(identity)) {
  const std::size_t n = objects_.size(), m = arrows_.size();
  enforce_cap(m, "category arrows");
  if (identity_.size() != n) throw ModelError("identity missing for some object");
  for (const auto& a : arrows_)
    if (a.src >= n || a.dst >= n) throw ModelError("arrow '" + a.name + "' has a dangling endpoint");
  for (std::size_t o = 0; o < n; ++o) {
    if (identity_[o] >= m) throw ModelError("identity of '" + objects_[o] + "' is not an arrow");
    const auto& a = arrows_[identity_[o]];
    if (a.src != o || a.dst != o)
      throw ModelError("identity of '" + objects_[o] + "' is not an endo-arrow on it");
  }
  hom_.assign(n * n, {});
  for (std::size_t a = 0; a < m; ++a) hom_[arrows_[a].src * n + arrows_[a].dst].push_back(a);
  table_.assign(m * m, kUndefined);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      if (arrows_[f].dst != arrows_[g].src) continue;
      auto h = compose(g, f);
      if (h && *h < m) table_[g * m + f] = static_cast<int>(*h);
    }
}

std::optional<std::size_t> FinCategory::find_object(const std::string& n) const {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i] == n) return i;
  return std::nullopt;
}

std::size_t FinCategory::object_index(const std::string& n) const {
  auto o = find_object(n);
  if (!o) throw ModelError("unknown object '" + n + "'");
  return *o;
}

std::optional<std::size_t> FinCategory::find_arrow(const std::string& n) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].name == n) return i;
  return std::nullopt;
}

std::size_t FinCategory::compose(std::size_t g, std::size_t f) const {
  int h = table_[g * arrows_.size() + f];
  if (h < 0)
    throw ModelError("composite " + arrows_[g].name + " . " + arrows_[f].name + " is undefined");
  return static_cast<std::size_t>(h);
}

bool FinCategory::same_as(const FinCategory& o) const {
  if (this == &o) return true;
  if (objects_ != o.objects_ || identity_ != o.identity_ || table_ != o.table_) return false;
  if (arrows_.size() != o.arrows_.size()) return false;
  for (std::size_t a = 0; a < arrows_.size(); ++a)
    if (arrows_[a].name != o.arrows_[a].name || arrows_[a].src != o.arrows_[a].src ||
        arrows_[a].dst != o.arrows_[a].dst)
      return false;
  return true;
}

std::optional<std::size_t> FinCategory::find_by_key(std::size_t src, std::size_t dst,
                                                    const std::vector<std::size_t>& key) const {
  auto it = key_index_.find({src, dst, key});
  if (it == key_index_.end()) return std::nullopt;
  return it->second;
}

void FinCategory::set_keys(std::vector<std::vector<std::size_t>> keys) {
  keys_ = std::move(keys);
  key_index_.clear();
  for (std::size_t a = 0; a < keys_.size(); ++a)
    key_index_[{arrows_[a].src, arrows_[a].dst, keys_[a]}] = a;
}

bool same_category(const CatPtr& a, const CatPtr& b) {
  return a == b || (a && b && a->same_as(*b));
}

Violations check_category_laws(const FinCategory& c) {
  Violations out;
  const std::size_t m = c.num_arrows();
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      if (c.dst(f) != c.src(g)) continue;
      int h = c.compose_raw(g, f);
      if (h < 0) {
        out.push_back({"composition-total", "(" + c.arrow(g).name + "," + c.arrow(f).name + ")"});
      } else if (c.src(h) != c.src(f) || c.dst(h) != c.dst(g)) {
        out.push_back({"composition-endpoints", "(" + c.arrow(g).name + "," + c.arrow(f).name + ")"});
      }
    }
  if (!out.empty()) return out;
  for (std::size_t f = 0; f < m; ++f) {
    if (c.compose(c.id(c.dst(f)), f) != f) out.push_back({"left-identity", c.arrow(f).name});
    if (c.compose(f, c.id(c.src(f))) != f) out.push_back({"right-identity", c.arrow(f).name});
  }
  const std::size_t n = c.num_objects();
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t y = 0; y < n; ++y)
      for (auto g : c.hom(c.dst(f), y)) {
        std::size_t gf = c.compose(g, f);
        for (std::size_t z = 0; z < n; ++z)
          for (auto h : c.hom(y, z))
            if (c.compose(h, gf) != c.compose(c.compose(h, g), f))
              out.push_back({"associativity",
                             "(" + c.arrow(h).name + "," + c.arrow(g).name + "," + c.arrow(f).name + ")"});
      }
  return out;
}

Checked<CatPtr> check_category(const CategoryData& data) {
  std::vector<ArrowInfo> arrows = data.arrows;
  std::unordered_map<std::string, std::size_t> aidx;
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    if (arrows[a].src >= data.objects.size() || arrows[a].dst >= data.objects.size())
      throw ModelError("arrow '" + arrows[a].name + "' has a dangling endpoint");
    if (!aidx.emplace(arrows[a].name, a).second)
      throw ModelError("duplicate arrow name '" + arrows[a].name + "'");
  }
  std::vector<std::size_t> ids(data.objects.size());
  for (std::size_t o = 0; o < data.objects.size(); ++o) {
    if (o < data.identities.size()) {
      auto it = aidx.find(data.identities[o]);
      if (it == aidx.end()) throw ModelError("identity arrow '" + data.identities[o] + "' is undefined");
      ids[o] = it->second;
    } else {
      std::string nm = "id_" + data.objects[o];
      arrows.push_back({nm, o, o});
      aidx[nm] = arrows.size() - 1;
      ids[o] = arrows.size() - 1;
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> table;
  for (const auto& [g, f, h] : data.compose) {
    auto ig = aidx.find(g), jf = aidx.find(f), kh = aidx.find(h);
    if (ig == aidx.end() || jf == aidx.end() || kh == aidx.end())
      throw ModelError("composition table mentions an undefined arrow");
    table[{ig->second, jf->second}] = kh->second;
  }
  auto cat = std::make_shared<FinCategory>(
      data.objects, arrows, ids, [&](std::size_t g, std::size_t f) -> std::optional<std::size_t> {
        auto it = table.find({g, f});
        if (it != table.end()) return it->second;
        if (g == ids[arrows[g].src]) return f;
        if (f == ids[arrows[f].dst]) return g;
        return std::nullopt;
      });
  Checked<CatPtr> out;
  out.violations = check_category_laws(*cat);
  if (out.violations.empty()) out.value = cat;
  return out;
}

CatPtr discrete_category(const std::vector<std::string>& objects) {
  std::vector<ArrowInfo> arrows;
  std::vector<std::size_t> ids;
  for (std::size_t o = 0; o < objects.size(); ++o) {
    arrows.push_back({"id_" + objects[o], o, o});
    ids.push_back(o);
  }
  return std::make_shared<const FinCategory>(objects, arrows, ids,
                                             [](std::size_t g, std::size_t) { return g; });
}

CatPtr poset_category(const FinPoset& p) {
  std::vector<ArrowInfo> arrows;
  std::vector<std::size_t> ids(p.size());
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> idx;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p.leq(x, y)) {
        idx[{x, y}] = arrows.size();
        if (x == y) ids[x] = arrows.size();
        arrows.push_back({x == y ? "id_" + p.name(x) : p.name(x) + "<=" + p.name(y), x, y});
      }
  return std::make_shared<const FinCategory>(
      p.names(), arrows, ids, [&](std::size_t g, std::size_t f) -> std::optional<std::size_t> {
        return idx.at({arrows[f].src, arrows[g].dst});
      });
}

CatPtr terminal_category() { return discrete_category({"*"}); }

CatPtr concrete_category(
    std::vector<std::string> objects, const std::vector<ConcreteArrow>& arrows,
    const std::function<std::vector<std::size_t>(const ConcreteArrow&, const ConcreteArrow&)>& compose_keys,
    const std::function<std::vector<std::size_t>(std::size_t)>& identity_key) {
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, std::size_t> idx;
  std::vector<ArrowInfo> info;
  std::vector<std::vector<std::size_t>> keys;
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    if (!idx.emplace(std::make_tuple(arrows[a].src, arrows[a].dst, arrows[a].key), a).second)
      throw ModelError("duplicate arrow '" + arrows[a].name + "'");
    info.push_back({arrows[a].name, arrows[a].src, arrows[a].dst});
    keys.push_back(arrows[a].key);
  }
  std::vector<std::size_t> ids(objects.size());
  for (std::size_t o = 0; o < objects.size(); ++o) {
    auto it = idx.find({o, o, identity_key(o)});
    if (it == idx.end()) throw ModelError("identity of '" + objects[o] + "' is not among the arrows");
    ids[o] = it->second;
  }
  auto cat = std::make_shared<FinCategory>(
      std::move(objects), info, ids, [&](std::size_t g, std::size_t f) -> std::optional<std::size_t> {
        auto it = idx.find({arrows[f].src, arrows[g].dst, compose_keys(arrows[g], arrows[f])});
        if (it == idx.end())
          throw ModelError("arrow set not closed under composition: " + arrows[g].name + " . " +
                           arrows[f].name);
        return it->second;
      });
  cat->set_keys(std::move(keys));
  return cat;
}

bool operator==(const Functor& a, const Functor& b) {
  return a.obj == b.obj && a.arr == b.arr && same_category(a.src, b.src) && same_category(a.dst, b.dst);
}

Violations check_functor(const Functor& f) {
  Violations out;
  const auto& s = *f.src;
  const auto& d = *f.dst;
  if (f.obj.size() != s.num_objects()) throw ModelError("functor leaves an object unmapped");
  if (f.arr.size() != s.num_arrows()) throw ModelError("functor leaves an arrow unmapped");
  for (auto o : f.obj)
    if (o >= d.num_objects()) throw ModelError("functor maps an object outside its target");
  for (auto a : f.arr)
    if (a >= d.num_arrows()) throw ModelError("functor maps an arrow outside its target");
  for (std::size_t a = 0; a < s.num_arrows(); ++a)
    if (d.src(f.arr[a]) != f.obj[s.src(a)] || d.dst(f.arr[a]) != f.obj[s.dst(a)])
      out.push_back({"endpoints", s.arrow(a).name});
  if (!out.empty()) return out;
  for (std::size_t o = 0; o < s.num_objects(); ++o)
    if (f.arr[s.id(o)] != d.id(f.obj[o])) out.push_back({"identity", s.object_name(o)});
  for (std::size_t g = 0; g < s.num_arrows(); ++g)
    for (std::size_t x = 0; x < s.num_objects(); ++x)
      for (auto h : s.hom(x, s.src(g)))
        if (f.arr[s.compose(g, h)] != d.compose(f.arr[g], f.arr[h]))
          out.push_back({"composition", "(" + s.arrow(g).name + "," + s.arrow(h).name + ")"});
  return out;
}

Functor identity_functor(const CatPtr& c) {
  Functor f{c, c, {}, {}};
  for (std::size_t o = 0; o < c->num_objects(); ++o) f.obj.push_back(o);
  for (std::size_t a = 0; a < c->num_arrows(); ++a) f.arr.push_back(a);
  return f;
}

bool is_identity_functor(const Functor& f) {
  if (!same_category(f.src, f.dst)) return false;
  for (std::size_t o = 0; o < f.obj.size(); ++o)
    if (f.obj[o] != o) return false;
  for (std::size_t a = 0; a < f.arr.size(); ++a)
    if (f.arr[a] != a) return false;
  return true;
}

Functor compose_functors(const Functor& g, const Functor& f) {
  if (!same_category(f.dst, g.src)) throw ModelError("functors are not composable");
  Functor h{f.src, g.dst, {}, {}};
  for (auto o : f.obj) h.obj.push_back(g.obj[o]);
  for (auto a : f.arr) h.arr.push_back(g.arr[a]);
  return h;
}

Functor constant_functor(const CatPtr& src, const CatPtr& dst, std::size_t object) {
  return Functor{src, dst, std::vector<std::size_t>(src->num_objects(), object),
                 std::vector<std::size_t>(src->num_arrows(), dst->id(object))};
}

bool operator==(const NatTransformation& a, const NatTransformation& b) {
  return a.comp == b.comp && a.src == b.src && a.dst == b.dst;
}

Violations check_nat(const NatTransformation& t) {
  Violations out;
  if (!same_category(t.src.src, t.dst.src) || !same_category(t.src.dst, t.dst.dst))
    throw ModelError("transformation between functors with different boundaries");
  const auto& s = *t.src.src;
  const auto& d = *t.src.dst;
  if (t.comp.size() != s.num_objects()) throw ModelError("transformation has a missing component");
  for (std::size_t o = 0; o < s.num_objects(); ++o) {
    auto c = t.comp[o];
    if (c >= d.num_arrows() || d.src(c) != t.src.obj[o] || d.dst(c) != t.dst.obj[o]) {
      out.push_back({"component-type", s.object_name(o)});
    }
  }
  if (!out.empty()) return out;
  for (std::size_t a = 0; a < s.num_arrows(); ++a) {
    auto lhs = d.compose(t.dst.arr[a], t.comp[s.src(a)]);
    auto rhs = d.compose(t.comp[s.dst(a)], t.src.arr[a]);
    if (lhs != rhs) out.push_back({"naturality", s.arrow(a).name});
  }
  return out;
}

NatTransformation identity_nat(const Functor& f) {
  NatTransformation t{f, f, {}};
  for (auto o : f.obj) t.comp.push_back(f.dst->id(o));
  return t;
}

bool is_identity_nat(const NatTransformation& t) {
  for (std::size_t o = 0; o < t.comp.size(); ++o)
    if (!t.src.dst->is_identity(t.comp[o])) return false;
  return true;
}

NatTransformation vertical_compose(const NatTransformation& z, const NatTransformation& t) {
  if (!(t.dst == z.src)) throw ModelError("transformations are not vertically composable");
  NatTransformation r{t.src, z.dst, {}};
  for (std::size_t o = 0; o < t.comp.size(); ++o) r.comp.push_back(t.src.dst->compose(z.comp[o], t.comp[o]));
  return r;
}

NatTransformation whisker_left(const Functor& h, const NatTransformation& t) {
  NatTransformation r{compose_functors(h, t.src), compose_functors(h, t.dst), {}};
  for (auto c : t.comp) r.comp.push_back(h.arr[c]);
  return r;
}

NatTransformation whisker_right(const NatTransformation& t, const Functor& k) {
  NatTransformation r{compose_functors(t.src, k), compose_functors(t.dst, k), {}};
  for (auto o : k.obj) r.comp.push_back(t.comp[o]);
  return r;
}

Violations adjunction_cat(const Functor& L, const Functor& R, const NatTransformation& eta,
                          const NatTransformation& eps) {
  if (!same_category(L.src, R.dst) || !same_category(L.dst, R.src))
    throw ModelError("adjoint functors have mismatched boundaries");
  if (!is_identity_functor(eta.src) || !(eta.dst == compose_functors(R, L)))
    throw ModelError("unit must go from the identity to R L");
  if (!(eps.src == compose_functors(L, R)) || !is_identity_functor(eps.dst))
    throw ModelError("counit must go from L R to the identity");
  Violations out;
  append(out, check_nat(eta), "unit ");
  append(out, check_nat(eps), "counit ");
  if (!out.empty()) return out;
  const auto& C = *L.src;
  const auto& D = *L.dst;
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    auto lx = L.obj[x];
    if (!D.is_identity(D.compose(eps.comp[lx], L.arr[eta.comp[x]])))
      out.push_back({"triangle-L", C.object_name(x)});
  }
  for (std::size_t y = 0; y < D.num_objects(); ++y) {
    auto ry = R.obj[y];
    if (!C.is_identity(C.compose(R.arr[eps.comp[y]], eta.comp[ry])))
      out.push_back({"triangle-R", D.object_name(y)});
  }
  return out;
}

FullSubcategory full_subcategory(const CatPtr& c, const std::vector<std::size_t>& objects) {
  std::vector<std::string> names;
  std::vector<long> pos(c->num_objects(), -1);
  for (std::size_t i = 0; i < objects.size(); ++i) {
    names.push_back(c->object_name(objects[i]));
    pos[objects[i]] = static_cast<long>(i);
  }
  std::vector<ArrowInfo> arrows;
  std::vector<std::size_t> amb;
  std::vector<long> apos(c->num_arrows(), -1);
  for (std::size_t a = 0; a < c->num_arrows(); ++a)
    if (pos[c->src(a)] >= 0 && pos[c->dst(a)] >= 0) {
      apos[a] = static_cast<long>(arrows.size());
      arrows.push_back({c->arrow(a).name, static_cast<std::size_t>(pos[c->src(a)]),
                        static_cast<std::size_t>(pos[c->dst(a)])});
      amb.push_back(a);
    }
  std::vector<std::size_t> ids;
  for (auto o : objects) ids.push_back(static_cast<std::size_t>(apos[c->id(o)]));
  auto sub = std::make_shared<FinCategory>(
      names, arrows, ids, [&](std::size_t g, std::size_t f) -> std::optional<std::size_t> {
        return static_cast<std::size_t>(apos[c->compose(amb[g], amb[f])]);
      });
  if (!c->keys().empty()) {
    std::vector<std::vector<std::size_t>> keys;
    for (auto a : amb) keys.push_back(c->keys()[a]);
    sub->set_keys(std::move(keys));
  }
  CatPtr subc = sub;
  return {subc, Functor{subc, c, objects, amb}, objects};
}

Violations comonad_laws(const Functor& K, const NatTransformation& mu, const NatTransformation& nu) {
  Violations out;
  const auto& C = *K.src;
  append(out, check_functor(K), "functor ");
  append(out, check_nat(mu), "comultiplication ");
  append(out, check_nat(nu), "counit ");
  if (!out.empty()) return out;
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    auto kx = K.obj[x];
    if (!C.is_identity(C.compose(nu.comp[kx], mu.comp[x])))
      out.push_back({"counit-left", C.object_name(x)});
    if (!C.is_identity(C.compose(K.arr[nu.comp[x]], mu.comp[x])))
      out.push_back({"counit-right", C.object_name(x)});
    if (C.compose(mu.comp[kx], mu.comp[x]) != C.compose(K.arr[mu.comp[x]], mu.comp[x]))
      out.push_back({"coassociativity", C.object_name(x)});
  }
  return out;
}

std::optional<std::size_t> CoalgebraCategory::find(std::size_t carrier_obj, std::size_t structure_arrow) const {
  for (std::size_t i = 0; i < carrier.size(); ++i)
    if (carrier[i] == carrier_obj && structure[i] == structure_arrow) return i;
  return std::nullopt;
}

CoalgebraCategory coalgebra_category(const Functor& K, const NatTransformation& mu,
                                     const NatTransformation& nu) {
  auto laws = comonad_laws(K, mu, nu);
  if (!laws.empty()) throw ModelError("comonad law fails: " + laws.front().law + " at " + laws.front().witness);
  const auto& C = *K.src;
  CoalgebraCategory out;
  std::vector<std::string> names;
  for (std::size_t x = 0; x < C.num_objects(); ++x)
    for (auto c : C.hom(x, K.obj[x])) {
      if (!C.is_identity(C.compose(nu.comp[x], c))) continue;
      if (C.compose(K.arr[c], c) != C.compose(mu.comp[x], c)) continue;
      out.carrier.push_back(x);
      out.structure.push_back(c);
      names.push_back("<" + C.object_name(x) + "," + C.arrow(c).name + ">");
    }
  std::vector<ArrowInfo> arrows;
  std::vector<std::size_t> ids(names.size());
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> idx;
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < names.size(); ++j)
      for (auto f : C.hom(out.carrier[i], out.carrier[j])) {
        if (C.compose(out.structure[j], f) != C.compose(K.arr[f], out.structure[i])) continue;
        idx[{i, j, f}] = arrows.size();
        if (i == j && C.is_identity(f)) ids[i] = arrows.size();
        arrows.push_back({C.arrow(f).name + ":" + names[i] + "->" + names[j], i, j});
        out.underlying.push_back(f);
      }
  auto cat = std::make_shared<FinCategory>(
      names, arrows, ids, [&](std::size_t g, std::size_t f) -> std::optional<std::size_t> {
        return idx.at({arrows[f].src, arrows[g].dst, C.compose(out.underlying[g], out.underlying[f])});
      });
  out.cat = cat;
  out.forget = Functor{out.cat, K.src, out.carrier, out.underlying};
  return out;
}

}  // namespace modaldoc
