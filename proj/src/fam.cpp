#include "modaldoc/instances.hpp"

#include <map>

namespace modaldoc {

namespace {

std::vector<Mask> submasks(Mask m) {
  std::vector<Mask> out;
  for (Mask s = m;; s = (s - 1) & m) {
    out.push_back(s);
    if (s == 0) break;
  }
  return {out.rbegin(), out.rend()};
}

std::vector<Subfamily> enumerate_subfamilies(const IndexedFamily& x) {
  std::vector<Subfamily> out;
  for (auto c : submasks(full_mask(x.carrier.size()))) {
    std::vector<std::vector<Mask>> choices;
    for (auto p : x.parts) choices.push_back(submasks(c & p));
    std::vector<std::size_t> pick(choices.size(), 0);
    for (;;) {
      Subfamily a{c, {}};
      for (std::size_t w = 0; w < choices.size(); ++w) a.parts.push_back(choices[w][pick[w]]);
      out.push_back(std::move(a));
      enforce_cap(out.size(), "subfamily fiber");
      std::size_t k = choices.size();
      while (k > 0 && ++pick[k - 1] == choices[k - 1].size()) pick[--k] = 0;
      if (k == 0) break;
    }
  }
  return out;
}

}  // namespace

bool is_increasing(const KripkeFrame& f, const IndexedFamily& x) {
  for (std::size_t w = 0; w < f.worlds.size(); ++w)
    for (std::size_t v = 0; v < f.worlds.size(); ++v)
      if ((f.succ[w] >> v & 1U) && (x.parts[w] & ~x.parts[v])) return false;
  return true;
}

std::size_t FamDoctrine::index(std::size_t x, const Subfamily& a) const {
  const auto& es = elements.at(x);
  for (std::size_t i = 0; i < es.size(); ++i)
    if (es[i] == a) return i;
  throw ModelError("not a subfamily of " + families.at(x).name);
}

std::string subfamily_name(const IndexedFamily& x, const Subfamily& a) {
  std::vector<std::string> parts;
  for (auto p : a.parts) parts.push_back(subset_name(x.carrier, p));
  return "<" + subset_name(x.carrier, a.carrier) + "|" + join(parts, ";") + ">";
}

Subfamily fam_box(const KripkeFrame& f, const IndexedFamily& x, const Subfamily& a) {
  Subfamily out{a.carrier, {}};
  for (std::size_t w = 0; w < f.worlds.size(); ++w) {
    Mask m = a.carrier;
    for (std::size_t v = 0; v < f.worlds.size(); ++v)
      if (f.succ[w] >> v & 1U) m &= a.parts[v];
    out.parts.push_back(m & x.parts[w]);
  }
  return out;
}

Subfamily fam_reindex(const IndexedFamily& x, const std::vector<std::size_t>& t, const Subfamily& a) {
  Subfamily out{preimage(t, a.carrier), {}};
  for (std::size_t w = 0; w < a.parts.size(); ++w) out.parts.push_back(x.parts[w] & preimage(t, a.parts[w]));
  return out;
}

FamDoctrine fam_doctrine(const KripkeFrame& f, const std::vector<IndexedFamily>& families) {
  FamDoctrine out;
  out.families = families;
  std::vector<std::string> names;
  for (const auto& x : families) {
    if (x.parts.size() != f.worlds.size()) throw ModelError("family " + x.name + " needs one part per world");
    for (auto p : x.parts)
      if (p & ~full_mask(x.carrier.size())) throw ModelError("family " + x.name + " has a part outside its carrier");
    names.push_back(x.name);
  }
  std::vector<ConcreteArrow> arrows;
  for (std::size_t i = 0; i < families.size(); ++i)
    for (std::size_t j = 0; j < families.size(); ++j) {
      const auto& x = families[i];
      const auto& y = families[j];
      for (auto& t : all_functions(x.carrier.size(), y.carrier.size())) {
        bool ok = true;
        for (std::size_t w = 0; ok && w < f.worlds.size(); ++w) ok = (x.parts[w] & ~preimage(t, y.parts[w])) == 0;
        if (!ok) continue;
        std::vector<std::string> img;
        for (auto v : t) img.push_back(y.carrier[v]);
        arrows.push_back({x.name + "->" + y.name + ":[" + join(img, ",") + "]", i, j, t});
      }
    }
  auto base = concrete_category(
      names, arrows,
      [](const ConcreteArrow& g, const ConcreteArrow& h) {
        std::vector<std::size_t> k;
        for (auto v : h.key) k.push_back(g.key[v]);
        return k;
      },
      [&](std::size_t o) {
        std::vector<std::size_t> k(families[o].carrier.size());
        for (std::size_t i = 0; i < k.size(); ++i) k[i] = i;
        return k;
      });

  auto d = std::make_shared<Doctrine>();
  d->base = base;
  std::vector<std::map<std::pair<Mask, std::vector<Mask>>, std::size_t>> lookup;
  for (const auto& x : families) {
    auto es = enumerate_subfamilies(x);
    std::vector<std::string> en;
    std::map<std::pair<Mask, std::vector<Mask>>, std::size_t> lk;
    for (std::size_t i = 0; i < es.size(); ++i) {
      en.push_back(subfamily_name(x, es[i]));
      lk[{es[i].carrier, es[i].parts}] = i;
    }
    d->fiber.push_back(make_poset(en, [&](std::size_t a, std::size_t b) {
      if (es[a].carrier & ~es[b].carrier) return false;
      for (std::size_t w = 0; w < es[a].parts.size(); ++w)
        if (es[a].parts[w] & ~es[b].parts[w]) return false;
      return true;
    }));
    out.elements.push_back(std::move(es));
    lookup.push_back(std::move(lk));
  }
  const auto& C = *base;
  for (std::size_t a = 0; a < C.num_arrows(); ++a) {
    auto i = C.src(a), j = C.dst(a);
    const auto& t = C.keys()[a];
    d->reindex.push_back(tabulate(d->fiber[j], d->fiber[i], [&](std::size_t e) {
      auto r = fam_reindex(families[i], t, out.elements[j][e]);
      return lookup[i].at({r.carrier, r.parts});
    }));
  }
  out.op.doctrine = d;
  for (std::size_t i = 0; i < families.size(); ++i)
    out.op.box.push_back(tabulate(d->fiber[i], d->fiber[i], [&](std::size_t e) {
      auto r = fam_box(f, families[i], out.elements[i][e]);
      return lookup[i].at({r.carrier, r.parts});
    }));
  return out;
}

ConstantFamilyArrow constant_family_arrow(const KripkeFrame& f, const SetCat& c) {
  std::vector<IndexedFamily> fams;
  const auto& C = *c.cat;
  for (std::size_t i = 0; i < c.sets.size(); ++i)
    fams.push_back({C.object_name(i), c.sets[i], std::vector<Mask>(f.worlds.size(), full_mask(c.sets[i].size()))});
  ConstantFamilyArrow out{kripke_doctrine(f, c), fam_doctrine(f, fams), {}};
  const auto& src = out.src.doctrine;
  const auto& dst = out.dst.op.doctrine;
  Functor F{c.cat, dst->base, {}, {}};
  for (std::size_t i = 0; i < C.num_objects(); ++i) F.obj.push_back(i);
  for (std::size_t a = 0; a < C.num_arrows(); ++a) {
    auto b = dst->base->find_by_key(C.src(a), C.dst(a), c.fn(a));
    if (!b) throw ModelError("constant family arrow missing for " + C.arrow(a).name);
    F.arr.push_back(*b);
  }
  out.arrow = OneArrow{src, dst, F, {}};
  const std::size_t nw = f.worlds.size();
  const std::size_t b = std::size_t{1} << nw;
  for (std::size_t i = 0; i < C.num_objects(); ++i) {
    const auto n = c.sets[i].size();
    out.arrow.f.push_back(tabulate(src->fiber[i], dst->fiber[i], [&](std::size_t e) {
      auto alpha = power_digits(e, b, n);
      Subfamily s{full_mask(n), std::vector<Mask>(nw, 0)};
      for (std::size_t w = 0; w < nw; ++w)
        for (std::size_t k = 0; k < n; ++k)
          if (alpha[k] >> w & 1U) s.parts[w] |= Mask{1} << k;
      return out.dst.index(i, s);
    }));
  }
  return out;
}

}  // namespace modaldoc
