#include "modaldoc/instances.hpp"

#include <algorithm>

namespace modaldoc {

namespace {

Mask image_of(const std::vector<std::size_t>& t, Mask a) {
  Mask out = 0;
  for (std::size_t k = 0; k < t.size(); ++k)
    if (a >> k & 1U) out |= Mask{1} << t[k];
  return out;
}

}  // namespace

bool FiniteTopSpace::is_open(Mask a) const { return std::find(opens.begin(), opens.end(), a) != opens.end(); }

Mask FiniteTopSpace::interior(Mask a) const {
  Mask out = 0;
  for (auto o : opens)
    if ((o & ~a) == 0) out |= o;
  return out;
}

Violations check_space(const FiniteTopSpace& s) {
  Violations out;
  const Mask all = full_mask(s.points.size());
  if (!s.is_open(0)) out.push_back({"empty-open", s.name});
  if (!s.is_open(all)) out.push_back({"whole-open", s.name});
  for (auto a : s.opens) {
    if (a & ~all) out.push_back({"open-subset", s.name + ":" + std::to_string(a)});
    for (auto b : s.opens) {
      if (!s.is_open(a | b)) out.push_back({"union", s.name + ":" + subset_name(s.points, a) + "," + subset_name(s.points, b)});
      if (!s.is_open(a & b))
        out.push_back({"intersection", s.name + ":" + subset_name(s.points, a) + "," + subset_name(s.points, b)});
    }
  }
  return out;
}

FiniteTopSpace discrete_space(const std::string& name, const std::vector<std::string>& points) {
  FiniteTopSpace s{name, points, {}};
  for (Mask m = 0; m <= full_mask(points.size()); ++m) s.opens.push_back(m);
  return s;
}

FiniteTopSpace indiscrete_space(const std::string& name, const std::vector<std::string>& points) {
  FiniteTopSpace s{name, points, {0}};
  if (!points.empty()) s.opens.push_back(full_mask(points.size()));
  return s;
}

FiniteTopSpace sierpinski_space(const std::string& name) { return FiniteTopSpace{name, {"bot", "top"}, {0, 2, 3}}; }

bool continuous(const FiniteTopSpace& x, const FiniteTopSpace& y, const std::vector<std::size_t>& t) {
  for (auto o : y.opens)
    if (!x.is_open(preimage(t, o))) return false;
  return true;
}

bool open_map(const FiniteTopSpace& x, const FiniteTopSpace& y, const std::vector<std::size_t>& t) {
  for (auto o : x.opens)
    if (!y.is_open(image_of(t, o))) return false;
  return true;
}

bool interior_commutes(const FiniteTopSpace& x, const FiniteTopSpace& y, const std::vector<std::size_t>& t) {
  for (Mask b = 0; b <= full_mask(y.points.size()); ++b)
    if (preimage(t, y.interior(b)) != x.interior(preimage(t, b))) return false;
  return true;
}

TopDoctrine topological_doctrine(const std::vector<FiniteTopSpace>& spaces) {
  std::vector<std::string> names;
  for (const auto& s : spaces) {
    auto v = check_space(s);
    if (!v.empty()) throw ModelError("invalid space " + s.name + ": " + v.front().law + " " + v.front().witness);
    names.push_back(s.name);
  }
  std::vector<ConcreteArrow> arrows;
  for (std::size_t i = 0; i < spaces.size(); ++i)
    for (std::size_t j = 0; j < spaces.size(); ++j)
      for (auto& t : all_functions(spaces[i].points.size(), spaces[j].points.size())) {
        if (!continuous(spaces[i], spaces[j], t) || !open_map(spaces[i], spaces[j], t)) continue;
        std::vector<std::string> img;
        for (auto v : t) img.push_back(spaces[j].points[v]);
        arrows.push_back({names[i] + "->" + names[j] + ":[" + join(img, ",") + "]", i, j, t});
      }
  auto base = concrete_category(
      names, arrows,
      [](const ConcreteArrow& g, const ConcreteArrow& f) {
        std::vector<std::size_t> k;
        for (auto v : f.key) k.push_back(g.key[v]);
        return k;
      },
      [&](std::size_t o) {
        std::vector<std::size_t> k(spaces[o].points.size());
        for (std::size_t i = 0; i < k.size(); ++i) k[i] = i;
        return k;
      });
  auto d = std::make_shared<Doctrine>();
  d->base = base;
  for (const auto& s : spaces) d->fiber.push_back(powerset_poset(s.points));
  for (std::size_t a = 0; a < base->num_arrows(); ++a) {
    const auto& t = base->keys()[a];
    d->reindex.push_back(tabulate(d->fiber[base->dst(a)], d->fiber[base->src(a)],
                                  [&](std::size_t e) { return static_cast<std::size_t>(preimage(t, e)); }));
  }
  TopDoctrine out{base, spaces, InteriorOp{d, {}}};
  for (std::size_t i = 0; i < spaces.size(); ++i)
    out.op.box.push_back(tabulate(d->fiber[i], d->fiber[i],
                                  [&](std::size_t e) { return static_cast<std::size_t>(spaces[i].interior(e)); }));
  return out;
}

DocPtr open_set_doctrine(const TopDoctrine& t) {
  auto d = std::make_shared<Doctrine>();
  d->base = t.base;
  std::vector<std::vector<Mask>> opens;
  for (const auto& s : t.spaces) {
    auto o = s.opens;
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
    std::vector<std::string> names;
    for (auto m : o) names.push_back(subset_name(s.points, m));
    d->fiber.push_back(make_poset(names, [&](std::size_t a, std::size_t b) { return (o[a] & ~o[b]) == 0; }));
    opens.push_back(std::move(o));
  }
  for (std::size_t a = 0; a < t.base->num_arrows(); ++a) {
    const auto& tab = t.base->keys()[a];
    auto i = t.base->src(a), j = t.base->dst(a);
    d->reindex.push_back(tabulate(d->fiber[j], d->fiber[i], [&](std::size_t e) {
      auto m = preimage(tab, opens[j][e]);
      auto it = std::find(opens[i].begin(), opens[i].end(), m);
      if (it == opens[i].end()) throw ModelError("inverse image of an open set is not open");
      return static_cast<std::size_t>(it - opens[i].begin());
    }));
  }
  return d;
}

ForgetfulTop forgetful_top_arrow(const TopDoctrine& t) {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> sets;
  for (const auto& s : t.spaces) {
    names.push_back(s.name);
    sets.push_back(s.points);
  }
  auto sc = finset_category(names, sets);
  auto pw = powerset_doctrine(sc);
  ForgetfulTop out{sc, identity_interior(pw), {}};
  Functor U{t.base, sc.cat, {}, {}};
  for (std::size_t i = 0; i < t.spaces.size(); ++i) U.obj.push_back(i);
  for (std::size_t a = 0; a < t.base->num_arrows(); ++a) {
    auto b = sc.cat->find_by_key(t.base->src(a), t.base->dst(a), t.base->keys()[a]);
    if (!b) throw ModelError("underlying function missing for " + t.base->arrow(a).name);
    U.arr.push_back(*b);
  }
  out.arrow = OneArrow{t.op.doctrine, pw, U, {}};
  for (std::size_t i = 0; i < t.spaces.size(); ++i)
    out.arrow.f.emplace_back(t.op.doctrine->fiber[i], pw->fiber[i], identity_map(pw->fiber[i]).graph());
  return out;
}

}  // namespace modaldoc
