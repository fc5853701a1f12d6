#include "modaldoc/instances.hpp"

#include <numeric>

namespace modaldoc {

namespace {

std::string table_name(const std::vector<std::string>& dst, const std::vector<std::size_t>& t) {
  std::vector<std::string> parts;
  for (auto v : t) parts.push_back(dst[v]);
  return "[" + join(parts, ",") + "]";
}

}  // namespace

std::vector<std::vector<std::size_t>> all_functions(std::size_t n, std::size_t m) {
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    total *= m;
    enforce_cap(total, "function enumeration");
  }
  std::vector<std::vector<std::size_t>> out;
  if (total == 0) return out;
  out.reserve(total);
  std::vector<std::size_t> t(n, 0);
  for (std::size_t i = 0; i < total; ++i) {
    out.push_back(t);
    for (std::size_t k = n; k-- > 0;) {
      if (++t[k] < m) break;
      t[k] = 0;
    }
  }
  return out;
}

Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

Mask preimage(const std::vector<std::size_t>& table, Mask b) {
  Mask out = 0;
  for (std::size_t k = 0; k < table.size(); ++k)
    if (b >> table[k] & 1U) out |= Mask{1} << k;
  return out;
}

SetCat finset_category(const std::vector<std::string>& names, const std::vector<std::vector<std::string>>& sets) {
  if (names.size() != sets.size()) throw ModelError("each finite set needs a name");
  std::vector<ConcreteArrow> arrows;
  for (std::size_t x = 0; x < sets.size(); ++x)
    for (std::size_t y = 0; y < sets.size(); ++y)
      for (auto& t : all_functions(sets[x].size(), sets[y].size()))
        arrows.push_back({names[x] + "->" + names[y] + ":" + table_name(sets[y], t), x, y, t});
  auto cat = concrete_category(
      names, arrows,
      [](const ConcreteArrow& g, const ConcreteArrow& f) {
        std::vector<std::size_t> k;
        for (auto v : f.key) k.push_back(g.key[v]);
        return k;
      },
      [&](std::size_t o) {
        std::vector<std::size_t> k(sets[o].size());
        std::iota(k.begin(), k.end(), 0);
        return k;
      });
  return SetCat{cat, sets};
}

DocPtr exponential_doctrine(const SetCat& c, const PosetPtr& value) {
  const auto& C = *c.cat;
  auto d = std::make_shared<Doctrine>();
  d->base = c.cat;
  for (const auto& s : c.sets) d->fiber.push_back(power_poset(value, s.size()));
  const std::size_t b = value->size();
  for (std::size_t a = 0; a < C.num_arrows(); ++a) {
    const auto& t = c.fn(a);
    const auto n = c.sets[C.dst(a)].size();
    d->reindex.push_back(tabulate(d->fiber[C.dst(a)], d->fiber[C.src(a)], [&](std::size_t e) {
      auto digits = power_digits(e, b, n);
      std::vector<std::size_t> out;
      for (auto v : t) out.push_back(digits[v]);
      return power_index(out, b);
    }));
  }
  return d;
}

std::vector<MonotoneMap> postcompose_maps(const SetCat& c, const DocPtr& a, const DocPtr& b, const MonotoneMap& g) {
  std::vector<MonotoneMap> out;
  const std::size_t ba = g.src()->size(), bb = g.dst()->size();
  for (std::size_t x = 0; x < c.sets.size(); ++x) {
    const auto n = c.sets[x].size();
    out.push_back(tabulate(a->fiber[x], b->fiber[x], [&](std::size_t e) {
      auto digits = power_digits(e, ba, n);
      for (auto& v : digits) v = g(v);
      return power_index(digits, bb);
    }));
  }
  return out;
}

DocPtr powerset_doctrine(const SetCat& c) {
  const auto& C = *c.cat;
  auto d = std::make_shared<Doctrine>();
  d->base = c.cat;
  for (const auto& s : c.sets) d->fiber.push_back(powerset_poset(s));
  for (std::size_t a = 0; a < C.num_arrows(); ++a) {
    const auto& t = c.fn(a);
    d->reindex.push_back(tabulate(d->fiber[C.dst(a)], d->fiber[C.src(a)],
                                  [&](std::size_t e) { return static_cast<std::size_t>(preimage(t, e)); }));
  }
  return d;
}

DocPtr subobject_doctrine_finset(const SetCat& c) {
  const auto& C = *c.cat;
  auto d = std::make_shared<Doctrine>();
  d->base = c.cat;
  for (const auto& s : c.sets) d->fiber.push_back(powerset_poset(s));
  for (std::size_t a = 0; a < C.num_arrows(); ++a) {
    const auto& t = c.fn(a);
    d->reindex.push_back(tabulate(d->fiber[C.dst(a)], d->fiber[C.src(a)], [&](std::size_t e) {
      // inclusion m : A -> Y of the subset e
      std::vector<std::size_t> m;
      for (std::size_t y = 0; y < c.sets[C.dst(a)].size(); ++y)
        if (e >> y & 1U) m.push_back(y);
      // pullback {(x, i) | t(x) = m(i)} and its first projection
      std::vector<std::size_t> p1;
      for (std::size_t x = 0; x < t.size(); ++x)
        for (std::size_t i = 0; i < m.size(); ++i)
          if (t[x] == m[i]) p1.push_back(x);
      Mask img = 0;
      for (auto x : p1) {
        if (img >> x & 1U) throw ModelError("pullback projection is not monic");
        img |= Mask{1} << x;
      }
      return static_cast<std::size_t>(img);
    }));
  }
  return d;
}

bool KripkeFrame::reflexive() const {
  for (std::size_t w = 0; w < worlds.size(); ++w)
    if (!(succ[w] >> w & 1U)) return false;
  return true;
}

bool KripkeFrame::transitive() const {
  for (std::size_t w = 0; w < worlds.size(); ++w)
    for (std::size_t v = 0; v < worlds.size(); ++v)
      if ((succ[w] >> v & 1U) && (succ[v] & ~succ[w])) return false;
  return true;
}

KripkeFrame make_frame(const std::vector<std::string>& worlds,
                       const std::vector<std::pair<std::string, std::string>>& rel) {
  if (worlds.size() > 63) throw ModelError("too many worlds");
  KripkeFrame f{worlds, std::vector<Mask>(worlds.size(), 0)};
  auto idx = [&](const std::string& n) {
    for (std::size_t i = 0; i < worlds.size(); ++i)
      if (worlds[i] == n) return i;
    throw ModelError("unknown world '" + n + "'");
  };
  for (const auto& [a, b] : rel) f.succ[idx(a)] |= Mask{1} << idx(b);
  return f;
}

KripkeFrame refl_trans_closure(const KripkeFrame& f) {
  KripkeFrame out = f;
  const auto n = f.worlds.size();
  for (std::size_t w = 0; w < n; ++w) out.succ[w] |= Mask{1} << w;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t w = 0; w < n; ++w)
      if (out.succ[w] >> k & 1U) out.succ[w] |= out.succ[k];
  return out;
}

Mask kripke_box(const KripkeFrame& f, Mask a) {
  if (a & ~full_mask(f.worlds.size())) throw ModelError("subset is not contained in the worlds");
  Mask out = 0;
  for (std::size_t w = 0; w < f.worlds.size(); ++w)
    if ((f.succ[w] & ~a) == 0) out |= Mask{1} << w;
  return out;
}

InteriorOp kripke_doctrine(const KripkeFrame& f, const SetCat& c) {
  auto pw = powerset_poset(f.worlds);
  auto j = tabulate(pw, pw, [&](std::size_t e) { return static_cast<std::size_t>(kripke_box(f, e)); });
  auto d = exponential_doctrine(c, pw);
  return InteriorOp{d, postcompose_maps(c, d, d, j)};
}

}  // namespace modaldoc
