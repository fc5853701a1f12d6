#include "modaldoc/instances.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace modaldoc {

namespace {

std::size_t encode(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& radices) {
  std::size_t idx = 0, mul = 1;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    idx += digits[k] * mul;
    mul *= radices[k];
  }
  return idx;
}

std::vector<std::size_t> decode(std::size_t idx, const std::vector<std::size_t>& radices) {
  std::vector<std::size_t> out;
  for (auto r : radices) {
    out.push_back(idx % r);
    idx /= r;
  }
  return out;
}

std::vector<std::size_t> arrows_into(const FinCategory& c, std::size_t obj) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < c.num_arrows(); ++a)
    if (c.dst(a) == obj) out.push_back(a);
  return out;
}

std::vector<std::size_t> offsets(const FinPresheaf& d) {
  std::vector<std::size_t> out;
  std::size_t o = 0;
  for (const auto& s : d.at) {
    out.push_back(o);
    o += s.size();
  }
  return out;
}

std::vector<std::string> flat_labels(const FinPresheaf& d) {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < d.at.size(); ++c)
    for (const auto& e : d.at[c]) out.push_back(e + "@" + d.base->object_name(c));
  return out;
}

std::vector<std::size_t> identity_table(std::size_t n) {
  std::vector<std::size_t> t(n);
  std::iota(t.begin(), t.end(), 0);
  return t;
}

std::vector<std::size_t> concat(const std::vector<std::vector<std::size_t>>& parts) {
  std::vector<std::size_t> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

bool natural(const FinPresheaf& a, const FinPresheaf& b, const std::vector<std::vector<std::size_t>>& tau) {
  const auto& C = *a.base;
  for (std::size_t f = 0; f < C.num_arrows(); ++f) {
    const auto s = C.src(f), t = C.dst(f);
    for (std::size_t x = 0; x < a.at[t].size(); ++x)
      if (tau[s][a.act[f][x]] != b.act[f][tau[t][x]]) return false;
  }
  return true;
}

std::vector<Mask> subpresheaf_masks(const FinPresheaf& d) {
  const auto n = total_size(d);
  enforce_cap(std::size_t{1} << n, "subfamily fiber");
  std::vector<Mask> out;
  for (Mask m = 0; m <= full_mask(n); ++m)
    if (is_subpresheaf(d, unflatten(d, m))) out.push_back(m);
  return out;
}

std::size_t position(const std::vector<Mask>& xs, Mask m) {
  auto it = std::find(xs.begin(), xs.end(), m);
  if (it == xs.end()) throw ModelError("subfamily is not among the fiber elements");
  return static_cast<std::size_t>(it - xs.begin());
}

}  // namespace

std::size_t total_size(const FinPresheaf& d) {
  std::size_t n = 0;
  for (const auto& s : d.at) n += s.size();
  if (n > 63) throw ModelError("presheaf " + d.name + " is too large");
  return n;
}

Mask flatten(const FinPresheaf& d, const Family& a) {
  auto off = offsets(d);
  Mask m = 0;
  for (std::size_t c = 0; c < a.size(); ++c) m |= a[c] << off[c];
  return m;
}

Family unflatten(const FinPresheaf& d, Mask m) {
  auto off = offsets(d);
  Family out;
  for (std::size_t c = 0; c < d.at.size(); ++c) out.push_back(m >> off[c] & full_mask(d.at[c].size()));
  return out;
}

Violations check_presheaf(const FinPresheaf& d) {
  const auto& C = *d.base;
  if (d.at.size() != C.num_objects() || d.act.size() != C.num_arrows())
    throw ModelError("presheaf " + d.name + " does not cover its base");
  Violations out;
  for (std::size_t f = 0; f < C.num_arrows(); ++f) {
    const auto& t = d.act[f];
    if (t.size() != d.at[C.dst(f)].size()) throw ModelError("action of " + C.arrow(f).name + " has the wrong domain");
    for (auto v : t)
      if (v >= d.at[C.src(f)].size()) throw ModelError("action of " + C.arrow(f).name + " leaves its codomain");
  }
  for (std::size_t c = 0; c < C.num_objects(); ++c)
    if (d.act[C.id(c)] != identity_table(d.at[c].size())) out.push_back({"identity", d.name + ":" + C.object_name(c)});
  for (std::size_t g = 0; g < C.num_arrows(); ++g)
    for (std::size_t h = 0; h < C.num_arrows(); ++h) {
      if (C.dst(g) != C.src(h)) continue;
      const auto hg = C.compose(h, g);
      for (std::size_t x = 0; x < d.at[C.dst(h)].size(); ++x)
        if (d.act[hg][x] != d.act[g][d.act[h][x]]) {
          out.push_back({"composition", d.name + ":" + C.arrow(h).name + "." + C.arrow(g).name});
          break;
        }
    }
  return out;
}

CatPtr frame_base(const KripkeFrame& f) {
  if (!f.is_preorder()) throw ModelError("presheaf frames must be preorders");
  auto p = make_poset(f.worlds, [&](std::size_t a, std::size_t b) { return (f.succ[b] >> a & 1U) != 0; });
  return poset_category(*p);
}

bool is_subpresheaf(const FinPresheaf& d, const Family& a) {
  const auto& C = *d.base;
  for (std::size_t f = 0; f < C.num_arrows(); ++f)
    for (std::size_t x = 0; x < d.at[C.dst(f)].size(); ++x)
      if ((a[C.dst(f)] >> x & 1U) && !(a[C.src(f)] >> d.act[f][x] & 1U)) return false;
  return true;
}

Family presheaf_box(const FinPresheaf& d, const Family& alpha) {
  const auto& C = *d.base;
  Family out(d.at.size(), 0);
  for (std::size_t c = 0; c < d.at.size(); ++c) {
    auto into = arrows_into(C, c);
    for (std::size_t x = 0; x < d.at[c].size(); ++x) {
      bool keep = true;
      for (auto f : into) keep = keep && (alpha[C.src(f)] >> d.act[f][x] & 1U);
      if (keep) out[c] |= Mask{1} << x;
    }
  }
  return out;
}

Family presheaf_box_oracle(const FinPresheaf& d, const Family& alpha) {
  const Mask a = flatten(d, alpha);
  enforce_cap(std::size_t{1} << std::popcount(a), "subfamily enumeration");
  Mask u = 0;
  for (Mask s = a;; s = (s - 1) & a) {
    if (is_subpresheaf(d, unflatten(d, s))) u |= s;
    if (s == 0) break;
  }
  return unflatten(d, u);
}

std::vector<std::vector<std::size_t>> PresheafCategory::component(std::size_t arrow) const {
  const auto& src = objects[cat->src(arrow)];
  const auto& key = cat->keys()[arrow];
  std::vector<std::vector<std::size_t>> out;
  std::size_t o = 0;
  for (const auto& s : src.at) {
    out.emplace_back(key.begin() + static_cast<long>(o), key.begin() + static_cast<long>(o + s.size()));
    o += s.size();
  }
  return out;
}

PresheafCategory presheaf_category(std::vector<FinPresheaf> objects) {
  if (objects.empty()) throw ModelError("no presheaves given");
  const auto base = objects.front().base;
  std::vector<std::string> names;
  for (const auto& d : objects) {
    if (!same_category(d.base, base)) throw ModelError("presheaf " + d.name + " lives over another base");
    auto v = check_presheaf(d);
    if (!v.empty()) throw ModelError("invalid presheaf " + d.name + ": " + v.front().law + " " + v.front().witness);
    names.push_back(d.name);
  }
  const auto nc = base->num_objects();
  std::vector<ConcreteArrow> arrows;
  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = 0; j < objects.size(); ++j) {
      const auto& a = objects[i];
      const auto& b = objects[j];
      std::vector<std::vector<std::vector<std::size_t>>> choices;
      for (std::size_t c = 0; c < nc; ++c) choices.push_back(all_functions(a.at[c].size(), b.at[c].size()));
      bool empty = false;
      for (const auto& ch : choices) empty = empty || ch.empty();
      if (empty) continue;
      std::vector<std::size_t> pick(nc, 0);
      for (;;) {
        std::vector<std::vector<std::size_t>> tau;
        for (std::size_t c = 0; c < nc; ++c) tau.push_back(choices[c][pick[c]]);
        if (natural(a, b, tau)) {
          std::vector<std::string> parts;
          for (std::size_t c = 0; c < nc; ++c) {
            std::vector<std::string> img;
            for (auto v : tau[c]) img.push_back(b.at[c][v]);
            parts.push_back(join(img, ","));
          }
          arrows.push_back({a.name + "->" + b.name + ":[" + join(parts, "|") + "]", i, j, concat(tau)});
          enforce_cap(arrows.size(), "natural transformations");
        }
        std::size_t k = nc;
        while (k > 0 && ++pick[k - 1] == choices[k - 1].size()) pick[--k] = 0;
        if (k == 0) break;
      }
    }
  auto cat = concrete_category(
      names, arrows,
      [&](const ConcreteArrow& g, const ConcreteArrow& f) {
        std::vector<std::size_t> k;
        std::size_t og = 0, of = 0;
        const auto& mid = objects[f.dst];
        const auto& src = objects[f.src];
        for (std::size_t c = 0; c < nc; ++c) {
          for (std::size_t x = 0; x < src.at[c].size(); ++x) k.push_back(g.key[og + f.key[of + x]]);
          of += src.at[c].size();
          og += mid.at[c].size();
        }
        return k;
      },
      [&](std::size_t o) {
        std::vector<std::vector<std::size_t>> parts;
        for (const auto& s : objects[o].at) parts.push_back(identity_table(s.size()));
        return concat(parts);
      });
  return PresheafCategory{cat, std::move(objects)};
}

DocPtr subfamily_doctrine(const PresheafCategory& p) {
  const auto& C = *p.cat;
  auto d = std::make_shared<Doctrine>();
  d->base = p.cat;
  for (const auto& o : p.objects) {
    enforce_cap(std::size_t{1} << total_size(o), "subfamily fiber");
    d->fiber.push_back(powerset_poset(flat_labels(o)));
  }
  for (std::size_t a = 0; a < C.num_arrows(); ++a) {
    const auto& src = p.objects[C.src(a)];
    const auto& dst = p.objects[C.dst(a)];
    auto tau = p.component(a);
    d->reindex.push_back(tabulate(d->fiber[C.dst(a)], d->fiber[C.src(a)], [&](std::size_t e) {
      auto fam = unflatten(dst, e);
      Family out;
      for (std::size_t c = 0; c < fam.size(); ++c) out.push_back(preimage(tau[c], fam[c]));
      return static_cast<std::size_t>(flatten(src, out));
    }));
  }
  return d;
}

DocPtr subpresheaf_doctrine(const PresheafCategory& p) {
  auto all = subfamily_doctrine(p);
  const auto& C = *p.cat;
  auto d = std::make_shared<Doctrine>();
  d->base = p.cat;
  std::vector<std::vector<Mask>> keep;
  for (std::size_t i = 0; i < p.objects.size(); ++i) {
    keep.push_back(subpresheaf_masks(p.objects[i]));
    std::vector<std::size_t> idx(keep.back().begin(), keep.back().end());
    d->fiber.push_back(subposet(all->fiber[i], idx));
  }
  for (std::size_t a = 0; a < C.num_arrows(); ++a) {
    auto i = C.src(a), j = C.dst(a);
    d->reindex.push_back(tabulate(d->fiber[j], d->fiber[i],
                                  [&](std::size_t e) { return position(keep[i], all->reindex[a](keep[j][e])); }));
  }
  return d;
}

InteriorOp presheaf_box_doctrine(const PresheafCategory& p) {
  InteriorOp op{subfamily_doctrine(p), {}};
  for (std::size_t i = 0; i < p.objects.size(); ++i) {
    const auto& d = p.objects[i];
    op.box.push_back(tabulate(op.doctrine->fiber[i], op.doctrine->fiber[i], [&](std::size_t e) {
      return static_cast<std::size_t>(flatten(d, presheaf_box(d, unflatten(d, e))));
    }));
  }
  return op;
}

FinPresheaf restrict_to_discrete(const FinPresheaf& d, const CatPtr& discrete) {
  if (discrete->num_objects() != d.at.size()) throw ModelError("discrete base does not match " + d.name);
  FinPresheaf out{"L(" + d.name + ")", discrete, d.at, {}};
  for (std::size_t a = 0; a < discrete->num_arrows(); ++a) {
    if (!discrete->is_identity(a)) throw ModelError("restriction target must be discrete");
    out.act.push_back(identity_table(d.at[discrete->src(a)].size()));
  }
  return out;
}

FinPresheaf right_kan_presheaf(const FinPresheaf& s, const CatPtr& base) {
  const auto& C = *base;
  if (s.at.size() != C.num_objects()) throw ModelError("family " + s.name + " does not match the base");
  FinPresheaf out{"R(" + s.name + ")", base, {}, {}};
  std::vector<std::vector<std::size_t>> into, radices;
  for (std::size_t c = 0; c < C.num_objects(); ++c) {
    into.push_back(arrows_into(C, c));
    std::vector<std::size_t> r;
    std::size_t n = 1;
    for (auto f : into.back()) {
      r.push_back(s.at[C.src(f)].size());
      n *= r.back();
      enforce_cap(n, "right adjoint presheaf");
    }
    radices.push_back(r);
    std::vector<std::string> elems;
    for (std::size_t i = 0; i < n; ++i) {
      auto dg = decode(i, r);
      std::vector<std::string> parts;
      for (std::size_t k = 0; k < dg.size(); ++k) parts.push_back(s.at[C.src(into.back()[k])][dg[k]]);
      elems.push_back("(" + join(parts, ",") + ")");
    }
    out.at.push_back(std::move(elems));
  }
  for (std::size_t g = 0; g < C.num_arrows(); ++g) {
    const auto c1 = C.src(g), c = C.dst(g);
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < out.at[c].size(); ++i) {
      auto x = decode(i, radices[c]);
      std::vector<std::size_t> y;
      for (auto f1 : into[c1]) {
        auto gf = C.compose(g, f1);
        auto pos = std::find(into[c].begin(), into[c].end(), gf) - into[c].begin();
        y.push_back(x[static_cast<std::size_t>(pos)]);
      }
      t.push_back(encode(y, radices[c1]));
    }
    out.act.push_back(std::move(t));
  }
  return out;
}

std::optional<std::vector<std::vector<std::size_t>>> presheaf_iso(const FinPresheaf& a, const FinPresheaf& b) {
  if (!same_category(a.base, b.base)) return std::nullopt;
  const auto nc = a.at.size();
  for (std::size_t c = 0; c < nc; ++c)
    if (a.at[c].size() != b.at[c].size()) return std::nullopt;
  std::vector<std::vector<std::size_t>> phi;
  for (std::size_t c = 0; c < nc; ++c) phi.push_back(identity_table(a.at[c].size()));
  for (;;) {
    if (natural(a, b, phi)) return phi;
    std::size_t k = nc;
    while (k > 0 && !std::next_permutation(phi[k - 1].begin(), phi[k - 1].end())) --k;
    if (k == 0) return std::nullopt;
  }
}

PresheafInstance presheaf_instance(const CatPtr& base, std::vector<FinPresheaf> presheaves, std::size_t max_rounds) {
  for (const auto& d : presheaves) {
    if (!same_category(d.base, base)) throw ModelError("presheaf " + d.name + " lives over another base");
    auto v = check_presheaf(d);
    if (!v.empty()) throw ModelError("invalid presheaf " + d.name + ": " + v.front().law + " " + v.front().witness);
  }
  PresheafInstance out;
  out.base = base;
  out.discrete = discrete_category(base->objects());
  std::vector<FinPresheaf> fams;
  std::vector<std::size_t> r_obj;
  std::vector<std::vector<std::vector<std::size_t>>> phi;
  std::vector<FinPresheaf> rs;
  for (std::size_t round = 0;; ++round) {
    fams.clear();
    r_obj.clear();
    phi.clear();
    rs.clear();
    std::vector<FinPresheaf> missing;
    for (const auto& d : presheaves) {
      fams.push_back(restrict_to_discrete(d, out.discrete));
      rs.push_back(right_kan_presheaf(fams.back(), base));
      bool found = false;
      for (std::size_t j = 0; j < presheaves.size() && !found; ++j)
        if (auto iso = presheaf_iso(rs.back(), presheaves[j])) {
          r_obj.push_back(j);
          phi.push_back(*iso);
          found = true;
        }
      if (!found) missing.push_back(rs.back());
    }
    if (missing.empty()) break;
    if (round == max_rounds)
      throw ModelError("closure requirement unmet: " + missing.front().name + " is not isomorphic to any listed presheaf");
    for (auto& m : missing) {
      bool dup = false;
      for (const auto& d : presheaves) dup = dup || presheaf_iso(m, d).has_value();
      if (dup) continue;
      out.added.push_back(m.name);
      presheaves.push_back(std::move(m));
    }
  }
  out.presheaves = presheaf_category(presheaves);
  out.families = presheaf_category(fams);
  const auto& PC = *out.presheaves.cat;
  const auto& QC = *out.families.cat;
  const auto& C = *base;
  auto pdoc = subpresheaf_doctrine(out.presheaves);
  auto qdoc = subfamily_doctrine(out.families);
  const auto n = presheaves.size();

  Functor L{out.presheaves.cat, out.families.cat, {}, {}};
  for (std::size_t i = 0; i < n; ++i) L.obj.push_back(i);
  for (std::size_t a = 0; a < PC.num_arrows(); ++a) {
    auto b = QC.find_by_key(PC.src(a), PC.dst(a), PC.keys()[a]);
    if (!b) throw ModelError("restriction of " + PC.arrow(a).name + " is missing");
    L.arr.push_back(*b);
  }
  std::vector<std::vector<Mask>> subs;
  for (const auto& d : presheaves) subs.push_back(subpresheaf_masks(d));
  std::vector<MonotoneMap> lam;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> g(subs[i].begin(), subs[i].end());
    lam.emplace_back(pdoc->fiber[i], qdoc->fiber[i], std::move(g));
  }

  std::vector<std::vector<std::vector<std::size_t>>> phi_inv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& comp : phi[i]) {
      std::vector<std::size_t> inv(comp.size());
      for (std::size_t x = 0; x < comp.size(); ++x) inv[comp[x]] = x;
      phi_inv[i].push_back(std::move(inv));
    }
  std::vector<std::vector<std::size_t>> into;
  for (std::size_t c = 0; c < C.num_objects(); ++c) into.push_back(arrows_into(C, c));
  auto radices = [&](std::size_t i, std::size_t c) {
    std::vector<std::size_t> r;
    for (auto f : into[c]) r.push_back(fams[i].at[C.src(f)].size());
    return r;
  };

  Functor R{out.families.cat, out.presheaves.cat, r_obj, {}};
  for (std::size_t a = 0; a < QC.num_arrows(); ++a) {
    auto i = QC.src(a), k = QC.dst(a);
    auto tau = out.families.component(a);
    std::vector<std::vector<std::size_t>> psi;
    for (std::size_t c = 0; c < C.num_objects(); ++c) {
      auto ri = radices(i, c), rk = radices(k, c);
      std::vector<std::size_t> t;
      for (auto y : phi_inv[i][c]) {
        auto x = decode(y, ri);
        for (std::size_t m = 0; m < x.size(); ++m) x[m] = tau[C.src(into[c][m])][x[m]];
        t.push_back(phi[k][c][encode(x, rk)]);
      }
      psi.push_back(std::move(t));
    }
    auto b = PC.find_by_key(r_obj[i], r_obj[k], concat(psi));
    if (!b) throw ModelError("right adjoint image of " + QC.arrow(a).name + " is not natural");
    R.arr.push_back(*b);
  }

  std::vector<MonotoneMap> rho;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& tgt = presheaves[r_obj[i]];
    rho.push_back(tabulate(qdoc->fiber[i], pdoc->fiber[r_obj[i]], [&](std::size_t e) {
      auto t = unflatten(fams[i], e);
      Family img(C.num_objects(), 0);
      for (std::size_t c = 0; c < C.num_objects(); ++c) {
        auto rc = radices(i, c);
        for (std::size_t y = 0; y < tgt.at[c].size(); ++y) {
          auto x = decode(phi_inv[i][c][y], rc);
          bool in = true;
          for (std::size_t m = 0; m < x.size(); ++m) in = in && (t[C.src(into[c][m])] >> x[m] & 1U);
          if (in) img[c] |= Mask{1} << y;
        }
      }
      return position(subs[r_obj[i]], flatten(tgt, img));
    }));
  }

  NatTransformation eta{identity_functor(out.presheaves.cat), compose_functors(R, L), {}};
  for (std::size_t j = 0; j < n; ++j) {
    const auto& d = presheaves[j];
    std::vector<std::vector<std::size_t>> comp;
    for (std::size_t c = 0; c < C.num_objects(); ++c) {
      auto rc = radices(j, c);
      std::vector<std::size_t> t;
      for (std::size_t x = 0; x < d.at[c].size(); ++x) {
        std::vector<std::size_t> tup;
        for (auto f : into[c]) tup.push_back(d.act[f][x]);
        t.push_back(phi[j][c][encode(tup, rc)]);
      }
      comp.push_back(std::move(t));
    }
    auto b = PC.find_by_key(j, r_obj[j], concat(comp));
    if (!b) throw ModelError("unit at " + d.name + " is not natural");
    eta.comp.push_back(*b);
  }

  NatTransformation eps{compose_functors(L, R), identity_functor(out.families.cat), {}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<std::size_t>> comp;
    for (std::size_t c = 0; c < C.num_objects(); ++c) {
      auto rc = radices(i, c);
      auto idpos = static_cast<std::size_t>(std::find(into[c].begin(), into[c].end(), C.id(c)) - into[c].begin());
      std::vector<std::size_t> t;
      for (auto y : phi_inv[i][c]) t.push_back(decode(y, rc)[idpos]);
      comp.push_back(std::move(t));
    }
    auto b = QC.find_by_key(r_obj[i], i, concat(comp));
    if (!b) throw ModelError("counit at " + fams[i].name + " is missing");
    eps.comp.push_back(*b);
  }

  out.adjunction = DoctrineAdjunction{pdoc, qdoc, L, lam, R, rho, eta, eps};
  out.modality = am_modality(out.adjunction);
  return out;
}

}  // namespace modaldoc
