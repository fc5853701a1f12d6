#include "modaldoc/doctrine.hpp"

namespace modaldoc {

namespace {

std::string at(const FinCategory& c, std::size_t o, const FinPoset& p, std::size_t e) {
  return c.object_name(o) + ":" + p.name(e);
}

void require_fibers(const Doctrine& d) {
  if (!d.base) throw ModelError("doctrine without base");
  if (d.fiber.size() != d.base->num_objects()) throw ModelError("doctrine is missing a fiber");
  if (d.reindex.size() != d.base->num_arrows()) throw ModelError("doctrine is missing a reindexing");
}

}  // namespace

Violations check_doctrine(const Doctrine& d) {
  require_fibers(d);
  Violations out;
  const auto& C = *d.base;
  for (std::size_t a = 0; a < C.num_arrows(); ++a) {
    const auto& r = d.reindex[a];
    if (!r.src()->same_as(*d.fiber[C.dst(a)]) || !r.dst()->same_as(*d.fiber[C.src(a)])) {
      out.push_back({"reindex-type", C.arrow(a).name});
      continue;
    }
    append(out, check_monotone(r), "reindex " + C.arrow(a).name + " ");
  }
  if (!out.empty()) return out;
  for (std::size_t o = 0; o < C.num_objects(); ++o)
    if (!is_identity(d.reindex[C.id(o)])) out.push_back({"reindex-identity", C.object_name(o)});
  for (std::size_t g = 0; g < C.num_arrows(); ++g)
    for (std::size_t x = 0; x < C.num_objects(); ++x)
      for (auto f : C.hom(x, C.src(g)))
        if (d.reindex[C.compose(g, f)].graph() != compose(d.reindex[f], d.reindex[g]).graph())
          out.push_back({"reindex-composition", "(" + C.arrow(g).name + "," + C.arrow(f).name + ")"});
  return out;
}

bool same_doctrine(const DocPtr& a, const DocPtr& b) {
  if (a == b) return true;
  if (!same_category(a->base, b->base) || a->fiber.size() != b->fiber.size()) return false;
  for (std::size_t o = 0; o < a->fiber.size(); ++o)
    if (!a->fiber[o]->same_as(*b->fiber[o])) return false;
  for (std::size_t r = 0; r < a->reindex.size(); ++r)
    if (a->reindex[r].graph() != b->reindex[r].graph()) return false;
  return true;
}

Violations check_one_arrow(const OneArrow& a) {
  Violations out;
  if (!same_category(a.F.src, a.src->base) || !same_category(a.F.dst, a.dst->base))
    throw ModelError("1-arrow functor does not match the doctrine bases");
  auto fv = check_functor(a.F);
  if (!fv.empty()) throw ModelError("1-arrow functor invalid: " + fv.front().law + " " + fv.front().witness);
  const auto& C = *a.src->base;
  if (a.f.size() != C.num_objects()) throw ModelError("1-arrow is missing a fiber component");
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    const auto& m = a.f[x];
    if (!m.src()->same_as(*a.src->fiber[x]) || !m.dst()->same_as(*a.dst->fiber[a.F.obj[x]])) {
      out.push_back({"component-type", C.object_name(x)});
      continue;
    }
    append(out, check_monotone(m), "component " + C.object_name(x) + " ");
  }
  if (!out.empty()) return out;
  for (std::size_t t = 0; t < C.num_arrows(); ++t) {
    auto x = C.src(t), y = C.dst(t);
    auto lhs = compose(a.f[x], a.src->reindex[t]);
    auto rhs = compose(a.dst->reindex[a.F.arr[t]], a.f[y]);
    for (std::size_t e = 0; e < lhs.graph().size(); ++e)
      if (lhs(e) != rhs(e)) {
        out.push_back({"naturality", C.arrow(t).name + " at " + a.src->fiber[y]->name(e)});
        break;
      }
  }
  return out;
}

OneArrow identity_one_arrow(const DocPtr& d) {
  OneArrow a{d, d, identity_functor(d->base), {}};
  for (const auto& p : d->fiber) a.f.push_back(identity_map(p));
  return a;
}

OneArrow compose_one_arrows(const OneArrow& b, const OneArrow& a) {
  if (!same_doctrine(a.dst, b.src)) throw ModelError("1-arrows are not composable");
  OneArrow c{a.src, b.dst, compose_functors(b.F, a.F), {}};
  for (std::size_t x = 0; x < a.f.size(); ++x) c.f.push_back(compose(b.f[a.F.obj[x]], a.f[x]));
  return c;
}

bool same_one_arrow(const OneArrow& a, const OneArrow& b) {
  if (!(a.F == b.F) || a.f.size() != b.f.size()) return false;
  if (!same_doctrine(a.src, b.src) || !same_doctrine(a.dst, b.dst)) return false;
  for (std::size_t x = 0; x < a.f.size(); ++x)
    if (a.f[x].graph() != b.f[x].graph()) return false;
  return true;
}

bool is_identity_one_arrow(const OneArrow& a) {
  if (!is_identity_functor(a.F)) return false;
  for (const auto& m : a.f)
    if (!is_identity(m)) return false;
  return true;
}

Violations check_two_arrow(const TwoArrow& t) {
  if (!(t.theta.src == t.src.F) || !(t.theta.dst == t.dst.F))
    throw ModelError("2-arrow transformation does not match its boundary functors");
  if (!same_doctrine(t.src.src, t.dst.src) || !same_doctrine(t.src.dst, t.dst.dst))
    throw ModelError("2-arrow between 1-arrows with different boundaries");
  auto nv = check_nat(t.theta);
  if (!nv.empty()) throw ModelError("2-arrow transformation is not natural: " + nv.front().witness);
  Violations out;
  const auto& C = *t.src.src->base;
  const auto& Q = *t.src.dst;
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    const auto& rq = Q.reindex[t.theta.comp[x]];
    const auto& fiber = *t.src.src->fiber[x];
    const auto& target = *Q.fiber[t.src.F.obj[x]];
    for (std::size_t e = 0; e < fiber.size(); ++e)
      if (!target.leq(t.src.f[x](e), rq(t.dst.f[x](e)))) out.push_back({"lax", at(C, x, fiber, e)});
  }
  return out;
}

TwoArrow identity_two_arrow(const OneArrow& a) { return TwoArrow{a, a, identity_nat(a.F)}; }

TwoArrow vertical_compose_two_arrows(const TwoArrow& z, const TwoArrow& t) {
  if (!same_one_arrow(t.dst, z.src)) throw ModelError("2-arrows do not share the middle 1-arrow");
  return TwoArrow{t.src, z.dst, vertical_compose(z.theta, t.theta)};
}

TwoArrow whisker_post(const OneArrow& b, const TwoArrow& t) {
  return TwoArrow{compose_one_arrows(b, t.src), compose_one_arrows(b, t.dst), whisker_left(b.F, t.theta)};
}

TwoArrow whisker_pre(const TwoArrow& t, const OneArrow& c) {
  return TwoArrow{compose_one_arrows(t.src, c), compose_one_arrows(t.dst, c), whisker_right(t.theta, c.F)};
}

SquareDoctrine square_doctrine(const DocPtr& p) {
  auto d = std::make_shared<Doctrine>();
  d->base = p->base;
  for (const auto& f : p->fiber) d->fiber.push_back(product_poset(f, f));
  const auto& C = *p->base;
  for (std::size_t a = 0; a < C.num_arrows(); ++a) {
    const auto& r = p->reindex[a];
    const std::size_t m = r.src()->size(), k = r.dst()->size();
    d->reindex.push_back(tabulate(d->fiber[C.dst(a)], d->fiber[C.src(a)],
                                  [&](std::size_t e) { return r(e / m) * k + r(e % m); }));
  }
  SquareDoctrine out{d, OneArrow{p, d, identity_functor(p->base), {}}};
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    const std::size_t m = p->fiber[x]->size();
    out.diagonal.f.push_back(
        tabulate(p->fiber[x], d->fiber[x], [m](std::size_t e) { return e * m + e; }));
  }
  return out;
}

namespace {

// The unique arrow z -> Y x X with the given projections.
std::size_t pairing(const FinCategory& C, const ProductChoice& pc, std::size_t h1, std::size_t h2) {
  std::optional<std::size_t> found;
  for (auto a : C.hom(C.src(h1), pc.product))
    if (C.compose(pc.proj1, a) == h1 && C.compose(pc.proj2, a) == h2) {
      if (found) throw ModelError("product " + C.object_name(pc.product) + " has non-unique pairing");
      found = a;
    }
  if (!found) throw ModelError("product " + C.object_name(pc.product) + " lacks a pairing");
  return *found;
}

}  // namespace

PowerDoctrine power_doctrine(const DocPtr& p, std::size_t x, const std::vector<ProductChoice>& products) {
  const auto& C = *p->base;
  if (x >= C.num_objects()) throw ModelError("power doctrine exponent is not a base object");
  if (products.empty()) throw ModelError("product data missing");
  std::vector<std::size_t> objs;
  for (const auto& pc : products) {
    if (C.src(pc.proj1) != pc.product || C.dst(pc.proj1) != pc.object || C.src(pc.proj2) != pc.product ||
        C.dst(pc.proj2) != x)
      throw ModelError("product data for " + C.object_name(pc.object) + " has ill-typed projections");
    objs.push_back(pc.object);
  }
  PowerDoctrine out;
  out.products = products;
  out.sub = full_subcategory(p->base, objs);
  const auto& S = *out.sub.cat;

  auto restricted = std::make_shared<Doctrine>();
  restricted->base = out.sub.cat;
  for (auto o : objs) restricted->fiber.push_back(p->fiber[o]);
  for (std::size_t a = 0; a < S.num_arrows(); ++a) restricted->reindex.push_back(p->reindex[out.sub.inclusion.arr[a]]);
  out.restricted = restricted;

  auto d = std::make_shared<Doctrine>();
  d->base = out.sub.cat;
  for (const auto& pc : products) d->fiber.push_back(p->fiber[pc.product]);
  for (std::size_t a = 0; a < S.num_arrows(); ++a) {
    const auto& src_pc = products[S.src(a)];
    const auto& dst_pc = products[S.dst(a)];
    auto f = out.sub.inclusion.arr[a];
    // f x id_X : Y x X -> Y' x X
    auto fx = pairing(C, dst_pc, C.compose(f, src_pc.proj1), src_pc.proj2);
    d->reindex.push_back(p->reindex[fx]);
  }
  out.doctrine = d;
  out.weakening = OneArrow{restricted, d, identity_functor(out.sub.cat), {}};
  for (const auto& pc : products) out.weakening.f.push_back(p->reindex[pc.proj1]);
  return out;
}

DocPtr precompose(const DocPtr& q, const Functor& l) {
  if (!same_category(l.dst, q->base)) throw ModelError("precomposition functor does not land in the base");
  auto d = std::make_shared<Doctrine>();
  d->base = l.src;
  for (auto o : l.obj) d->fiber.push_back(q->fiber[o]);
  for (auto a : l.arr) d->reindex.push_back(q->reindex[a]);
  return d;
}

}  // namespace modaldoc
