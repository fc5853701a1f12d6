#include "modaldoc/adjunction.hpp"

#include <algorithm>
#include <set>

namespace modaldoc {

TwoArrow DoctrineAdjunction::eta_two() const {
  return TwoArrow{identity_one_arrow(P), compose_one_arrows(right(), left()), eta};
}

TwoArrow DoctrineAdjunction::eps_two() const {
  return TwoArrow{compose_one_arrows(left(), right()), identity_one_arrow(Q), eps};
}

Violations check_adjunction(const DoctrineAdjunction& a) {
  if (!same_category(a.L.src, a.P->base) || !same_category(a.L.dst, a.Q->base))
    throw ModelError("left adjoint does not match the doctrine bases");
  Violations out;
  append(out, check_functor(a.L), "i:L ");
  append(out, check_functor(a.R), "i:R ");
  if (!out.empty()) return out;
  append(out, adjunction_cat(a.L, a.R, a.eta, a.eps), "i:");
  append(out, check_one_arrow(a.left()), "ii:left ");
  append(out, check_one_arrow(a.right()), "ii:right ");
  if (!out.empty()) return out;
  append(out, check_two_arrow(a.eta_two()), "iii:unit ");
  append(out, check_two_arrow(a.eps_two()), "iii:counit ");
  return out;
}

DoctrineAdjunction identity_adjunction(const DocPtr& p) {
  std::vector<MonotoneMap> ids;
  for (const auto& f : p->fiber) ids.push_back(identity_map(f));
  return vertical_adjunction(p, p, ids, ids);
}

DoctrineAdjunction vertical_adjunction(const DocPtr& p, const DocPtr& q, std::vector<MonotoneMap> lam,
                                       std::vector<MonotoneMap> rho) {
  if (!same_category(p->base, q->base)) throw ModelError("vertical adjunction needs a common base");
  auto id = identity_functor(p->base);
  auto idq = identity_functor(q->base);
  return DoctrineAdjunction{p, q, id, std::move(lam), idq, std::move(rho), identity_nat(id), identity_nat(idq)};
}

bool is_vertical(const DoctrineAdjunction& a) {
  return is_identity_functor(a.L) && is_identity_functor(a.R) && is_identity_nat(a.eta) &&
         is_identity_nat(a.eps);
}

Violations fiberwise_galois(const DoctrineAdjunction& a) {
  if (!is_vertical(a)) throw ModelError("fiberwise Galois check needs a vertical adjunction");
  Violations out;
  const auto& C = *a.P->base;
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    const auto& p = *a.P->fiber[x];
    const auto& q = *a.Q->fiber[x];
    for (std::size_t s = 0; s < p.size(); ++s)
      for (std::size_t t = 0; t < q.size(); ++t)
        if (q.leq(a.lam[x](s), t) != p.leq(s, a.rho[x](t)))
          out.push_back({"galois", C.object_name(x) + ":(" + p.name(s) + "," + q.name(t) + ")"});
  }
  return out;
}

InteriorOp vertical_modality(const DoctrineAdjunction& a) {
  if (!is_vertical(a)) throw ModelError("vertical modality needs identity base functors");
  InteriorOp op{a.Q, {}};
  for (std::size_t x = 0; x < a.lam.size(); ++x) op.box.push_back(compose(a.lam[x], a.rho[x]));
  return op;
}

ModalDoctrine am_modality(const DoctrineAdjunction& a) {
  auto ql = precompose(a.Q, a.L);
  InteriorOp op{ql, {}};
  const auto& C = *a.P->base;
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    auto lx = a.L.obj[x];
    op.box.push_back(compose(a.lam[x], compose(a.P->reindex[a.eta.comp[x]], a.rho[lx])));
  }
  return ModalDoctrine{ql, op};
}

DoctrineAdjunction base_change_adjunction(const DocPtr& q, const Functor& L, const Functor& R,
                                          const NatTransformation& eta, const NatTransformation& eps) {
  auto v = adjunction_cat(L, R, eta, eps);
  if (!v.empty()) throw ModelError("base adjunction fails: " + v.front().law + " at " + v.front().witness);
  auto ql = precompose(q, L);
  DoctrineAdjunction out{ql, q, L, {}, R, {}, eta, eps};
  for (const auto& f : ql->fiber) out.lam.push_back(identity_map(f));
  for (std::size_t y = 0; y < q->fiber.size(); ++y) out.rho.push_back(q->reindex[eps.comp[y]]);
  return out;
}

namespace {

// (P eta)(rho L) : Q(L X) -> P X
std::vector<MonotoneMap> pullback_components(const DoctrineAdjunction& a) {
  std::vector<MonotoneMap> out;
  for (std::size_t x = 0; x < a.P->fiber.size(); ++x)
    out.push_back(compose(a.P->reindex[a.eta.comp[x]], a.rho[a.L.obj[x]]));
  return out;
}

}  // namespace

Factorization factorize(const DoctrineAdjunction& a) {
  auto ql = precompose(a.Q, a.L);
  auto idc = identity_functor(a.P->base);
  std::vector<MonotoneMap> lam;
  for (std::size_t x = 0; x < a.lam.size(); ++x)
    lam.emplace_back(a.P->fiber[x], ql->fiber[x], a.lam[x].graph());
  Factorization f{vertical_adjunction(a.P, ql, lam, pullback_components(a)),
                  base_change_adjunction(a.Q, a.L, a.R, a.eta, a.eps)};
  f.left_composite_equal = same_one_arrow(compose_one_arrows(f.base_change.left(), f.vertical.left()), a.left());
  f.right_composite_equal =
      same_one_arrow(compose_one_arrows(f.vertical.right(), f.base_change.right()), a.right());
  return f;
}

bool Factorize2Report::ok() const {
  for (const auto& o : objects)
    if (!o.lambda_lands_in_stable || !o.lambda_surjective || !o.pullback_injective) return false;
  return square_lambda && square_pullback && square_box && box_identity_on_stable && arrows_valid;
}

Factorize2Report factorize2_report(const DoctrineAdjunction& a) {
  auto am = am_modality(a);
  auto st = stable_subdoctrine(am.op);
  auto pb = pullback_components(a);
  const auto& C = *a.P->base;
  Factorize2Report rep;
  rep.square_lambda = rep.square_pullback = rep.square_box = rep.box_identity_on_stable = true;
  OneArrow lam_hat{a.P, st.doctrine, identity_functor(a.P->base), {}};
  OneArrow pb_hat{st.doctrine, a.P, identity_functor(a.P->base), {}};
  OneArrow box_hat{am.doctrine, st.doctrine, identity_functor(a.P->base), {}};
  bool typed = true;
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    Factorize2Object ob;
    ob.object = C.object_name(x);
    const auto& emb = st.embed[x];
    std::vector<long> pos(am.doctrine->fiber[x]->size(), -1);
    for (std::size_t i = 0; i < emb.size(); ++i) pos[emb[i]] = static_cast<long>(i);
    const auto& pfib = *a.P->fiber[x];
    const auto& qfib = *am.doctrine->fiber[x];

    ob.lambda_lands_in_stable = true;
    std::vector<std::size_t> lg;
    for (std::size_t e = 0; e < pfib.size(); ++e) {
      long i = pos[a.lam[x](e)];
      if (i < 0) {
        ob.lambda_lands_in_stable = false;
        typed = false;
        lg.push_back(0);
      } else {
        lg.push_back(static_cast<std::size_t>(i));
      }
    }
    std::vector<char> hit(emb.size(), 0);
    std::vector<std::string> pre(emb.size());
    for (std::size_t e = 0; e < pfib.size(); ++e)
      if (pos[a.lam[x](e)] >= 0 && !hit[lg[e]]) {
        hit[lg[e]] = 1;
        pre[lg[e]] = pfib.name(e);
      }
    ob.lambda_surjective = ob.lambda_lands_in_stable;
    for (std::size_t i = 0; i < emb.size(); ++i) {
      if (!hit[i]) ob.lambda_surjective = false;
      else ob.surjectivity_witnesses.push_back(qfib.name(emb[i]) + " <- " + pre[i]);
    }
    std::vector<std::size_t> pg;
    std::set<std::size_t> seen;
    ob.pullback_injective = true;
    for (auto s : emb) {
      auto v = pb[x](s);
      pg.push_back(v);
      if (!seen.insert(v).second) ob.pullback_injective = false;
      ob.injectivity_witnesses.push_back(qfib.name(s) + " -> " + pfib.name(v));
    }
    std::vector<std::size_t> bg;
    for (std::size_t e = 0; e < qfib.size(); ++e) {
      long i = pos[am.op.box[x](e)];
      if (i < 0) {
        typed = false;
        bg.push_back(0);
      } else {
        bg.push_back(static_cast<std::size_t>(i));
      }
    }
    if (typed) {
      lam_hat.f.emplace_back(a.P->fiber[x], st.doctrine->fiber[x], lg);
      pb_hat.f.emplace_back(st.doctrine->fiber[x], a.P->fiber[x], pg);
      box_hat.f.emplace_back(am.doctrine->fiber[x], st.doctrine->fiber[x], bg);
      for (std::size_t e = 0; e < pfib.size(); ++e)
        if (emb[lg[e]] != a.lam[x](e)) rep.square_lambda = false;
      for (std::size_t e = 0; e < qfib.size(); ++e) {
        if (pg[bg[e]] != pb[x](e)) rep.square_pullback = false;
        if (emb[bg[e]] != am.op.box[x](e)) rep.square_box = false;
      }
      for (std::size_t i = 0; i < emb.size(); ++i)
        if (lg.empty() || am.op.box[x](emb[i]) != emb[i] || a.lam[x](pg[i]) != emb[i])
          rep.box_identity_on_stable = false;
    }
    rep.objects.push_back(std::move(ob));
  }
  if (!typed) {
    rep.square_lambda = rep.square_pullback = rep.square_box = false;
    rep.arrows_valid = false;
    return rep;
  }
  rep.arrows_valid = check_one_arrow(lam_hat).empty() && check_one_arrow(pb_hat).empty() &&
                     check_one_arrow(box_hat).empty();
  return rep;
}

std::vector<TrivialityObject> triviality_checks(const DoctrineAdjunction& a) {
  if (!is_vertical(a)) throw ModelError("triviality checks need a vertical adjunction");
  auto v = check_adjunction(a);
  if (!v.empty()) throw ModelError("not an adjunction: " + v.front().law + " " + v.front().witness);
  std::vector<TrivialityObject> out;
  const auto& C = *a.P->base;
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    const auto& l = a.lam[x];
    const auto& r = a.rho[x];
    TrivialityObject t;
    t.object = C.object_name(x);
    t.lrl_equals_l = compose(l, compose(r, l)).graph() == l.graph();
    t.rlr_equals_r = compose(r, compose(l, r)).graph() == r.graph();
    t.lr_identity = is_identity(compose(l, r));
    t.rl_identity = is_identity(compose(r, l));
    t.rho_injective = injective(r);
    t.rho_surjective = surjective(r);
    t.lam_injective = injective(l);
    t.lam_surjective = surjective(l);
    out.push_back(t);
  }
  return out;
}

Violations check_adj_morphism(const AdjMorphism& m) {
  const auto& A = m.A;
  const auto& B = m.B;
  if (!same_doctrine(m.Ff.src, A.P) || !same_doctrine(m.Ff.dst, B.P) || !same_doctrine(m.Gg.src, A.Q) ||
      !same_doctrine(m.Gg.dst, B.Q))
    throw ModelError("adjunction morphism boundaries do not align");
  Violations out;
  append(out, check_one_arrow(m.Ff), "F ");
  append(out, check_one_arrow(m.Gg), "G ");
  if (!out.empty()) return out;
  if (!(compose_functors(m.Gg.F, A.L) == compose_functors(B.L, m.Ff.F)))
    out.push_back({"left-adjoints-commute", "G L^A != L^B F"});
  if (!(m.theta.src == compose_functors(m.Ff.F, A.R)) || !(m.theta.dst == compose_functors(B.R, m.Gg.F)))
    throw ModelError("theta must go from F R^A to R^B G");
  auto nv = check_nat(m.theta);
  if (!nv.empty()) {
    append(out, nv, "theta ");
    return out;
  }
  if (!out.empty()) return out;
  const auto& CA = *A.P->base;
  const auto& CB = *B.P->base;
  const auto& DA = *A.Q->base;
  const auto& DB = *B.Q->base;
  for (std::size_t x = 0; x < CA.num_objects(); ++x) {
    auto lhs = CB.compose(m.theta.comp[A.L.obj[x]], m.Ff.F.arr[A.eta.comp[x]]);
    if (lhs != B.eta.comp[m.Ff.F.obj[x]]) out.push_back({"unit-square", CA.object_name(x)});
  }
  for (std::size_t y = 0; y < DA.num_objects(); ++y) {
    auto lhs = DB.compose(B.eps.comp[m.Gg.F.obj[y]], B.L.arr[m.theta.comp[y]]);
    if (lhs != m.Gg.F.arr[A.eps.comp[y]]) out.push_back({"counit-square", DA.object_name(y)});
  }
  TwoArrow th{compose_one_arrows(m.Ff, A.right()), compose_one_arrows(B.right(), m.Gg), m.theta};
  append(out, check_two_arrow(th), "theta ");
  for (std::size_t x = 0; x < CA.num_objects(); ++x) {
    auto lhs = compose(m.Gg.f[A.L.obj[x]], A.lam[x]);
    auto rhs = compose(B.lam[m.Ff.F.obj[x]], m.Ff.f[x]);
    if (lhs.graph() != rhs.graph()) out.push_back({"coincidence", CA.object_name(x)});
  }
  return out;
}

AdjMorphism identity_adj_morphism(const DoctrineAdjunction& a) {
  auto f = identity_one_arrow(a.P);
  auto g = identity_one_arrow(a.Q);
  return AdjMorphism{a, a, f, g, identity_nat(compose_functors(f.F, a.R))};
}

AdjMorphism compose_adj_morphisms(const AdjMorphism& m2, const AdjMorphism& m1) {
  auto theta = vertical_compose(whisker_right(m2.theta, m1.Gg.F), whisker_left(m2.Ff.F, m1.theta));
  return AdjMorphism{m1.A, m2.B, compose_one_arrows(m2.Ff, m1.Ff), compose_one_arrows(m2.Gg, m1.Gg), theta};
}

Violations check_adj_two_cell(const AdjTwoCell& c) {
  Violations out;
  append(out, check_two_arrow(c.alpha), "alpha ");
  append(out, check_two_arrow(c.beta), "beta ");
  const auto& A = c.src.A;
  const auto& B = c.src.B;
  const auto& CA = *A.P->base;
  const auto& CB = *B.P->base;
  const auto& DA = *A.Q->base;
  for (std::size_t x = 0; x < CA.num_objects(); ++x)
    if (B.L.arr[c.alpha.theta.comp[x]] != c.beta.theta.comp[A.L.obj[x]])
      out.push_back({"left-whisker", CA.object_name(x)});
  for (std::size_t y = 0; y < DA.num_objects(); ++y) {
    auto lhs = CB.compose(c.dst.theta.comp[y], c.alpha.theta.comp[A.R.obj[y]]);
    auto rhs = CB.compose(B.R.arr[c.beta.theta.comp[y]], c.src.theta.comp[y]);
    if (lhs != rhs) out.push_back({"theta-square", DA.object_name(y)});
  }
  return out;
}

OneArrow am_functor(const AdjMorphism& m, const ModalDoctrine& am_a, const ModalDoctrine& am_b) {
  OneArrow out{am_a.doctrine, am_b.doctrine, m.Ff.F, {}};
  for (std::size_t x = 0; x < m.A.P->fiber.size(); ++x) {
    const auto& g = m.Gg.f[m.A.L.obj[x]];
    out.f.emplace_back(am_a.doctrine->fiber[x], am_b.doctrine->fiber[m.Ff.F.obj[x]], g.graph());
  }
  return out;
}

OneArrow am_functor(const AdjMorphism& m) { return am_functor(m, am_modality(m.A), am_modality(m.B)); }

TwoArrow am_functor_2cell(const AdjTwoCell& c) {
  return TwoArrow{am_functor(c.src), am_functor(c.dst), c.alpha.theta};
}

namespace {

// Union-closed family of subsets of a ground set, containing the empty set.
std::vector<std::uint64_t> random_union_closed(std::mt19937_64& rng, std::size_t ground, std::size_t cap) {
  std::set<std::uint64_t> fam{0};
  std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t{1} << ground) - 1);
  std::uniform_int_distribution<int> tries(1, 6);
  int n = tries(rng);
  for (int i = 0; i < n; ++i) {
    auto s = pick(rng);
    std::set<std::uint64_t> next = fam;
    bool grew = true;
    next.insert(s);
    while (grew) {
      grew = false;
      std::vector<std::uint64_t> cur(next.begin(), next.end());
      for (auto a : cur)
        for (auto b : cur)
          if (next.insert(a | b).second) grew = true;
    }
    if (next.size() <= cap) fam = std::move(next);
  }
  return {fam.begin(), fam.end()};
}

PosetPtr family_poset(const std::vector<std::uint64_t>& fam, const std::vector<std::string>& ground) {
  std::vector<std::string> names;
  for (auto s : fam) names.push_back(subset_name(ground, s));
  return make_poset(names, [&](std::size_t a, std::size_t b) { return (fam[a] & ~fam[b]) == 0; });
}

}  // namespace

DoctrineAdjunction random_vertical_adjunction(std::mt19937_64& rng, std::size_t max_fiber) {
  std::uniform_int_distribution<int> nobj(1, 3), gsize(1, 4);
  int k = nobj(rng);
  std::vector<std::string> objs;
  for (int i = 0; i < k; ++i) objs.push_back("X" + std::to_string(i));
  auto base = discrete_category(objs);
  auto p = std::make_shared<Doctrine>();
  auto q = std::make_shared<Doctrine>();
  p->base = q->base = base;
  std::vector<MonotoneMap> lam, rho;
  for (int i = 0; i < k; ++i) {
    auto gp = static_cast<std::size_t>(gsize(rng)), gq = static_cast<std::size_t>(gsize(rng));
    std::vector<std::string> np, nq;
    for (std::size_t j = 0; j < gp; ++j) np.push_back("p" + std::to_string(j));
    for (std::size_t j = 0; j < gq; ++j) nq.push_back("q" + std::to_string(j));
    auto fp = random_union_closed(rng, gp, max_fiber);
    auto fq = random_union_closed(rng, gq, max_fiber);
    p->fiber.push_back(family_poset(fp, np));
    q->fiber.push_back(family_poset(fq, nq));
    // lam(S) = union of g(j) over j in S preserves unions, hence has a right adjoint.
    std::uniform_int_distribution<std::size_t> pickq(0, fq.size() - 1);
    std::vector<std::uint64_t> g(gp);
    for (auto& gj : g) gj = fq[pickq(rng)];
    std::vector<std::size_t> graph;
    for (auto s : fp) {
      std::uint64_t u = 0;
      for (std::size_t j = 0; j < gp; ++j)
        if (s >> j & 1U) u |= g[j];
      graph.push_back(static_cast<std::size_t>(std::find(fq.begin(), fq.end(), u) - fq.begin()));
    }
    lam.emplace_back(p->fiber.back(), q->fiber.back(), graph);
    auto r = right_adjoint(lam.back());
    if (!r) throw ModelError("sampled map lacks a right adjoint");
    rho.push_back(*r);
  }
  for (std::size_t a = 0; a < base->num_arrows(); ++a) {
    p->reindex.push_back(identity_map(p->fiber[a]));
    q->reindex.push_back(identity_map(q->fiber[a]));
  }
  return vertical_adjunction(p, q, lam, rho);
}

}  // namespace modaldoc
