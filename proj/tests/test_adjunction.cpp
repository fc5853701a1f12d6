#include <random>

#include "doctest.h"
#include "modaldoc/adjunction.hpp"
#include "modaldoc/bundled.hpp"
#include "modaldoc/comonad.hpp"
#include "test_util.hpp"

using namespace modaldoc;

namespace {

PresheafInstance chain2_instance() {
  auto base = frame_base(bundled_frames()[0].frame);
  return presheaf_instance(base, chain2_presheaves(base));
}

bool same_modal_tables(const InteriorOp& a, const InteriorOp& b) {
  if (a.box.size() != b.box.size()) return false;
  for (std::size_t x = 0; x < a.box.size(); ++x)
    if (a.box[x].graph() != b.box[x].graph()) return false;
  return true;
}

}  // namespace

TEST_CASE("check_adjunction examples") {
  auto pw = powerset_doctrine(bundled_sets());
  CHECK(check_adjunction(identity_adjunction(pw)).empty());

  auto ql = quantale_doctrine(lukasiewicz3_quantale(), quantale_sets());
  CHECK(check_adjunction(ql.adjunction).empty());

  // eta at the set 2 replaced by the constant function onto p.
  auto bad = ql.adjunction;
  const auto& C = *bad.P->base;
  const auto two = *C.find_object("2");
  for (auto a : C.hom(two, two))
    if (!C.is_identity(a) && bad.P->base->keys()[a] == std::vector<std::size_t>{0, 0}) bad.eta.comp[two] = a;
  REQUIRE_FALSE(C.is_identity(bad.eta.comp[two]));
  CHECK(has_law_prefix(check_adjunction(bad), "i:"));

  // Natural lambda and rho that are not adjoint: rho sends everything to bottom.
  auto id = identity_adjunction(pw);
  for (auto& m : id.rho) m = constant_map(m.src(), m.dst(), 0);
  auto v = check_adjunction(id);
  CHECK(has_law_prefix(v, "iii:unit"));
  CHECK_FALSE(has_law_prefix(v, "i:"));
  CHECK_FALSE(has_law_prefix(v, "ii:"));
}

TEST_CASE("vertical_modality examples") {
  auto pw = powerset_doctrine(bundled_sets());
  auto idm = vertical_modality(identity_adjunction(pw));
  CHECK(same_modal_tables(idm, identity_interior(pw)));

  auto q = lukasiewicz3_quantale();
  auto core = quantale_core(q);
  auto sets = quantale_sets();
  auto qd = quantale_doctrine(q, sets, core);
  // !alpha = iota . r . alpha, pointwise on Q^X.
  for (std::size_t x = 0; x < sets.sets.size(); ++x) {
    const auto n = sets.sets[x].size();
    for (std::size_t e = 0; e < qd.full->fiber[x]->size(); ++e) {
      auto d = power_digits(e, 3, n);
      for (auto& v : d) v = core.iota(core.r(v));
      CHECK(qd.bang.box[x](e) == power_index(d, 3));
    }
  }
  const auto one = *sets.cat->find_object("1");
  CHECK(qd.bang.box[one](1) == 0);  // !(constant 1/2) = constant 0

  auto conj = conjunction_modality(pw);
  auto sets3 = bundled_sets();
  for (std::size_t x = 0; x < sets3.sets.size(); ++x) {
    const std::size_t m = pw->fiber[x]->size();
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        const std::size_t meet = a & b;
        CHECK(conj.op.box[x](a * m + b) == meet * m + meet);
      }
  }
}

TEST_CASE("am_modality examples") {
  auto pw = powerset_doctrine(bundled_sets());
  auto am = am_modality(identity_adjunction(pw));
  CHECK(same_modal_tables(am.op, identity_interior(pw)));

  auto inst = chain2_instance();
  const auto& md = inst.modality;
  REQUIRE(check_interior(md.op).empty());
  for (std::size_t i = 0; i < inst.presheaves.objects.size(); ++i) {
    const auto& d = inst.presheaves.objects[i];
    for (std::size_t e = 0; e < md.doctrine->fiber[i]->size(); ++e)
      CHECK(md.op.box[i](e) == flatten(d, presheaf_box_oracle(d, unflatten(d, e))));
  }

  auto ql = quantale_doctrine(lukasiewicz3_quantale(), quantale_sets());
  CHECK(same_modal_tables(am_modality(ql.adjunction).op, vertical_modality(ql.adjunction)));
}

TEST_CASE("base_change_adjunction examples") {
  auto pw = powerset_doctrine(bundled_sets());
  auto id = identity_functor(pw->base);
  auto bc = base_change_adjunction(pw, id, id, identity_nat(id), identity_nat(id));
  CHECK(check_adjunction(bc).empty());
  CHECK(is_vertical(bc));
  for (const auto& m : bc.lam) CHECK(is_identity(m));
  for (const auto& m : bc.rho) CHECK(is_identity(m));

  // Terminal-object adjunction !: Sets -> One  -|  1: One -> Sets, with a doctrine over One.
  auto sets = bundled_sets();
  auto one = terminal_category();
  auto q = std::make_shared<Doctrine>();
  q->base = one;
  q->fiber = {powerset_poset({"a", "b"})};
  q->reindex = {identity_map(q->fiber[0])};
  Functor L{sets.cat, one, std::vector<std::size_t>(3, 0), std::vector<std::size_t>(sets.cat->num_arrows(), 0)};
  const auto t = *sets.cat->find_object("1");
  Functor R{one, sets.cat, {t}, {sets.cat->id(t)}};
  NatTransformation eta{identity_functor(sets.cat), compose_functors(R, L), {}};
  for (std::size_t x = 0; x < 3; ++x) eta.comp.push_back(sets.cat->hom(x, t).front());
  NatTransformation eps{compose_functors(L, R), identity_functor(one), {one->id(0)}};
  REQUIRE(adjunction_cat(L, R, eta, eps).empty());
  auto tb = base_change_adjunction(q, L, R, eta, eps);
  CHECK(check_adjunction(tb).empty());
  CHECK(check_interior(am_modality(tb).op).empty());

  auto inst = chain2_instance();
  const auto& a = inst.adjunction;
  auto pres = base_change_adjunction(a.Q, a.L, a.R, a.eta, a.eps);
  CHECK(check_adjunction(pres).empty());
}

TEST_CASE("factorize examples") {
  auto pw = powerset_doctrine(bundled_sets());
  auto fi = factorize(identity_adjunction(pw));
  CHECK(fi.left_composite_equal);
  CHECK(fi.right_composite_equal);
  CHECK(is_identity_one_arrow(fi.vertical.left()));
  CHECK(is_identity_one_arrow(fi.base_change.right()));

  auto inst = chain2_instance();
  auto fp = factorize(inst.adjunction);
  CHECK(check_adjunction(fp.vertical).empty());
  CHECK(check_adjunction(fp.base_change).empty());
  CHECK(fp.left_composite_equal);
  CHECK(fp.right_composite_equal);

  auto ql = quantale_doctrine(lukasiewicz3_quantale(), quantale_sets());
  auto fq = factorize(ql.adjunction);
  CHECK(is_identity_one_arrow(fq.base_change.left()));
  CHECK(is_identity_one_arrow(fq.base_change.right()));
  CHECK(is_identity_nat(fq.base_change.eta));
}

TEST_CASE("factorize2_report examples") {
  auto pw = powerset_doctrine(bundled_sets());
  auto ri = factorize2_report(identity_adjunction(pw));
  CHECK(ri.ok());

  auto ql = quantale_doctrine(lukasiewicz3_quantale(), quantale_sets());
  auto rq = factorize2_report(ql.adjunction);
  CHECK(rq.ok());
  // Stable elements of bang over the 2-element set: functions into {0,1}.
  auto st = stable_subdoctrine(am_modality(ql.adjunction).op);
  const auto two = *quantale_sets().cat->find_object("2");
  CHECK(st.doctrine->fiber[two]->size() == 4);
  for (const auto& o : rq.objects) CHECK(o.lambda_surjective);

  auto inst = chain2_instance();
  auto rp = factorize2_report(inst.adjunction);
  CHECK(rp.ok());
  for (const auto& o : rp.objects) CHECK_FALSE(o.injectivity_witnesses.empty());
}

TEST_CASE("triviality_checks examples") {
  auto pw = powerset_doctrine(bundled_sets());
  for (const auto& o : triviality_checks(identity_adjunction(pw))) {
    CHECK(o.lr_identity);
    CHECK(o.rl_identity);
  }

  auto sets = quantale_sets();
  auto ql = quantale_doctrine(lukasiewicz3_quantale(), sets);
  for (const auto& o : triviality_checks(ql.adjunction)) {
    CAPTURE(o.object);
    CHECK(o.rl_identity);
    CHECK(o.lam_injective);
    CHECK(o.lr_identity == (o.object == "0"));
    CHECK(o.first_biconditional());
    CHECK(o.second_biconditional());
  }

  auto planted = ql.adjunction;
  for (std::size_t x = 0; x < planted.rho.size(); ++x)
    planted.rho[x] = constant_map(planted.rho[x].src(), planted.rho[x].dst(), 0);
  CHECK_THROWS_AS(triviality_checks(planted), ModelError);
}

TEST_CASE("adjunction morphisms and AM") {
  auto ql = quantale_doctrine(lukasiewicz3_quantale(), quantale_sets());
  const auto& A = ql.adjunction;
  auto idm = identity_adj_morphism(A);
  CHECK(check_adj_morphism(idm).empty());
  auto amid = am_functor(idm);
  CHECK(is_identity_one_arrow(amid));

  auto nab = nabla(A);
  CHECK(check_adj_morphism(nab).empty());
  auto am_a = am_modality(nab.A);
  auto am_b = am_modality(nab.B);
  auto amn = am_functor(nab, am_a, am_b);
  CHECK(check_one_arrow(amn).empty());
  CHECK(check_modal_one_arrow(amn, am_a.op, am_b.op).empty());

  // AM distributes over composition.
  auto nn = nabla(nab.A);
  auto comp = compose_adj_morphisms(nab, nn);
  CHECK(check_adj_morphism(comp).empty());
  CHECK(same_one_arrow(am_functor(comp), compose_one_arrows(am_functor(nab), am_functor(nn))));
  CHECK(same_one_arrow(am_functor(compose_adj_morphisms(idm, nab)), am_functor(nab)));

  // Broken theta: component at 2 replaced by a swap.
  auto broken = idm;
  const auto& C = *A.P->base;
  const auto two = *C.find_object("2");
  for (auto a : C.hom(two, two))
    if (C.keys()[a] == std::vector<std::size_t>{1, 0}) broken.theta.comp[two] = a;
  auto v = check_adj_morphism(broken);
  REQUIRE_FALSE(v.empty());
  bool named = false;
  for (const auto& x : v) named = named || x.witness.find("2") != std::string::npos;
  CHECK(named);

  AdjTwoCell cell{idm, idm, identity_two_arrow(idm.Ff), identity_two_arrow(idm.Gg)};
  CHECK(check_adj_two_cell(cell).empty());
  auto am2 = am_functor_2cell(cell);
  CHECK(check_two_arrow(am2).empty());
}

TEST_CASE("bundled adjunction invariants") {
  for (const auto& n : bundled_adjunctions()) {
    CAPTURE(n.name);
    const auto& a = n.adjunction;
    REQUIRE(check_adjunction(a).empty());
    auto am = am_modality(a);
    CHECK(check_interior(am.op).empty());
    auto f = factorize(a);
    CHECK(check_adjunction(f.vertical).empty());
    CHECK(check_adjunction(f.base_change).empty());
    CHECK(f.left_composite_equal);
    CHECK(f.right_composite_equal);
    CHECK(same_modal_tables(vertical_modality(f.vertical), am.op));
    auto r2 = factorize2_report(a);
    CHECK(r2.ok());
    CHECK(r2.box_identity_on_stable);
    if (is_vertical(a)) {
      CHECK(fiberwise_galois(a).empty());
      CHECK(same_modal_tables(vertical_modality(a), am.op));
      for (const auto& o : triviality_checks(a)) {
        CHECK(o.lrl_equals_l);
        CHECK(o.rlr_equals_r);
        CHECK(o.first_biconditional());
        CHECK(o.second_biconditional());
      }
    }
  }
}

TEST_CASE("random vertical adjunctions") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 50; ++k) {
    auto a = random_vertical_adjunction(rng, 16);
    for (const auto& f : a.P->fiber) CHECK(f->size() <= 16);
    for (const auto& f : a.Q->fiber) CHECK(f->size() <= 16);
    REQUIRE(check_adjunction(a).empty());
    CHECK(fiberwise_galois(a).empty());
    auto am = am_modality(a);
    CHECK(check_interior(am.op).empty());
    CHECK(same_modal_tables(am.op, vertical_modality(a)));
    for (const auto& o : triviality_checks(a)) {
      CHECK(o.lrl_equals_l);
      CHECK(o.rlr_equals_r);
      CHECK(o.first_biconditional());
      CHECK(o.second_biconditional());
    }
  }
}
