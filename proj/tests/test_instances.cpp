#include "doctest.h"
#include "modaldoc/bundled.hpp"
#include "modaldoc/instances.hpp"
#include "test_util.hpp"

using namespace modaldoc;

namespace {

KripkeFrame chain2() { return bundled_frames()[0].frame; }

std::size_t index_of(const FinPoset& p, const std::string& name) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.name(i) == name) return i;
  FAIL("no element " << name);
  return 0;
}

}  // namespace

TEST_CASE("finite sets") {
  auto sets = quantale_sets();
  const auto& C = *sets.cat;
  // |hom(X,Y)| = |Y|^|X|, with 0^0 = 1.
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) {
      std::size_t want = 1;
      for (std::size_t k = 0; k < sets.sets[x].size(); ++k) want *= sets.sets[y].size();
      CHECK(C.hom(x, y).size() == want);
    }
  CHECK(all_functions(2, 2) == std::vector<std::vector<std::size_t>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(preimage({1, 0, 1}, 0b10) == 0b101);

  auto pw = powerset_doctrine(sets);
  CHECK(check_doctrine(*pw).empty());
  CHECK(pw->fiber[0]->size() == 1);  // pw of the empty set
  auto sub = subobject_doctrine_finset(sets);
  CHECK(check_doctrine(*sub).empty());
  for (std::size_t x = 0; x < 4; ++x) CHECK(sub->fiber[x]->size() == pw->fiber[x]->size());
  for (std::size_t a = 0; a < C.num_arrows(); ++a) CHECK(sub->reindex[a].graph() == pw->reindex[a].graph());
}

TEST_CASE("Kripke box") {
  auto f = chain2();
  CHECK(kripke_box(f, 0b10) == 0b10);  // A = {w2}
  CHECK(kripke_box(f, 0b01) == 0b00);
  CHECK(kripke_box(f, 0b11) == 0b11);
  CHECK_THROWS_AS(kripke_box(f, 0b100), ModelError);
  CHECK_THROWS_AS(make_frame({"w"}, {{"w", "v"}}), ModelError);

  // Pointwise on pw(W)^X.
  auto sets = bundled_sets();
  for (const auto& nf : bundled_frames()) {
    auto op = kripke_doctrine(nf.frame, sets);
    const std::size_t b = std::size_t{1} << nf.frame.worlds.size();
    for (std::size_t x = 0; x < 3; ++x) {
      const auto n = sets.sets[x].size();
      for (std::size_t e = 0; e < op.doctrine->fiber[x]->size(); ++e) {
        auto d = power_digits(e, b, n);
        for (auto& v : d) v = kripke_box(nf.frame, v);
        CHECK(op.box[x](e) == power_index(d, b));
      }
    }
  }
}

TEST_CASE("Fam instance") {
  auto f = chain2();
  auto fams = bundled_families(f);
  for (const auto& x : fams) CHECK(is_increasing(f, x));
  auto fd = fam_doctrine(f, fams);
  CHECK(check_interior(fd.op).empty());
  for (std::size_t i = 0; i < fams.size(); ++i) {
    const auto& x = fams[i];
    for (std::size_t e = 0; e < fd.elements[i].size(); ++e) {
      const auto& a = fd.elements[i][e];
      Subfamily want{a.carrier, {a.parts[0] & a.parts[1] & x.parts[0], a.parts[1] & x.parts[1]}};
      CHECK(fd.op.box[i](e) == fd.index(i, want));
    }
  }
  // X = ({a},{a,b}) has 4 * ... subfamilies: count by brute force.
  std::size_t count = 0;
  for (Mask c = 0; c < 4; ++c)
    for (Mask p = 0; p < 4; ++p)
      for (Mask q = 0; q < 4; ++q)
        if (!(p & ~(c & fams[0].parts[0])) && !(q & ~(c & fams[0].parts[1]))) ++count;
  CHECK(fd.elements[0].size() == count);
  Subfamily ex{0b11, {0b01, 0b10}};
  CHECK(subfamily_name(fams[0], fam_box(f, fams[0], ex)) == "<{a,b}|{};{b}>");

  // A decreasing family breaks naturality.
  std::vector<IndexedFamily> bad{{"N", {"a"}, {0b1, 0b0}}, {"Y", {"c"}, {0b1, 0b1}}};
  CHECK_FALSE(is_increasing(f, bad[0]));
  auto bd = fam_doctrine(f, bad);
  CHECK(has_law(check_interior(bd.op), "naturality"));

  std::vector<IndexedFamily> outside{{"O", {"a"}, {0b10, 0b1}}};
  CHECK_THROWS_AS(fam_doctrine(f, outside), ModelError);

  auto cf = constant_family_arrow(f, bundled_sets());
  CHECK(check_one_arrow(cf.arrow).empty());
  CHECK(check_interior(cf.dst.op).empty());
}

TEST_CASE("topological instance") {
  auto sp = bundled_spaces();
  const auto& t = sp[3];
  CHECK(check_space(t).empty());
  CHECK(t.interior(0b010) == 0b000);
  CHECK(t.interior(0b101) == 0b001);
  CHECK(t.interior(0b011) == 0b011);
  auto s = sierpinski_space();
  CHECK(s.interior(0b01) == 0);  // {bot}
  CHECK(s.interior(0b10) == 0b10);

  CHECK_FALSE(check_space(FiniteTopSpace{"B", {"p", "q"}, {0b00, 0b01}}).empty());
  CHECK_THROWS_AS(topological_doctrine({FiniteTopSpace{"B", {"p", "q"}, {0b00, 0b01}}}), ModelError);

  // The identity from discrete to indiscrete is continuous but not open.
  const auto& d = sp[1];
  const auto& i = sp[2];
  CHECK(continuous(d, i, {0, 1}));
  CHECK_FALSE(open_map(d, i, {0, 1}));
  CHECK_FALSE(interior_commutes(d, i, {0, 1}));

  auto td = topological_doctrine(sp);
  CHECK(check_interior(td.op).empty());
  // Arrows are exactly the open continuous maps, counted by brute force.
  for (std::size_t a = 0; a < sp.size(); ++a)
    for (std::size_t b = 0; b < sp.size(); ++b) {
      std::size_t want = 0;
      for (const auto& fn : all_functions(sp[a].points.size(), sp[b].points.size()))
        if (continuous(sp[a], sp[b], fn) && open_map(sp[a], sp[b], fn)) {
          ++want;
          CHECK(interior_commutes(sp[a], sp[b], fn));
        }
      CHECK(td.base->hom(a, b).size() == want);
    }
  CHECK(td.base->hom(1, 2).empty());
}

TEST_CASE("quantales") {
  auto l = lukasiewicz3_quantale();
  CHECK(l.residual(1, 0) == 1);  // 1/2 -o 0 = 1/2
  CHECK(l.residual(2, 1) == 1);
  CHECK(l.residual(0, 0) == 2);
  for (const auto& nq : bundled_quantales()) {
    const auto& q = nq.q;
    for (std::size_t a = 0; a < q.size(); ++a)
      for (std::size_t b = 0; b < q.size(); ++b)
        for (std::size_t z = 0; z < q.size(); ++z)
          CHECK(q.carrier()->leq(q.tensor(a, z), b) == q.carrier()->leq(z, q.residual(a, b)));
  }

  auto core = quantale_core(l);
  CHECK(core.elements == std::vector<std::size_t>{0, 2});
  CHECK(quantale_core(boolean_quantale()).elements == std::vector<std::size_t>{0, 1});
  for (std::size_t x = 0; x < 3; ++x) {
    CHECK(core.iota(core.r(x)) <= x);
    CHECK(core.r(core.iota(core.r(x))) == core.r(x));
  }

  auto sets = quantale_sets();
  auto qd = quantale_doctrine(l, sets);
  CHECK(check_interior(qd.bang).empty());
  const auto empty = *sets.cat->find_object("0");
  CHECK(qd.full->fiber[empty]->size() == 1);
  CHECK(is_identity(qd.bang.box[empty]));

  auto ops = quantale_monoid_ops(l, 2);
  CHECK(ops.n == 9);
  CHECK(ops.e == power_index({2, 2}, 3));
  CHECK(ops.mul(power_index({1, 2}, 3), power_index({1, 1}, 3)) == power_index({0, 1}, 3));

  auto rep = bang_law_suite(l, sets, qd);
  CHECK(rep.ok());
  for (std::size_t k = 0; k < 4; ++k) CHECK(rep.checked[k] > 0);
  auto fake = fake_quantale_core(l);
  CHECK(fake.elements.size() == 3);
  auto fd = quantale_doctrine(l, sets, fake);
  auto frep = bang_law_suite(l, sets, fd);
  CHECK(has_law(frep.violations, "(2)"));
  CHECK_FALSE(has_law(frep.violations, "(1)"));

  // Subsets of Z/2.
  auto pm = powerset_monoid_quantale({"e", "s"}, {0, 1, 1, 0}, 0);
  CHECK(pm.size() == 4);
  CHECK(pm.unit() == 0b01);
  CHECK(pm.tensor(0b10, 0b10) == 0b01);
  CHECK(pm.tensor(0b11, 0b10) == 0b11);
  CHECK(pm.tensor(0b00, 0b11) == 0b00);
  CHECK(check_interior(quantale_doctrine(pm, quantale_sets()).bang).empty());

  // Non-commutative tensor on the three-chain.
  std::vector<std::size_t> t{0, 0, 0, 0, 1, 1, 0, 0, 2};
  CHECK_THROWS_AS(FiniteQuantale(FinLattice(chain_poset({"0", "1/2", "1"})), t, 2), ModelError);
  CHECK_THROWS_AS(powerset_monoid_quantale({"e"}, {0, 0}, 0), ModelError);
}

TEST_CASE("presheaves") {
  auto f = chain2();
  auto base = frame_base(f);
  const auto w1 = *base->find_object("w1");
  const auto w2 = *base->find_object("w2");
  CHECK(base->hom(w2, w1).size() == 1);
  CHECK(base->hom(w1, w2).empty());

  auto k = constant_presheaf(base, "K", {"a", "b"});
  CHECK(check_presheaf(k).empty());
  CHECK(presheaf_box(k, {0b01, 0b11}) == Family{0b01, 0b11});
  CHECK(presheaf_box(k, {0b11, 0b01}) == Family{0b01, 0b01});
  CHECK(is_subpresheaf(k, {0b01, 0b11}));
  CHECK_FALSE(is_subpresheaf(k, {0b11, 0b01}));

  auto bad = k;
  bad.act[base->hom(w2, w1).front()] = {0, 2};
  CHECK_THROWS_AS(check_presheaf(bad), ModelError);
  // On the 3-chain, swapping along the composite arrow breaks functoriality.
  auto b3 = frame_base(bundled_frames()[1].frame);
  auto swapped = constant_presheaf(b3, "K3", {"a", "b"});
  swapped.act[b3->hom(*b3->find_object("w3"), *b3->find_object("w1")).front()] = {1, 0};
  CHECK_FALSE(check_presheaf(swapped).empty());

  // Pullback formula against the union of subpresheaves, over every family.
  std::vector<FinPresheaf> all{k};
  for (const auto& d : chain2_presheaves(base)) all.push_back(d);
  auto base3 = frame_base(bundled_frames()[1].frame);
  for (const auto& d : chain3_presheaves(base3)) all.push_back(d);
  all.push_back(constant_presheaf(base3, "K3", {"a", "b"}));
  for (const auto& d : all) {
    CAPTURE(d.name);
    for (Mask m = 0; m <= full_mask(total_size(d)); ++m) {
      auto a = unflatten(d, m);
      CHECK(flatten(d, a) == m);
      CHECK(presheaf_box(d, a) == presheaf_box_oracle(d, a));
    }
  }

  // Right Kan extension: product over the arrows into each object.
  auto disc = chain2_presheaves(base)[0];
  auto inst = presheaf_instance(base, chain2_presheaves(base));
  auto r = right_kan_presheaf(restrict_to_discrete(disc, inst.discrete), base);
  CHECK(check_presheaf(r).empty());
  CHECK(r.at[w1].size() == 2);
  CHECK(r.at[w2].size() == 1);
  CHECK(presheaf_iso(r, disc).has_value());
  CHECK_FALSE(presheaf_iso(chain2_presheaves(base)[0], chain2_presheaves(base)[1]).has_value());
  CHECK(inst.added.empty());
  CHECK(check_adjunction(inst.adjunction).empty());

  // A two-element value at the upper world cannot be closed.
  CHECK_THROWS_AS(presheaf_instance(base, {k}), ModelError);

  // One world: the modality is the identity.
  auto one = frame_base(make_frame({"w"}, {{"w", "w"}}));
  auto solo = presheaf_instance(one, {constant_presheaf(one, "D", {"a", "b"})});
  CHECK(check_adjunction(solo.adjunction).empty());
  for (const auto& b : solo.modality.op.box) CHECK(is_identity(b));

  auto pbd = presheaf_box_doctrine(presheaf_category({k}));
  CHECK(check_interior(pbd).empty());
  auto sp = subpresheaf_doctrine(presheaf_category({k}));
  CHECK(sp->fiber[0]->size() == stable_elements(pbd, 0).size());
}

TEST_CASE("connectives") {
  auto sets = bundled_sets();
  auto pw = powerset_doctrine(sets);
  auto conj = conjunction_modality(pw);
  CHECK(check_adjunction(conj.adjunction).empty());
  CHECK(fiberwise_galois(conj.adjunction).empty());

  auto ps = product_sets();
  const auto two = *ps.cat->find_object("2");
  auto fa = forall_modality(ps, two);
  CHECK(check_adjunction(fa.adjunction).empty());
  CHECK(check_interior(fa.op).empty());
  // box S = {(y,x) | (y,x') in S for every x'}.
  const auto& pd = *fa.op.doctrine;
  for (std::size_t y = 0; y < pd.fiber.size(); ++y) {
    const std::size_t ny = pd.fiber[y]->size() == 4 ? 1 : 2;
    for (Mask s = 0; s < pd.fiber[y]->size(); ++s) {
      Mask want = 0;
      for (std::size_t yy = 0; yy < ny; ++yy)
        if ((s >> (2 * yy) & 3U) == 3U) want |= Mask{3} << (2 * yy);
      CHECK(fa.op.box[y](s) == want);
    }
  }
  CHECK(index_of(*pd.fiber[0], "{}") == 0);

  auto prods = finset_products(ps, two);
  REQUIRE(prods.size() == 2);
  CHECK(ps.sets[prods[1].product].size() == 4);
  CHECK(finset_products(quantale_sets(), 0).empty());
}
