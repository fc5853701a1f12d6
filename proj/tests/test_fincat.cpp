#include "doctest.h"
#include "modaldoc/fincat.hpp"
#include "test_util.hpp"

using namespace modaldoc;

namespace {

CategoryData z2_data() {
  CategoryData d;
  d.objects = {"*"};
  d.arrows = {{"e", 0, 0}, {"s", 0, 0}};
  d.identities = {"e"};
  d.compose = {{"s", "s", "e"}};
  return d;
}

CatPtr chain3() { return poset_category(*chain_poset({"a", "b", "c"})); }

// Functor between poset categories from an object map.
Functor poset_functor(const CatPtr& src, const CatPtr& dst, std::vector<std::size_t> obj) {
  Functor f{src, dst, obj, {}};
  for (std::size_t a = 0; a < src->num_arrows(); ++a) {
    const auto& h = dst->hom(obj[src->src(a)], obj[src->dst(a)]);
    f.arr.push_back(h.empty() ? 0 : h.front());
  }
  return f;
}

NatTransformation poset_nat(const Functor& s, const Functor& d) {
  NatTransformation t{s, d, {}};
  for (std::size_t o = 0; o < s.src->num_objects(); ++o) {
    const auto& h = s.dst->hom(s.obj[o], d.obj[o]);
    REQUIRE_FALSE(h.empty());
    t.comp.push_back(h.front());
  }
  return t;
}

}  // namespace

TEST_CASE("check_category examples") {
  auto disc = check_category({{"x", "y"}, {}, {}, {}});
  REQUIRE(disc.ok());
  CHECK((*disc.value)->num_arrows() == 2);

  auto z2 = check_category(z2_data());
  REQUIRE(z2.ok());
  const auto& c = **z2.value;
  auto e = *c.find_arrow("e"), s = *c.find_arrow("s");
  CHECK(c.compose(s, s) == e);
  int triples = 0;
  for (auto f : {e, s})
    for (auto g : {e, s})
      for (auto h : {e, s}) {
        CHECK(c.compose(h, c.compose(g, f)) == c.compose(c.compose(h, g), f));
        ++triples;
      }
  CHECK(triples == 8);

  // Planted failure: a three-element monoid {e,x,y} with x.x = y, y.x = x, x.y = x, y.y = y.
  CategoryData bad;
  bad.objects = {"*"};
  bad.arrows = {{"e", 0, 0}, {"x", 0, 0}, {"y", 0, 0}};
  bad.identities = {"e"};
  bad.compose = {{"x", "x", "y"}, {"y", "x", "x"}, {"x", "y", "x"}, {"y", "y", "x"}};
  auto r = check_category(bad);
  CHECK_FALSE(r.ok());
  CHECK(has_law(r.violations, "associativity"));

  CategoryData dangling;
  dangling.objects = {"x"};
  dangling.arrows = {{"f", 0, 3}};
  CHECK_THROWS_AS(check_category(dangling), ModelError);
}

TEST_CASE("hom-set sizes agree with arrow filtering") {
  for (const auto& c : {chain3(), *check_category(z2_data()).value, discrete_category({"p", "q"}),
                        poset_category(*powerset_poset({"a", "b"}))}) {
    CHECK(check_category_laws(*c).empty());
    for (std::size_t x = 0; x < c->num_objects(); ++x)
      for (std::size_t y = 0; y < c->num_objects(); ++y) {
        std::size_t n = 0;
        for (std::size_t a = 0; a < c->num_arrows(); ++a) n += c->src(a) == x && c->dst(a) == y;
        CHECK(c->hom(x, y).size() == n);
      }
  }
}

TEST_CASE("check_functor examples") {
  auto c = chain3();
  CHECK(check_functor(identity_functor(c)).empty());
  CHECK(check_functor(constant_functor(c, c, 1)).empty());

  auto z2 = *check_category(z2_data()).value;
  auto s = *z2->find_arrow("s"), e = *z2->find_arrow("e");
  Functor bad{z2, z2, {0}, {e, e}};
  bad.arr[e] = s;  // identity sent to a non-identity
  CHECK(has_law(check_functor(bad), "identity"));

  // Breaks composition: s goes to an idempotent z, but s.s = e.
  CategoryData m;
  m.objects = {"*"};
  m.arrows = {{"e", 0, 0}, {"z", 0, 0}};
  m.identities = {"e"};
  m.compose = {{"z", "z", "z"}};
  auto mon = *check_category(m).value;
  Functor f{z2, mon, {0}, {0, 0}};
  f.arr[e] = *mon->find_arrow("e");
  f.arr[s] = *mon->find_arrow("z");
  auto v = check_functor(f);
  REQUIRE(has_law(v, "composition"));
  CHECK(v.front().witness == "(s,s)");
}

TEST_CASE("functor composition is associative and unital") {
  auto c = chain3();
  auto p = poset_category(*powerset_poset({"a", "b"}));
  auto f = poset_functor(c, p, {0, 1, 3});
  auto g = poset_functor(p, c, {0, 1, 1, 2});
  auto h = poset_functor(c, c, {1, 1, 2});
  CHECK(check_functor(f).empty());
  CHECK(check_functor(g).empty());
  CHECK(compose_functors(h, compose_functors(g, f)) == compose_functors(compose_functors(h, g), f));
  CHECK(compose_functors(identity_functor(p), f) == f);
  CHECK(compose_functors(f, identity_functor(c)) == f);
}

TEST_CASE("check_nat examples") {
  auto c = chain3();
  auto id = identity_functor(c);
  CHECK(check_nat(identity_nat(id)).empty());

  auto up = poset_functor(c, c, {1, 2, 2});
  auto theta = poset_nat(id, up);
  CHECK(check_nat(theta).empty());
  auto k = poset_functor(c, c, {0, 0, 1});
  CHECK(check_nat(whisker_right(theta, k)).empty());
  CHECK(check_nat(whisker_left(up, theta)).empty());

  // Left-zero monoid {e,a,b}: u.v = u for u in {a,b}; id => id with component a is not natural.
  CategoryData lz;
  lz.objects = {"*"};
  lz.arrows = {{"e", 0, 0}, {"a", 0, 0}, {"b", 0, 0}};
  lz.identities = {"e"};
  lz.compose = {{"a", "a", "a"}, {"a", "b", "a"}, {"b", "a", "b"}, {"b", "b", "b"}};
  auto m = *check_category(lz).value;
  auto mid = identity_functor(m);
  CHECK(check_nat(identity_nat(mid)).empty());
  NatTransformation bad{mid, mid, {*m->find_arrow("a")}};
  auto v = check_nat(bad);
  REQUIRE(has_law(v, "naturality"));
  CHECK(v.front().witness == "b");
}

TEST_CASE("adjunction_cat examples") {
  auto c = chain3();
  auto id = identity_functor(c);
  CHECK(adjunction_cat(id, id, identity_nat(id), identity_nat(id)).empty());

  // L -| i with i the inclusion of the top object of a 2-chain.
  auto two = poset_category(*chain_poset({"a", "b"}));
  auto sub = full_subcategory(two, {1});
  Functor L{two, sub.cat, {0, 0}, {}};
  for (std::size_t a = 0; a < two->num_arrows(); ++a) L.arr.push_back(sub.cat->id(0));
  CHECK(check_functor(L).empty());
  auto il = compose_functors(sub.inclusion, L);
  auto eta = poset_nat(identity_functor(two), il);
  auto eps = identity_nat(identity_functor(sub.cat));
  eps.src = compose_functors(L, sub.inclusion);
  CHECK(adjunction_cat(L, sub.inclusion, eta, eps).empty());

  // L -| i for the top of a 3-chain, then a unit component of the wrong type.
  auto r3 = full_subcategory(c, {2});
  Functor L3{c, r3.cat, {0, 0, 0}, {}};
  for (std::size_t a = 0; a < c->num_arrows(); ++a) L3.arr.push_back(r3.cat->id(0));
  auto eta3 = poset_nat(identity_functor(c), compose_functors(r3.inclusion, L3));
  auto eps3 = identity_nat(identity_functor(r3.cat));
  eps3.src = compose_functors(L3, r3.inclusion);
  CHECK(adjunction_cat(L3, r3.inclusion, eta3, eps3).empty());
  auto broken = eta3;
  broken.comp[2] = *c->find_arrow("b<=c");
  auto v = adjunction_cat(L3, r3.inclusion, broken, eps3);
  CHECK_FALSE(v.empty());
}

TEST_CASE("coalgebra_category examples") {
  auto c = chain3();
  auto id = identity_functor(c);
  auto em = coalgebra_category(id, identity_nat(id), identity_nat(id));
  CHECK(em.cat->num_objects() == c->num_objects());
  for (std::size_t k = 0; k < em.carrier.size(); ++k) CHECK(c->is_identity(em.structure[k]));
  CHECK(em.cat->num_arrows() == c->num_arrows());

  // Constant comonad at the bottom object: only the bottom carries a coalgebra.
  auto k = constant_functor(c, c, 0);
  NatTransformation mu{k, compose_functors(k, k), std::vector<std::size_t>(3, c->id(0))};
  auto nu = poset_nat(k, id);
  CHECK(comonad_laws(k, mu, nu).empty());
  auto em2 = coalgebra_category(k, mu, nu);
  REQUIRE(em2.carrier.size() == 1);
  CHECK(em2.carrier[0] == 0);
  CHECK(check_functor(em2.forget).empty());

  // U is faithful: distinct coalgebra arrows have distinct underlying arrows.
  for (const auto* e : {&em, &em2})
    for (std::size_t a = 0; a < e->cat->num_arrows(); ++a)
      for (std::size_t b = a + 1; b < e->cat->num_arrows(); ++b)
        if (e->cat->src(a) == e->cat->src(b) && e->cat->dst(a) == e->cat->dst(b))
          CHECK(e->underlying[a] != e->underlying[b]);

  // On Z/2 with K = Id only c = e satisfies the counit square; c = s is excluded.
  auto z2 = *check_category(z2_data()).value;
  auto zid = identity_functor(z2);
  auto em3 = coalgebra_category(zid, identity_nat(zid), identity_nat(zid));
  REQUIRE(em3.carrier.size() == 1);
  CHECK(em3.structure[0] == *z2->find_arrow("e"));

  // Counit of the wrong type is rejected.
  auto kk = poset_functor(c, c, {1, 2, 2});
  NatTransformation mu2{kk, compose_functors(kk, kk), {}};
  for (std::size_t o = 0; o < 3; ++o) mu2.comp.push_back(c->hom(kk.obj[o], kk.obj[kk.obj[o]]).front());
  CHECK_THROWS_AS(coalgebra_category(kk, mu2, NatTransformation{kk, id, {c->id(0), c->id(1), c->id(2)}}),
                  ModelError);
}

TEST_CASE("opposite view swaps endpoints") {
  auto c = chain3();
  OppositeView op{c};
  auto ab = *c->find_arrow("a<=b"), bc = *c->find_arrow("b<=c");
  CHECK(op.src(ab) == 1);
  CHECK(op.dst(ab) == 0);
  CHECK(op.compose(ab, bc) == *c->find_arrow("a<=c"));
}
