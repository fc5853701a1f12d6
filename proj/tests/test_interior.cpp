#include "doctest.h"
#include "modaldoc/bundled.hpp"
#include "modaldoc/interior.hpp"
#include "test_util.hpp"

using namespace modaldoc;

TEST_CASE("check_interior examples") {
  auto sets = bundled_sets();
  CHECK(check_interior(identity_interior(powerset_doctrine(sets))).empty());
  for (const auto& f : bundled_frames()) {
    CAPTURE(f.name);
    CHECK(check_interior(kripke_doctrine(f.frame, sets)).empty());
  }

  auto nt = non_transitive_frame();
  CHECK_FALSE(nt.transitive());
  // Brute force: some A with j(A) not inside j(j(A)).
  Mask witness = 0;
  bool found = false;
  for (Mask a = 0; a < 8 && !found; ++a)
    if (kripke_box(nt, a) & ~kripke_box(nt, kripke_box(nt, a))) {
      witness = a;
      found = true;
    }
  REQUIRE(found);
  CHECK(witness == 0b011);  // A = {1,2}: j(A) = {1}, j(j(A)) = {}
  auto v = check_interior(kripke_doctrine(nt, sets));
  REQUIRE(has_law(v, "4"));
  CHECK_FALSE(has_law(v, "T"));
  bool names = false;
  for (const auto& x : v) names = names || (x.law == "4" && x.witness == "1:[{1,2}]");
  CHECK(names);
}

TEST_CASE("stable_elements examples") {
  auto sets = bundled_sets();
  auto id = identity_interior(powerset_doctrine(sets));
  for (std::size_t x = 0; x < 3; ++x) CHECK(stable_elements(id, x).size() == id.doctrine->fiber[x]->size());

  auto top = topological_doctrine(bundled_spaces());
  for (std::size_t i = 0; i < top.spaces.size(); ++i) {
    std::vector<std::size_t> opens;
    for (Mask m = 0; m <= full_mask(top.spaces[i].points.size()); ++m)
      if (top.spaces[i].is_open(m)) opens.push_back(m);
    CHECK(stable_elements(top.op, i) == opens);
  }

  // At the singleton set the fiber is pw(W): stable sets are the R-up-closed ones.
  for (const auto& f : bundled_frames()) {
    auto op = kripke_doctrine(f.frame, sets);
    const auto one = *sets.cat->find_object("1");
    std::vector<std::size_t> want;
    for (Mask a = 0; a <= full_mask(f.frame.worlds.size()); ++a) {
      bool up = true;
      for (std::size_t w = 0; w < f.frame.worlds.size(); ++w)
        if ((a >> w & 1U) && (f.frame.succ[w] & ~a)) up = false;
      if (up) want.push_back(a);
    }
    CHECK(stable_elements(op, one) == want);
  }
}

TEST_CASE("stable_subdoctrine examples") {
  auto sets = bundled_sets();
  auto pw = powerset_doctrine(sets);
  auto s = stable_subdoctrine(identity_interior(pw));
  CHECK(same_doctrine(s.doctrine, pw));
  CHECK(is_identity_one_arrow(s.inclusion));

  auto top = topological_doctrine(bundled_spaces());
  auto st = stable_subdoctrine(top.op);
  CHECK(same_doctrine(st.doctrine, open_set_doctrine(top)));
  CHECK(check_one_arrow(st.inclusion).empty());
}

TEST_CASE("check_modal_one_arrow examples") {
  auto sets = bundled_sets();
  auto pw = powerset_doctrine(sets);
  auto id = identity_interior(pw);
  CHECK(check_modal_one_arrow(identity_one_arrow(pw), id, id).empty());

  auto top = topological_doctrine(bundled_spaces());
  auto u = forgetful_top_arrow(top);
  CHECK(check_one_arrow(u.arrow).empty());
  CHECK(check_modal_one_arrow(u.arrow, top.op, u.target).empty());

  auto f = bundled_frames()[0].frame;
  auto c = constant_family_arrow(f, sets);
  CHECK(check_modal_one_arrow(c.arrow, c.src, c.dst.op).empty());

  // The identity from <P, id> to <P, j_R> does not preserve the modality.
  auto kr = kripke_doctrine(f, sets);
  auto v = check_modal_one_arrow(identity_one_arrow(kr.doctrine), identity_interior(kr.doctrine), kr);
  CHECK(has_law(v, "modal"));
  CHECK_FALSE(has_law(v, "stability-equivalence"));
}

TEST_CASE("interior invariants on bundled operators") {
  for (const auto& n : bundled_interiors()) {
    CAPTURE(n.name);
    const auto& op = n.op;
    REQUIRE(check_interior(op).empty());
    for (std::size_t x = 0; x < op.box.size(); ++x) {
      auto img = image(op.box[x]);
      auto fix = stable_elements(op, x);
      CHECK(img == fix);
      for (auto e : fix) CHECK(op.box[x](e) == e);
    }
    auto s = stable_subdoctrine(op);
    CHECK(check_doctrine(*s.doctrine).empty());
    CHECK(check_one_arrow(s.inclusion).empty());
    CHECK(check_modal_one_arrow(s.inclusion, identity_interior(s.doctrine), op).empty());

    // Both forms of the modal condition agree, for a passing and a failing arrow.
    auto ida = identity_one_arrow(op.doctrine);
    auto idop = identity_interior(op.doctrine);
    CHECK(check_modal_one_arrow(ida, op, op).empty());
    CHECK(preserves_stability(ida, op, op));
    CHECK(check_modal_one_arrow(ida, op, idop).empty());
    CHECK(preserves_stability(ida, op, idop));
    bool moves = false;
    for (std::size_t x = 0; x < op.box.size(); ++x) moves = moves || !is_identity(op.box[x]);
    CHECK(check_modal_one_arrow(ida, idop, op).empty() == !moves);
    CHECK(preserves_stability(ida, idop, op) == !moves);
  }
}

TEST_CASE("bare poset operator over the one-object base") {
  auto p = chain_poset({"0", "1", "2"});
  auto d = std::make_shared<Doctrine>();
  d->base = terminal_category();
  d->fiber = {p};
  d->reindex = {identity_map(p)};
  InteriorOp op{d, {MonotoneMap(p, p, {0, 0, 2})}};
  CHECK(check_interior(op).empty());
  InteriorOp inflating{d, {MonotoneMap(p, p, {1, 1, 2})}};
  CHECK(has_law(check_interior(inflating), "T"));
}
