#include <algorithm>
#include <random>

#include "doctest.h"
#include "modaldoc/temporal.hpp"
#include "test_util.hpp"

using namespace modaldoc;

namespace {

// Union of all post-fixed points of Psi.
Mask knaster_tarski(const FCoalgebra& c, LiftKind lift, Mask alpha) {
  Mask out = 0;
  for (Mask b = 0; b <= full_mask(c.states.size()); ++b)
    if ((b & ~psi(c, lift, alpha, b)) == 0) out |= b;
  return out;
}

FCoalgebra cycle(const std::string& name, std::size_t n) {
  FCoalgebra c{name, CoalgebraKind::Stream, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    c.states.push_back(name + std::to_string(i));
    c.step.push_back({(i + 1) % n});
  }
  return c;
}

const FCoalgebra kS1{"S1", CoalgebraKind::Stream, {"s0", "s1"}, {{1}, {1}}};
const FCoalgebra kM{"M", CoalgebraKind::Tree, {"s0", "s1", "s2"}, {{1, 2}, {1}, {}}};

}  // namespace

TEST_CASE("gfp_modality examples") {
  CHECK(gfp_modality(kS1, LiftKind::Identity, 0b11).value == 0b11);
  CHECK(gfp_modality(kS1, LiftKind::Identity, 0b01).value == 0);
  CHECK(gfp_modality(kM, LiftKind::Exists, 0b011).value == 0b011);
  CHECK(gfp_modality(kM, LiftKind::Forall, 0b011).value == 0b010);  // s0 reaches s2
  CHECK(gfp_modality(kM, LiftKind::Forall, 0b110).value == 0b110);
  // A leaf fails the existential lift.
  CHECK(gfp_modality(kM, LiftKind::Exists, 0b111).value == 0b011);
  CHECK_THROWS_AS(gfp_modality(kS1, LiftKind::Forall, 0b01), ModelError);
  CHECK_THROWS_AS(gfp_modality(kS1, LiftKind::Identity, 0b100), ModelError);

  CHECK(lift_holds(LiftKind::Forall, {}, 0));
  CHECK_FALSE(lift_holds(LiftKind::Exists, {}, 0b111));
}

TEST_CASE("oracle examples") {
  FCoalgebra loop{"F", CoalgebraKind::Stream, {"x"}, {{0}}};
  CHECK(g_oracle(loop, 0b1) == 0b1);
  auto c3 = cycle("c", 3);
  CHECK(g_oracle(c3, 0) == 0);
  CHECK(g_oracle(c3, 0b011) == 0);
  CHECK(g_oracle(c3, 0b111) == 0b111);

  FCoalgebra leaf{"L", CoalgebraKind::Tree, {"l"}, {{}}};
  CHECK(ag_oracle(leaf, 0b1) == 0b1);
  CHECK(ag_oracle(kM, 0b111) == 0b111);
  CHECK(ag_oracle(kM, 0b011) == 0b010);  // s0 reaches s2

  FCoalgebra self{"T", CoalgebraKind::Tree, {"t"}, {{0}}};
  CHECK(eg_oracle(self, 0b1) == 0b1);
  CHECK(eg_oracle(kM, 0) == 0);
  CHECK(eg_oracle(kM, 0b011) == 0b011);

  CHECK(temporal_oracle(kS1, TemporalOp::G, 0b10) == 0b10);
  CHECK_THROWS_AS(g_oracle(kM, 0b1), ModelError);
  CHECK(parse_temporal_op("EG") == TemporalOp::EG);
  CHECK_THROWS_AS(parse_temporal_op("AF"), ModelError);
}

TEST_CASE("exhaustive oracle agreement and properties") {
  std::mt19937_64 rng(5);
  const TemporalOp ops[] = {TemporalOp::G, TemporalOp::AG, TemporalOp::EG};
  for (int k = 0; k < 60; ++k) {
    auto op = ops[k % 3];
    auto c = random_coalgebra(rng, kind_of(op), 5, "c" + std::to_string(k));
    REQUIRE(check_coalgebra(c).empty());
    const auto n = c.states.size();
    const Mask all = full_mask(n);
    const auto lift = lift_of(op);
    for (Mask a = 0; a <= all; ++a) {
      auto r = gfp_modality(c, lift, a);
      CHECK(r.value == temporal_oracle(c, op, a));
      CHECK(r.value == knaster_tarski(c, lift, a));
      CHECK(r.iterations <= n + 1);
      CHECK((r.value & ~a) == 0);
      CHECK(gfp_modality(c, lift, r.value).value == r.value);
      for (Mask b = a;; b = (b + 1) | a) {
        CHECK((r.value & ~gfp_modality(c, lift, b).value) == 0);
        if (b == all) break;
      }
    }
  }
}

TEST_CASE("homomorphisms and naturality") {
  auto c4 = cycle("q", 4);
  auto c2 = cycle("p", 2);
  auto hs = homomorphisms(c4, c2);
  CHECK(hs.size() == 2);  // x mod 2 and its shift
  CHECK(std::find(hs.begin(), hs.end(), std::vector<std::size_t>{0, 1, 0, 1}) != hs.end());
  CHECK(homomorphisms(c2, c4).empty());
  CHECK(homomorphisms(kS1, kM).empty());

  auto td = temporal_doctrine({c4, c2}, TemporalOp::G);
  CHECK(check_doctrine(*td.modality.doctrine).empty());
  CHECK(check_interior(td.modality).empty());

  // h^-1(box a) == box(h^-1 a), exhaustively.
  for (const auto& h : hs)
    for (Mask a = 0; a < 4; ++a)
      CHECK(preimage(h, gfp_modality(c2, LiftKind::Identity, a).value) ==
            gfp_modality(c4, LiftKind::Identity, preimage(h, a)).value);

  auto single = temporal_doctrine({kM}, TemporalOp::AG);
  CHECK(single.modality.doctrine->base->num_arrows() == 1);
  CHECK(check_interior(single.modality).empty());

  CHECK_THROWS_AS(temporal_doctrine({kS1}, TemporalOp::EG), ModelError);
  FCoalgebra broken{"B", CoalgebraKind::Stream, {"b"}, {{3}}};
  CHECK_FALSE(check_coalgebra(broken).empty());
  CHECK_THROWS_AS(temporal_doctrine({broken}, TemporalOp::G), ModelError);
}

TEST_CASE("random suite") {
  auto r = temporal_random_suite(7);
  CHECK(r.coalgebras == 100);
  CHECK(r.ok());
  CHECK(r.mismatches == 0);
  CHECK(r.iteration_overruns == 0);
  CHECK(r.max_iterations <= 9);
  auto again = temporal_random_suite(7);
  CHECK(again.queries == r.queries);
  CHECK(again.max_iterations == r.max_iterations);
}
