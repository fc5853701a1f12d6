#include "modaldoc/suite.hpp"

#include <random>

#include "modaldoc/bundled.hpp"
#include "modaldoc/comonad.hpp"

namespace modaldoc {

namespace {

struct Tally {
  CriterionResult r;
  Tally(int id, std::string title) : r{id, std::move(title), true, {}} {}
  void fail(const std::string& w) {
    r.pass = false;
    r.details.push_back(w);
  }
  void fail(const std::string& who, const Violations& v) {
    for (const auto& x : v) fail(who + ": " + x.law + " " + x.witness);
  }
  void note(const std::string& s) { r.details.push_back(s); }
};

bool same_tables(const InteriorOp& a, const InteriorOp& b) {
  if (a.box.size() != b.box.size()) return false;
  for (std::size_t x = 0; x < a.box.size(); ++x)
    if (a.box[x].graph() != b.box[x].graph()) return false;
  return true;
}

SetCat singleton_sets() { return finset_category({"1"}, {{"*"}}); }

CriterionResult interior_laws(std::uint64_t) {
  Tally t(1, "interior-law suite");
  std::size_t n = 0;
  for (const auto& ni : bundled_interiors()) {
    ++n;
    t.fail(ni.name, check_interior(ni.op));
  }
  auto v = check_interior(kripke_doctrine(non_transitive_frame(), bundled_sets()));
  const Violation* four = nullptr;
  for (const auto& x : v)
    if (x.law == "4" && !four) four = &x;
  if (four)
    t.note("planted non-transitive frame fails 4 at " + four->witness);
  else
    t.fail("planted non-transitive frame passes axiom 4");
  t.note(std::to_string(n) + " bundled operators pass naturality, T, 4 and idempotence");
  return t.r;
}

CriterionResult adjunction_modality(std::uint64_t seed) {
  Tally t(2, "adjunction-to-modality coherence");
  std::size_t n = 0;
  auto one = [&](const std::string& name, const DoctrineAdjunction& a) {
    ++n;
    auto am = am_modality(a);
    t.fail(name, check_interior(am.op));
    if (is_vertical(a) && !same_tables(am.op, vertical_modality(a))) t.fail(name + ": AM differs from lambda.rho");
  };
  for (const auto& na : bundled_adjunctions()) one(na.name, na.adjunction);
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 50; ++k) {
    auto a = random_vertical_adjunction(rng, 16);
    const auto name = "random#" + std::to_string(k);
    for (const auto* d : {&a.P, &a.Q})
      for (const auto& f : (*d)->fiber)
        if (f->size() > 16) t.fail(name + ": fiber larger than 16");
    t.fail(name, check_adjunction(a));
    one(name, a);
  }
  t.note(std::to_string(n) + " adjunctions give interior operators");
  return t.r;
}

CriterionResult factorization(std::uint64_t) {
  Tally t(3, "factorization");
  std::size_t n = 0;
  for (const auto& na : bundled_adjunctions()) {
    ++n;
    auto f = factorize(na.adjunction);
    t.fail(na.name + " vertical", check_adjunction(f.vertical));
    t.fail(na.name + " base change", check_adjunction(f.base_change));
    if (!f.left_composite_equal) t.fail(na.name + ": left composite differs");
    if (!f.right_composite_equal) t.fail(na.name + ": right composite differs");
  }
  t.note(std::to_string(n) + " adjunctions factor exactly");
  return t.r;
}

CriterionResult factorization2(std::uint64_t) {
  Tally t(4, "factorization-2");
  std::size_t surj = 0, inj = 0;
  for (const auto& na : bundled_adjunctions()) {
    auto r = factorize2_report(na.adjunction);
    for (const auto& o : r.objects) {
      if (!o.lambda_lands_in_stable) t.fail(na.name + ": lambda leaves the stable fiber at " + o.object);
      if (!o.lambda_surjective) t.fail(na.name + ": lambda not surjective at " + o.object);
      if (!o.pullback_injective) t.fail(na.name + ": pullback not injective at " + o.object);
      surj += o.surjectivity_witnesses.size();
      inj += o.injectivity_witnesses.size();
    }
    if (!r.box_identity_on_stable) t.fail(na.name + ": box is not the identity on stable fibers");
    if (!r.ok()) t.fail(na.name + ": factorization squares or arrows fail");
  }
  t.note(std::to_string(surj) + " surjectivity and " + std::to_string(inj) + " injectivity witnesses");
  return t.r;
}

CriterionResult comonad_suite(std::uint64_t) {
  Tally t(5, "comonad suite");
  std::vector<std::pair<std::string, DoctrineComonad>> comonads;
  for (const auto& ni : bundled_interiors()) comonads.emplace_back("mc:" + ni.name, mc(ni.op));
  for (const auto& na : bundled_adjunctions()) comonads.emplace_back("cmd:" + na.name, cmd_of_adjunction(na.adjunction));
  for (const auto& [name, c] : comonads) {
    auto em = em_doctrine(c);
    t.fail(name, check_em_bundle(c, em));
    auto ea = em_adjunction(c, em);
    t.fail(name + " em_adjunction", check_adjunction(ea));
    if (!same_interior(cm_modality(c, em).op, am_modality(ea).op)) t.fail(name + ": CM differs from AM of EM");
  }

  auto ones = singleton_sets();
  std::vector<std::pair<std::string, InteriorOp>> small{{"identity", identity_interior(powerset_doctrine(ones))}};
  for (const auto& f : bundled_frames()) small.emplace_back("kripke:" + f.name, kripke_doctrine(f.frame, ones));
  small.emplace_back("topology:S", topological_doctrine({sierpinski_space()}).op);
  for (const auto& q : bundled_quantales()) small.emplace_back("bang:" + q.name, quantale_doctrine(q.q, ones).bang);
  small.emplace_back("temporal:G", temporal_doctrine({bundled_stream_coalgebras()[2]}, TemporalOp::G).modality);
  double largest = 0;
  for (const auto& [name, op] : small) {
    auto c = mc(op);
    auto em = em_doctrine(c);
    auto st = stable_subdoctrine(op);
    auto u = em_universal_factor(c, em, st.inclusion, identity_nat(st.inclusion.F));
    largest = std::max(largest, u.candidate_space);
    if (u.certification != Certification::Exhaustive) t.fail(name + ": candidate space too large to search");
    if (u.solutions != 1) t.fail(name + ": " + std::to_string(u.solutions) + " factorizations");
    if (!same_one_arrow(compose_one_arrows(em.forget, u.arrow), st.inclusion)) t.fail(name + ": factor does not commute");
  }
  t.note(std::to_string(comonads.size()) + " comonads; " + std::to_string(small.size()) +
         " unique factors, largest candidate space " + std::to_string(static_cast<long>(largest)));
  return t.r;
}

CriterionResult comparison(std::uint64_t) {
  Tally t(6, "modality comparison");
  std::size_t n = 0;
  for (const auto& na : bundled_adjunctions()) {
    if (na.name.rfind("quantale:", 0) != 0 && na.name.rfind("presheaf:", 0) != 0) continue;
    ++n;
    auto r = modality_comparison_check(na.adjunction);
    if (!r.tables_equal) t.fail(na.name + ": tables differ at " + join(r.mismatches, ","));
    if (!r.modal_arrow_valid) t.fail(na.name + ": comparison is not a modal 1-arrow");
  }
  t.note(std::to_string(n) + " quantale and presheaf instances agree");
  return t.r;
}

CriterionResult local_adjunction(std::uint64_t) {
  Tally t(7, "local adjunction");
  std::size_t n = 0, m = 0;
  for (const auto& na : bundled_adjunctions()) {
    ++n;
    auto r = local_adjunction_checks(na.adjunction);
    t.fail(na.name + " nabla", r.nabla_violations);
    if (!r.am_nabla_identity) t.fail(na.name + ": AM(nabla) is not the identity");
    if (!r.am_roundtrip_equal) t.fail(na.name + ": AM(MA(AM)) differs from AM");
  }
  for (const auto& ni : bundled_interiors()) {
    ++m;
    if (!local_adjunction_checks_modal(ni.op)) t.fail(ni.name + ": nabla at MA is not the identity");
  }
  t.note(std::to_string(n) + " adjunctions, " + std::to_string(m) + " interior operators");
  return t.r;
}

CriterionResult triviality(std::uint64_t) {
  Tally t(8, "triviality dichotomies");
  bool exhibited = false;
  std::size_t n = 0;
  for (const auto& na : bundled_vertical_adjunctions()) {
    for (const auto& o : triviality_checks(na.adjunction)) {
      ++n;
      const auto w = na.name + " at " + o.object;
      if (!o.lrl_equals_l) t.fail(w + ": lam.rho.lam != lam");
      if (!o.rlr_equals_r) t.fail(w + ": rho.lam.rho != rho");
      if (!o.first_biconditional()) t.fail(w + ": first biconditional fails");
      if (!o.second_biconditional()) t.fail(w + ": second biconditional fails");
      if (na.name == "quantale:lukasiewicz3" && o.rl_identity && !o.lr_identity && !exhibited) {
        exhibited = true;
        t.note("lukasiewicz3 at " + o.object + ": rho.lam = id, lam.rho != id");
      }
    }
  }
  if (!exhibited) t.fail("lukasiewicz3 does not separate the two identities");
  t.note(std::to_string(n) + " fibers checked");
  return t.r;
}

CriterionResult bang_laws(std::uint64_t) {
  Tally t(9, "bang laws");
  auto sets = quantale_sets();
  std::size_t checked = 0;
  for (const auto& q : bundled_quantales()) {
    auto rep = bang_law_suite(q.q, sets, quantale_doctrine(q.q, sets));
    for (auto c : rep.checked) checked += c;
    t.fail(q.name, rep.violations);
  }
  auto l = lukasiewicz3_quantale();
  auto fake = bang_law_suite(l, sets, quantale_doctrine(l, sets, fake_quantale_core(l)));
  const Violation* two = nullptr;
  for (const auto& v : fake.violations)
    if (v.law == "(2)" && !two) two = &v;
  if (two)
    t.note("fake core fails (2) at " + two->witness);
  else
    t.fail("fake core passes law (2)");
  t.note(std::to_string(checked) + " law instances hold");
  return t.r;
}

CriterionResult temporal(std::uint64_t seed) {
  Tally t(10, "temporal oracle equivalence");
  TemporalSuiteReport rep;
  std::mt19937_64 rng(seed);
  for (const auto& c : bundled_stream_coalgebras()) temporal_check(c, TemporalOp::G, rng, 64, rep);
  for (const auto& c : bundled_tree_coalgebras()) {
    temporal_check(c, TemporalOp::AG, rng, 64, rep);
    temporal_check(c, TemporalOp::EG, rng, 64, rep);
  }
  auto random = temporal_random_suite(seed, 100, 8);
  for (const auto* r : {&rep, &random})
    for (const auto& f : r->failures) t.fail(f);
  if (random.coalgebras != 100) t.fail("random suite ran " + std::to_string(random.coalgebras) + " coalgebras");
  t.note(std::to_string(rep.queries + random.queries) + " queries, at most " +
         std::to_string(std::max(rep.max_iterations, random.max_iterations)) + " iterations");
  return t.r;
}

CriterionResult presheaf_oracle(std::uint64_t) {
  Tally t(11, "presheaf modality oracle");
  auto base = frame_base(bundled_frames()[0].frame);
  auto inst = presheaf_instance(base, chain2_presheaves(base));
  std::vector<std::pair<FinPresheaf, InteriorOp>> cases;
  for (const auto& d : inst.presheaves.objects) cases.emplace_back(d, inst.modality.op);
  auto k = constant_presheaf(base, "K", {"a", "b"});
  cases.emplace_back(k, presheaf_box_doctrine(presheaf_category({k})));
  std::size_t families = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [d, op] = cases[i];
    const std::size_t x = i < inst.presheaves.objects.size() ? i : 0;
    std::vector<std::size_t> subs;
    for (Mask m = 0; m <= full_mask(total_size(d)); ++m) {
      ++families;
      auto a = unflatten(d, m);
      auto want = flatten(d, presheaf_box_oracle(d, a));
      if (flatten(d, presheaf_box(d, a)) != want || op.box[x](m) != want)
        t.fail(d.name + ": box differs from the oracle at " + op.doctrine->fiber[x]->name(m));
      if (is_subpresheaf(d, a)) subs.push_back(m);
    }
    if (stable_elements(op, x) != subs) t.fail(d.name + ": stable elements are not the subpresheaves");
  }
  t.note(std::to_string(families) + " families over " + std::to_string(cases.size()) + " presheaves");
  return t.r;
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> all{
      {1, "interior-law suite", interior_laws},
      {2, "adjunction-to-modality coherence", adjunction_modality},
      {3, "factorization", factorization},
      {4, "factorization-2", factorization2},
      {5, "comonad suite", comonad_suite},
      {6, "modality comparison", comparison},
      {7, "local adjunction", local_adjunction},
      {8, "triviality dichotomies", triviality},
      {9, "bang laws", bang_laws},
      {10, "temporal oracle equivalence", temporal},
      {11, "presheaf modality oracle", presheaf_oracle},
  };
  return all;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (const auto& c : acceptance_criteria()) {
    try {
      out.push_back(c.run(seed));
    } catch (const ModelError& e) {
      out.push_back({c.id, c.title, false, {std::string("error: ") + e.what()}});
    }
  }
  return out;
}

}  // namespace modaldoc
