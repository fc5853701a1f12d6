#include "modaldoc/bundled.hpp"

#include "modaldoc/comonad.hpp"

namespace modaldoc {

SetCat bundled_sets() { return finset_category({"1", "2", "3"}, {{"*"}, {"p", "q"}, {"x", "y", "z"}}); }

SetCat quantale_sets() { return finset_category({"0", "1", "2", "3"}, {{}, {"*"}, {"p", "q"}, {"x", "y", "z"}}); }

SetCat product_sets() { return finset_category({"1", "2", "4"}, {{"*"}, {"p", "q"}, {"a", "b", "c", "d"}}); }

std::vector<NamedFrame> bundled_frames() {
  return {{"chain2", refl_trans_closure(make_frame({"w1", "w2"}, {{"w1", "w2"}}))},
          {"chain3", refl_trans_closure(make_frame({"w1", "w2", "w3"}, {{"w1", "w2"}, {"w2", "w3"}}))},
          {"fork", refl_trans_closure(make_frame({"w1", "w2", "w3"}, {{"w1", "w2"}, {"w1", "w3"}}))}};
}

KripkeFrame non_transitive_frame() {
  return make_frame({"1", "2", "3"}, {{"1", "1"}, {"2", "2"}, {"3", "3"}, {"1", "2"}, {"2", "3"}});
}

std::vector<IndexedFamily> bundled_families(const KripkeFrame& chain2) {
  if (chain2.worlds.size() != 2) throw ModelError("bundled families live over a two-world frame");
  return {{"X", {"a", "b"}, {0b01, 0b11}}, {"Y", {"c"}, {0b1, 0b1}}, {"Z", {"a", "b"}, {0b00, 0b01}}};
}

std::vector<FiniteTopSpace> bundled_spaces() {
  return {sierpinski_space("S"), discrete_space("D", {"p", "q"}), indiscrete_space("I", {"p", "q"}),
          FiniteTopSpace{"T", {"x", "y", "z"}, {0b000, 0b001, 0b011, 0b111}}};
}

std::vector<NamedQuantale> bundled_quantales() {
  return {{"boolean", boolean_quantale()}, {"lukasiewicz3", lukasiewicz3_quantale()}};
}

namespace {

// Presheaf with D(w) = values[w]; every non-identity arrow acts as the unique map into a singleton
// or, between equal sets, the identity.
FinPresheaf presheaf_from(const CatPtr& base, const std::string& name,
                          const std::vector<std::vector<std::string>>& values) {
  FinPresheaf d{name, base, values, {}};
  for (std::size_t f = 0; f < base->num_arrows(); ++f) {
    const auto n = values[base->dst(f)].size();
    const auto m = values[base->src(f)].size();
    std::vector<std::size_t> t(n);
    for (std::size_t x = 0; x < n; ++x) t[x] = m == 1 ? 0 : x;
    d.act.push_back(std::move(t));
  }
  return d;
}

}  // namespace

std::vector<FCoalgebra> bundled_stream_coalgebras() {
  return {{"S1", CoalgebraKind::Stream, {"s0", "s1"}, {{1}, {1}}},
          {"S2", CoalgebraKind::Stream, {"t0", "t1", "t2"}, {{1}, {2}, {0}}},
          {"S3", CoalgebraKind::Stream, {"u"}, {{0}}}};
}

std::vector<FCoalgebra> bundled_tree_coalgebras() {
  return {{"M", CoalgebraKind::Tree, {"s0", "s1", "s2"}, {{1, 2}, {1}, {}}},
          {"N", CoalgebraKind::Tree, {"n0", "n1"}, {{0, 1}, {0}}},
          {"L", CoalgebraKind::Tree, {"l"}, {{}}}};
}

std::vector<FinPresheaf> chain2_presheaves(const CatPtr& base) {
  return {presheaf_from(base, "D", {{"a", "b"}, {"*"}}), presheaf_from(base, "E", {{"c"}, {"*"}})};
}

std::vector<FinPresheaf> chain3_presheaves(const CatPtr& base) {
  return {presheaf_from(base, "D", {{"a", "b"}, {"*"}, {"*"}})};
}

FinPresheaf constant_presheaf(const CatPtr& base, const std::string& name, const std::vector<std::string>& values) {
  return presheaf_from(base, name, std::vector<std::vector<std::string>>(base->num_objects(), values));
}

std::vector<NamedInterior> bundled_interiors() {
  std::vector<NamedInterior> out;
  auto sets = bundled_sets();
  out.push_back({"identity", identity_interior(powerset_doctrine(sets))});
  auto frames = bundled_frames();
  for (const auto& f : frames) out.push_back({"kripke:" + f.name, kripke_doctrine(f.frame, sets)});
  out.push_back({"fam:chain2", fam_doctrine(frames[0].frame, bundled_families(frames[0].frame)).op});
  out.push_back({"topology", topological_doctrine(bundled_spaces()).op});
  for (const auto& q : bundled_quantales())
    out.push_back({"bang:" + q.name, quantale_doctrine(q.q, quantale_sets()).bang});
  auto base2 = frame_base(frames[0].frame);
  out.push_back({"presheaf:chain2", presheaf_instance(base2, chain2_presheaves(base2)).modality.op});
  auto base3 = frame_base(frames[1].frame);
  out.push_back({"presheaf:chain3", presheaf_instance(base3, chain3_presheaves(base3)).modality.op});
  out.push_back({"presheaf-box:constant2",
                 presheaf_box_doctrine(presheaf_category({constant_presheaf(base2, "K", {"a", "b"})}))});
  out.push_back({"conjunction", conjunction_modality(powerset_doctrine(sets)).op});
  auto ps = product_sets();
  out.push_back({"forall:2", forall_modality(ps, *ps.cat->find_object("2")).op});
  out.push_back({"temporal:G", temporal_doctrine(bundled_stream_coalgebras(), TemporalOp::G).modality});
  out.push_back({"temporal:AG", temporal_doctrine(bundled_tree_coalgebras(), TemporalOp::AG).modality});
  out.push_back({"temporal:EG", temporal_doctrine(bundled_tree_coalgebras(), TemporalOp::EG).modality});
  return out;
}

std::vector<NamedAdjunction> bundled_vertical_adjunctions() {
  std::vector<NamedAdjunction> out;
  auto sets = bundled_sets();
  out.push_back({"identity", identity_adjunction(powerset_doctrine(sets))});
  for (const auto& q : bundled_quantales())
    out.push_back({"quantale:" + q.name, quantale_doctrine(q.q, quantale_sets()).adjunction});
  out.push_back({"conjunction", conjunction_modality(powerset_doctrine(sets)).adjunction});
  auto ps = product_sets();
  out.push_back({"forall:2", forall_modality(ps, *ps.cat->find_object("2")).adjunction});
  auto frames = bundled_frames();
  out.push_back({"ma:kripke:chain3", ma(kripke_doctrine(frames[1].frame, sets)).adjunction});
  out.push_back({"ma:topology", ma(topological_doctrine(bundled_spaces()).op).adjunction});
  return out;
}

std::vector<NamedAdjunction> bundled_adjunctions() {
  auto out = bundled_vertical_adjunctions();
  auto frames = bundled_frames();
  auto base2 = frame_base(frames[0].frame);
  out.push_back({"presheaf:chain2", presheaf_instance(base2, chain2_presheaves(base2)).adjunction});
  auto base3 = frame_base(frames[1].frame);
  out.push_back({"presheaf:chain3", presheaf_instance(base3, chain3_presheaves(base3)).adjunction});
  return out;
}

}  // namespace modaldoc
