#pragma once

#include <random>
#include <string>
#include <vector>

#include "modaldoc/doctrine.hpp"
#include "modaldoc/interior.hpp"

namespace modaldoc {

// The octuple <P,Q,L,lam,R,rho,eta,eps>.
struct DoctrineAdjunction {
  DocPtr P, Q;
  Functor L;
  std::vector<MonotoneMap> lam;  // P X -> Q(L X)
  Functor R;
  std::vector<MonotoneMap> rho;  // Q Y -> P(R Y)
  NatTransformation eta;         // Id => R L
  NatTransformation eps;         // L R => Id

  OneArrow left() const { return OneArrow{P, Q, L, lam}; }
  OneArrow right() const { return OneArrow{Q, P, R, rho}; }
  TwoArrow eta_two() const;
  TwoArrow eps_two() const;
};

// Violations are tagged "i:" (base adjunction), "ii:" (1-arrows), "iii:" (2-arrows).
Violations check_adjunction(const DoctrineAdjunction& a);
DoctrineAdjunction identity_adjunction(const DocPtr& p);
// Identity base functors and unit/counit; P and Q share a base.
DoctrineAdjunction vertical_adjunction(const DocPtr& p, const DocPtr& q, std::vector<MonotoneMap> lam,
                                       std::vector<MonotoneMap> rho);
bool is_vertical(const DoctrineAdjunction& a);

// lam_X(a) <= b iff a <= rho_X(b), on a vertical adjunction.
Violations fiberwise_galois(const DoctrineAdjunction& a);
InteriorOp vertical_modality(const DoctrineAdjunction& a);

struct ModalDoctrine {
  DocPtr doctrine;  // Q L^op
  InteriorOp op;
};

ModalDoctrine am_modality(const DoctrineAdjunction& a);

DoctrineAdjunction base_change_adjunction(const DocPtr& q, const Functor& L, const Functor& R,
                                          const NatTransformation& eta, const NatTransformation& eps);

struct Factorization {
  DoctrineAdjunction vertical;
  DoctrineAdjunction base_change;
  bool left_composite_equal = false;
  bool right_composite_equal = false;
};

Factorization factorize(const DoctrineAdjunction& a);

struct Factorize2Object {
  std::string object;
  bool lambda_lands_in_stable = false;
  bool lambda_surjective = false;
  bool pullback_injective = false;
  std::vector<std::string> surjectivity_witnesses;  // "stable <- preimage"
  std::vector<std::string> injectivity_witnesses;   // "stable -> image"
};

struct Factorize2Report {
  std::vector<Factorize2Object> objects;
  bool square_lambda = false;      // u . lam^ = lam
  bool square_pullback = false;    // pb^ . box^ = pb
  bool square_box = false;         // u . box^ = box
  bool box_identity_on_stable = false;
  bool arrows_valid = false;
  bool ok() const;
};

Factorize2Report factorize2_report(const DoctrineAdjunction& a);

struct TrivialityObject {
  std::string object;
  bool lrl_equals_l = false, rlr_equals_r = false;
  bool lr_identity = false, rho_injective = false, lam_surjective = false;
  bool rl_identity = false, lam_injective = false, rho_surjective = false;
  bool first_biconditional() const { return lr_identity == rho_injective && rho_injective == lam_surjective; }
  bool second_biconditional() const { return rl_identity == lam_injective && lam_injective == rho_surjective; }
};

// Throws ModelError for a non-vertical or invalid adjunction.
std::vector<TrivialityObject> triviality_checks(const DoctrineAdjunction& a);

struct AdjMorphism {
  DoctrineAdjunction A, B;
  OneArrow Ff;  // P^A -> P^B
  OneArrow Gg;  // Q^A -> Q^B
  NatTransformation theta;  // F R^A => R^B G
};

Violations check_adj_morphism(const AdjMorphism& m);
AdjMorphism identity_adj_morphism(const DoctrineAdjunction& a);
// m2 after m1
AdjMorphism compose_adj_morphisms(const AdjMorphism& m2, const AdjMorphism& m1);

struct AdjTwoCell {
  AdjMorphism src, dst;
  TwoArrow alpha;  // src.Ff => dst.Ff
  TwoArrow beta;   // src.Gg => dst.Gg
};

Violations check_adj_two_cell(const AdjTwoCell& c);

// <F, g L^A> between the am_modality doctrines.
OneArrow am_functor(const AdjMorphism& m, const ModalDoctrine& am_a, const ModalDoctrine& am_b);
OneArrow am_functor(const AdjMorphism& m);
TwoArrow am_functor_2cell(const AdjTwoCell& c);

// Seeded vertical adjunction over a discrete base with lattice fibers of at most max_fiber elements.
DoctrineAdjunction random_vertical_adjunction(std::mt19937_64& rng, std::size_t max_fiber);

}  // namespace modaldoc
