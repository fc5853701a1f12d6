#pragma once

#include <string>
#include <vector>

#include "modaldoc/adjunction.hpp"
#include "modaldoc/doctrine.hpp"
#include "modaldoc/interior.hpp"

namespace modaldoc {

// The quadruple <K,kappa,mu,nu> on a doctrine P.
struct DoctrineComonad {
  DocPtr P;
  Functor K;
  std::vector<MonotoneMap> kappa;  // P X -> P(K X)
  NatTransformation mu;            // K => K K
  NatTransformation nu;            // K => Id

  OneArrow arrow() const { return OneArrow{P, P, K, kappa}; }
};

// Violations tagged "base:", "arrow:", "lax:".
Violations check_comonad(const DoctrineComonad& c);
DoctrineComonad identity_comonad(const DocPtr& p);

struct EMDoctrineBundle {
  CoalgebraCategory coalgebras;
  DocPtr em;
  OneArrow forget;                              // <U,u> into P
  NatTransformation upsilon;                    // U => K U, components the structure maps
  std::vector<std::vector<std::size_t>> embed;  // per coalgebra: fiber index -> P-fiber index
};

EMDoctrineBundle em_doctrine(const DoctrineComonad& c);
// Fixed-point, faithfulness, injectivity and coherence invariants of the bundle.
Violations check_em_bundle(const DoctrineComonad& c, const EMDoctrineBundle& em);

enum class Certification { Exhaustive, Constructive };

struct UniversalFactor {
  OneArrow arrow;
  Certification certification = Certification::Constructive;
  double candidate_space = 0;  // size of the searched candidate space
  std::size_t solutions = 0;   // factorizations found by the search
};

// Throws ModelError when <x, xi> fails the coherence conditions.
UniversalFactor em_universal_factor(const DoctrineComonad& c, const EMDoctrineBundle& em, const OneArrow& x,
                                    const NatTransformation& xi, double search_limit = 1e4);

DoctrineAdjunction em_adjunction(const DoctrineComonad& c, const EMDoctrineBundle& em);
DoctrineAdjunction em_adjunction(const DoctrineComonad& c);
ModalDoctrine cm_modality(const DoctrineComonad& c, const EMDoctrineBundle& em);
ModalDoctrine cm_modality(const DoctrineComonad& c);
DoctrineComonad cmd_of_adjunction(const DoctrineAdjunction& a);
bool same_comonad_data(const DoctrineComonad& a, const DoctrineComonad& b);

struct Comparison {
  DoctrineComonad comonad;
  EMDoctrineBundle em;
  OneArrow arrow;  // <K, k> from P into the EM doctrine
  bool chain_holds = false;
};

Comparison comparison_arrow(const DoctrineAdjunction& a);

struct ModalityComparison {
  bool tables_equal = false;
  bool modal_arrow_valid = false;
  std::vector<std::string> mismatches;
  bool ok() const { return tables_equal && modal_arrow_valid; }
};

ModalityComparison modality_comparison_check(const DoctrineAdjunction& a);

DoctrineComonad mc(const InteriorOp& op);

struct MAResult {
  DoctrineAdjunction adjunction;  // box-P <-> P, <Id,u> -| <Id,box>
  StableSubdoctrine stable;
  bool matches_em = false;        // agrees with em_adjunction(mc(op)) under <C,id> ~ C
};

MAResult ma(const InteriorOp& op);

// Counit of the local adjunction: from MA(AM(A)) to A.
AdjMorphism nabla(const DoctrineAdjunction& a);

struct LocalAdjunctionReport {
  Violations nabla_violations;
  bool am_nabla_identity = false;
  bool am_roundtrip_equal = false;
  bool ok() const { return nabla_violations.empty() && am_nabla_identity && am_roundtrip_equal; }
};

LocalAdjunctionReport local_adjunction_checks(const DoctrineAdjunction& a);
// True when nabla at MA(op) is the identity morphism.
bool local_adjunction_checks_modal(const InteriorOp& op);

struct CmdMorphism {
  DoctrineComonad K, J;
  OneArrow Ff;               // K.P -> J.P
  NatTransformation theta;   // F K => J F
};

Violations check_cmd_morphism(const CmdMorphism& m);
CmdMorphism identity_cmd_morphism(const DoctrineComonad& c);
CmdMorphism mc_morphism(const OneArrow& a, const InteriorOp& op_p, const InteriorOp& op_q);
// Reads a Cmd-morphism between vertical comonads back as a modal 1-arrow.
OneArrow modal_arrow_of(const CmdMorphism& m);

struct CmdTwoCell {
  CmdMorphism src, dst;
  TwoArrow alpha;  // src.Ff => dst.Ff
};

Violations check_cmd_two_cell(const CmdTwoCell& c);

}  // namespace modaldoc
