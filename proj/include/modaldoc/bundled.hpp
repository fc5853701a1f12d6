#pragma once

#include <string>
#include <vector>

#include "modaldoc/adjunction.hpp"
#include "modaldoc/instances.hpp"
#include "modaldoc/interior.hpp"
#include "modaldoc/temporal.hpp"

namespace modaldoc {

// Desk-scale instances shared by the tests, the CLI suite and the acceptance run.

// Sets named "1", "2", "3".
SetCat bundled_sets();
// Sets named "0", "1", "2", "3", the empty set included.
SetCat quantale_sets();
// Sets "1", "2", "4" so that products with "2" exist.
SetCat product_sets();

struct NamedFrame {
  std::string name;
  KripkeFrame frame;
};

// Three preorders: chain2, chain3, fork.
std::vector<NamedFrame> bundled_frames();
// W = {1,2,3}, R = {(1,2),(2,3)} plus the diagonal.
KripkeFrame non_transitive_frame();

// Increasing families over chain2.
std::vector<IndexedFamily> bundled_families(const KripkeFrame& chain2);
// Sierpinski, discrete, indiscrete and a three-point chain topology.
std::vector<FiniteTopSpace> bundled_spaces();

struct NamedQuantale {
  std::string name;
  FiniteQuantale q;
};

// Boolean and Lukasiewicz-3.
std::vector<NamedQuantale> bundled_quantales();

// Presheaves over the chain2 base whose right-Kan images close up.
std::vector<FinPresheaf> chain2_presheaves(const CatPtr& base);
// Presheaves over the chain3 base, closable the same way.
std::vector<FinPresheaf> chain3_presheaves(const CatPtr& base);
// Constant two-element presheaf with identity action.
FinPresheaf constant_presheaf(const CatPtr& base, const std::string& name, const std::vector<std::string>& values);

// S1, S2 (a 3-cycle), S3 (a fixed point).
std::vector<FCoalgebra> bundled_stream_coalgebras();
// M (s0 -> (s1,s2), s1 -> (s1), s2 a leaf), N, L (a leaf).
std::vector<FCoalgebra> bundled_tree_coalgebras();

struct NamedInterior {
  std::string name;
  InteriorOp op;
};

struct NamedAdjunction {
  std::string name;
  DoctrineAdjunction adjunction;
};

std::vector<NamedInterior> bundled_interiors();
std::vector<NamedAdjunction> bundled_adjunctions();
// Adjunctions with identity base functors and unit/counit.
std::vector<NamedAdjunction> bundled_vertical_adjunctions();

}  // namespace modaldoc
