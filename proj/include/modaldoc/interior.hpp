#pragma once

#include <vector>

#include "modaldoc/doctrine.hpp"

namespace modaldoc {

struct InteriorOp {
  DocPtr doctrine;
  std::vector<MonotoneMap> box;  // endo-map per base object
};

// Laws: naturality, T, 4, idempotence.
Violations check_interior(const InteriorOp& op);
InteriorOp identity_interior(const DocPtr& d);
bool same_interior(const InteriorOp& a, const InteriorOp& b);
std::vector<std::size_t> stable_elements(const InteriorOp& op, std::size_t x);

struct StableSubdoctrine {
  DocPtr doctrine;
  OneArrow inclusion;                              // <Id, u> into op.doctrine
  std::vector<std::vector<std::size_t>> embed;     // per object: stable index -> ambient index
};

StableSubdoctrine stable_subdoctrine(const InteriorOp& op);

// f_X . box_X <= box'_{FX} . f_X everywhere; also rechecks the stability-preservation form.
Violations check_modal_one_arrow(const OneArrow& a, const InteriorOp& op_p, const InteriorOp& op_q);
// box'_{FX} . f_X . box_X == f_X . box_X everywhere
bool preserves_stability(const OneArrow& a, const InteriorOp& op_p, const InteriorOp& op_q);

}  // namespace modaldoc
