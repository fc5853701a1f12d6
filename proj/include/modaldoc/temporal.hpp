#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "modaldoc/instances.hpp"
#include "modaldoc/interior.hpp"
#include "modaldoc/order.hpp"

namespace modaldoc {

enum class CoalgebraKind { Stream, Tree };
enum class LiftKind { Identity, Forall, Exists };
enum class TemporalOp { G, AG, EG };

// Finite coalgebra for X |-> X (stream) or X |-> finite tuples over X (tree).
struct FCoalgebra {
  std::string name;
  CoalgebraKind kind = CoalgebraKind::Stream;
  std::vector<std::string> states;
  std::vector<std::vector<std::size_t>> step;  // stream: exactly one entry per state
};

Violations check_coalgebra(const FCoalgebra& c);
LiftKind lift_of(TemporalOp op);
CoalgebraKind kind_of(TemporalOp op);
std::string op_name(TemporalOp op);
// Throws ModelError on an unknown name.
TemporalOp parse_temporal_op(const std::string& name);

// Whether the tuple lies in the lift of beta.
bool lift_holds(LiftKind lift, const std::vector<std::size_t>& tuple, Mask beta);
// Psi(beta) = alpha & {x | lift(step x, beta)}
Mask psi(const FCoalgebra& c, LiftKind lift, Mask alpha, Mask beta);
// Greatest fixed point of psi from the full state set; throws when lift and kind disagree.
GfpResult<Mask> gfp_modality(const FCoalgebra& c, LiftKind lift, Mask alpha);

// Every iterate of x lies in alpha.
Mask g_oracle(const FCoalgebra& c, Mask alpha);
// Every state reachable from x, x included, lies in alpha.
Mask ag_oracle(const FCoalgebra& c, Mask alpha);
// Inside alpha, x reaches a cycle.
Mask eg_oracle(const FCoalgebra& c, Mask alpha);
Mask temporal_oracle(const FCoalgebra& c, TemporalOp op, Mask alpha);

// Functions h with step'(h x) = h(step x), componentwise.
std::vector<std::vector<std::size_t>> homomorphisms(const FCoalgebra& a, const FCoalgebra& b);

struct TemporalDoctrine {
  std::vector<FCoalgebra> coalgebras;
  TemporalOp op = TemporalOp::G;
  InteriorOp modality;  // pw(A) with inverse image over coalgebra homomorphisms
};

TemporalDoctrine temporal_doctrine(const std::vector<FCoalgebra>& coalgebras, TemporalOp op);

// Uniform states in [1, max_states]; tree tuples of length 0..3.
FCoalgebra random_coalgebra(std::mt19937_64& rng, CoalgebraKind kind, std::size_t max_states,
                            const std::string& name);

struct TemporalSuiteReport {
  std::size_t coalgebras = 0;
  std::size_t queries = 0;
  std::size_t mismatches = 0;
  std::size_t iteration_overruns = 0;  // runs needing more than |A|+1 iterations
  std::size_t max_iterations = 0;
  std::vector<std::string> failures;
  bool ok() const { return mismatches == 0 && iteration_overruns == 0; }
};

// Checks gfp_modality against the oracle on one coalgebra: every subset when |A| <= 5,
// otherwise `samples` random subsets.
void temporal_check(const FCoalgebra& c, TemporalOp op, std::mt19937_64& rng, std::size_t samples,
                    TemporalSuiteReport& report);
// count coalgebras per run; ops cycle G, AG, EG.
TemporalSuiteReport temporal_random_suite(std::uint64_t seed, std::size_t count = 100, std::size_t max_states = 8);

}  // namespace modaldoc
