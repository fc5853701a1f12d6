#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "modaldoc/adjunction.hpp"
#include "modaldoc/doctrine.hpp"
#include "modaldoc/interior.hpp"

namespace modaldoc {

using Mask = std::uint64_t;

// Finite sets and all functions between them. Arrow keys are function tables.
struct SetCat {
  CatPtr cat;
  std::vector<std::vector<std::string>> sets;
  const std::vector<std::size_t>& fn(std::size_t a) const { return cat->keys()[a]; }
};

SetCat finset_category(const std::vector<std::string>& names, const std::vector<std::vector<std::string>>& sets);
// Every table {0..n-1} -> {0..m-1}, lexicographic with the last entry fastest.
std::vector<std::vector<std::size_t>> all_functions(std::size_t n, std::size_t m);
Mask full_mask(std::size_t n);
Mask preimage(const std::vector<std::size_t>& table, Mask b);

// Fiber value^D, reindexing by precomposition.
DocPtr exponential_doctrine(const SetCat& c, const PosetPtr& value);
// Fiberwise postcomposition with g : value(a) -> value(b), for two exponential doctrines over c.
std::vector<MonotoneMap> postcompose_maps(const SetCat& c, const DocPtr& a, const DocPtr& b, const MonotoneMap& g);
// Fiber pw(D), reindexing by inverse image.
DocPtr powerset_doctrine(const SetCat& c);
// Fiber Sub(D) with reindexing computed from explicit pullbacks of inclusions.
DocPtr subobject_doctrine_finset(const SetCat& c);

struct KripkeFrame {
  std::vector<std::string> worlds;
  std::vector<Mask> succ;  // R(w)

  bool reflexive() const;
  bool transitive() const;
  bool is_preorder() const { return reflexive() && transitive(); }
};

KripkeFrame make_frame(const std::vector<std::string>& worlds,
                       const std::vector<std::pair<std::string, std::string>>& rel);
KripkeFrame refl_trans_closure(const KripkeFrame& f);
// {w | R(w) subset of a}; throws when a is not a subset of W.
Mask kripke_box(const KripkeFrame& f, Mask a);
// Doctrine pw(W)^(-) over c with j_R applied pointwise; fiber digit k is the mask of alpha(k).
InteriorOp kripke_doctrine(const KripkeFrame& f, const SetCat& c);

struct IndexedFamily {
  std::string name;
  std::vector<std::string> carrier;
  std::vector<Mask> parts;  // per world
};

bool is_increasing(const KripkeFrame& f, const IndexedFamily& x);

struct Subfamily {
  Mask carrier = 0;
  std::vector<Mask> parts;
  bool operator==(const Subfamily& o) const { return carrier == o.carrier && parts == o.parts; }
};

struct FamDoctrine {
  InteriorOp op;
  std::vector<IndexedFamily> families;
  std::vector<std::vector<Subfamily>> elements;  // per object, fiber index -> subfamily
  std::size_t index(std::size_t x, const Subfamily& a) const;
};

// Arrows are the functions t with t(X_w) inside Y_w.
FamDoctrine fam_doctrine(const KripkeFrame& f, const std::vector<IndexedFamily>& families);
// Carrier kept; part w is the meet of A_v over v in R(w), cut down to X_w.
Subfamily fam_box(const KripkeFrame& f, const IndexedFamily& x, const Subfamily& a);
// Pullback of a (over the target) along t : x -> y.
Subfamily fam_reindex(const IndexedFamily& x, const std::vector<std::size_t>& t, const Subfamily& a);
std::string subfamily_name(const IndexedFamily& x, const Subfamily& a);

struct ConstantFamilyArrow {
  InteriorOp src;   // kripke_doctrine
  FamDoctrine dst;  // constant families
  OneArrow arrow;   // <const, c>
};

ConstantFamilyArrow constant_family_arrow(const KripkeFrame& f, const SetCat& c);

struct FiniteTopSpace {
  std::string name;
  std::vector<std::string> points;
  std::vector<Mask> opens;

  bool is_open(Mask a) const;
  Mask interior(Mask a) const;
};

Violations check_space(const FiniteTopSpace& s);
FiniteTopSpace discrete_space(const std::string& name, const std::vector<std::string>& points);
FiniteTopSpace indiscrete_space(const std::string& name, const std::vector<std::string>& points);
// Points bot, top; opens {}, {top}, X.
FiniteTopSpace sierpinski_space(const std::string& name = "S");
bool continuous(const FiniteTopSpace& x, const FiniteTopSpace& y, const std::vector<std::size_t>& t);
bool open_map(const FiniteTopSpace& x, const FiniteTopSpace& y, const std::vector<std::size_t>& t);
// t^-1(int B) == int(t^-1 B) for every B.
bool interior_commutes(const FiniteTopSpace& x, const FiniteTopSpace& y, const std::vector<std::size_t>& t);

struct TopDoctrine {
  CatPtr base;  // open continuous maps, keyed by tables
  std::vector<FiniteTopSpace> spaces;
  InteriorOp op;
};

// Throws ModelError on an invalid space.
TopDoctrine topological_doctrine(const std::vector<FiniteTopSpace>& spaces);
// Open sets with inverse image, built directly.
DocPtr open_set_doctrine(const TopDoctrine& t);

struct ForgetfulTop {
  SetCat sets;
  InteriorOp target;  // identity operator on the powerset doctrine
  OneArrow arrow;     // <U, id>
};

ForgetfulTop forgetful_top_arrow(const TopDoctrine& t);

class FiniteQuantale {
 public:
  // Throws ModelError unless <Q,tensor,unit> is a commutative monoid distributing over joins.
  FiniteQuantale(FinLattice lattice, std::vector<std::size_t> tensor, std::size_t unit);

  const FinLattice& lattice() const { return lattice_; }
  const PosetPtr& carrier() const { return lattice_.carrier(); }
  std::size_t size() const { return lattice_.size(); }
  std::size_t unit() const { return unit_; }
  std::size_t tensor(std::size_t a, std::size_t b) const { return tensor_[a * size() + b]; }
  // join of {z | a (x) z <= b}
  std::size_t residual(std::size_t a, std::size_t b) const;

 private:
  FinLattice lattice_;
  std::vector<std::size_t> tensor_;
  std::size_t unit_;
};

FiniteQuantale boolean_quantale();
// {0, 1/2, 1} with x (x) y = max(0, x + y - 1).
FiniteQuantale lukasiewicz3_quantale();
// Subsets of a finite commutative monoid, A (x) B = {ab}.
FiniteQuantale powerset_monoid_quantale(const std::vector<std::string>& elements,
                                        const std::vector<std::size_t>& mul, std::size_t unit);

struct QuantaleCore {
  std::vector<std::size_t> elements;  // R_Q in carrier order
  PosetPtr poset;
  MonotoneMap iota;  // R_Q -> Q
  MonotoneMap r;     // Q -> R_Q
};

// Throws ModelError when closure or the Galois property fails.
QuantaleCore quantale_core(const FiniteQuantale& q);
// {x <= 1} without the x <= x (x) x filter.
QuantaleCore fake_quantale_core(const FiniteQuantale& q);

struct QuantaleDoctrine {
  DocPtr full;  // Q^(-)
  DocPtr core;  // R_Q^(-)
  DoctrineAdjunction adjunction;  // <Id, iota.-> -| <Id, r.->
  InteriorOp bang;
};

QuantaleDoctrine quantale_doctrine(const FiniteQuantale& q, const SetCat& c);
QuantaleDoctrine quantale_doctrine(const FiniteQuantale& q, const SetCat& c, const QuantaleCore& core);

// Pointwise structure on the fiber Q^n.
struct MonoidOps {
  std::size_t e = 0;
  std::size_t n = 0;  // fiber size
  std::vector<std::size_t> star, residual;
  std::size_t mul(std::size_t a, std::size_t b) const { return star[a * n + b]; }
  std::size_t res(std::size_t a, std::size_t b) const { return residual[a * n + b]; }
};

MonoidOps quantale_monoid_ops(const FiniteQuantale& q, std::size_t arity);

struct BangLawReport {
  std::array<std::size_t, 4> checked{};
  std::array<std::size_t, 4> equalities{};
  Violations violations;  // tagged "(1)".."(4)"
  bool ok() const { return violations.empty(); }
};

BangLawReport bang_law_suite(const FiniteQuantale& q, const SetCat& c, const QuantaleDoctrine& d);

// Contravariant: act[f] maps at[dst f] to at[src f].
struct FinPresheaf {
  std::string name;
  CatPtr base;
  std::vector<std::vector<std::string>> at;
  std::vector<std::vector<std::size_t>> act;
};

Violations check_presheaf(const FinPresheaf& d);
// Base for a frame: world v has an arrow to w when wRv, so D(w) acts into D(v).
CatPtr frame_base(const KripkeFrame& f);

using Family = std::vector<Mask>;  // per base object

bool is_subpresheaf(const FinPresheaf& d, const Family& a);
// {x in D(c) | D(f)(x) in alpha(dom f) for every f into c}
Family presheaf_box(const FinPresheaf& d, const Family& alpha);
// Union of all subfamilies of alpha that are subpresheaves.
Family presheaf_box_oracle(const FinPresheaf& d, const Family& alpha);
Mask flatten(const FinPresheaf& d, const Family& a);
Family unflatten(const FinPresheaf& d, Mask m);
std::size_t total_size(const FinPresheaf& d);

// Presheaves with natural transformations; keys are concatenated component tables.
struct PresheafCategory {
  CatPtr cat;
  std::vector<FinPresheaf> objects;
  std::vector<std::vector<std::size_t>> component(std::size_t arrow) const;
};

PresheafCategory presheaf_category(std::vector<FinPresheaf> objects);
// Subfamilies indexed by flattened mask; reindexing by inverse image.
DocPtr subfamily_doctrine(const PresheafCategory& p);
DocPtr subpresheaf_doctrine(const PresheafCategory& p);
InteriorOp presheaf_box_doctrine(const PresheafCategory& p);

FinPresheaf restrict_to_discrete(const FinPresheaf& d, const CatPtr& discrete);
// R(S)(c) is the product of S(dom f) over arrows f into c.
FinPresheaf right_kan_presheaf(const FinPresheaf& s, const CatPtr& base);
// Natural componentwise bijection from a to b, if any.
std::optional<std::vector<std::vector<std::size_t>>> presheaf_iso(const FinPresheaf& a, const FinPresheaf& b);

struct PresheafInstance {
  CatPtr base, discrete;
  PresheafCategory presheaves;  // closed list
  PresheafCategory families;    // restrictions, aligned with presheaves
  DoctrineAdjunction adjunction;
  ModalDoctrine modality;
  std::vector<std::string> added;  // presheaves added by the closure
};

// Throws ModelError naming the missing object when closure does not settle within max_rounds.
PresheafInstance presheaf_instance(const CatPtr& base, std::vector<FinPresheaf> presheaves,
                                   std::size_t max_rounds = 3);

struct ConnectiveModality {
  DoctrineAdjunction adjunction;
  InteriorOp op;
};

// <Id, Delta> -| <Id, meet> on P and P^2; throws when some reindexing fails to preserve meets.
ConnectiveModality conjunction_modality(const DocPtr& p);
// Product data for every object Y with a set of size |Y||X|; pairs coded as y*|X|+x.
std::vector<ProductChoice> finset_products(const SetCat& c, std::size_t x);
// Weakening -| forall on the powerset doctrine.
ConnectiveModality forall_modality(const SetCat& c, std::size_t x);

}  // namespace modaldoc
