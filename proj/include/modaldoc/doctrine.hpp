#pragma once

#include <memory>
#include <vector>

#include "modaldoc/fincat.hpp"
#include "modaldoc/order.hpp"

namespace modaldoc {

// A functor base^op -> Pos: reindex[a] maps fiber(dst a) to fiber(src a).
struct Doctrine {
  CatPtr base;
  std::vector<PosetPtr> fiber;
  std::vector<MonotoneMap> reindex;
};

using DocPtr = std::shared_ptr<const Doctrine>;

Violations check_doctrine(const Doctrine& d);
bool same_doctrine(const DocPtr& a, const DocPtr& b);

// A 1-arrow <F,f>: f[X] maps src.fiber(X) to dst.fiber(F X).
struct OneArrow {
  DocPtr src, dst;
  Functor F;
  std::vector<MonotoneMap> f;
};

Violations check_one_arrow(const OneArrow& a);
OneArrow identity_one_arrow(const DocPtr& d);
// b after a
OneArrow compose_one_arrows(const OneArrow& b, const OneArrow& a);
bool same_one_arrow(const OneArrow& a, const OneArrow& b);
bool is_identity_one_arrow(const OneArrow& a);

// Lax 2-arrow theta: src => dst with src.f_X <= dst-fiber reindex(theta_X) . dst.f_X.
struct TwoArrow {
  OneArrow src, dst;
  NatTransformation theta;
};

Violations check_two_arrow(const TwoArrow& t);
TwoArrow identity_two_arrow(const OneArrow& a);
// z after t
TwoArrow vertical_compose_two_arrows(const TwoArrow& z, const TwoArrow& t);
// b . t, for t between arrows into b.src
TwoArrow whisker_post(const OneArrow& b, const TwoArrow& t);
// t . c, for t between arrows out of c.dst
TwoArrow whisker_pre(const TwoArrow& t, const OneArrow& c);

struct SquareDoctrine {
  DocPtr doctrine;
  OneArrow diagonal;  // <Id, Delta> from P to P^2
};

SquareDoctrine square_doctrine(const DocPtr& p);

// Chosen product Y x X with its projections, given for a base object Y.
struct ProductChoice {
  std::size_t object;
  std::size_t product;
  std::size_t proj1;  // Y x X -> Y
  std::size_t proj2;  // Y x X -> X
};

struct PowerDoctrine {
  DocPtr restricted;  // P on the full subcategory of objects with product data
  DocPtr doctrine;    // Y |-> P(Y x X)
  OneArrow weakening; // <Id, P(pi1)>
  FullSubcategory sub;
  std::vector<ProductChoice> products;  // aligned with sub.objects
};

// Throws ModelError when product data is missing or fails the universal property.
PowerDoctrine power_doctrine(const DocPtr& p, std::size_t x, const std::vector<ProductChoice>& products);

// Q L^op: base L.src, fiber Q(L X), reindexing Q(L t).
DocPtr precompose(const DocPtr& q, const Functor& l);

}  // namespace modaldoc
