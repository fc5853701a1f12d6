#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "modaldoc/common.hpp"
#include "modaldoc/order.hpp"

namespace modaldoc {

struct ArrowInfo {
  std::string name;
  std::size_t src = 0, dst = 0;
};

// Finite category given by an explicit composition table.
class FinCategory {
 public:
  static constexpr int kUndefined = -1;

  // compose(g, f) is consulted for every pair with dst(f) == src(g).
  FinCategory(std::vector<std::string> objects, std::vector<ArrowInfo> arrows,
              std::vector<std::size_t> identity,
              const std::function<std::optional<std::size_t>(std::size_t, std::size_t)>& compose);

  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_arrows() const { return arrows_.size(); }
  const std::string& object_name(std::size_t o) const { return objects_[o]; }
  const std::vector<std::string>& objects() const { return objects_; }
  std::optional<std::size_t> find_object(const std::string& n) const;
  std::size_t object_index(const std::string& n) const;
  const ArrowInfo& arrow(std::size_t a) const { return arrows_[a]; }
  const std::vector<ArrowInfo>& arrows() const { return arrows_; }
  std::optional<std::size_t> find_arrow(const std::string& n) const;
  std::size_t src(std::size_t a) const { return arrows_[a].src; }
  std::size_t dst(std::size_t a) const { return arrows_[a].dst; }
  std::size_t id(std::size_t o) const { return identity_[o]; }
  bool is_identity(std::size_t a) const { return identity_[arrows_[a].src] == a; }
  // g after f; throws when not composable or undefined.
  std::size_t compose(std::size_t g, std::size_t f) const;
  int compose_raw(std::size_t g, std::size_t f) const { return table_[g * arrows_.size() + f]; }
  const std::vector<std::size_t>& hom(std::size_t x, std::size_t y) const {
    return hom_[x * objects_.size() + y];
  }
  bool same_as(const FinCategory& o) const;

  // Optional concrete keys (function tables) for categories of structured sets.
  const std::vector<std::vector<std::size_t>>& keys() const { return keys_; }
  std::optional<std::size_t> find_by_key(std::size_t src, std::size_t dst,
                                         const std::vector<std::size_t>& key) const;
  void set_keys(std::vector<std::vector<std::size_t>> keys);

 private:
  std::vector<std::string> objects_;
  std::vector<ArrowInfo> arrows_;
  std::vector<std::size_t> identity_;
  std::vector<int> table_;
  std::vector<std::vector<std::size_t>> hom_;
  std::vector<std::vector<std::size_t>> keys_;
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, std::size_t> key_index_;
};

using CatPtr = std::shared_ptr<const FinCategory>;

bool same_category(const CatPtr& a, const CatPtr& b);

Violations check_category_laws(const FinCategory& c);

struct CategoryData {
  std::vector<std::string> objects;
  std::vector<ArrowInfo> arrows;
  std::vector<std::string> identities;  // per object, arrow name
  std::vector<std::tuple<std::string, std::string, std::string>> compose;  // (g, f, g∘f)
};

// Identities are added when the data names no arrow for an object.
Checked<CatPtr> check_category(const CategoryData& data);

CatPtr discrete_category(const std::vector<std::string>& objects);
// One arrow x->y iff x <= y.
CatPtr poset_category(const FinPoset& p);
CatPtr terminal_category();

struct ConcreteArrow {
  std::string name;
  std::size_t src = 0, dst = 0;
  std::vector<std::size_t> key;
};

// Builds a category whose arrows are identified by keys; composites are looked up by key.
CatPtr concrete_category(
    std::vector<std::string> objects, const std::vector<ConcreteArrow>& arrows,
    const std::function<std::vector<std::size_t>(const ConcreteArrow& g, const ConcreteArrow& f)>&
        compose_keys,
    const std::function<std::vector<std::size_t>(std::size_t)>& identity_key);

// Opposite category as a view: arrows keep indices, src/dst and composition are swapped.
struct OppositeView {
  CatPtr base;
  std::size_t src(std::size_t a) const { return base->dst(a); }
  std::size_t dst(std::size_t a) const { return base->src(a); }
  std::size_t compose(std::size_t g, std::size_t f) const { return base->compose(f, g); }
};

struct Functor {
  CatPtr src, dst;
  std::vector<std::size_t> obj, arr;
  std::size_t operator()(std::size_t a) const { return arr[a]; }
  std::size_t on_object(std::size_t o) const { return obj[o]; }
};

bool operator==(const Functor& a, const Functor& b);
Violations check_functor(const Functor& f);
Functor identity_functor(const CatPtr& c);
bool is_identity_functor(const Functor& f);
// g after f
Functor compose_functors(const Functor& g, const Functor& f);
Functor constant_functor(const CatPtr& src, const CatPtr& dst, std::size_t object);

struct NatTransformation {
  Functor src, dst;
  std::vector<std::size_t> comp;  // per object of the common source category
};

bool operator==(const NatTransformation& a, const NatTransformation& b);
Violations check_nat(const NatTransformation& t);
NatTransformation identity_nat(const Functor& f);
bool is_identity_nat(const NatTransformation& t);
// z after t
NatTransformation vertical_compose(const NatTransformation& z, const NatTransformation& t);
// H t : components H(t_X)
NatTransformation whisker_left(const Functor& h, const NatTransformation& t);
// t K : components t_{K X}
NatTransformation whisker_right(const NatTransformation& t, const Functor& k);

Violations adjunction_cat(const Functor& L, const Functor& R, const NatTransformation& eta,
                          const NatTransformation& eps);

struct FullSubcategory {
  CatPtr cat;
  Functor inclusion;
  std::vector<std::size_t> objects;  // objects of the ambient category
};

FullSubcategory full_subcategory(const CatPtr& c, const std::vector<std::size_t>& objects);

Violations comonad_laws(const Functor& K, const NatTransformation& mu, const NatTransformation& nu);

struct CoalgebraCategory {
  CatPtr cat;
  std::vector<std::size_t> carrier;    // per coalgebra, base object
  std::vector<std::size_t> structure;  // per coalgebra, base arrow C -> K C
  std::vector<std::size_t> underlying; // per coalgebra arrow, base arrow
  Functor forget;
  std::optional<std::size_t> find(std::size_t carrier_obj, std::size_t structure_arrow) const;
};

// Throws ModelError when the comonad laws fail.
CoalgebraCategory coalgebra_category(const Functor& K, const NatTransformation& mu,
                                     const NatTransformation& nu);

}  // namespace modaldoc
