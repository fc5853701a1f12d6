#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "modaldoc/common.hpp"

namespace modaldoc {

// Finite poset; elements are indices into names(), in declaration order.
class FinPoset {
 public:
  // Throws ModelError on duplicate names or when the relation is not a partial order.
  FinPoset(std::vector<std::string> names, std::vector<boost::dynamic_bitset<>> up);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(const std::string& n) const;
  std::size_t index(const std::string& n) const;
  bool leq(std::size_t a, std::size_t b) const { return up_[a][b]; }
  const boost::dynamic_bitset<>& up(std::size_t a) const { return up_[a]; }
  bool same_as(const FinPoset& other) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<boost::dynamic_bitset<>> up_;
};

using PosetPtr = std::shared_ptr<const FinPoset>;

Violations poset_law_violations(const std::vector<std::string>& names,
                                const std::vector<boost::dynamic_bitset<>>& up);
Checked<PosetPtr> check_poset(const std::vector<std::string>& elements,
                              const std::vector<std::pair<std::string, std::string>>& leq);

PosetPtr make_poset(std::vector<std::string> names,
                    const std::function<bool(std::size_t, std::size_t)>& leq);
PosetPtr chain_poset(const std::vector<std::string>& names);
PosetPtr discrete_poset(const std::vector<std::string>& names);
PosetPtr subposet(const PosetPtr& p, const std::vector<std::size_t>& keep);
// Index of (a,b) is a * |q| + b.
PosetPtr product_poset(const PosetPtr& p, const PosetPtr& q);
// Pointwise order on p^n; coordinate k of index i is (i / |p|^k) % |p|.
PosetPtr power_poset(const PosetPtr& p, std::size_t n);
std::vector<std::size_t> power_digits(std::size_t index, std::size_t base, std::size_t n);
std::size_t power_index(const std::vector<std::size_t>& digits, std::size_t base);
// Subsets of ground ordered by inclusion; index is the bitmask.
PosetPtr powerset_poset(const std::vector<std::string>& ground);
std::string subset_name(const std::vector<std::string>& ground, std::uint64_t mask);

class MonotoneMap {
 public:
  MonotoneMap(PosetPtr src, PosetPtr dst, std::vector<std::size_t> graph);

  std::size_t operator()(std::size_t x) const { return graph_[x]; }
  const PosetPtr& src() const { return src_; }
  const PosetPtr& dst() const { return dst_; }
  const std::vector<std::size_t>& graph() const { return graph_; }
  bool operator==(const MonotoneMap& o) const;

 private:
  PosetPtr src_, dst_;
  std::vector<std::size_t> graph_;
};

Violations check_monotone(const MonotoneMap& m);
MonotoneMap identity_map(const PosetPtr& p);
MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);
MonotoneMap constant_map(const PosetPtr& src, const PosetPtr& dst, std::size_t value);
MonotoneMap tabulate(const PosetPtr& src, const PosetPtr& dst,
                     const std::function<std::size_t(std::size_t)>& fn);
bool is_identity(const MonotoneMap& m);
bool pointwise_leq(const MonotoneMap& f, const MonotoneMap& g);
bool injective(const MonotoneMap& m);
bool surjective(const MonotoneMap& m);
std::vector<std::size_t> image(const MonotoneMap& m);
// Greatest x with f(x) <= y, for every y; nullopt when f has no right adjoint.
std::optional<MonotoneMap> right_adjoint(const MonotoneMap& f);
// Least x with y <= f(x), for every y; nullopt when f has no left adjoint.
std::optional<MonotoneMap> left_adjoint(const MonotoneMap& f);

class FinLattice {
 public:
  // Throws ModelError when some pair lacks a meet or join.
  explicit FinLattice(PosetPtr carrier);

  const PosetPtr& carrier() const { return carrier_; }
  std::size_t size() const { return carrier_->size(); }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * size() + b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a * size() + b]; }
  std::size_t top() const { return top_; }
  std::size_t bottom() const { return bottom_; }
  std::size_t join_all(const std::vector<std::size_t>& xs) const;
  std::size_t meet_all(const std::vector<std::size_t>& xs) const;

 private:
  PosetPtr carrier_;
  std::vector<std::size_t> meet_, join_;
  std::size_t top_ = 0, bottom_ = 0;
};

FinLattice powerset_lattice(const std::vector<std::string>& ground);

template <class T>
struct GfpResult {
  T value;
  std::size_t iterations;  // applications of f until stationary
};

// Descending Knaster-Tarski iteration from top.
template <class T, class F>
GfpResult<T> gfp_iterate(T top, F&& f) {
  T x = top;
  std::size_t it = 0;
  for (;;) {
    T y = f(x);
    ++it;
    if (y == x) return {x, it};
    x = y;
  }
}

// Throws ModelError if f is not a monotone endomap of the lattice carrier.
GfpResult<std::size_t> gfp(const FinLattice& lattice, const MonotoneMap& f);

}  // namespace modaldoc
