#include "modaldoc/instances.hpp"

#include <algorithm>

namespace modaldoc {

FiniteQuantale::FiniteQuantale(FinLattice lattice, std::vector<std::size_t> table, std::size_t unit)
    : lattice_(std::move(lattice)), tensor_(std::move(table)), unit_(unit) {
  const auto n = size();
  const auto& p = *carrier();
  if (tensor_.size() != n * n) throw ModelError("tensor table has the wrong size");
  if (unit_ >= n) throw ModelError("unit is not an element");
  for (auto v : tensor_)
    if (v >= n) throw ModelError("tensor value out of range");
  auto bad = [&](const std::string& law, std::size_t a, std::size_t b) {
    throw ModelError("quantale law '" + law + "' fails at (" + p.name(a) + "," + p.name(b) + ")");
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (tensor(a, unit_) != a) bad("unit", a, unit_);
    if (tensor(a, lattice_.bottom()) != lattice_.bottom()) bad("empty join", a, lattice_.bottom());
    for (std::size_t b = 0; b < n; ++b) {
      if (tensor(a, b) != tensor(b, a)) bad("commutativity", a, b);
      for (std::size_t c = 0; c < n; ++c) {
        if (tensor(tensor(a, b), c) != tensor(a, tensor(b, c))) bad("associativity", a, b);
        if (tensor(a, lattice_.join(b, c)) != lattice_.join(tensor(a, b), tensor(a, c))) bad("distributivity", a, b);
      }
    }
  }
}

std::size_t FiniteQuantale::residual(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> zs;
  for (std::size_t z = 0; z < size(); ++z)
    if (carrier()->leq(tensor(a, z), b)) zs.push_back(z);
  return lattice_.join_all(zs);
}

FiniteQuantale boolean_quantale() {
  FinLattice l(chain_poset({"0", "1"}));
  return FiniteQuantale(l, {0, 0, 0, 1}, 1);
}

FiniteQuantale lukasiewicz3_quantale() {
  FinLattice l(chain_poset({"0", "1/2", "1"}));
  std::vector<std::size_t> t;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) t.push_back(a + b > 2 ? a + b - 2 : 0);
  return FiniteQuantale(l, t, 2);
}

FiniteQuantale powerset_monoid_quantale(const std::vector<std::string>& elements, const std::vector<std::size_t>& mul,
                                        std::size_t unit) {
  const auto m = elements.size();
  if (mul.size() != m * m || unit >= m) throw ModelError("monoid table has the wrong shape");
  auto l = powerset_lattice(elements);
  const auto n = l.size();
  std::vector<std::size_t> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Mask r = 0;
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y)
          if ((a >> x & 1U) && (b >> y & 1U)) r |= Mask{1} << mul[x * m + y];
      t[a * n + b] = static_cast<std::size_t>(r);
    }
  return FiniteQuantale(l, t, std::size_t{1} << unit);
}

namespace {

QuantaleCore make_core(const FiniteQuantale& q, std::vector<std::size_t> elems) {
  const auto& p = q.carrier();
  auto sub = subposet(p, elems);
  std::vector<long> pos(q.size(), -1);
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<long>(i);
  std::vector<std::size_t> rg;
  for (std::size_t x = 0; x < q.size(); ++x) {
    std::vector<std::size_t> below;
    for (auto y : elems)
      if (p->leq(y, x)) below.push_back(y);
    auto j = q.lattice().join_all(below);
    if (pos[j] < 0) throw ModelError("core is not closed under joins at " + p->name(x));
    rg.push_back(static_cast<std::size_t>(pos[j]));
  }
  MonotoneMap iota(sub, p, elems);
  MonotoneMap r(p, sub, std::move(rg));
  return QuantaleCore{std::move(elems), sub, iota, r};
}

}  // namespace

QuantaleCore quantale_core(const FiniteQuantale& q) {
  const auto& p = *q.carrier();
  std::vector<std::size_t> elems;
  for (std::size_t x = 0; x < q.size(); ++x)
    if (p.leq(x, q.unit()) && p.leq(x, q.tensor(x, x))) elems.push_back(x);
  auto in = [&](std::size_t x) { return std::find(elems.begin(), elems.end(), x) != elems.end(); };
  if (!in(q.unit())) throw ModelError("unit is not in the core");
  if (!in(q.lattice().bottom())) throw ModelError("core misses the empty join");
  for (auto a : elems)
    for (auto b : elems) {
      if (!in(q.tensor(a, b))) throw ModelError("core not closed under tensor at " + p.name(a) + "," + p.name(b));
      if (!in(q.lattice().join(a, b))) throw ModelError("core not closed under join at " + p.name(a) + "," + p.name(b));
    }
  auto core = make_core(q, elems);
  for (std::size_t x = 0; x < q.size(); ++x) {
    if (!p.leq(core.iota(core.r(x)), x)) throw ModelError("iota r is not deflationary at " + p.name(x));
    for (std::size_t y = 0; y < elems.size(); ++y)
      if (p.leq(core.iota(y), x) != core.poset->leq(y, core.r(x)))
        throw ModelError("Galois property fails at " + p.name(x));
  }
  for (std::size_t y = 0; y < elems.size(); ++y)
    if (core.r(core.iota(y)) != y) throw ModelError("r iota is not the identity");
  return core;
}

QuantaleCore fake_quantale_core(const FiniteQuantale& q) {
  std::vector<std::size_t> elems;
  for (std::size_t x = 0; x < q.size(); ++x)
    if (q.carrier()->leq(x, q.unit())) elems.push_back(x);
  return make_core(q, elems);
}

QuantaleDoctrine quantale_doctrine(const FiniteQuantale& q, const SetCat& c, const QuantaleCore& core) {
  auto full = exponential_doctrine(c, q.carrier());
  auto cored = exponential_doctrine(c, core.poset);
  auto adj = vertical_adjunction(cored, full, postcompose_maps(c, cored, full, core.iota),
                                 postcompose_maps(c, full, cored, core.r));
  auto bang = vertical_modality(adj);
  return QuantaleDoctrine{full, cored, adj, bang};
}

QuantaleDoctrine quantale_doctrine(const FiniteQuantale& q, const SetCat& c) {
  return quantale_doctrine(q, c, quantale_core(q));
}

MonoidOps quantale_monoid_ops(const FiniteQuantale& q, std::size_t arity) {
  const std::size_t b = q.size();
  std::size_t n = 1;
  for (std::size_t k = 0; k < arity; ++k) {
    n *= b;
    enforce_cap(n, "quantale fiber");
  }
  MonoidOps ops;
  ops.n = n;
  ops.e = power_index(std::vector<std::size_t>(arity, q.unit()), b);
  ops.star.resize(n * n);
  ops.residual.resize(n * n);
  std::vector<std::vector<std::size_t>> digits(n);
  for (std::size_t i = 0; i < n; ++i) digits[i] = power_digits(i, b, arity);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::vector<std::size_t> s(arity), r(arity);
      for (std::size_t k = 0; k < arity; ++k) {
        s[k] = q.tensor(digits[x][k], digits[y][k]);
        r[k] = q.residual(digits[x][k], digits[y][k]);
      }
      ops.star[x * n + y] = power_index(s, b);
      ops.residual[x * n + y] = power_index(r, b);
    }
  return ops;
}

BangLawReport bang_law_suite(const FiniteQuantale& q, const SetCat& c, const QuantaleDoctrine& d) {
  BangLawReport rep;
  for (std::size_t x = 0; x < c.sets.size(); ++x) {
    auto ops = quantale_monoid_ops(q, c.sets[x].size());
    const auto& fib = *d.full->fiber[x];
    const auto& bang = d.bang.box[x];
    const auto& obj = c.cat->object_name(x);
    auto law = [&](int k, std::size_t lhs, std::size_t rhs, const std::string& w) {
      ++rep.checked[k];
      if (lhs == rhs) ++rep.equalities[k];
      if (!fib.leq(lhs, rhs)) rep.violations.push_back({"(" + std::to_string(k + 1) + ")", obj + ":" + w});
    };
    law(2, ops.e, bang(ops.e), fib.name(ops.e));
    for (std::size_t a = 0; a < fib.size(); ++a) {
      auto ba = bang(a);
      law(0, ba, ops.e, fib.name(a));
      law(1, ba, ops.mul(ba, ba), fib.name(a));
      for (std::size_t b = 0; b < fib.size(); ++b)
        law(3, ops.mul(ba, bang(b)), bang(ops.mul(a, b)), fib.name(a) + "," + fib.name(b));
    }
  }
  return rep;
}

}  // namespace modaldoc
