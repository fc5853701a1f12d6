#include "modaldoc/order.hpp"

#include <algorithm>

namespace modaldoc {

namespace {
thread_local std::size_t g_cap = 0;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

EnumerationCap::EnumerationCap(std::size_t limit) : previous_(g_cap) { g_cap = limit; }
EnumerationCap::~EnumerationCap() { g_cap = previous_; }
std::size_t enumeration_cap() { return g_cap; }

void enforce_cap(std::size_t n, const std::string& what) {
  if (g_cap != 0 && n > g_cap)
    throw CapExceeded("refused: " + what + " has " + std::to_string(n) +
                      " elements, above --max-size " + std::to_string(g_cap));
}

Violations poset_law_violations(const std::vector<std::string>& names,
                                const std::vector<boost::dynamic_bitset<>>& up) {
  Violations out;
  const std::size_t n = names.size();
  for (std::size_t a = 0; a < n; ++a)
    if (!up[a][a]) out.push_back({"reflexivity", names[a]});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (up[a][b] && up[b][a]) out.push_back({"antisymmetry", "(" + names[a] + "," + names[b] + ")"});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!up[a][b]) continue;
      // every c above b must be above a
      auto missing = up[b] - up[a];
      for (auto c = missing.find_first(); c != boost::dynamic_bitset<>::npos; c = missing.find_next(c))
        out.push_back({"transitivity", "(" + names[a] + "," + names[b] + "," + names[c] + ")"});
    }
  return out;
}

FinPoset::FinPoset(std::vector<std::string> names, std::vector<boost::dynamic_bitset<>> up)
    : names_(std::move(names)), up_(std::move(up)) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (!index_.emplace(names_[i], i).second)
      throw ModelError("duplicate element identifier '" + names_[i] + "'");
  auto v = poset_law_violations(names_, up_);
  if (!v.empty()) throw ModelError("not a partial order: " + v.front().law + " " + v.front().witness);
}

std::optional<std::size_t> FinPoset::find(const std::string& n) const {
  auto it = index_.find(n);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FinPoset::index(const std::string& n) const {
  auto i = find(n);
  if (!i) throw ModelError("unknown element '" + n + "'");
  return *i;
}

bool FinPoset::same_as(const FinPoset& other) const {
  return this == &other || (names_ == other.names_ && up_ == other.up_);
}

Checked<PosetPtr> check_poset(const std::vector<std::string>& elements,
                              const std::vector<std::pair<std::string, std::string>>& leq) {
  std::unordered_map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (!idx.emplace(elements[i], i).second)
      throw ModelError("duplicate element identifier '" + elements[i] + "'");
  std::vector<boost::dynamic_bitset<>> up(elements.size(), boost::dynamic_bitset<>(elements.size()));
  for (const auto& [a, b] : leq) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end() || ib == idx.end())
      throw ModelError("relation mentions unknown element '" + (ia == idx.end() ? a : b) + "'");
    up[ia->second][ib->second] = true;
  }
  Checked<PosetPtr> out;
  out.violations = poset_law_violations(elements, up);
  if (out.violations.empty()) out.value = std::make_shared<const FinPoset>(elements, std::move(up));
  return out;
}

PosetPtr make_poset(std::vector<std::string> names,
                    const std::function<bool(std::size_t, std::size_t)>& leq) {
  const std::size_t n = names.size();
  enforce_cap(n, "poset");
  std::vector<boost::dynamic_bitset<>> up(n, boost::dynamic_bitset<>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (leq(a, b)) up[a][b] = true;
  return std::make_shared<const FinPoset>(std::move(names), std::move(up));
}

PosetPtr chain_poset(const std::vector<std::string>& names) {
  return make_poset(names, [](std::size_t a, std::size_t b) { return a <= b; });
}

PosetPtr discrete_poset(const std::vector<std::string>& names) {
  return make_poset(names, [](std::size_t a, std::size_t b) { return a == b; });
}

PosetPtr subposet(const PosetPtr& p, const std::vector<std::size_t>& keep) {
  std::vector<std::string> names;
  for (auto k : keep) names.push_back(p->name(k));
  return make_poset(std::move(names),
                    [&](std::size_t a, std::size_t b) { return p->leq(keep[a], keep[b]); });
}

PosetPtr product_poset(const PosetPtr& p, const PosetPtr& q) {
  const std::size_t m = q->size();
  enforce_cap(p->size() * m, "product fiber");
  std::vector<std::string> names;
  for (std::size_t a = 0; a < p->size(); ++a)
    for (std::size_t b = 0; b < m; ++b) names.push_back("(" + p->name(a) + "," + q->name(b) + ")");
  return make_poset(std::move(names), [&](std::size_t x, std::size_t y) {
    return p->leq(x / m, y / m) && q->leq(x % m, y % m);
  });
}

std::vector<std::size_t> power_digits(std::size_t index, std::size_t base, std::size_t n) {
  std::vector<std::size_t> d(n);
  for (std::size_t k = 0; k < n; ++k) {
    d[k] = index % base;
    index /= base;
  }
  return d;
}

std::size_t power_index(const std::vector<std::size_t>& digits, std::size_t base) {
  std::size_t idx = 0;
  for (std::size_t k = digits.size(); k-- > 0;) idx = idx * base + digits[k];
  return idx;
}

PosetPtr power_poset(const PosetPtr& p, std::size_t n) {
  const std::size_t b = p->size();
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    total *= b;
    enforce_cap(total, "function-space fiber");
  }
  std::vector<std::vector<std::size_t>> digits(total);
  std::vector<std::string> names(total);
  for (std::size_t i = 0; i < total; ++i) {
    digits[i] = power_digits(i, b, n);
    std::vector<std::string> parts;
    for (auto d : digits[i]) parts.push_back(p->name(d));
    names[i] = "[" + join(parts, ",") + "]";
  }
  return make_poset(std::move(names), [&](std::size_t x, std::size_t y) {
    for (std::size_t k = 0; k < n; ++k)
      if (!p->leq(digits[x][k], digits[y][k])) return false;
    return true;
  });
}

std::string subset_name(const std::vector<std::string>& ground, std::uint64_t mask) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < ground.size(); ++i)
    if (mask >> i & 1U) parts.push_back(ground[i]);
  return "{" + join(parts, ",") + "}";
}

PosetPtr powerset_poset(const std::vector<std::string>& ground) {
  if (ground.size() > 20) throw ModelError("powerset ground set too large");
  const std::size_t total = std::size_t{1} << ground.size();
  enforce_cap(total, "powerset fiber");
  std::vector<std::string> names(total);
  for (std::size_t m = 0; m < total; ++m) names[m] = subset_name(ground, m);
  return make_poset(std::move(names), [](std::size_t a, std::size_t b) { return (a & ~b) == 0; });
}

MonotoneMap::MonotoneMap(PosetPtr src, PosetPtr dst, std::vector<std::size_t> graph)
    : src_(std::move(src)), dst_(std::move(dst)), graph_(std::move(graph)) {
  if (graph_.size() != src_->size()) throw ModelError("map is not total on its source");
  for (std::size_t i = 0; i < graph_.size(); ++i)
    if (graph_[i] >= dst_->size())
      throw ModelError("image of '" + src_->name(i) + "' lies outside the target poset");
}

bool MonotoneMap::operator==(const MonotoneMap& o) const {
  return graph_ == o.graph_ && src_->same_as(*o.src_) && dst_->same_as(*o.dst_);
}

Violations check_monotone(const MonotoneMap& m) {
  Violations out;
  const auto& s = *m.src();
  const auto& d = *m.dst();
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = 0; b < s.size(); ++b)
      if (s.leq(a, b) && !d.leq(m(a), m(b)))
        out.push_back({"monotone", "(" + s.name(a) + "," + s.name(b) + ")"});
  return out;
}

MonotoneMap identity_map(const PosetPtr& p) {
  std::vector<std::size_t> g(p->size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = i;
  return MonotoneMap(p, p, std::move(g));
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  if (f.dst()->size() != g.src()->size()) throw ModelError("maps are not composable");
  std::vector<std::size_t> out(f.graph().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = g(f(i));
  return MonotoneMap(f.src(), g.dst(), std::move(out));
}

MonotoneMap constant_map(const PosetPtr& src, const PosetPtr& dst, std::size_t value) {
  return MonotoneMap(src, dst, std::vector<std::size_t>(src->size(), value));
}

MonotoneMap tabulate(const PosetPtr& src, const PosetPtr& dst,
                     const std::function<std::size_t(std::size_t)>& fn) {
  std::vector<std::size_t> g(src->size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = fn(i);
  return MonotoneMap(src, dst, std::move(g));
}

bool is_identity(const MonotoneMap& m) {
  if (m.src()->size() != m.dst()->size()) return false;
  for (std::size_t i = 0; i < m.graph().size(); ++i)
    if (m(i) != i) return false;
  return true;
}

bool pointwise_leq(const MonotoneMap& f, const MonotoneMap& g) {
  for (std::size_t i = 0; i < f.graph().size(); ++i)
    if (!f.dst()->leq(f(i), g(i))) return false;
  return true;
}

bool injective(const MonotoneMap& m) {
  std::vector<char> seen(m.dst()->size(), 0);
  for (auto y : m.graph()) {
    if (seen[y]) return false;
    seen[y] = 1;
  }
  return true;
}

std::vector<std::size_t> image(const MonotoneMap& m) {
  std::vector<char> seen(m.dst()->size(), 0);
  for (auto y : m.graph()) seen[y] = 1;
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < seen.size(); ++y)
    if (seen[y]) out.push_back(y);
  return out;
}

bool surjective(const MonotoneMap& m) { return image(m).size() == m.dst()->size(); }

std::optional<MonotoneMap> right_adjoint(const MonotoneMap& f) {
  const auto& s = *f.src();
  const auto& d = *f.dst();
  std::vector<std::size_t> g(d.size());
  for (std::size_t y = 0; y < d.size(); ++y) {
    std::optional<std::size_t> best;
    for (std::size_t x = 0; x < s.size(); ++x)
      if (d.leq(f(x), y) && (!best || s.leq(*best, x))) best = x;
    if (!best) return std::nullopt;
    for (std::size_t x = 0; x < s.size(); ++x)
      if (d.leq(f(x), y) && !s.leq(x, *best)) return std::nullopt;
    g[y] = *best;
  }
  return MonotoneMap(f.dst(), f.src(), std::move(g));
}

std::optional<MonotoneMap> left_adjoint(const MonotoneMap& f) {
  const auto& s = *f.src();
  const auto& d = *f.dst();
  std::vector<std::size_t> g(d.size());
  for (std::size_t y = 0; y < d.size(); ++y) {
    std::optional<std::size_t> best;
    for (std::size_t x = 0; x < s.size(); ++x)
      if (d.leq(y, f(x)) && (!best || s.leq(x, *best))) best = x;
    if (!best) return std::nullopt;
    for (std::size_t x = 0; x < s.size(); ++x)
      if (d.leq(y, f(x)) && !s.leq(*best, x)) return std::nullopt;
    g[y] = *best;
  }
  return MonotoneMap(f.dst(), f.src(), std::move(g));
}

FinLattice::FinLattice(PosetPtr carrier) : carrier_(std::move(carrier)) {
  const auto& p = *carrier_;
  const std::size_t n = p.size();
  if (n == 0) throw ModelError("empty poset is not a lattice");
  meet_.assign(n * n, 0);
  join_.assign(n * n, 0);
  std::vector<boost::dynamic_bitset<>> down(n, boost::dynamic_bitset<>(n)), up(n);
  for (std::size_t a = 0; a < n; ++a) {
    up[a] = p.up(a);
    for (std::size_t b = 0; b < n; ++b)
      if (p.leq(a, b)) down[b].set(a);
  }
  // The c in s with s inside rel[c]: greatest for rel = down, least for rel = up.
  auto extreme = [](const boost::dynamic_bitset<>& s, const std::vector<boost::dynamic_bitset<>>& rel)
      -> std::optional<std::size_t> {
    for (auto c = s.find_first(); c != boost::dynamic_bitset<>::npos; c = s.find_next(c))
      if (s.is_subset_of(rel[c])) return c;
    return std::nullopt;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      auto lo = extreme(down[a] & down[b], down);
      auto hi = extreme(up[a] & up[b], up);
      if (!lo || !hi) throw ModelError("missing meet or join of (" + p.name(a) + "," + p.name(b) + ")");
      meet_[a * n + b] = meet_[b * n + a] = *lo;
      join_[a * n + b] = join_[b * n + a] = *hi;
    }
  top_ = bottom_ = 0;
  for (std::size_t c = 1; c < n; ++c) {
    top_ = join(top_, c);
    bottom_ = meet(bottom_, c);
  }
}

std::size_t FinLattice::join_all(const std::vector<std::size_t>& xs) const {
  std::size_t acc = bottom_;
  for (auto x : xs) acc = join(acc, x);
  return acc;
}

std::size_t FinLattice::meet_all(const std::vector<std::size_t>& xs) const {
  std::size_t acc = top_;
  for (auto x : xs) acc = meet(acc, x);
  return acc;
}

FinLattice powerset_lattice(const std::vector<std::string>& ground) {
  return FinLattice(powerset_poset(ground));
}

GfpResult<std::size_t> gfp(const FinLattice& lattice, const MonotoneMap& f) {
  if (!f.src()->same_as(*lattice.carrier()) || !f.dst()->same_as(*lattice.carrier()))
    throw ModelError("gfp needs an endomap of the lattice carrier");
  auto v = check_monotone(f);
  if (!v.empty()) throw ModelError("gfp of a non-monotone map: " + v.front().witness);
  return gfp_iterate(lattice.top(), [&](std::size_t x) { return f(x); });
}

}  // namespace modaldoc
