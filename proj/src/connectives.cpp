#include "modaldoc/instances.hpp"

namespace modaldoc {

namespace {

// Greatest lower bound table; throws when some pair has none.
std::vector<std::size_t> meet_table(const FinPoset& p) {
  const auto n = p.size();
  std::vector<std::size_t> out(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::optional<std::size_t> best;
      for (std::size_t c = 0; c < n; ++c)
        if (p.leq(c, a) && p.leq(c, b) && (!best || p.leq(*best, c))) best = c;
      if (!best) throw ModelError("no meet of " + p.name(a) + " and " + p.name(b));
      for (std::size_t c = 0; c < n; ++c)
        if (p.leq(c, a) && p.leq(c, b) && !p.leq(c, *best))
          throw ModelError("no meet of " + p.name(a) + " and " + p.name(b));
      out[a * n + b] = *best;
    }
  return out;
}

}  // namespace

ConnectiveModality conjunction_modality(const DocPtr& p) {
  const auto& C = *p->base;
  std::vector<std::vector<std::size_t>> meets;
  for (const auto& f : p->fiber) meets.push_back(meet_table(*f));
  for (std::size_t a = 0; a < C.num_arrows(); ++a) {
    const auto& r = p->reindex[a];
    const auto m = r.src()->size(), k = r.dst()->size();
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        if (r(meets[C.dst(a)][x * m + y]) != meets[C.src(a)][r(x) * k + r(y)])
          throw ModelError("reindexing along " + C.arrow(a).name + " does not preserve the meet of " +
                           r.src()->name(x) + " and " + r.src()->name(y));
  }
  auto sq = square_doctrine(p);
  std::vector<MonotoneMap> meet;
  for (std::size_t x = 0; x < C.num_objects(); ++x)
    meet.push_back(tabulate(sq.doctrine->fiber[x], p->fiber[x], [&](std::size_t e) { return meets[x][e]; }));
  auto adj = vertical_adjunction(p, sq.doctrine, sq.diagonal.f, meet);
  return ConnectiveModality{adj, vertical_modality(adj)};
}

std::vector<ProductChoice> finset_products(const SetCat& c, std::size_t x) {
  std::vector<ProductChoice> out;
  const auto nx = c.sets.at(x).size();
  if (nx == 0) return out;
  for (std::size_t y = 0; y < c.sets.size(); ++y) {
    const auto want = c.sets[y].size() * nx;
    for (std::size_t z = 0; z < c.sets.size(); ++z) {
      if (c.sets[z].size() != want) continue;
      std::vector<std::size_t> p1, p2;
      for (std::size_t k = 0; k < want; ++k) {
        p1.push_back(k / nx);
        p2.push_back(k % nx);
      }
      auto a1 = c.cat->find_by_key(z, y, p1);
      auto a2 = c.cat->find_by_key(z, x, p2);
      if (a1 && a2) {
        out.push_back({y, z, *a1, *a2});
        break;
      }
    }
  }
  return out;
}

ConnectiveModality forall_modality(const SetCat& c, std::size_t x) {
  auto pw = powerset_doctrine(c);
  auto pd = power_doctrine(pw, x, finset_products(c, x));
  std::vector<MonotoneMap> all;
  for (const auto& w : pd.weakening.f) {
    auto r = right_adjoint(w);
    if (!r) throw ModelError("weakening has no right adjoint");
    all.push_back(*r);
  }
  auto adj = vertical_adjunction(pd.restricted, pd.doctrine, pd.weakening.f, all);
  return ConnectiveModality{adj, vertical_modality(adj)};
}

}  // namespace modaldoc
