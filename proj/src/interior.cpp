#include "modaldoc/interior.hpp"

namespace modaldoc {

Violations check_interior(const InteriorOp& op) {
  const auto& d = *op.doctrine;
  const auto& C = *d.base;
  if (op.box.size() != C.num_objects()) throw ModelError("interior operator missing at some object");
  Violations out;
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    const auto& b = op.box[x];
    if (!b.src()->same_as(*d.fiber[x]) || !b.dst()->same_as(*d.fiber[x]))
      throw ModelError("interior operator at " + C.object_name(x) + " is not an endo-map of the fiber");
    append(out, check_monotone(b), "monotone " + C.object_name(x) + " ");
  }
  for (std::size_t t = 0; t < C.num_arrows(); ++t) {
    const auto& r = d.reindex[t];
    const auto& by = op.box[C.dst(t)];
    const auto& bx = op.box[C.src(t)];
    for (std::size_t e = 0; e < r.src()->size(); ++e)
      if (bx(r(e)) != r(by(e))) {
        out.push_back({"naturality", C.arrow(t).name + " at " + r.src()->name(e)});
        break;
      }
  }
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    const auto& b = op.box[x];
    const auto& p = *d.fiber[x];
    for (std::size_t e = 0; e < p.size(); ++e) {
      if (!p.leq(b(e), e)) out.push_back({"T", C.object_name(x) + ":" + p.name(e)});
      if (!p.leq(b(e), b(b(e)))) out.push_back({"4", C.object_name(x) + ":" + p.name(e)});
      if (b(b(e)) != b(e)) out.push_back({"idempotence", C.object_name(x) + ":" + p.name(e)});
    }
  }
  return out;
}

InteriorOp identity_interior(const DocPtr& d) {
  InteriorOp op{d, {}};
  for (const auto& f : d->fiber) op.box.push_back(identity_map(f));
  return op;
}

bool same_interior(const InteriorOp& a, const InteriorOp& b) {
  if (!same_doctrine(a.doctrine, b.doctrine) || a.box.size() != b.box.size()) return false;
  for (std::size_t x = 0; x < a.box.size(); ++x)
    if (a.box[x].graph() != b.box[x].graph()) return false;
  return true;
}

std::vector<std::size_t> stable_elements(const InteriorOp& op, std::size_t x) {
  std::vector<std::size_t> out;
  const auto& b = op.box.at(x);
  for (std::size_t e = 0; e < b.graph().size(); ++e)
    if (b(e) == e) out.push_back(e);
  return out;
}

StableSubdoctrine stable_subdoctrine(const InteriorOp& op) {
  const auto& d = *op.doctrine;
  const auto& C = *d.base;
  auto s = std::make_shared<Doctrine>();
  s->base = d.base;
  StableSubdoctrine out;
  std::vector<std::vector<long>> pos;
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    out.embed.push_back(stable_elements(op, x));
    s->fiber.push_back(subposet(d.fiber[x], out.embed.back()));
    std::vector<long> p(d.fiber[x]->size(), -1);
    for (std::size_t i = 0; i < out.embed.back().size(); ++i) p[out.embed.back()[i]] = static_cast<long>(i);
    pos.push_back(std::move(p));
  }
  for (std::size_t t = 0; t < C.num_arrows(); ++t) {
    auto x = C.src(t), y = C.dst(t);
    std::vector<std::size_t> g;
    for (auto e : out.embed[y]) {
      long i = pos[x][d.reindex[t](e)];
      if (i < 0) throw ModelError("reindexing along " + C.arrow(t).name + " breaks stability");
      g.push_back(static_cast<std::size_t>(i));
    }
    s->reindex.emplace_back(s->fiber[y], s->fiber[x], std::move(g));
  }
  out.doctrine = s;
  out.inclusion = OneArrow{s, op.doctrine, identity_functor(d.base), {}};
  for (std::size_t x = 0; x < C.num_objects(); ++x)
    out.inclusion.f.emplace_back(s->fiber[x], d.fiber[x], out.embed[x]);
  return out;
}

bool preserves_stability(const OneArrow& a, const InteriorOp& op_p, const InteriorOp& op_q) {
  for (std::size_t x = 0; x < a.f.size(); ++x) {
    const auto& bq = op_q.box[a.F.obj[x]];
    for (std::size_t e = 0; e < a.f[x].graph().size(); ++e) {
      auto v = a.f[x](op_p.box[x](e));
      if (bq(v) != v) return false;
    }
  }
  return true;
}

Violations check_modal_one_arrow(const OneArrow& a, const InteriorOp& op_p, const InteriorOp& op_q) {
  if (!same_doctrine(a.src, op_p.doctrine) || !same_doctrine(a.dst, op_q.doctrine))
    throw ModelError("modal 1-arrow boundaries do not match the operators");
  Violations out;
  const auto& C = *a.src->base;
  for (std::size_t x = 0; x < a.f.size(); ++x) {
    const auto& q = *a.dst->fiber[a.F.obj[x]];
    const auto& bq = op_q.box[a.F.obj[x]];
    for (std::size_t e = 0; e < a.f[x].graph().size(); ++e) {
      auto lhs = a.f[x](op_p.box[x](e));
      if (!q.leq(lhs, bq(a.f[x](e))))
        out.push_back({"modal", C.object_name(x) + ":" + a.src->fiber[x]->name(e)});
    }
  }
  if (out.empty() != preserves_stability(a, op_p, op_q))
    out.push_back({"stability-equivalence", "inequality and stability forms disagree"});
  return out;
}

}  // namespace modaldoc
