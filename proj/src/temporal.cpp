#include "modaldoc/temporal.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>
#include <deque>

namespace modaldoc {

namespace {

std::string op_label(const FCoalgebra& c, std::size_t x) { return c.name + ":" + c.states[x]; }

void require_op(const FCoalgebra& c, LiftKind lift) {
  const bool stream = c.kind == CoalgebraKind::Stream;
  if (stream != (lift == LiftKind::Identity))
    throw ModelError("lift does not match the kind of coalgebra " + c.name);
}

}  // namespace

Violations check_coalgebra(const FCoalgebra& c) {
  Violations out;
  if (c.step.size() != c.states.size()) out.push_back({"step-total", c.name});
  if (c.states.size() > 63) out.push_back({"size", c.name + " has more than 63 states"});
  for (std::size_t x = 0; x < c.step.size() && x < c.states.size(); ++x) {
    if (c.kind == CoalgebraKind::Stream && c.step[x].size() != 1) out.push_back({"stream-step", op_label(c, x)});
    for (auto y : c.step[x])
      if (y >= c.states.size()) out.push_back({"step-range", op_label(c, x)});
  }
  return out;
}

LiftKind lift_of(TemporalOp op) {
  switch (op) {
    case TemporalOp::G:
      return LiftKind::Identity;
    case TemporalOp::AG:
      return LiftKind::Forall;
    case TemporalOp::EG:
      return LiftKind::Exists;
  }
  return LiftKind::Identity;
}

CoalgebraKind kind_of(TemporalOp op) { return op == TemporalOp::G ? CoalgebraKind::Stream : CoalgebraKind::Tree; }

std::string op_name(TemporalOp op) {
  switch (op) {
    case TemporalOp::G:
      return "G";
    case TemporalOp::AG:
      return "AG";
    case TemporalOp::EG:
      return "EG";
  }
  return "";
}

TemporalOp parse_temporal_op(const std::string& name) {
  if (name == "G") return TemporalOp::G;
  if (name == "AG") return TemporalOp::AG;
  if (name == "EG") return TemporalOp::EG;
  throw ModelError("unknown temporal operator '" + name + "'");
}

bool lift_holds(LiftKind lift, const std::vector<std::size_t>& tuple, Mask beta) {
  switch (lift) {
    case LiftKind::Identity:
      return tuple.size() == 1 && (beta >> tuple[0] & 1U);
    case LiftKind::Forall:
      for (auto y : tuple)
        if (!(beta >> y & 1U)) return false;
      return true;
    case LiftKind::Exists:
      for (auto y : tuple)
        if (beta >> y & 1U) return true;
      return false;
  }
  return false;
}

Mask psi(const FCoalgebra& c, LiftKind lift, Mask alpha, Mask beta) {
  Mask out = 0;
  for (std::size_t x = 0; x < c.states.size(); ++x)
    if ((alpha >> x & 1U) && lift_holds(lift, c.step[x], beta)) out |= Mask{1} << x;
  return out;
}

GfpResult<Mask> gfp_modality(const FCoalgebra& c, LiftKind lift, Mask alpha) {
  require_op(c, lift);
  const Mask all = full_mask(c.states.size());
  if (alpha & ~all) throw ModelError("predicate is not a subset of the states of " + c.name);
  return gfp_iterate(all, [&](Mask beta) { return psi(c, lift, alpha, beta); });
}

Mask g_oracle(const FCoalgebra& c, Mask alpha) {
  require_op(c, LiftKind::Identity);
  Mask out = 0;
  for (std::size_t x = 0; x < c.states.size(); ++x) {
    // The orbit repeats after at most |A| steps.
    bool ok = true;
    std::size_t y = x;
    for (std::size_t k = 0; ok && k <= c.states.size(); ++k) {
      ok = (alpha >> y & 1U) != 0;
      y = c.step[y][0];
    }
    if (ok) out |= Mask{1} << x;
  }
  return out;
}

Mask ag_oracle(const FCoalgebra& c, Mask alpha) {
  require_op(c, LiftKind::Forall);
  Mask out = 0;
  for (std::size_t x = 0; x < c.states.size(); ++x) {
    Mask seen = Mask{1} << x;
    std::deque<std::size_t> queue{x};
    while (!queue.empty()) {
      auto y = queue.front();
      queue.pop_front();
      for (auto z : c.step[y])
        if (!(seen >> z & 1U)) {
          seen |= Mask{1} << z;
          queue.push_back(z);
        }
    }
    if ((seen & ~alpha) == 0) out |= Mask{1} << x;
  }
  return out;
}

Mask eg_oracle(const FCoalgebra& c, Mask alpha) {
  require_op(c, LiftKind::Exists);
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  const std::size_t n = c.states.size();
  Graph g(n);
  for (std::size_t x = 0; x < n; ++x)
    if (alpha >> x & 1U)
      for (auto y : c.step[x])
        if (alpha >> y & 1U) boost::add_edge(x, y, g);
  std::vector<std::size_t> comp(n);
  std::size_t k = boost::strong_components(g, comp.data());
  std::vector<std::size_t> comp_size(k, 0);
  for (std::size_t x = 0; x < n; ++x)
    if (alpha >> x & 1U) ++comp_size[comp[x]];
  // A state lies on a cycle when its component is non-trivial or it loops on itself.
  Mask good = 0;
  for (std::size_t x = 0; x < n; ++x) {
    if (!(alpha >> x & 1U)) continue;
    bool loop = false;
    for (auto y : c.step[x]) loop = loop || y == x;
    if (comp_size[comp[x]] > 1 || loop) good |= Mask{1} << x;
  }
  // Backward closure inside alpha.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x) {
      if (!(alpha >> x & 1U) || (good >> x & 1U)) continue;
      for (auto y : c.step[x])
        if (good >> y & 1U) {
          good |= Mask{1} << x;
          changed = true;
          break;
        }
    }
  }
  return good;
}

Mask temporal_oracle(const FCoalgebra& c, TemporalOp op, Mask alpha) {
  switch (op) {
    case TemporalOp::G:
      return g_oracle(c, alpha);
    case TemporalOp::AG:
      return ag_oracle(c, alpha);
    case TemporalOp::EG:
      return eg_oracle(c, alpha);
  }
  return 0;
}

std::vector<std::vector<std::size_t>> homomorphisms(const FCoalgebra& a, const FCoalgebra& b) {
  if (a.kind != b.kind) return {};
  std::vector<std::vector<std::size_t>> out;
  for (auto& h : all_functions(a.states.size(), b.states.size())) {
    bool ok = true;
    for (std::size_t x = 0; ok && x < a.states.size(); ++x) {
      const auto& s = a.step[x];
      const auto& t = b.step[h[x]];
      ok = s.size() == t.size();
      for (std::size_t i = 0; ok && i < s.size(); ++i) ok = h[s[i]] == t[i];
    }
    if (ok) out.push_back(std::move(h));
  }
  return out;
}

TemporalDoctrine temporal_doctrine(const std::vector<FCoalgebra>& coalgebras, TemporalOp op) {
  std::vector<std::string> names;
  for (const auto& c : coalgebras) {
    auto v = check_coalgebra(c);
    if (!v.empty()) throw ModelError("invalid coalgebra " + c.name + ": " + v.front().law + " " + v.front().witness);
    if (c.kind != kind_of(op)) throw ModelError(op_name(op) + " needs " +
                                                (kind_of(op) == CoalgebraKind::Stream ? "stream" : "tree") +
                                                " coalgebras, " + c.name + " is not one");
    names.push_back(c.name);
  }
  std::vector<ConcreteArrow> arrows;
  for (std::size_t i = 0; i < coalgebras.size(); ++i)
    for (std::size_t j = 0; j < coalgebras.size(); ++j)
      for (auto& h : homomorphisms(coalgebras[i], coalgebras[j])) {
        std::vector<std::string> img;
        for (auto v : h) img.push_back(coalgebras[j].states[v]);
        arrows.push_back({names[i] + "->" + names[j] + ":[" + join(img, ",") + "]", i, j, std::move(h)});
      }
  auto base = concrete_category(
      names, arrows,
      [](const ConcreteArrow& g, const ConcreteArrow& f) {
        std::vector<std::size_t> k;
        for (auto v : f.key) k.push_back(g.key[v]);
        return k;
      },
      [&](std::size_t o) {
        std::vector<std::size_t> k(coalgebras[o].states.size());
        for (std::size_t i = 0; i < k.size(); ++i) k[i] = i;
        return k;
      });
  auto d = std::make_shared<Doctrine>();
  d->base = base;
  for (const auto& c : coalgebras) d->fiber.push_back(powerset_poset(c.states));
  for (std::size_t a = 0; a < base->num_arrows(); ++a) {
    const auto& h = base->keys()[a];
    d->reindex.push_back(tabulate(d->fiber[base->dst(a)], d->fiber[base->src(a)],
                                  [&](std::size_t e) { return static_cast<std::size_t>(preimage(h, e)); }));
  }
  TemporalDoctrine out{coalgebras, op, InteriorOp{d, {}}};
  for (std::size_t i = 0; i < coalgebras.size(); ++i)
    out.modality.box.push_back(tabulate(d->fiber[i], d->fiber[i], [&](std::size_t e) {
      return static_cast<std::size_t>(gfp_modality(coalgebras[i], lift_of(op), e).value);
    }));
  return out;
}

FCoalgebra random_coalgebra(std::mt19937_64& rng, CoalgebraKind kind, std::size_t max_states,
                            const std::string& name) {
  std::uniform_int_distribution<std::size_t> size(1, max_states);
  FCoalgebra c{name, kind, {}, {}};
  const std::size_t n = size(rng);
  std::uniform_int_distribution<std::size_t> state(0, n - 1);
  std::uniform_int_distribution<std::size_t> arity(0, 3);
  for (std::size_t x = 0; x < n; ++x) {
    c.states.push_back("s" + std::to_string(x));
    std::vector<std::size_t> t(kind == CoalgebraKind::Stream ? 1 : arity(rng));
    for (auto& y : t) y = state(rng);
    c.step.push_back(std::move(t));
  }
  return c;
}

void temporal_check(const FCoalgebra& c, TemporalOp op, std::mt19937_64& rng, std::size_t samples,
                    TemporalSuiteReport& report) {
  const std::size_t n = c.states.size();
  const Mask all = full_mask(n);
  auto one = [&](Mask alpha) {
    auto got = gfp_modality(c, lift_of(op), alpha);
    auto want = temporal_oracle(c, op, alpha);
    ++report.queries;
    report.max_iterations = std::max(report.max_iterations, got.iterations);
    if (got.iterations > n + 1) {
      ++report.iteration_overruns;
      report.failures.push_back(c.name + " " + op_name(op) + " " + subset_name(c.states, alpha) + ": " +
                                std::to_string(got.iterations) + " iterations");
    }
    if (got.value != want) {
      ++report.mismatches;
      report.failures.push_back(c.name + " " + op_name(op) + " " + subset_name(c.states, alpha) + ": gfp " +
                                subset_name(c.states, got.value) + " vs oracle " + subset_name(c.states, want));
    }
  };
  ++report.coalgebras;
  if (n <= 5) {
    for (Mask alpha = 0; alpha <= all; ++alpha) one(alpha);
  } else {
    std::uniform_int_distribution<Mask> pick(0, all);
    for (std::size_t k = 0; k < samples; ++k) one(pick(rng));
  }
}

TemporalSuiteReport temporal_random_suite(std::uint64_t seed, std::size_t count, std::size_t max_states) {
  std::mt19937_64 rng(seed);
  TemporalSuiteReport report;
  const TemporalOp ops[] = {TemporalOp::G, TemporalOp::AG, TemporalOp::EG};
  for (std::size_t k = 0; k < count; ++k) {
    auto op = ops[k % 3];
    auto c = random_coalgebra(rng, kind_of(op), max_states, "r" + std::to_string(k));
    temporal_check(c, op, rng, 64, report);
  }
  return report;
}

}  // namespace modaldoc
