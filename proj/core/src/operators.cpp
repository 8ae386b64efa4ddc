#include "cik/operators.hpp"

#include <unordered_set>

#include "cik/error.hpp"
#include "cik/hierarchy.hpp"

namespace cik {

OperatorContext::OperatorContext(Frame frame) : frame_(std::move(frame)) {
  for (const auto& agent : frame_.agents()) {
    auto c = std::make_unique<AgentCache>();
    c->subspaces.reserve(agent.basis.size());
    for (const auto& e : agent.basis.elements()) c->subspaces.push_back(subspace_basis(agent.basis, e));
    cache_.push_back(std::move(c));
  }
}

const EvidenceBasis& OperatorContext::subspace(std::size_t agent, std::size_t element) const {
  return cache_.at(agent)->subspaces.at(element);
}

const Topology& OperatorContext::topology(std::size_t agent) const {
  const AgentCache& c = *cache_.at(agent);
  std::call_once(c.topology_once, [&] { c.topology.emplace(generate_topology(basis(agent))); });
  return *c.topology;
}

const std::vector<WorldSet>& OperatorContext::two_opens(std::size_t agent) const {
  const AgentCache& c = *cache_.at(agent);
  std::call_once(c.two_open_once, [&] {
    auto opens = topology(agent).opens();
    std::unordered_set<WorldSet::Bits> seen;
    for (const auto& o : opens) {
      for (const auto& inner : opens) {
        if (!inner.subset_of(o)) continue;
        WorldSet d = o - inner;
        if (seen.insert(d.bits()).second) c.two_opens.push_back(d);
      }
    }
  });
  return c.two_opens;
}

const std::vector<bool>& OperatorContext::yes_profile(std::size_t agent, const WorldSet& w) const {
  const AgentCache& c = *cache_.at(agent);
  {
    std::lock_guard lock(c.yes_mutex);
    auto it = c.yes.find(w.bits());
    if (it != c.yes.end()) return it->second;
  }
  const EvidenceBasis& b = basis(agent);
  std::vector<bool> profile(b.size());
  for (std::size_t e = 0; e < b.size(); ++e) {
    profile[e] = yes_in_subspace(c.subspaces[e], w & b.element(e), tolerance(agent));
  }
  std::lock_guard lock(c.yes_mutex);
  // References into an unordered_map survive rehashing.
  return c.yes.emplace(w.bits(), std::move(profile)).first->second;
}

WorldSet op_R(const OperatorContext& ctx, std::size_t agent, const WorldSet& w) {
  const EvidenceBasis& b = ctx.basis(agent);
  const auto& yes = ctx.yes_profile(agent, w);
  WorldSet out = ctx.frame().none();
  for (std::size_t e = 0; e < b.size(); ++e) {
    if (yes[e]) out |= b.element(e);
  }
  check_invariant(b.is_open(out), "R is not open");
  return out;
}

WorldSet op_I(const OperatorContext& ctx, std::size_t agent, const WorldSet& w, const WorldSet& p) {
  const EvidenceBasis& b = ctx.basis(agent);
  const auto& yes = ctx.yes_profile(agent, w);
  WorldSet bad = ctx.frame().none();
  for (std::size_t e = 0; e < b.size(); ++e) {
    if (yes[e] && !(w & b.element(e)).subset_of(p)) bad |= b.element(e);
  }
  return ctx.omega() - bad;
}

WorldSet op_B(const OperatorContext& ctx, std::size_t agent, const WorldSet& w, const WorldSet& p) {
  return op_R(ctx, agent, w) & op_I(ctx, agent, w, p);
}

WorldSet op_S(const OperatorContext& ctx, std::size_t agent, const WorldSet& p) {
  const EvidenceBasis& b = ctx.basis(agent);
  WorldSet out = ctx.frame().none();
  if (ctx.tolerance(agent) == 0) {
    ctx.omega().for_each([&](std::size_t w) {
      if (b.minimal_open(w).subset_of(p)) out = out.with(w);
    });
    return out;
  }
  // w lies in some O \ O' ⊆ P exactly when the hull of its least evidence
  // outside P misses w.
  p.for_each([&](std::size_t w) {
    if (!b.hull(b.minimal_open(w) - p).contains(w)) out = out.with(w);
  });
  return out;
}

WorldSet op_R(const OperatorContext& ctx, std::string_view agent, const WorldSet& w) {
  return op_R(ctx, ctx.agent_index(agent), w);
}
WorldSet op_I(const OperatorContext& ctx, std::string_view agent, const WorldSet& w, const WorldSet& p) {
  return op_I(ctx, ctx.agent_index(agent), w, p);
}
WorldSet op_B(const OperatorContext& ctx, std::string_view agent, const WorldSet& w, const WorldSet& p) {
  return op_B(ctx, ctx.agent_index(agent), w, p);
}
WorldSet op_S(const OperatorContext& ctx, std::string_view agent, const WorldSet& p) {
  return op_S(ctx, ctx.agent_index(agent), p);
}

WorldSet op_E_step(const OperatorContext& ctx, const WorldSet& w, const WorldSet& x) {
  WorldSet out = ctx.omega();
  for (std::size_t i = 0; i < ctx.agent_count(); ++i) out &= op_B(ctx, i, w, x);
  return out;
}

WorldSet op_G(const OperatorContext& ctx, const WorldSet& w, const WorldSet& p) {
  const WorldSet first = op_E_step(ctx, w, p);
  WorldSet e = ctx.omega();  // e^k, started from Ω
  WorldSet direct = p;       // E^k, started from P
  while (true) {
    WorldSet next = first & op_E_step(ctx, w, e);
    direct = op_E_step(ctx, w, direct);
    check_invariant(next == direct, "G iteration disagrees with direct E^k");
    check_invariant(next.subset_of(e), "G iteration is not descending");
    if (next == e) return e;
    e = next;
  }
}

WorldSet op_C(const OperatorContext& ctx, const WorldSet& p) {
  WorldSet x = p;
  while (true) {
    WorldSet next = p;
    for (std::size_t i = 0; i < ctx.agent_count(); ++i) next &= op_S(ctx, i, x);
    check_invariant(next.subset_of(x), "C iteration is not descending");
    if (next == x) return x;
    x = next;
  }
}

bool open_for_all(const OperatorContext& ctx, const WorldSet& x) {
  for (std::size_t i = 0; i < ctx.agent_count(); ++i) {
    if (!is_k_open(ctx.basis(i), x, static_cast<long>(ctx.tolerance(i)) + 1)) return false;
  }
  return true;
}

WorldSet op_L(const OperatorContext& ctx, const WorldSet& p, std::size_t cap) {
  const WorldSet c = op_C(ctx, p);
  if (open_for_all(ctx, c)) return c;
  if (ctx.frame().world_count() > cap) {
    throw Infeasible("L needs subset enumeration over " + std::to_string(ctx.frame().world_count()) +
                     " worlds, cap is " + std::to_string(cap));
  }
  WorldSet acc = ctx.frame().none();
  const auto universe = ctx.frame().universe();
  const WorldSet::Bits full = c.bits();
  for (WorldSet::Bits sub = full; sub != 0; sub = (sub - 1) & full) {
    WorldSet x = WorldSet::from_bits(universe, sub);
    if (x.subset_of(acc)) continue;
    if (open_for_all(ctx, x)) acc |= x;
  }
  return acc;
}

std::size_t n_star(const OperatorContext& ctx, std::size_t agent, const WorldSet& p) {
  const WorldSet c = op_C(ctx, p);
  auto r = open_rank(ctx.basis(agent), c);
  if (r.infinite()) throw Infeasible("common inductive knowledge has infinite rank for this agent");
  return *r.rank > 0 ? *r.rank - 1 : 0;
}

std::size_t n_star(const OperatorContext& ctx, std::string_view agent, const WorldSet& p) {
  return n_star(ctx, ctx.agent_index(agent), p);
}

}  // namespace cik
