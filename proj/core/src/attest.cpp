#include "cik/attest.hpp"

#include <algorithm>
#include <random>

#include "cik/error.hpp"

namespace cik {

std::string_view to_string(Attest a) { return a == Attest::Yes ? "yes" : "defer"; }

std::string_view to_string(FaultBehavior b) {
  switch (b) {
    case FaultBehavior::Random:
      return "random";
    case FaultBehavior::AlwaysYes:
      return "always-yes";
    case FaultBehavior::AlwaysDefer:
      return "always-defer";
  }
  return "?";
}

std::string_view to_string(ShameCause c) { return c == ShameCause::FalseYes ? "false-yes" : "disagreement"; }

DecisionMethod induced_method(const AttestationStrategy& s) {
  DecisionMethod m{s.owner, {}};
  m.verdicts.reserve(s.verdicts.size());
  for (Attest a : s.verdicts) m.verdicts.push_back(a == Attest::Yes ? Verdict::Yes : Verdict::No);
  return m;
}

void require_matches(const Frame& frame, const AttestationProtocol& protocol) {
  if (protocol.strategies.size() != frame.agent_count()) throw DomainError("protocol must have one strategy per agent");
  for (std::size_t i = 0; i < frame.agent_count(); ++i) {
    const auto& s = protocol.strategies[i];
    if (s.owner != frame.agent(i).name) throw DomainError("strategy " + std::to_string(i) + " is not for agent '" + frame.agent(i).name + "'");
    if (s.verdicts.size() != frame.agent(i).basis.size()) {
      throw DomainError("strategy for '" + s.owner + "' does not cover its basis");
    }
  }
}

ProtocolReport verify_protocol(const Frame& frame, const AttestationProtocol& protocol, const WorldSet& p) {
  require_matches(frame, protocol);
  ProtocolReport r;
  r.validity = r.agreement = r.switch_bounds = true;
  r.success_set = frame.omega();
  for (std::size_t i = 0; i < frame.agent_count(); ++i) {
    const AgentSpec& a = frame.agent(i);
    const DecisionMethod m = induced_method(protocol.strategies[i]);
    AgentVerification v{a.name, sigma_yes(m, a.basis), max_switches(m, a.basis, Verdict::Yes), a.tolerance};
    r.validity = r.validity && v.attests.subset_of(p);
    r.switch_bounds = r.switch_bounds && v.within_bound();
    if (!r.agents.empty() && v.attests != r.agents.front().attests) r.agreement = false;
    r.success_set &= v.attests;
    r.agents.push_back(std::move(v));
  }
  r.nontriviality = !r.success_set.empty();
  return r;
}

bool feasible_success_set(const OperatorContext& ctx, const WorldSet& p, const WorldSet& w) {
  return !w.empty() && w.subset_of(p) && open_for_all(ctx, w);
}

namespace {

AttestationProtocol protocol_for(const OperatorContext& ctx, const WorldSet& w) {
  AttestationProtocol proto;
  for (std::size_t i = 0; i < ctx.agent_count(); ++i) {
    const EvidenceBasis& b = ctx.basis(i);
    RankResult r = open_rank(b, w);
    check_invariant(!r.infinite() && *r.rank <= ctx.tolerance(i) + 1, "target is not feasible for an agent");
    DescendingOpenChain chain = r.witness;
    // Trailing empty sets leave the nested difference unchanged.
    while (chain.size() < ctx.tolerance(i) + 1) chain.sets.push_back(ctx.frame().none());
    const DecisionMethod m = method_from_chain(chain, b, ctx.frame().agent(i).name);
    AttestationStrategy s{m.owner, {}};
    for (Verdict v : m.verdicts) s.verdicts.push_back(v == Verdict::Yes ? Attest::Yes : Attest::Defer);
    proto.strategies.push_back(std::move(s));
  }
  return proto;
}

std::string explain_infeasible(const OperatorContext& ctx, const WorldSet& p, const WorldSet& w) {
  const WorldTable& worlds = ctx.frame().worlds();
  const std::string name = worlds.format(w);
  if (w.empty()) return "target is empty";
  if (!w.subset_of(p)) return "target " + name + " is not contained in P = " + worlds.format(p);
  for (std::size_t i = 0; i < ctx.agent_count(); ++i) {
    const std::size_t need = ctx.tolerance(i) + 1;
    RankResult r = open_rank(ctx.basis(i), w);
    if (r.infinite() || *r.rank > need) {
      return "target " + name + " is not " + std::to_string(need) + "-open for agent '" + ctx.frame().agent(i).name +
             "': open rank " + (r.infinite() ? std::string("infinite") : std::to_string(*r.rank)) + " > " +
             std::to_string(need);
    }
  }
  return "target " + name + " is infeasible";
}

// Subsets of `members` of size k, in lexicographic order of member positions.
template <typename Visit>
bool for_each_combination(const std::vector<std::size_t>& members, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  const std::size_t n = members.size();
  while (true) {
    if (visit(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Synthesis synthesize(const OperatorContext& ctx, const WorldSet& p, const std::optional<WorldSet>& target,
                     std::size_t cap) {
  Synthesis out;
  if (target) {
    if (!feasible_success_set(ctx, p, *target)) throw Infeasible(explain_infeasible(ctx, p, *target));
    out.success_set = *target;
  } else {
    const WorldSet c = op_C(ctx, p);
    if (!c.empty() && open_for_all(ctx, c)) {
      out.success_set = c;
      out.common_knowledge_target = true;
    } else {
      if (ctx.frame().world_count() > cap) {
        throw Infeasible("target search needs subset enumeration over " + std::to_string(ctx.frame().world_count()) +
                         " worlds, cap is " + std::to_string(cap));
      }
      const std::vector<std::size_t> members = c.members();
      std::optional<WorldSet> found;
      for (std::size_t k = members.size(); k > 0 && !found; --k) {
        for_each_combination(members, k, [&](const std::vector<std::size_t>& idx) {
          WorldSet x = ctx.frame().none();
          for (std::size_t i : idx) x = x.with(members[i]);
          if (!open_for_all(ctx, x)) return false;
          found = x;
          return true;
        });
      }
      if (!found) throw Infeasible("no non-empty success set exists for P = " + ctx.frame().worlds().format(p));
      out.success_set = *found;
    }
  }
  out.protocol = protocol_for(ctx, out.success_set);
  const ProtocolReport r = verify_protocol(ctx.frame(), out.protocol, p);
  check_invariant(r.solves(), "synthesized protocol fails verification");
  check_invariant(r.success_set == out.success_set, "synthesized protocol has the wrong success set");
  return out;
}

void validate_stream(const Frame& frame, const EvidenceStream& s) {
  const EvidenceBasis& b = frame.agent(s.agent).basis;
  if (s.world >= frame.world_count()) throw DomainError("stream world out of range");
  if (s.chain.empty()) throw DomainError("stream for '" + s.agent + "' is empty");
  for (std::size_t k = 0; k < s.chain.size(); ++k) {
    if (s.chain[k] >= b.size()) throw DomainError("stream element out of range");
    const WorldSet& e = b.element(s.chain[k]);
    if (!e.contains(s.world)) throw DomainError("stream element does not contain the world");
    if (k > 0 && (e == b.element(s.chain[k - 1]) || !e.subset_of(b.element(s.chain[k - 1])))) {
      throw DomainError("stream for '" + s.agent + "' is not strictly descending");
    }
  }
  if (s.chain.back() != b.minimal_index(s.world)) throw DomainError("stream for '" + s.agent + "' stops above the least evidence");
}

EvidenceStream generate_stream(const Frame& frame, std::size_t agent, std::size_t world, std::uint64_t seed) {
  const AgentSpec& a = frame.agent(agent);
  if (world >= frame.world_count()) throw InputError("world index out of range");
  const EvidenceBasis& b = a.basis;
  std::mt19937_64 rng(seed);
  const auto& local = b.evidence_indices(world);
  EvidenceStream s{a.name, world, {local[rng() % local.size()]}};
  const std::size_t least = b.minimal_index(world);
  while (s.chain.back() != least) {
    const WorldSet& cur = b.element(s.chain.back());
    std::vector<std::size_t> below;
    for (std::size_t e : local) {
      if (b.element(e) != cur && b.element(e).subset_of(cur)) below.push_back(e);
    }
    check_invariant(!below.empty(), "stream cannot descend to the least evidence");
    s.chain.push_back(below[rng() % below.size()]);
  }
  validate_stream(frame, s);
  return s;
}

SimulationReport simulate(const Frame& frame, const AttestationProtocol& protocol, std::size_t world,
                          const std::vector<EvidenceStream>& streams, const std::vector<Fault>& faults,
                          const WorldSet& p, std::uint64_t seed, std::size_t steps) {
  require_matches(frame, protocol);
  const std::size_t n = frame.agent_count();
  if (world >= frame.world_count()) throw InputError("world index out of range");
  if (streams.size() != n) throw InputError("need one evidence stream per agent");
  for (std::size_t i = 0; i < n; ++i) {
    if (streams[i].agent != frame.agent(i).name) throw InputError("stream " + std::to_string(i) + " is not for agent '" + frame.agent(i).name + "'");
    if (streams[i].world != world) throw InputError("stream for '" + streams[i].agent + "' is at a different world");
    validate_stream(frame, streams[i]);
  }

  SimulationReport r;
  r.world = world;
  r.faults = faults;
  r.honest.assign(n, true);
  std::vector<FaultBehavior> behavior(n, FaultBehavior::Random);
  for (const auto& f : faults) {
    const std::size_t i = frame.agent_index(f.agent);
    if (!r.honest[i]) throw InputError("agent '" + f.agent + "' is listed as faulty twice");
    r.honest[i] = false;
    behavior[i] = f.behavior;
  }
  for (const auto& s : streams) r.steps = std::max(r.steps, s.chain.size());
  r.steps = std::max(r.steps, steps);

  std::mt19937_64 rng(seed);
  r.outputs.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) r.agents.push_back(frame.agent(i).name);
  for (std::size_t t = 0; t < r.steps; ++t) {
    std::size_t yes = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Attest out;
      if (r.honest[i]) {
        const auto& chain = streams[i].chain;
        out = protocol.strategies[i].verdicts[chain[std::min(t, chain.size() - 1)]];
      } else if (behavior[i] == FaultBehavior::AlwaysYes) {
        out = Attest::Yes;
      } else if (behavior[i] == FaultBehavior::AlwaysDefer) {
        out = Attest::Defer;
      } else {
        out = rng() % 2 ? Attest::Yes : Attest::Defer;
      }
      r.outputs[i].push_back(out);
      if (out == Attest::Yes) ++yes;
    }
    r.aggregate.push_back(2 * yes > n ? Attest::Yes : Attest::Defer);
  }
  for (std::size_t i = 0; i < n; ++i) r.limits.push_back(r.outputs[i].back());
  r.aggregate_limit = r.aggregate.back();

  bool honest_defer = false;
  for (std::size_t i = 0; i < n; ++i) honest_defer = honest_defer || (r.honest[i] && r.limits[i] == Attest::Defer);
  for (std::size_t i = 0; i < n; ++i) {
    if (!r.honest[i] || r.limits[i] != Attest::Yes) continue;
    if (!p.contains(world)) r.shame.push_back({r.agents[i], world, ShameCause::FalseYes});
    if (honest_defer) r.shame.push_back({r.agents[i], world, ShameCause::Disagreement});
  }

  // Honest limits are the limit verdicts of the induced methods.
  for (std::size_t i = 0; i < n; ++i) {
    if (!r.honest[i]) continue;
    const auto v = sigma(induced_method(protocol.strategies[i]), frame.agent(i).basis);
    check_invariant((v[world] == Verdict::Yes) == (r.limits[i] == Attest::Yes), "honest limit differs from sigma");
  }
  if (2 * faults.size() < n) {
    const ProtocolReport check = verify_protocol(frame, protocol, p);
    if (check.solves()) {
      check_invariant((r.aggregate_limit == Attest::Yes) == check.success_set.contains(world),
                      "aggregator limit disagrees with the success set");
    }
  }
  return r;
}

}  // namespace cik
