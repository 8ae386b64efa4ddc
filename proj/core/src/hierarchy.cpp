#include "cik/hierarchy.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "cik/error.hpp"

namespace cik {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    case Verdict::Diverges:
      return "diverges";
  }
  return "?";
}

namespace {

void require_descending(const DescendingOpenChain& chain) {
  for (std::size_t i = 0; i < chain.sets.size(); ++i) {
    if (!(chain.sets[i].universe() == chain.universe)) throw DomainError("chain member belongs to a different frame");
    if (i > 0 && !chain.sets[i].subset_of(chain.sets[i - 1])) throw DomainError("chain is not descending");
  }
}

}  // namespace

void validate_chain(const EvidenceBasis& basis, const DescendingOpenChain& chain) {
  if (!(chain.universe == basis.universe())) throw DomainError("chain belongs to a different frame");
  require_descending(chain);
  for (const auto& o : chain.sets) {
    if (!o.subset_of(basis.space()) || !basis.is_open(o)) throw DomainError("chain member is not open");
  }
}

WorldSet nested_difference(const DescendingOpenChain& chain) {
  require_descending(chain);
  WorldSet acc = WorldSet::empty(chain.universe);
  for (auto it = chain.sets.rbegin(); it != chain.sets.rend(); ++it) acc = *it - acc;

  WorldSet layers = WorldSet::empty(chain.universe);
  for (std::size_t k = 0; k < chain.sets.size(); k += 2) {
    layers |= k + 1 < chain.sets.size() ? chain.sets[k] - chain.sets[k + 1] : chain.sets[k];
  }
  check_invariant(acc == layers, "nested difference disagrees with its layer form");
  return acc;
}

RankResult open_rank(const EvidenceBasis& basis, const WorldSet& s) {
  RankResult r;
  r.witness.universe = basis.universe();
  if (s.empty()) {
    r.rank = 0;
    return r;
  }
  std::unordered_set<WorldSet::Bits> seen{s.bits()};
  WorldSet target = s;
  while (true) {
    WorldSet u = basis.hull(target);
    r.witness.sets.push_back(u);
    target = u - target;
    if (target.empty()) break;
    if (!seen.insert(target.bits()).second) {
      r.witness.sets.clear();
      return r;
    }
  }
  r.rank = r.witness.sets.size();
  check_invariant(*r.rank <= basis.space().count(), "rank exceeds the number of worlds");
  check_invariant(nested_difference(r.witness) == s, "rank witness does not evaluate to the set");
  return r;
}

RankResult closed_rank(const EvidenceBasis& basis, const WorldSet& s) {
  return open_rank(basis, basis.space() - s);
}

bool is_k_open(const EvidenceBasis& basis, const WorldSet& s, long k) {
  if (k < 0) return false;
  auto r = open_rank(basis, s);
  return r.rank && static_cast<long>(*r.rank) <= k;
}

bool is_k_closed(const EvidenceBasis& basis, const WorldSet& s, long k) {
  return is_k_open(basis, basis.space() - s, k);
}

bool is_k_clopen(const EvidenceBasis& basis, const WorldSet& s, long k) {
  return is_k_open(basis, s, k) && is_k_closed(basis, s, k);
}

bool yes_in_subspace(const EvidenceBasis& sub, const WorldSet& x, std::size_t n) {
  for (std::size_t k = 0; k <= n; ++k) {
    const long kk = static_cast<long>(k);
    if (is_k_closed(sub, x, kk) && !is_k_open(sub, x, kk - 1)) return true;
  }
  return false;
}

bool yes_in_subspace_by_rank(const EvidenceBasis& sub, const WorldSet& x, std::size_t n) {
  auto cr = closed_rank(sub, x);
  if (cr.infinite() || *cr.rank > n) return false;
  auto orank = open_rank(sub, x);
  return orank.infinite() || *orank.rank >= *cr.rank;
}

bool yes_predicate(const Frame& frame, std::string_view agent, const WorldSet& w, const WorldSet& e) {
  const AgentSpec& spec = frame.agent(agent);
  EvidenceBasis sub = subspace_basis(spec.basis, e);
  return yes_in_subspace(sub, w & e, spec.tolerance);
}

bool no_predicate(const Frame& frame, std::string_view agent, const WorldSet& w, const WorldSet& e) {
  return yes_predicate(frame, agent, w.complement(), e);
}

void require_total(const DecisionMethod& method, const EvidenceBasis& basis) {
  if (method.verdicts.size() != basis.size()) throw DomainError("decision method does not cover the basis");
  for (Verdict v : method.verdicts) {
    if (v == Verdict::Diverges) throw DomainError("decision method verdicts must be yes or no");
  }
}

std::vector<Verdict> sigma(const DecisionMethod& method, const EvidenceBasis& basis) {
  require_total(method, basis);
  std::vector<Verdict> out(basis.universe().size, Verdict::Diverges);
  basis.space().for_each([&](std::size_t w) {
    const auto& local = basis.evidence_indices(w);
    Verdict result = Verdict::Diverges;
    for (std::size_t e : local) {
      const Verdict v = method.at(e);
      bool settled = std::all_of(local.begin(), local.end(), [&](std::size_t f) {
        return !basis.element(f).subset_of(basis.element(e)) || method.at(f) == v;
      });
      if (settled) {
        result = v;
        break;
      }
    }
    check_invariant(result != Verdict::Diverges, "limit verdict diverges on a finite basis");
    check_invariant(result == method.at(basis.minimal_index(w)), "limit verdict differs from least evidence");
    out[w] = result;
  });
  return out;
}

WorldSet sigma_yes(const DecisionMethod& method, const EvidenceBasis& basis) {
  auto verdicts = sigma(method, basis);
  WorldSet out = WorldSet::empty(basis.universe());
  for (std::size_t w = 0; w < verdicts.size(); ++w) {
    if (verdicts[w] == Verdict::Yes) out = out.with(w);
  }
  return out;
}

SwitchCount max_switches(const DecisionMethod& method, const EvidenceBasis& basis, Verdict start) {
  require_total(method, basis);
  const std::size_t n = basis.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Smaller elements first, so every strict subset is finished before its supersets.
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return basis.element(a).count() < basis.element(b).count(); });

  std::vector<std::size_t> best(n, 0);
  for (std::size_t e : order) {
    for (std::size_t f = 0; f < n; ++f) {
      if (f == e || method.at(f) == method.at(e)) continue;
      if (basis.element(f).subset_of(basis.element(e))) best[e] = std::max(best[e], best[f] + 1);
    }
  }
  SwitchCount out;
  for (std::size_t e = 0; e < n; ++e) {
    if (method.at(e) != start) continue;
    out.start_occurs = true;
    out.switches = std::max(out.switches, best[e]);
  }
  return out;
}

std::optional<std::size_t> min_switches(const EvidenceBasis& basis, const WorldSet& w) {
  if (!basis.has_starting_point()) throw DomainError("basis has no starting point");
  auto o = open_rank(basis, w);
  auto c = closed_rank(basis, w);
  if (o.infinite() && c.infinite()) return std::nullopt;
  if (o.infinite()) return c.rank;
  if (c.infinite()) return o.rank;
  return std::min(*o.rank, *c.rank);
}

std::optional<std::size_t> min_switches(const Frame& frame, std::string_view agent, const WorldSet& w) {
  return min_switches(frame.agent(agent).basis, w);
}

DecisionMethod method_from_chain(const DescendingOpenChain& chain, const EvidenceBasis& basis, std::string owner) {
  validate_chain(basis, chain);
  DecisionMethod m{std::move(owner), std::vector<Verdict>(basis.size(), Verdict::No)};
  for (std::size_t e = 0; e < basis.size(); ++e) {
    long k = -1;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (basis.element(e).subset_of(chain.sets[i])) k = static_cast<long>(i);
    }
    if (k >= 0 && k % 2 == 0) m.verdicts[e] = Verdict::Yes;
  }
  if (chain.size() > 0) {
    check_invariant(max_switches(m, basis, Verdict::Yes).switches + 1 <= chain.size(),
                    "method from chain switches too often");
  }
  check_invariant(sigma_yes(m, basis) == nested_difference(chain), "method from chain has the wrong limit");
  return m;
}

DescendingOpenChain chain_from_method(const DecisionMethod& method, const EvidenceBasis& basis, std::size_t n) {
  auto sw = max_switches(method, basis, Verdict::Yes);
  if (sw.start_occurs && sw.switches > n) {
    throw DomainError("method switches " + std::to_string(sw.switches) + " times after yes, bound is " +
                      std::to_string(n));
  }
  DescendingOpenChain chain{basis.universe(), {}};
  std::vector<std::size_t> layer;
  for (std::size_t e = 0; e < basis.size(); ++e) {
    if (method.at(e) == Verdict::Yes) layer.push_back(e);
  }
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) {
      const Verdict want = k % 2 == 1 ? Verdict::No : Verdict::Yes;
      std::vector<std::size_t> next;
      for (std::size_t e = 0; e < basis.size(); ++e) {
        if (method.at(e) != want) continue;
        bool below = std::any_of(layer.begin(), layer.end(),
                                 [&](std::size_t f) { return basis.element(e).subset_of(basis.element(f)); });
        if (below) next.push_back(e);
      }
      layer = std::move(next);
    }
    WorldSet o = WorldSet::empty(basis.universe());
    for (std::size_t e : layer) o |= basis.element(e);
    chain.sets.push_back(o);
  }
  check_invariant(nested_difference(chain) == sigma_yes(method, basis), "chain from method has the wrong value");
  return chain;
}

}  // namespace cik
