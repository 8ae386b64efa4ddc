#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace cik::testing::oracle {

std::vector<Bits> union_closure(const std::vector<Bits>& elements, std::size_t worlds) {
  std::vector<bool> in(std::size_t{1} << worlds, false);
  std::vector<Bits> out{0};
  in[0] = true;
  for (Bits g : elements) {
    const std::size_t size = out.size();
    for (std::size_t i = 0; i < size; ++i) {
      const Bits u = out[i] | g;
      if (!in[u]) {
        in[u] = true;
        out.push_back(u);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Bits> generated_topology(const std::vector<Bits>& generators, std::size_t worlds) {
  const Bits full = worlds >= 64 ? ~Bits{0} : (Bits{1} << worlds) - 1;
  std::set<Bits> meets{full};
  for (Bits g : generators) {
    std::set<Bits> next = meets;
    for (Bits m : meets) next.insert(m & g);
    meets = std::move(next);
  }
  return union_closure(std::vector<Bits>(meets.begin(), meets.end()), worlds);
}

std::vector<Bits> masks(std::span<const WorldSet> sets) {
  std::vector<Bits> out;
  for (const auto& s : sets) out.push_back(s.bits());
  return out;
}

RankOracle::RankOracle(const std::vector<Bits>& opens, Bits space, std::size_t worlds) : space_(space) {
  for (Bits o : opens) {
    if ((o & ~space) == 0) opens_.push_back(o);
  }
  const std::size_t universe = std::size_t{1} << worlds;
  // reach[i] = nested differences of k-chains whose head lies inside opens_[i].
  std::vector<std::vector<bool>> reach(opens_.size(), std::vector<bool>(universe, false));
  for (auto& r : reach) r[0] = true;
  auto space_index = std::find(opens_.begin(), opens_.end(), space) - opens_.begin();
  layers_.push_back(reach[static_cast<std::size_t>(space_index)]);
  // Minimal chains are strictly descending and nonempty, so |space|+1
  // layers cover every finite rank.
  for (std::size_t k = 1; k <= static_cast<std::size_t>(std::popcount(space)) + 1; ++k) {
    std::vector<std::vector<bool>> next(opens_.size(), std::vector<bool>(universe, false));
    for (std::size_t u = 0; u < opens_.size(); ++u) {
      for (std::size_t o = 0; o < opens_.size(); ++o) {
        if ((opens_[o] & ~opens_[u]) != 0) continue;
        for (std::size_t x = 0; x < universe; ++x) {
          if (reach[o][x]) next[u][opens_[o] & ~static_cast<Bits>(x)] = true;
        }
      }
    }
    reach = std::move(next);
    layers_.push_back(reach[static_cast<std::size_t>(space_index)]);
  }
}

std::optional<std::size_t> RankOracle::open_rank(Bits s) const {
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    if (layers_[k][s]) return k;
  }
  return std::nullopt;
}

bool RankOracle::k_open(Bits s, long k) const {
  if (k < 0) return false;
  auto r = open_rank(s);
  return r && static_cast<long>(*r) <= k;
}

std::vector<Verdict> sigma(const DecisionMethod& m, const EvidenceBasis& basis) {
  const auto elems = basis.elements();
  std::vector<Verdict> out;
  for (std::size_t w = 0; w < basis.universe().size; ++w) {
    Verdict v = Verdict::Diverges;
    for (Verdict target : {Verdict::Yes, Verdict::No}) {
      for (std::size_t e = 0; e < elems.size(); ++e) {
        if (!elems[e].contains(w)) continue;
        bool constant = true;
        for (std::size_t f = 0; f < elems.size(); ++f) {
          if (elems[f].contains(w) && elems[f].subset_of(elems[e]) && m.verdicts[f] != target) constant = false;
        }
        if (constant) v = target;
      }
    }
    out.push_back(v);
  }
  return out;
}

std::optional<std::size_t> alternations(const DecisionMethod& m, const EvidenceBasis& basis, Verdict start) {
  const auto elems = basis.elements();
  std::function<std::size_t(std::size_t)> longest = [&](std::size_t e) {
    std::size_t best = 0;
    for (std::size_t f = 0; f < elems.size(); ++f) {
      if (f != e && elems[f].subset_of(elems[e])) {
        best = std::max(best, longest(f) + (m.verdicts[f] != m.verdicts[e] ? 1 : 0));
      }
    }
    return best;
  };
  std::optional<std::size_t> out;
  for (std::size_t e = 0; e < elems.size(); ++e) {
    if (m.verdicts[e] == start) out = std::max(out.value_or(0), longest(e));
  }
  return out;
}

std::optional<std::size_t> min_switches(const EvidenceBasis& basis, Bits w) {
  std::optional<std::size_t> best;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << basis.size()); ++pick) {
    DecisionMethod m{"", {}};
    for (std::size_t e = 0; e < basis.size(); ++e) m.verdicts.push_back((pick >> e) & 1U ? Verdict::Yes : Verdict::No);
    const auto s = oracle::sigma(m, basis);
    Bits yes = 0;
    bool total = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == Verdict::Diverges) total = false;
      if (s[i] == Verdict::Yes) yes |= Bits{1} << i;
    }
    if (!total || yes != w) continue;
    const std::size_t t = std::max(alternations(m, basis, Verdict::Yes).value_or(0),
                                   alternations(m, basis, Verdict::No).value_or(0));
    if (!best || t < *best) best = t;
  }
  return best;
}

FrameOracle::FrameOracle(const Frame& frame) : frame_(frame) {
  const std::size_t n = frame.world_count();
  for (const auto& a : frame.agents()) {
    const auto elems = masks(a.basis.elements());
    const auto opens = union_closure(elems, n);
    Agent ag{RankOracle(opens, full(), n), {}};
    for (Bits e : elems) ag.sub.emplace_back(opens, e, n);
    agents_.push_back(std::move(ag));
  }
}

bool FrameOracle::yes(std::size_t agent, Bits w, std::size_t element) const {
  const RankOracle& sub = agents_[agent].sub[element];
  const Bits x = w & sub.space();
  const long n = static_cast<long>(frame_.agent(agent).tolerance);
  for (long k = 0; k <= n; ++k) {
    if (sub.k_closed(x, k) && !sub.k_open(x, k - 1)) return true;
  }
  return false;
}

Bits FrameOracle::R(std::size_t agent, Bits w) const {
  const auto elems = frame_.agent(agent).basis.elements();
  Bits out = 0;
  for (std::size_t e = 0; e < elems.size(); ++e) {
    if (yes(agent, w, e)) out |= elems[e].bits();
  }
  return out;
}

Bits FrameOracle::I(std::size_t agent, Bits w, Bits p) const {
  const auto elems = frame_.agent(agent).basis.elements();
  Bits out = 0;
  for (std::size_t world = 0; world < frame_.world_count(); ++world) {
    bool ok = true;
    for (std::size_t e = 0; e < elems.size(); ++e) {
      if (elems[e].contains(world) && yes(agent, w, e) && (w & elems[e].bits() & ~p) != 0) ok = false;
    }
    if (ok) out |= Bits{1} << world;
  }
  return out;
}

Bits FrameOracle::S(std::size_t agent, Bits p) const {
  const long n = static_cast<long>(frame_.agent(agent).tolerance);
  Bits out = 0;
  for (Bits x = p;; x = (x - 1) & p) {
    if (ranks(agent).k_open(x, n + 1)) out |= x;
    if (x == 0) break;
  }
  return out;
}

Bits FrameOracle::G(Bits w, Bits p) const {
  auto e_step = [&](Bits x) {
    Bits out = full();
    for (std::size_t i = 0; i < frame_.agent_count(); ++i) out &= B(i, w, x);
    return out;
  };
  std::set<Bits> seen;
  Bits meet = full();
  for (Bits x = e_step(p); seen.insert(x).second; x = e_step(x)) meet &= x;
  return meet;
}

Bits FrameOracle::L(Bits p) const {
  Bits out = 0;
  for (Bits w = 0; w <= full(); ++w) out |= w & G(w, p);
  return out;
}

Bits c_interior(const Frame& frame, Bits p) {
  const std::size_t n = frame.world_count();
  std::optional<std::set<Bits>> meet;
  for (std::size_t i = 0; i < frame.agent_count(); ++i) {
    const auto opens = union_closure(masks(frame.agent(i).basis.elements()), n);
    std::vector<Bits> gens;
    if (frame.agent(i).tolerance == 0) {
      gens = masks(frame.agent(i).basis.elements());
    } else {
      for (Bits o : opens) {
        for (Bits q : opens) {
          if ((q & ~o) == 0) gens.push_back(o & ~q);
        }
      }
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    const auto topo = generated_topology(gens, n);
    std::set<Bits> t(topo.begin(), topo.end());
    if (!meet) {
      meet = std::move(t);
    } else {
      std::set<Bits> both;
      std::set_intersection(meet->begin(), meet->end(), t.begin(), t.end(), std::inserter(both, both.end()));
      meet = std::move(both);
    }
  }
  Bits out = 0;
  for (Bits o : *meet) {
    if ((o & ~p) == 0) out |= o;
  }
  return out;
}

std::vector<Bits> FrameOracle::success_fixed_points(Bits p) const {
  std::vector<Bits> out;
  for (Bits x = 1; x <= full(); ++x) {
    if ((x & ~G(x, p)) == 0) out.push_back(x);
  }
  return out;
}

std::vector<Bits> FrameOracle::feasible_targets(Bits p) const {
  std::vector<Bits> out;
  for (Bits x = 1; x <= full(); ++x) {
    if ((x & ~p) != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < frame_.agent_count(); ++i) {
      ok = ok && ranks(i).k_open(x, static_cast<long>(frame_.agent(i).tolerance) + 1);
    }
    if (ok) out.push_back(x);
  }
  return out;
}

}  // namespace cik::testing::oracle
