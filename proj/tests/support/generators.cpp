#include "generators.hpp"

#include <algorithm>

namespace cik::testing {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::shared_ptr<const WorldTable> world_table(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));
  return WorldTable::make(std::move(names));
}

namespace {

using Bits = WorldSet::Bits;

bool valid_family(const std::vector<Bits>& family, const WorldTable& worlds) {
  std::vector<WorldSet> sets;
  for (Bits b : family) sets.push_back(WorldSet::from_bits(worlds.universe(), b));
  return validate_basis(sets, worlds.full_set()).valid();
}

}  // namespace

std::vector<WorldSet> random_basis_elements(Rng& rng, const WorldTable& worlds, bool starting_point) {
  const std::size_t n = worlds.size();
  const Bits full = worlds.full_set().bits();
  std::vector<Bits> family;
  const std::size_t seeds = uniform(rng, 1, n + 1);
  for (std::size_t i = 0; i < seeds; ++i) {
    Bits b = std::uniform_int_distribution<Bits>(1, full)(rng);
    family.push_back(b);
  }
  if (starting_point) family.push_back(full);

  Bits covered = 0;
  for (Bits b : family) covered |= b;
  for (std::size_t w = 0; w < n; ++w) {
    if (!((covered >> w) & 1U)) family.push_back(Bits{1} << w | (rng() & full));
  }

  for (bool grew = true; grew;) {
    grew = false;
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    const std::size_t size = family.size();
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = i + 1; j < size; ++j) {
        const Bits meet = family[i] & family[j];
        if (meet != 0 && std::find(family.begin(), family.end(), meet) == family.end()) {
          family.push_back(meet);
          grew = true;
        }
      }
    }
  }

  std::shuffle(family.begin(), family.end(), rng);
  for (std::size_t i = 0; i < family.size();) {
    if (starting_point && family[i] == full) {
      ++i;
      continue;
    }
    if (rng() % 2 == 0) {
      std::vector<Bits> trial = family;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      if (!trial.empty() && valid_family(trial, worlds)) {
        family = std::move(trial);
        continue;
      }
    }
    ++i;
  }

  std::vector<WorldSet> out;
  for (Bits b : family) out.push_back(WorldSet::from_bits(worlds.universe(), b));
  return out;
}

EvidenceBasis random_basis(Rng& rng, const WorldTable& worlds, bool starting_point) {
  return EvidenceBasis::make(random_basis_elements(rng, worlds, starting_point), worlds.full_set());
}

Frame random_frame(Rng& rng, const FrameShape& shape) {
  auto worlds = world_table(uniform(rng, shape.min_worlds, shape.max_worlds));
  const std::size_t agents = uniform(rng, shape.min_agents, shape.max_agents);
  std::vector<AgentSpec> specs;
  for (std::size_t i = 0; i < agents; ++i) {
    specs.push_back({std::string(1, static_cast<char>('a' + i)), random_basis(rng, *worlds, shape.starting_point),
                     uniform(rng, shape.min_tolerance, shape.max_tolerance)});
  }
  return Frame::make(worlds, std::move(specs));
}

WorldSet random_set(Rng& rng, const WorldTable& worlds) {
  return WorldSet::from_bits(worlds.universe(), rng() & worlds.full_set().bits());
}

WorldSet random_subset(Rng& rng, const WorldSet& of) { return WorldSet::from_bits(of.universe(), rng() & of.bits()); }

std::vector<WorldSet> all_subsets(const WorldTable& worlds) { return subsets_of(worlds.full_set()); }

std::vector<WorldSet> subsets_of(const WorldSet& s) {
  std::vector<WorldSet> out;
  const Bits m = s.bits();
  for (Bits b = m;; b = (b - 1) & m) {
    out.push_back(WorldSet::from_bits(s.universe(), b));
    if (b == 0) break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::vector<WorldSet>> all_bases(const WorldTable& worlds) {
  const Bits full = worlds.full_set().bits();
  const std::size_t nonempty = static_cast<std::size_t>(full);  // masks 1..full
  std::vector<std::vector<WorldSet>> out;
  for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << nonempty); ++pick) {
    std::vector<WorldSet> family;
    for (std::size_t k = 0; k < nonempty; ++k) {
      if ((pick >> k) & 1U) family.push_back(WorldSet::from_bits(worlds.universe(), k + 1));
    }
    if (validate_basis(family, worlds.full_set()).valid()) out.push_back(std::move(family));
  }
  return out;
}

Frame make_frame(std::shared_ptr<const WorldTable> worlds, const std::vector<std::vector<WorldSet>>& bases,
                 const std::vector<std::size_t>& tolerances) {
  std::vector<AgentSpec> specs;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    specs.push_back({std::string(1, static_cast<char>('a' + i)), EvidenceBasis::make(bases[i], worlds->full_set()),
                     tolerances.at(i)});
  }
  return Frame::make(std::move(worlds), std::move(specs));
}

Frame chain_frame(std::size_t agents, std::size_t tolerance) {
  auto worlds = WorldTable::make({"x", "y", "z"});
  const std::vector<WorldSet> basis{worlds->full_set(), worlds->parse_set("y,z"), worlds->parse_set("z")};
  return make_frame(worlds, std::vector<std::vector<WorldSet>>(agents, basis),
                    std::vector<std::size_t>(agents, tolerance));
}

DecisionMethod method_from_bits(const EvidenceBasis& basis, std::uint64_t yes_mask, std::string owner) {
  DecisionMethod m{std::move(owner), {}};
  for (std::size_t e = 0; e < basis.size(); ++e) m.verdicts.push_back((yes_mask >> e) & 1U ? Verdict::Yes : Verdict::No);
  return m;
}

}  // namespace cik::testing
