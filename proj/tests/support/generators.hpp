#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "cik/cik.hpp"

namespace cik::testing {

using Rng = std::mt19937_64;

struct FrameShape {
  std::size_t min_worlds = 2;
  std::size_t max_worlds = 5;
  std::size_t min_agents = 1;
  std::size_t max_agents = 3;
  std::size_t min_tolerance = 0;
  std::size_t max_tolerance = 3;
  /// Force Ω into every basis.
  bool starting_point = false;
};

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi);

std::shared_ptr<const WorldTable> world_table(std::size_t n);

/// Random nonempty family, closed under nonempty intersections, covered,
/// then thinned while it stays a valid basis. Thinning is what produces
/// bases that are directed without being intersection-closed.
std::vector<WorldSet> random_basis_elements(Rng& rng, const WorldTable& worlds, bool starting_point);

EvidenceBasis random_basis(Rng& rng, const WorldTable& worlds, bool starting_point = false);

Frame random_frame(Rng& rng, const FrameShape& shape = {});

WorldSet random_set(Rng& rng, const WorldTable& worlds);
WorldSet random_subset(Rng& rng, const WorldSet& of);

/// Every subset of the universe, by mask.
std::vector<WorldSet> all_subsets(const WorldTable& worlds);
std::vector<WorldSet> subsets_of(const WorldSet& s);

/// Every valid basis over the table's worlds. Only for tiny universes.
std::vector<std::vector<WorldSet>> all_bases(const WorldTable& worlds);

Frame make_frame(std::shared_ptr<const WorldTable> worlds, const std::vector<std::vector<WorldSet>>& bases,
                 const std::vector<std::size_t>& tolerances);

/// Worlds {x, y, z}; basis {Ω, {y,z}, {z}} for each of the given agents.
Frame chain_frame(std::size_t agents, std::size_t tolerance);

DecisionMethod method_from_bits(const EvidenceBasis& basis, std::uint64_t yes_mask, std::string owner = {});

}  // namespace cik::testing
