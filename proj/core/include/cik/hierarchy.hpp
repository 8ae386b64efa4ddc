#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cik/frame.hpp"

namespace cik {

enum class Verdict { Yes, No, Diverges };

std::string_view to_string(Verdict v);

/// O_0 ⊇ O_1 ⊇ … ⊇ O_n. The universe is carried so that the empty chain
/// still evaluates to a set.
struct DescendingOpenChain {
  Universe universe;
  std::vector<WorldSet> sets;

  std::size_t size() const { return sets.size(); }
};

/// Throws DomainError unless the chain is descending and every member is
/// open in `basis`.
void validate_chain(const EvidenceBasis& basis, const DescendingOpenChain& chain);

/// S_0 \ (S_1 \ (… S_n)). Throws DomainError on a non-descending chain.
WorldSet nested_difference(const DescendingOpenChain& chain);

/// Rank in the difference hierarchy. `rank` is empty for Infinite, in which
/// case `witness` is empty too.
struct RankResult {
  std::optional<std::size_t> rank;
  DescendingOpenChain witness;

  bool infinite() const { return !rank.has_value(); }
};

/// Least k with S k-open, via the hull-derivative sequence.
RankResult open_rank(const EvidenceBasis& basis, const WorldSet& s);
/// open_rank of the complement within basis.space(); the witness evaluates
/// to that complement.
RankResult closed_rank(const EvidenceBasis& basis, const WorldSet& s);

/// k may be negative: no set is (-1)-open.
bool is_k_open(const EvidenceBasis& basis, const WorldSet& s, long k);
bool is_k_closed(const EvidenceBasis& basis, const WorldSet& s, long k);
bool is_k_clopen(const EvidenceBasis& basis, const WorldSet& s, long k);

// ---------------------------------------------------------------------------
// Yes / No
// ---------------------------------------------------------------------------

/// Yes predicate with `sub` already restricted to E and x = W ∩ E.
/// Definitional loop over k = 0..n.
bool yes_in_subspace(const EvidenceBasis& sub, const WorldSet& x, std::size_t n);

/// Rank shortcut: cr ≤ n and the open rank is not below cr. Same answers as
/// yes_in_subspace.
bool yes_in_subspace_by_rank(const EvidenceBasis& sub, const WorldSet& x, std::size_t n);

/// Throws DomainError unless `e` is an element of the agent's basis.
bool yes_predicate(const Frame& frame, std::string_view agent, const WorldSet& w, const WorldSet& e);
bool no_predicate(const Frame& frame, std::string_view agent, const WorldSet& w, const WorldSet& e);

// ---------------------------------------------------------------------------
// Decision methods
// ---------------------------------------------------------------------------

/// Verdict per basis element (by index), Yes or No only.
struct DecisionMethod {
  std::string owner;
  std::vector<Verdict> verdicts;

  Verdict at(std::size_t element) const { return verdicts.at(element); }
};

/// Throws DomainError for a size mismatch or a Diverges entry.
void require_total(const DecisionMethod& method, const EvidenceBasis& basis);

/// Limit verdict per world index. Worlds outside basis.space() get Diverges.
std::vector<Verdict> sigma(const DecisionMethod& method, const EvidenceBasis& basis);
WorldSet sigma_yes(const DecisionMethod& method, const EvidenceBasis& basis);

struct SwitchCount {
  std::size_t switches = 0;
  bool start_occurs = false;
};

/// Longest alternating ⊋-chain of elements whose first verdict is `start`.
SwitchCount max_switches(const DecisionMethod& method, const EvidenceBasis& basis, Verdict start);

/// Fewest switches needed to limit decide W from either starting verdict.
/// Empty for Infinite. Throws DomainError unless the space is an element.
std::optional<std::size_t> min_switches(const EvidenceBasis& basis, const WorldSet& w);
std::optional<std::size_t> min_switches(const Frame& frame, std::string_view agent, const WorldSet& w);

DecisionMethod method_from_chain(const DescendingOpenChain& chain, const EvidenceBasis& basis,
                                 std::string owner = {});

/// n+1 opens whose nested difference is σ⁻¹(Yes). Throws DomainError when
/// the method switches more than n times after a Yes.
DescendingOpenChain chain_from_method(const DecisionMethod& method, const EvidenceBasis& basis, std::size_t n);

}  // namespace cik
