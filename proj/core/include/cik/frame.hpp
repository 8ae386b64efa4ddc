#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cik/world_set.hpp"

namespace cik {

// ---------------------------------------------------------------------------
// Basis validation
// ---------------------------------------------------------------------------

struct BasisViolation {
  enum class Kind {
    EmptyElement,      // element `first` is empty
    DuplicateElement,  // element `second` repeats element `first`
    OutsideSpace,      // element `first` leaves the space
    Uncovered,         // `world` lies in no element
    NotDirected,       // `world` in `first` and `second`, nothing below both
  };

  Kind kind;
  std::size_t world = 0;
  std::size_t first = 0;
  std::size_t second = 0;
};

struct BasisReport {
  std::vector<BasisViolation> violations;

  bool valid() const { return violations.empty(); }
};

/// Checks cover and local directedness of `elements` over `space`, plus the
/// structural rules (non-empty, no duplicates, inside the space). Violations
/// are reported with witnesses rather than thrown.
BasisReport validate_basis(std::span<const WorldSet> elements, const WorldSet& space);

std::string describe(const BasisViolation& v, std::span<const WorldSet> elements, const WorldTable& worlds);

// ---------------------------------------------------------------------------
// EvidenceBasis
// ---------------------------------------------------------------------------

/// A validated information basis over `space` (the whole universe, or a
/// basis element when the basis is a subspace restriction).
///
/// Finite and directed, so every world has a least element containing it;
/// that element is the smallest open neighbourhood of the world and drives
/// all hull computations.
class EvidenceBasis {
 public:
  /// Throws DomainError carrying every violation when the family is invalid.
  static EvidenceBasis make(std::vector<WorldSet> elements, WorldSet space);

  const WorldSet& space() const { return space_; }
  std::span<const WorldSet> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const WorldSet& element(std::size_t i) const { return elements_.at(i); }
  Universe universe() const { return space_.universe(); }

  std::optional<std::size_t> find(const WorldSet& e) const;
  bool has_starting_point() const { return find(space_).has_value(); }

  /// Indices of the elements containing `world`, in basis order.
  const std::vector<std::size_t>& evidence_indices(std::size_t world) const;
  /// Index of the least element containing `world`.
  std::size_t minimal_index(std::size_t world) const;
  const WorldSet& minimal_open(std::size_t world) const { return elements_[minimal_index(world)]; }

  /// Least open set (in the generated topology) containing `s`.
  WorldSet hull(const WorldSet& s) const;
  bool is_open(const WorldSet& s) const { return hull(s) == s; }

 private:
  EvidenceBasis() = default;

  WorldSet space_;
  std::vector<WorldSet> elements_;
  std::unordered_map<WorldSet::Bits, std::size_t> lookup_;
  std::vector<std::vector<std::size_t>> evidence_;  // per world index
  std::vector<std::size_t> minimal_;                // per world index
};

std::vector<WorldSet> evidence_at(const EvidenceBasis& basis, std::size_t world);
std::vector<WorldSet> minimal_evidence_at(const EvidenceBasis& basis, std::size_t world);

/// The elements of `basis` contained in `e`, as a basis over `e`.
/// Throws DomainError unless `e` is itself a basis element.
EvidenceBasis subspace_basis(const EvidenceBasis& basis, const WorldSet& e);

// ---------------------------------------------------------------------------
// Topology
// ---------------------------------------------------------------------------

/// All opens generated by a basis, materialized. Sorted by cardinality, then
/// by mask.
class Topology {
 public:
  const EvidenceBasis& basis() const { return basis_; }
  const WorldSet& space() const { return basis_.space(); }
  std::span<const WorldSet> opens() const { return opens_; }
  bool is_open(const WorldSet& s) const { return basis_.is_open(s); }

 private:
  friend Topology generate_topology(const EvidenceBasis& basis);
  explicit Topology(EvidenceBasis b) : basis_(std::move(b)) {}

  EvidenceBasis basis_;
  std::vector<WorldSet> opens_;
};

inline constexpr std::size_t kMaxMaterializedOpens = std::size_t{1} << 20;

/// Closure of the basis under arbitrary unions, plus the empty set.
/// Throws DomainError past kMaxMaterializedOpens opens.
Topology generate_topology(const EvidenceBasis& basis);

/// Smallest open superset of `s`. Requires s ⊆ space.
WorldSet open_hull(const Topology& topology, const WorldSet& s);

// ---------------------------------------------------------------------------
// Frame
// ---------------------------------------------------------------------------

struct AgentSpec {
  std::string name;
  EvidenceBasis basis;
  std::size_t tolerance = 0;
};

class Frame {
 public:
  /// Throws InputError for missing/duplicate agents and DomainError when a
  /// basis is not over the frame's universe.
  static Frame make(std::shared_ptr<const WorldTable> worlds, std::vector<AgentSpec> agents);

  const WorldTable& worlds() const { return *worlds_; }
  const std::shared_ptr<const WorldTable>& world_table() const { return worlds_; }
  Universe universe() const { return worlds_->universe(); }
  std::size_t world_count() const { return worlds_->size(); }
  WorldSet omega() const { return worlds_->full_set(); }
  WorldSet none() const { return worlds_->empty_set(); }

  const std::vector<AgentSpec>& agents() const { return agents_; }
  std::size_t agent_count() const { return agents_.size(); }
  const AgentSpec& agent(std::size_t i) const { return agents_.at(i); }
  /// Throws InputError for unknown names.
  std::size_t agent_index(std::string_view name) const;
  const AgentSpec& agent(std::string_view name) const { return agents_[agent_index(name)]; }

  /// Same frame with tolerances replaced, one per agent.
  Frame with_tolerances(const std::vector<std::size_t>& tolerances) const;

 private:
  Frame() = default;

  std::shared_ptr<const WorldTable> worlds_;
  std::vector<AgentSpec> agents_;
};

}  // namespace cik
