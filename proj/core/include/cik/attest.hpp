#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cik/frame_io.hpp"
#include "cik/hierarchy.hpp"
#include "cik/operators.hpp"

namespace cik {

enum class Attest { Yes, Defer };

std::string_view to_string(Attest a);

/// Yes or Defer per element of the owner's basis, by index. The switch
/// bound is not enforced here; verify_protocol reports it.
struct AttestationStrategy {
  std::string owner;
  std::vector<Attest> verdicts;
};

/// One strategy per agent, in frame order.
struct AttestationProtocol {
  std::vector<AttestationStrategy> strategies;
};

DecisionMethod induced_method(const AttestationStrategy& s);

/// Throws DomainError unless the protocol covers the frame's agents, in
/// order, with one verdict per basis element.
void require_matches(const Frame& frame, const AttestationProtocol& protocol);

struct AgentVerification {
  std::string agent;
  WorldSet attests;  // σ⁻¹(Yes) of the induced method
  SwitchCount switches;
  std::size_t bound = 0;

  bool within_bound() const { return !switches.start_occurs || switches.switches <= bound; }
};

struct ProtocolReport {
  bool validity = false;
  bool agreement = false;
  bool nontriviality = false;
  bool switch_bounds = false;
  WorldSet success_set;
  std::vector<AgentVerification> agents;

  bool solves() const { return validity && agreement && nontriviality && switch_bounds; }
};

ProtocolReport verify_protocol(const Frame& frame, const AttestationProtocol& protocol, const WorldSet& p);

struct Synthesis {
  AttestationProtocol protocol;
  WorldSet success_set;
  /// True when C(P) itself was chosen without enumeration.
  bool common_knowledge_target = false;
};

/// With a target: Infeasible unless it is non-empty, inside P and
/// (n_i+1)-open for every agent. Without: C(P) when feasible, else the first
/// feasible subset of C(P) by decreasing size. Infeasible when none exists
/// or enumeration would pass `cap` worlds.
Synthesis synthesize(const OperatorContext& ctx, const WorldSet& p, const std::optional<WorldSet>& target = {},
                     std::size_t cap = kDefaultLewisCap);

/// Is `w` a success set some protocol can realize for P?
bool feasible_success_set(const OperatorContext& ctx, const WorldSet& p, const WorldSet& w);

// ---------------------------------------------------------------------------
// Streams and simulation
// ---------------------------------------------------------------------------

/// Evidence learned by one agent in one world, as basis element indices.
struct EvidenceStream {
  std::string agent;
  std::size_t world = 0;
  std::vector<std::size_t> chain;
};

/// Throws DomainError unless the chain is strictly descending, every element
/// contains the world, and the last element is the least one.
void validate_stream(const Frame& frame, const EvidenceStream& s);

EvidenceStream generate_stream(const Frame& frame, std::size_t agent, std::size_t world, std::uint64_t seed);

enum class FaultBehavior { Random, AlwaysYes, AlwaysDefer };

std::string_view to_string(FaultBehavior b);

struct Fault {
  std::string agent;
  FaultBehavior behavior = FaultBehavior::Random;
};

enum class ShameCause { FalseYes, Disagreement };

std::string_view to_string(ShameCause c);

struct ShameEvent {
  std::string agent;
  std::size_t world = 0;
  ShameCause cause = ShameCause::FalseYes;
};

struct SimulationReport {
  std::size_t world = 0;
  std::size_t steps = 0;
  std::vector<std::string> agents;
  std::vector<bool> honest;
  std::vector<std::vector<Attest>> outputs;  // [agent][step]
  std::vector<Attest> limits;                // final output per agent
  std::vector<Attest> aggregate;             // per step
  Attest aggregate_limit = Attest::Defer;
  std::vector<ShameEvent> shame;
  std::vector<Fault> faults;
};

inline constexpr std::size_t kDefaultSteps = 16;

/// Runs every agent along its stream. Honest agents play their strategy,
/// faulty ones follow their behavior. The aggregator says Yes when strictly
/// more than half the agents do. The trace runs for max(steps, longest
/// stream) steps so that honest outputs settle.
SimulationReport simulate(const Frame& frame, const AttestationProtocol& protocol, std::size_t world,
                          const std::vector<EvidenceStream>& streams, const std::vector<Fault>& faults,
                          const WorldSet& p, std::uint64_t seed, std::size_t steps = kDefaultSteps);

// ---------------------------------------------------------------------------
// Scenarios
// ---------------------------------------------------------------------------

struct Scenario {
  ModelDocument model;
  WorldSet p;
  bool synthesized = true;
  std::optional<WorldSet> target;
  AttestationProtocol protocol;  // explicit protocols only
  std::size_t world = 0;
  std::vector<Fault> faults;
  std::uint64_t seed = 0;
  std::size_t steps = kDefaultSteps;
  std::vector<EvidenceStream> streams;  // empty: generated from the seed
};

/// `base` resolves a frame given as a relative path.
Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base,
                        std::string_view source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

struct ScenarioRun {
  AttestationProtocol protocol;
  ProtocolReport verification;
  std::vector<EvidenceStream> streams;
  SimulationReport simulation;
};

ScenarioRun run_scenario(const Scenario& scenario);

}  // namespace cik
