#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cik/model.hpp"

namespace cik {

enum class LawKind { Axiom, Rule, Derived, DerivedRule };

std::string_view to_string(LawKind k);

struct LawFailure {
  std::string instance;  // premises, conclusion, and the fresh valuation used
  std::string world;     // a world where the conclusion fails
};

struct LawResult {
  std::string name;
  LawKind kind = LawKind::Axiom;
  std::size_t trials = 0;   // instances with all premises valid
  std::size_t vacuous = 0;  // rule instances discarded because a premise failed
  std::vector<LawFailure> failures;

  bool passed() const { return failures.empty(); }
};

struct LawReport {
  std::vector<LawResult> laws;

  bool passed() const;
  std::size_t failure_count() const;
};

struct LawOptions {
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  std::size_t max_depth = 3;
  std::size_t fresh_props = 3;
  /// Attempts per requested rule trial before giving up on premise-valid
  /// instances.
  std::size_t attempt_factor = 40;
};

struct LawSpec {
  std::string name;
  LawKind kind;
};

/// Every schema and rule the battery checks, in report order.
const std::vector<LawSpec>& law_catalog();

/// Randomly instantiates every law against `model`. Deterministic in the
/// seed; each (law, trial) pair gets its own derived RNG stream.
LawReport law_battery(const Model& model, const LawOptions& options);
LawReport law_battery(const Model& model, std::size_t trials, std::uint64_t seed);

}  // namespace cik
