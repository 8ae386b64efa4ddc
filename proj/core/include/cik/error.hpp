#pragma once

#include <stdexcept>
#include <string>

namespace cik {

/// Malformed input: bad files, unknown names, syntax errors.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A well-formed request that violates an operation precondition
/// (invalid basis, set outside the universe, mixing frames, ...).
class DomainError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A requested construction does not exist (infeasible target, undefined
/// n-star, enumeration cap). Distinct from input errors so the CLI can map
/// it to "property fails" rather than "bad input".
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal cross-check failed. Always a bug in this library.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void check_invariant(bool ok, const char* what) {
  if (!ok) throw InvariantViolation(what);
}

}  // namespace cik
