#pragma once

#include <map>
#include <memory>
#include <string>

#include "cik/formula.hpp"
#include "cik/operators.hpp"

namespace cik {

using Valuation = std::map<std::string, WorldSet, std::less<>>;

/// Frame plus valuation. The operator context is shared between models
/// that differ only in valuation.
class Model {
 public:
  /// Throws DomainError if a valuation set is from another frame, and
  /// InputError for a keyword used as a proposition name.
  Model(Frame frame, Valuation valuation = {});

  const Frame& frame() const { return ctx_->frame(); }
  const OperatorContext& context() const { return *ctx_; }
  const Valuation& valuation() const { return valuation_; }

  Model with_valuation(Valuation valuation) const;

 private:
  Model(std::shared_ptr<const OperatorContext> ctx, Valuation valuation);
  static void check_valuation(const Frame& frame, const Valuation& v);

  std::shared_ptr<const OperatorContext> ctx_;
  Valuation valuation_;
};

/// Throws InputError for unbound propositions or agents.
WorldSet evaluate(const Model& model, const Formula& f);

struct CheckResult {
  bool valid = false;
  WorldSet extension;
  WorldSet counterexamples;
};

CheckResult check(const Model& model, const Formula& f);

}  // namespace cik
