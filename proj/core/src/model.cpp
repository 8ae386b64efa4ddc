#include "cik/model.hpp"

namespace cik {

Model::Model(Frame frame, Valuation valuation)
    : ctx_(std::make_shared<const OperatorContext>(std::move(frame))), valuation_(std::move(valuation)) {
  check_valuation(ctx_->frame(), valuation_);
}

Model::Model(std::shared_ptr<const OperatorContext> ctx, Valuation valuation)
    : ctx_(std::move(ctx)), valuation_(std::move(valuation)) {
  check_valuation(ctx_->frame(), valuation_);
}

void Model::check_valuation(const Frame& frame, const Valuation& v) {
  for (const auto& [name, set] : v) {
    if (is_keyword(name)) throw InputError("'" + name + "' is a keyword and cannot be a proposition");
    if (!(set.universe() == frame.universe())) throw DomainError("valuation of '" + name + "' is from another frame");
  }
}

Model Model::with_valuation(Valuation valuation) const { return Model(ctx_, std::move(valuation)); }

namespace {

std::size_t agent_of(const Model& m, const Formula& f) {
  return m.frame().agent_index(f.name());
}

}  // namespace

WorldSet evaluate(const Model& model, const Formula& f) {
  const OperatorContext& ctx = model.context();
  auto sub = [&](std::size_t i) { return evaluate(model, f.child(i)); };
  switch (f.op()) {
    case Op::Prop: {
      auto it = model.valuation().find(f.name());
      if (it == model.valuation().end()) throw InputError("unbound proposition '" + f.name() + "'");
      return it->second;
    }
    case Op::Top:
      return ctx.omega();
    case Op::Bot:
      return ctx.frame().none();
    case Op::Not:
      return sub(0).complement();
    case Op::And:
      return sub(0) & sub(1);
    case Op::Or:
      return sub(0) | sub(1);
    case Op::Imp:
      return sub(0).complement() | sub(1);
    case Op::Iff: {
      const WorldSet a = sub(0), b = sub(1);
      return (a & b) | (a.complement() & b.complement());
    }
    case Op::R:
      return op_R(ctx, agent_of(model, f), sub(0));
    case Op::I:
      return op_I(ctx, agent_of(model, f), sub(0), sub(1));
    case Op::B:
      return op_B(ctx, agent_of(model, f), sub(0), sub(1));
    case Op::S:
      return op_S(ctx, agent_of(model, f), sub(0));
    case Op::G:
      return op_G(ctx, sub(0), sub(1));
    case Op::C:
      return op_C(ctx, sub(0));
  }
  throw DomainError("unknown formula node");
}

CheckResult check(const Model& model, const Formula& f) {
  CheckResult r;
  r.extension = evaluate(model, f);
  r.counterexamples = r.extension.complement();
  r.valid = r.counterexamples.empty();
  return r;
}

}  // namespace cik
