#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cik/error.hpp"

namespace cik {

enum class Op { Prop, Top, Bot, Not, And, Or, Imp, Iff, R, I, B, S, G, C };

/// Immutable formula tree with structural equality. Nodes are shared.
///
/// Child layout: unary connectives and R/S/C hold one child; binary
/// connectives hold two; I/B hold (witness, body); G holds (witness, body).
/// `name()` is the proposition for Prop and the agent for R/I/B/S.
class Formula {
 public:
  static Formula prop(std::string name);
  static Formula top();
  static Formula bot();
  static Formula negate(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula R(std::string agent, Formula f);
  static Formula I(std::string agent, Formula witness, Formula f);
  static Formula B(std::string agent, Formula witness, Formula f);
  static Formula S(std::string agent, Formula f);
  static Formula G(Formula witness, Formula f);
  static Formula C(Formula f);

  Op op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  std::size_t arity() const { return node_->children.size(); }
  const Formula& child(std::size_t i) const { return node_->children.at(i); }

  /// Number of nodes.
  std::size_t size() const;
  std::size_t depth() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Op op;
    std::string name;
    std::vector<Formula> children;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Op op, std::string name, std::vector<Formula> children);

  std::shared_ptr<const Node> node_;
};

/// Canonical text; parse(print(f)) == f.
std::string print(const Formula& f);

class ParseError : public InputError {
 public:
  ParseError(std::size_t position, const std::string& message);
  /// Zero-based byte offset into the input.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

Formula parse(std::string_view text);

/// Names that cannot be propositions.
bool is_keyword(std::string_view name);

/// Proposition names in first-occurrence order.
std::vector<std::string> propositions(const Formula& f);
/// Agent names in first-occurrence order.
std::vector<std::string> agents(const Formula& f);

}  // namespace cik
