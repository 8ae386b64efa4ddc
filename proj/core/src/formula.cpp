#include "cik/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace cik {

Formula Formula::make(Op op, std::string name, std::vector<Formula> children) {
  return Formula(std::make_shared<const Node>(Node{op, std::move(name), std::move(children)}));
}

Formula Formula::prop(std::string name) {
  if (name.empty()) throw DomainError("proposition name is empty");
  if (is_keyword(name)) throw DomainError("'" + name + "' is a keyword, not a proposition");
  return make(Op::Prop, std::move(name), {});
}
Formula Formula::top() { return make(Op::Top, {}, {}); }
Formula Formula::bot() { return make(Op::Bot, {}, {}); }
Formula Formula::negate(Formula f) { return make(Op::Not, {}, {std::move(f)}); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, {}, {std::move(a), std::move(b)}); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, {}, {std::move(a), std::move(b)}); }
Formula Formula::implies(Formula a, Formula b) { return make(Op::Imp, {}, {std::move(a), std::move(b)}); }
Formula Formula::iff(Formula a, Formula b) { return make(Op::Iff, {}, {std::move(a), std::move(b)}); }
Formula Formula::R(std::string agent, Formula f) { return make(Op::R, std::move(agent), {std::move(f)}); }
Formula Formula::I(std::string agent, Formula w, Formula f) {
  return make(Op::I, std::move(agent), {std::move(w), std::move(f)});
}
Formula Formula::B(std::string agent, Formula w, Formula f) {
  return make(Op::B, std::move(agent), {std::move(w), std::move(f)});
}
Formula Formula::S(std::string agent, Formula f) { return make(Op::S, std::move(agent), {std::move(f)}); }
Formula Formula::G(Formula w, Formula f) { return make(Op::G, {}, {std::move(w), std::move(f)}); }
Formula Formula::C(Formula f) { return make(Op::C, {}, {std::move(f)}); }

std::size_t Formula::size() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.size();
  return n;
}

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (const auto& c : node_->children) d = std::max(d, c.depth());
  return d + (node_->children.empty() ? 0 : 1);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->op == b.node_->op && a.node_->name == b.node_->name && a.node_->children == b.node_->children;
}

bool is_keyword(std::string_view name) { return name == "C" || name == "top" || name == "bot"; }

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

enum Level { kIff = 1, kImp = 2, kOr = 3, kAnd = 4, kUnary = 5 };

int level_of(Op op) {
  switch (op) {
    case Op::Iff:
      return kIff;
    case Op::Imp:
      return kImp;
    case Op::Or:
      return kOr;
    case Op::And:
      return kAnd;
    default:
      return kUnary;
  }
}

void emit(const Formula& f, int need, std::string& out) {
  const bool paren = level_of(f.op()) < need;
  if (paren) out += '(';
  auto binary = [&](const char* sym, int left, int right) {
    emit(f.child(0), left, out);
    out += sym;
    emit(f.child(1), right, out);
  };
  switch (f.op()) {
    case Op::Prop:
      out += f.name();
      break;
    case Op::Top:
      out += "top";
      break;
    case Op::Bot:
      out += "bot";
      break;
    case Op::Not:
      out += '~';
      emit(f.child(0), kUnary, out);
      break;
    case Op::And:
      binary(" & ", kAnd, kUnary);
      break;
    case Op::Or:
      binary(" | ", kOr, kAnd);
      break;
    case Op::Imp:
      binary(" -> ", kOr, kImp);
      break;
    case Op::Iff:
      binary(" <-> ", kIff, kImp);
      break;
    case Op::R:
    case Op::S:
      out += f.op() == Op::R ? "R[" : "S[";
      out += f.name();
      out += "] ";
      emit(f.child(0), kUnary, out);
      break;
    case Op::I:
    case Op::B:
      out += f.op() == Op::I ? "I[" : "B[";
      out += f.name();
      out += " @ ";
      emit(f.child(0), kIff, out);
      out += "] ";
      emit(f.child(1), kUnary, out);
      break;
    case Op::G:
      out += "G[";
      emit(f.child(0), kIff, out);
      out += "] ";
      emit(f.child(1), kUnary, out);
      break;
    case Op::C:
      out += "C ";
      emit(f.child(0), kUnary, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  emit(f, kIff, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

ParseError::ParseError(std::size_t position, const std::string& message)
    : InputError("parse error at column " + std::to_string(position + 1) + ": " + message), position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula run() {
    Formula f = parse_iff();
    skip();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view sym) {
    skip();
    if (text_.substr(pos_, sym.size()) != sym) return false;
    pos_ += sym.size();
    return true;
  }

  void expect(std::string_view sym) {
    if (!accept(sym)) fail(pos_ < text_.size() ? "expected '" + std::string(sym) + "'"
                                               : "expected '" + std::string(sym) + "' before end of input");
  }

  static bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string peek_name() {
    skip();
    std::size_t end = pos_;
    if (end < text_.size() && name_start(text_[end])) {
      while (end < text_.size() && name_char(text_[end])) ++end;
    }
    return std::string(text_.substr(pos_, end - pos_));
  }

  std::string take_name(const char* what) {
    std::string n = peek_name();
    if (n.empty()) fail(std::string("expected ") + what);
    pos_ += n.size();
    return n;
  }

  // A modality letter counts only when '[' follows.
  bool bracket_follows(std::size_t after) const {
    while (after < text_.size() && std::isspace(static_cast<unsigned char>(text_[after]))) ++after;
    return after < text_.size() && text_[after] == '[';
  }

  Formula parse_iff() {
    Formula f = parse_imp();
    while (accept("<->")) f = Formula::iff(f, parse_imp());
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (accept("->")) return Formula::implies(f, parse_imp());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept("|")) f = Formula::disj(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept("&")) f = Formula::conj(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept("~")) return Formula::negate(parse_unary());
    const std::string n = peek_name();
    if (n.size() == 1 && std::string_view("RSIBG").find(n[0]) != std::string_view::npos &&
        bracket_follows(pos_ + 1)) {
      ++pos_;
      expect("[");
      if (n == "G") {
        Formula w = parse_iff();
        expect("]");
        return Formula::G(w, parse_unary());
      }
      std::string agent = take_name("agent name");
      if (n == "R" || n == "S") {
        expect("]");
        Formula body = parse_unary();
        return n == "R" ? Formula::R(agent, body) : Formula::S(agent, body);
      }
      expect("@");
      Formula w = parse_iff();
      expect("]");
      Formula body = parse_unary();
      return n == "I" ? Formula::I(agent, w, body) : Formula::B(agent, w, body);
    }
    if (n == "C") {
      pos_ += 1;
      return Formula::C(parse_unary());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    skip();
    if (accept("(")) {
      Formula f = parse_iff();
      expect(")");
      return f;
    }
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const std::string n = peek_name();
    if (n.empty()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    pos_ += n.size();
    if (n == "top") return Formula::top();
    if (n == "bot") return Formula::bot();
    return Formula::prop(n);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect(const Formula& f, bool want_agents, std::vector<std::string>& out) {
  const bool agent_op = f.op() == Op::R || f.op() == Op::I || f.op() == Op::B || f.op() == Op::S;
  if ((want_agents && agent_op) || (!want_agents && f.op() == Op::Prop)) {
    if (std::find(out.begin(), out.end(), f.name()) == out.end()) out.push_back(f.name());
  }
  for (std::size_t i = 0; i < f.arity(); ++i) collect(f.child(i), want_agents, out);
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).run(); }

std::vector<std::string> propositions(const Formula& f) {
  std::vector<std::string> out;
  collect(f, false, out);
  return out;
}

std::vector<std::string> agents(const Formula& f) {
  std::vector<std::string> out;
  collect(f, true, out);
  return out;
}

}  // namespace cik
