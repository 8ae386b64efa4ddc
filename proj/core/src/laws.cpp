#include "cik/laws.hpp"

#include <functional>
#include <optional>
#include <random>

namespace cik {

std::string_view to_string(LawKind k) {
  switch (k) {
    case LawKind::Axiom:
      return "axiom";
    case LawKind::Rule:
      return "rule";
    case LawKind::Derived:
      return "derived";
    case LawKind::DerivedRule:
      return "derived-rule";
  }
  return "?";
}

bool LawReport::passed() const {
  for (const auto& l : laws) {
    if (!l.passed()) return false;
  }
  return true;
}

std::size_t LawReport::failure_count() const {
  std::size_t n = 0;
  for (const auto& l : laws) n += l.failures.size();
  return n;
}

namespace {

using F = Formula;

struct Instance {
  std::vector<Formula> premises;
  Formula conclusion;
};

class Gen {
 public:
  Gen(std::seed_seq& seq, const std::vector<std::string>& agents, std::vector<std::string> props, std::size_t depth)
      : rng_(seq), agents_(agents), props_(std::move(props)), depth_(depth) {}

  std::uint64_t bits() { return rng_(); }
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  const std::string& agent() { return agents_[pick(agents_.size())]; }

  Formula atom() {
    if (props_.empty() || pick(6) == 0) return pick(2) ? F::top() : F::bot();
    return F::prop(props_[pick(props_.size())]);
  }

  // Draws are sequenced explicitly so instances do not depend on the
  // compiler's argument evaluation order.
  Formula formula(std::size_t depth) {
    if (depth == 0 || pick(4) == 0) return atom();
    const std::size_t d = depth - 1;
    const std::size_t op = pick(11);
    if (op == 0) return F::negate(formula(d));
    if (op == 5 || op == 6 || op == 7 || op == 8) {
      std::string i = agent();
      Formula a = formula(d);
      if (op == 5) return F::R(i, a);
      if (op == 8) return F::S(i, a);
      Formula b = formula(d);
      return op == 6 ? F::I(i, a, b) : F::B(i, a, b);
    }
    if (op == 10) return F::C(formula(d));
    Formula a = formula(d);
    Formula b = formula(d);
    switch (op) {
      case 1:
        return F::conj(a, b);
      case 2:
        return F::disj(a, b);
      case 3:
        return F::implies(a, b);
      case 4:
        return F::iff(a, b);
      default:
        return F::G(a, b);
    }
  }

  Formula any() { return formula(depth_); }
  /// Shallower formula for slots that get wrapped in further structure.
  Formula small() { return formula(depth_ > 1 ? depth_ - 1 : depth_); }

  const std::vector<std::string>& agents() const { return agents_; }

 private:
  std::mt19937_64 rng_;
  const std::vector<std::string>& agents_;
  std::vector<std::string> props_;
  std::size_t depth_;
};

Formula everyone(Gen& g, const std::function<Formula(const std::string&)>& f) {
  std::optional<Formula> acc;
  for (const auto& a : g.agents()) acc = acc ? F::conj(*acc, f(a)) : f(a);
  return *acc;
}

using Maker = std::function<Instance(Gen&)>;

struct Entry {
  LawSpec spec;
  Maker make;
};

Instance axiom(Formula f) { return {{}, std::move(f)}; }

std::vector<Entry> build_axioms() {
  std::vector<Entry> v;
  auto add = [&](std::string name, LawKind kind, Maker m) { v.push_back({{std::move(name), kind}, std::move(m)}); };
  const auto A = LawKind::Axiom;
  const auto D = LawKind::Derived;

  add("R-iterate", A, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any();
    return axiom(F::iff(F::R(i, a), F::R(i, F::R(i, a))));
  });
  add("I-self", A, [](Gen& g) {
    auto a = g.any();
    return axiom(F::I(g.agent(), a, a));
  });
  add("I-collapse", A, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any();
    return axiom(F::implies(F::I(i, a, F::I(i, a, b)), F::I(i, a, b)));
  });
  add("I-reason-witness", A, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any();
    return axiom(F::implies(F::I(i, F::R(i, a), b), F::I(i, a, b)));
  });
  add("I-reason-conj", A, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any();
    return axiom(F::implies(F::I(i, a, b), F::I(i, a, F::R(i, F::conj(a, b)))));
  });
  add("I-weak-transitivity", A, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any(), c = g.any();
    return axiom(F::implies(F::conj(F::I(i, a, b), F::I(i, F::conj(a, b), c)), F::I(i, a, c)));
  });
  add("I-closure", A, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any(), c = g.any();
    return axiom(F::implies(F::conj(F::I(i, a, b), F::I(i, a, F::implies(b, c))), F::I(i, a, c)));
  });
  add("B-definition", A, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any();
    return axiom(F::iff(F::B(i, a, b), F::conj(F::R(i, a), F::I(i, a, b))));
  });
  add("B-reason", A, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any();
    return axiom(F::implies(F::B(i, a, b), F::R(i, F::conj(a, b))));
  });
  add("S-true-reason", A, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any();
    return axiom(F::implies(F::conj(a, F::B(i, a, b)), F::S(i, b)));
  });
  add("S-factive", A, [](Gen& g) {
    auto a = g.any();
    return axiom(F::implies(F::S(g.agent(), a), a));
  });
  add("S-iterate", A, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any();
    return axiom(F::iff(F::S(i, a), F::S(i, F::S(i, a))));
  });
  add("S-conjunction", A, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any();
    return axiom(F::iff(F::conj(F::S(i, a), F::S(i, b)), F::S(i, F::conj(a, b))));
  });
  add("G-belief", A, [](Gen& g) {
    auto a = g.any(), b = g.any();
    return axiom(F::implies(F::G(a, b), F::B(g.agent(), a, b)));
  });
  add("G-belief-iterate", A, [](Gen& g) {
    auto a = g.any(), b = g.any();
    auto gab = F::G(a, b);
    return axiom(F::implies(gab, F::B(g.agent(), a, gab)));
  });
  add("C-factive", A, [](Gen& g) {
    auto a = g.any();
    return axiom(F::implies(F::C(a), a));
  });
  add("C-true-reason", A, [](Gen& g) {
    auto ca = F::C(g.any());
    return axiom(F::implies(ca, F::S(g.agent(), ca)));
  });

  add("B-modus-ponens", D, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any(), c = g.any();
    return axiom(F::implies(F::conj(F::B(i, a, b), F::B(i, a, F::implies(b, c))), F::B(i, a, c)));
  });
  add("I-conjunction", D, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any(), c = g.any();
    return axiom(F::implies(F::conj(F::I(i, a, b), F::I(i, a, c)), F::I(i, a, F::conj(b, c))));
  });
  add("B-conjunction", D, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any(), c = g.any();
    return axiom(F::implies(F::conj(F::B(i, a, b), F::B(i, a, c)), F::B(i, a, F::conj(b, c))));
  });
  add("B-reflection", D, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any();
    return axiom(F::implies(F::B(i, a, F::B(i, a, b)), F::B(i, a, b)));
  });
  add("valid-reasoner", D, [](Gen& g) {
    auto a = g.any(), b = g.any();
    return axiom(F::implies(F::conj(a, F::B(g.agent(), a, b)), b));
  });
  add("R-self-reason", D, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any();
    return axiom(F::iff(F::R(i, a), F::B(i, a, a)));
  });
  add("I-true-reason", D, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any();
    return axiom(F::implies(F::I(i, a, b), F::I(i, a, F::S(i, b))));
  });
  add("G-common", D, [](Gen& g) {
    auto a = g.any(), b = g.any();
    return axiom(F::implies(F::conj(a, F::G(a, b)), F::C(b)));
  });
  return v;
}

const std::vector<Entry>& axioms() {
  static const std::vector<Entry> v = build_axioms();
  return v;
}

/// A formula that is usually, but not always, valid.
Formula likely_valid(Gen& g) {
  switch (g.pick(5)) {
    case 0:
      return F::top();
    case 1: {
      auto a = g.small();
      return F::disj(a, F::negate(a));
    }
    case 2: {
      auto a = g.small();
      return F::implies(a, a);
    }
    case 3:
      return axioms()[g.pick(axioms().size())].make(g).conclusion;
    default:
      return g.any();
  }
}

std::vector<Entry> build_rules() {
  std::vector<Entry> v;
  auto add = [&](std::string name, LawKind kind, Maker m) { v.push_back({{std::move(name), kind}, std::move(m)}); };
  const auto R = LawKind::Rule;
  const auto DR = LawKind::DerivedRule;

  add("R-necessitation", R, [](Gen& g) {
    auto a = likely_valid(g);
    return Instance{{a}, F::R(g.agent(), a)};
  });
  add("I-necessitation", R, [](Gen& g) {
    auto b = likely_valid(g);
    auto i = g.agent();
    auto a = g.any();
    return Instance{{b}, F::I(i, a, b)};
  });
  add("G-induction", R, [](Gen& g) {
    auto w = g.small(), p = g.small();
    Formula q = F::bot();
    switch (g.pick(4)) {
      case 0:
        break;
      case 1:
        q = F::G(w, p);
        break;
      case 2:
        q = F::G(w, F::conj(p, g.small()));
        break;
      default:
        q = g.small();
    }
    auto self = everyone(g, [&](const std::string& i) { return F::B(i, w, q); });
    auto goal = everyone(g, [&](const std::string& i) { return F::B(i, w, p); });
    return Instance{{F::implies(q, self), F::implies(q, goal)}, F::implies(q, F::G(w, p))};
  });
  add("C-induction", R, [](Gen& g) {
    auto psi = g.small(), chi = g.small();
    Formula a = F::bot();
    switch (g.pick(4)) {
      case 0:
        break;
      case 1:
        a = F::C(psi);
        break;
      case 2:
        a = F::conj(F::C(psi), F::C(chi));
        break;
      default:
        a = g.small();
    }
    Formula b = g.pick(2) ? F::disj(a, chi) : F::disj(psi, chi);
    auto self = everyone(g, [&](const std::string& i) { return F::S(i, a); });
    return Instance{{F::implies(a, self), F::implies(a, b)}, F::implies(a, F::C(b))};
  });

  add("I-entailment", DR, [](Gen& g) {
    auto a = g.any();
    Formula b = g.pick(3) == 0 ? g.any() : F::disj(a, g.small());
    return Instance{{F::implies(a, b)}, F::I(g.agent(), a, b)};
  });
  add("I-monotone", DR, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any();
    Formula c = g.pick(3) == 0 ? g.any() : F::disj(b, g.small());
    return Instance{{F::implies(b, c)}, F::implies(F::I(i, a, b), F::I(i, a, c))};
  });
  add("B-monotone", DR, [](Gen& g) {
    auto i = g.agent();
    auto a = g.any(), b = g.any();
    Formula c = g.pick(3) == 0 ? g.any() : F::disj(b, g.small());
    return Instance{{F::implies(b, c)}, F::implies(F::B(i, a, b), F::B(i, a, c))};
  });
  return v;
}

const std::vector<Entry>& rules() {
  static const std::vector<Entry> v = build_rules();
  return v;
}

std::string describe_instance(const Instance& inst, const Model& m, const std::vector<std::string>& fresh) {
  std::string s;
  for (std::size_t i = 0; i < inst.premises.size(); ++i) s += (i ? " ; " : "premises: ") + print(inst.premises[i]);
  if (!s.empty()) s += " | ";
  s += "conclusion: " + print(inst.conclusion);
  for (const auto& f : fresh) s += " | " + f + "=" + m.frame().worlds().format(m.valuation().at(f));
  return s;
}

}  // namespace

const std::vector<LawSpec>& law_catalog() {
  static const std::vector<LawSpec> v = [] {
    std::vector<LawSpec> out;
    for (const auto& e : axioms()) out.push_back(e.spec);
    for (const auto& e : rules()) out.push_back(e.spec);
    return out;
  }();
  return v;
}

LawReport law_battery(const Model& model, const LawOptions& options) {
  std::vector<std::string> agent_names;
  for (const auto& a : model.frame().agents()) agent_names.push_back(a.name);

  std::vector<std::string> fresh;
  for (std::size_t k = 0; k < options.fresh_props; ++k) {
    std::string name = "_r" + std::to_string(k);
    while (model.valuation().count(name)) name = "_" + name;
    fresh.push_back(name);
  }
  std::vector<std::string> props = fresh;
  for (const auto& [name, set] : model.valuation()) props.push_back(name);

  const WorldSet::Bits mask = model.frame().omega().bits();
  const auto seed_lo = static_cast<std::uint32_t>(options.seed);
  const auto seed_hi = static_cast<std::uint32_t>(options.seed >> 32);

  std::vector<const Entry*> entries;
  for (const auto& e : axioms()) entries.push_back(&e);
  for (const auto& e : rules()) entries.push_back(&e);

  LawReport report;
  for (std::size_t law = 0; law < entries.size(); ++law) {
    const Entry& entry = *entries[law];
    LawResult res{entry.spec.name, entry.spec.kind, 0, 0, {}};
    const bool has_premises = entry.spec.kind == LawKind::Rule || entry.spec.kind == LawKind::DerivedRule;
    const std::size_t attempts = has_premises ? options.trials * options.attempt_factor : options.trials;

    for (std::size_t attempt = 0; attempt < attempts && res.trials < options.trials; ++attempt) {
      std::seed_seq seq{seed_lo, seed_hi, static_cast<std::uint32_t>(law), static_cast<std::uint32_t>(attempt)};
      Gen g(seq, agent_names, props, options.max_depth);
      Valuation v = model.valuation();
      for (const auto& f : fresh) v.insert_or_assign(f, WorldSet::from_bits(model.frame().universe(), g.bits() & mask));
      const Model m = model.with_valuation(std::move(v));

      const Instance inst = entry.make(g);
      bool premises_hold = true;
      for (const auto& p : inst.premises) {
        if (!check(m, p).valid) {
          premises_hold = false;
          break;
        }
      }
      if (!premises_hold) {
        ++res.vacuous;
        continue;
      }
      ++res.trials;
      const CheckResult c = check(m, inst.conclusion);
      if (!c.valid) {
        res.failures.push_back(
            {describe_instance(inst, m, fresh), m.frame().worlds().name(c.counterexamples.members().front())});
      }
    }
    report.laws.push_back(std::move(res));
  }
  return report;
}

LawReport law_battery(const Model& model, std::size_t trials, std::uint64_t seed) {
  LawOptions o;
  o.trials = trials;
  o.seed = seed;
  return law_battery(model, o);
}

}  // namespace cik
