#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "cik/cik.hpp"

namespace cik::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string model;
  std::string formula;
  std::string agent;
  std::string set;
  std::string op;
  std::string w;
  std::string p;
  std::string target;
  std::string scenario;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultLewisCap;
  bool json = false;
  bool trace = false;
};

/// Carries the raw text so parse errors can point into it.
struct FormulaError {
  std::string text;
  ParseError error;
};

Formula parse_flag(const std::string& text) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw FormulaError{text, e};
  }
}

Json names(const Frame& f, const WorldSet& s) { return f.worlds().names_of(s); }

Json chain_json(const Frame& f, const DescendingOpenChain& c) {
  Json out = Json::array();
  for (const auto& s : c.sets) out.push_back(names(f, s));
  return out;
}

std::string chain_text(const Frame& f, const DescendingOpenChain& c) {
  std::string out = "[";
  for (std::size_t i = 0; i < c.sets.size(); ++i) out += (i ? ", " : "") + f.worlds().format(c.sets[i]);
  return out + "]";
}

Json rank_json(const RankResult& r) { return r.infinite() ? Json("infinite") : Json(*r.rank); }

std::string rank_text(const RankResult& r) { return r.infinite() ? "infinite" : std::to_string(*r.rank); }

Json header(const char* command) { return Json{{"schema", 1}, {"command", command}}; }

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

/// Comma list of worlds, or "@formula". A list that names unknown worlds is
/// retried as a formula; world names win when both readings work.
WorldSet resolve_set(const Model& m, const std::string& text) {
  if (!text.empty() && text.front() == '@') return evaluate(m, parse_flag(text.substr(1)));
  try {
    return m.frame().worlds().parse_set(text);
  } catch (const InputError& as_worlds) {
    std::optional<Formula> f;
    try {
      f = parse(text);
    } catch (const ParseError&) {
      throw as_worlds;
    }
    try {
      return evaluate(m, *f);
    } catch (const InputError&) {
      throw as_worlds;
    }
  }
}

Model load(const Options& o) {
  ModelDocument doc = load_model(o.model);
  return Model(std::move(doc.frame), std::move(doc.valuation));
}

int cmd_check(const Options& o, std::ostream& out) {
  const Model m = load(o);
  const Formula f = parse_flag(o.formula);
  const CheckResult r = check(m, f);
  if (o.json) {
    Json j = header("check");
    j["formula"] = print(f);
    j["valid"] = r.valid;
    j["extension"] = names(m.frame(), r.extension);
    j["counterexamples"] = names(m.frame(), r.counterexamples);
    emit_json(out, j);
  } else if (r.valid) {
    out << "valid\n";
  } else {
    out << "invalid: fails at " << m.frame().worlds().format(r.counterexamples) << "\n";
  }
  return r.valid ? kOk : kPropertyFails;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const Model m = load(o);
  const Formula f = parse_flag(o.formula);
  const WorldSet ext = evaluate(m, f);
  if (o.json) {
    Json j = header("eval");
    j["formula"] = print(f);
    j["extension"] = names(m.frame(), ext);
    emit_json(out, j);
  } else {
    out << m.frame().worlds().format(ext) << "\n";
  }
  return kOk;
}

int cmd_rank(const Options& o, std::ostream& out) {
  const Model m = load(o);
  const Frame& f = m.frame();
  const EvidenceBasis& b = f.agent(o.agent).basis;
  const WorldSet s = resolve_set(m, o.set);
  const RankResult open = open_rank(b, s);
  const RankResult closed = closed_rank(b, s);
  std::optional<std::size_t> switches;
  const bool has_start = b.has_starting_point();
  if (has_start) switches = min_switches(b, s);

  if (o.json) {
    Json j = header("rank");
    j["agent"] = o.agent;
    j["set"] = names(f, s);
    j["open_rank"] = rank_json(open);
    j["open_witness"] = chain_json(f, open.witness);
    j["closed_rank"] = rank_json(closed);
    j["closed_witness"] = chain_json(f, closed.witness);
    if (!has_start) {
      j["min_switches"] = nullptr;
    } else {
      j["min_switches"] = switches ? Json(*switches) : Json("infinite");
    }
    emit_json(out, j);
  } else {
    out << "set: " << f.worlds().format(s) << "\n";
    out << "open rank: " << rank_text(open) << "\n";
    if (!open.infinite()) out << "open witness: " << chain_text(f, open.witness) << "\n";
    out << "closed rank: " << rank_text(closed) << "\n";
    if (!closed.infinite()) out << "closed witness (complement): " << chain_text(f, closed.witness) << "\n";
    if (has_start) out << "min switches: " << (switches ? std::to_string(*switches) : "infinite") << "\n";
  }
  return kOk;
}

int cmd_ops(const Options& o, std::ostream& out) {
  const Model m = load(o);
  const OperatorContext& ctx = m.context();
  const Frame& f = m.frame();
  auto need = [&](const std::string& v, const char* flag) {
    if (v.empty()) throw InputError(std::string("--op ") + o.op + " requires " + flag);
    return resolve_set(m, v);
  };
  auto need_agent = [&] {
    if (o.agent.empty()) throw InputError("--op " + o.op + " requires -a");
    return ctx.agent_index(o.agent);
  };

  std::optional<WorldSet> w, p;
  WorldSet result;
  Json extra = Json::object();
  if (o.op == "R") {
    const std::size_t a = need_agent();
    w = need(o.w, "-w");
    result = op_R(ctx, a, *w);
  } else if (o.op == "I" || o.op == "B") {
    const std::size_t a = need_agent();
    w = need(o.w, "-w");
    p = need(o.p, "-p");
    result = o.op == "I" ? op_I(ctx, a, *w, *p) : op_B(ctx, a, *w, *p);
  } else if (o.op == "S") {
    const std::size_t a = need_agent();
    p = need(o.p, "-p");
    result = op_S(ctx, a, *p);
  } else if (o.op == "G") {
    w = need(o.w, "-w");
    p = need(o.p, "-p");
    result = op_G(ctx, *w, *p);
  } else if (o.op == "C") {
    p = need(o.p, "-p");
    result = op_C(ctx, *p);
  } else if (o.op == "L") {
    p = need(o.p, "-p");
    result = op_L(ctx, *p, o.cap);
    Json ns = Json::object();
    for (std::size_t i = 0; i < ctx.agent_count(); ++i) {
      try {
        ns[f.agent(i).name] = n_star(ctx, i, *p);
      } catch (const Infeasible&) {
        ns[f.agent(i).name] = nullptr;
      }
    }
    extra["n_star"] = ns;
  } else {
    throw InputError("unknown operator '" + o.op + "' (expected R, I, B, S, G, C or L)");
  }

  if (o.json) {
    Json j = header("ops");
    j["op"] = o.op;
    if (!o.agent.empty() && o.op != "G" && o.op != "C" && o.op != "L") j["agent"] = o.agent;
    if (w) j["W"] = names(f, *w);
    if (p) j["P"] = names(f, *p);
    j["result"] = names(f, result);
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    emit_json(out, j);
  } else {
    out << f.worlds().format(result) << "\n";
    if (extra.contains("n_star")) {
      for (auto it = extra["n_star"].begin(); it != extra["n_star"].end(); ++it) {
        out << "n* " << it.key() << ": " << (it.value().is_null() ? "undefined" : it.value().dump()) << "\n";
      }
    }
  }
  return kOk;
}

Json strategies_json(const Frame& f, const AttestationProtocol& proto) {
  Json s = Json::object();
  for (std::size_t i = 0; i < proto.strategies.size(); ++i) {
    Json rows = Json::array();
    const auto& b = f.agent(i).basis;
    for (std::size_t e = 0; e < b.size(); ++e) {
      rows.push_back({{"evidence", names(f, b.element(e))}, {"verdict", to_string(proto.strategies[i].verdicts[e])}});
    }
    s[proto.strategies[i].owner] = rows;
  }
  return s;
}

Json verification_json(const Frame& f, const ProtocolReport& r) {
  Json agents = Json::array();
  for (const auto& a : r.agents) {
    agents.push_back({{"agent", a.agent},
                      {"attests", names(f, a.attests)},
                      {"switches", a.switches.switches},
                      {"says_yes", a.switches.start_occurs},
                      {"bound", a.bound},
                      {"within_bound", a.within_bound()}});
  }
  return Json{{"validity", r.validity},
              {"agreement", r.agreement},
              {"nontriviality", r.nontriviality},
              {"switch_bounds", r.switch_bounds},
              {"solves", r.solves()},
              {"success_set", names(f, r.success_set)},
              {"agents", agents}};
}

void strategies_text(std::ostream& out, const Frame& f, const AttestationProtocol& proto) {
  for (std::size_t i = 0; i < proto.strategies.size(); ++i) {
    out << "strategy " << proto.strategies[i].owner << ":\n";
    const auto& b = f.agent(i).basis;
    for (std::size_t e = 0; e < b.size(); ++e) {
      out << "  " << f.worlds().format(b.element(e)) << " -> " << to_string(proto.strategies[i].verdicts[e]) << "\n";
    }
  }
}

int cmd_synth(const Options& o, std::ostream& out) {
  const Model m = load(o);
  const Frame& f = m.frame();
  const WorldSet p = resolve_set(m, o.p);
  std::optional<WorldSet> target;
  if (!o.target.empty()) target = resolve_set(m, o.target);
  const Synthesis s = synthesize(m.context(), p, target, o.cap);
  const ProtocolReport r = verify_protocol(f, s.protocol, p);
  if (o.json) {
    Json j = header("synth");
    j["P"] = names(f, p);
    j["target"] = target ? names(f, *target) : Json(nullptr);
    j["success_set"] = names(f, s.success_set);
    j["common_knowledge_target"] = s.common_knowledge_target;
    j["strategies"] = strategies_json(f, s.protocol);
    j["verification"] = verification_json(f, r);
    emit_json(out, j);
  } else {
    out << "success set: " << f.worlds().format(s.success_set) << "\n";
    strategies_text(out, f, s.protocol);
  }
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Scenario sc = load_scenario(o.scenario);
  const ScenarioRun run = run_scenario(sc);
  const Frame& f = sc.model.frame;
  const SimulationReport& r = run.simulation;
  const WorldTable& worlds = f.worlds();

  if (o.json) {
    Json j = header("simulate");
    j["world"] = worlds.name(r.world);
    j["P"] = names(f, sc.p);
    j["steps"] = r.steps;
    j["strategies"] = strategies_json(f, run.protocol);
    j["verification"] = verification_json(f, run.verification);
    Json streams = Json::object();
    for (const auto& s : run.streams) {
      Json chain = Json::array();
      for (std::size_t e : s.chain) chain.push_back(names(f, f.agent(s.agent).basis.element(e)));
      streams[s.agent] = chain;
    }
    j["streams"] = streams;
    Json faults = Json::array();
    for (const auto& fl : r.faults) faults.push_back({{"agent", fl.agent}, {"behavior", to_string(fl.behavior)}});
    j["faults"] = faults;
    Json agents = Json::array();
    for (std::size_t i = 0; i < r.agents.size(); ++i) {
      Json trace = Json::array();
      for (Attest a : r.outputs[i]) trace.push_back(to_string(a));
      agents.push_back({{"agent", r.agents[i]}, {"honest", static_cast<bool>(r.honest[i])},
                        {"trace", trace}, {"limit", to_string(r.limits[i])}});
    }
    j["agents"] = agents;
    Json agg = Json::array();
    for (Attest a : r.aggregate) agg.push_back(to_string(a));
    j["aggregate"] = {{"trace", agg}, {"limit", to_string(r.aggregate_limit)}};
    Json shame = Json::array();
    for (const auto& e : r.shame) {
      shame.push_back({{"agent", e.agent}, {"world", worlds.name(e.world)}, {"cause", to_string(e.cause)}});
    }
    j["shame"] = shame;
    emit_json(out, j);
    return kOk;
  }

  out << "world: " << worlds.name(r.world) << "\n";
  out << "success set: " << worlds.format(run.verification.success_set)
      << (run.verification.solves() ? " (protocol solves the problem)" : " (protocol does not solve the problem)")
      << "\n";
  for (std::size_t i = 0; i < r.agents.size(); ++i) {
    out << "agent " << r.agents[i] << (r.honest[i] ? "" : " (faulty)") << ": limit " << to_string(r.limits[i]) << "\n";
  }
  out << "aggregate limit: " << to_string(r.aggregate_limit) << "\n";
  if (r.shame.empty()) out << "shame: none\n";
  for (const auto& e : r.shame) out << "shame: " << e.agent << " (" << to_string(e.cause) << ")\n";
  if (o.trace) {
    out << "\nstep";
    for (const auto& a : r.agents) out << "\t" << a;
    out << "\tmajority\n";
    for (std::size_t t = 0; t < r.steps; ++t) {
      out << t;
      for (std::size_t i = 0; i < r.agents.size(); ++i) out << "\t" << to_string(r.outputs[i][t]);
      out << "\t" << to_string(r.aggregate[t]) << "\n";
    }
  }
  return kOk;
}

int cmd_laws(const Options& o, std::ostream& out) {
  const Model m = load(o);
  LawOptions lo;
  lo.trials = o.trials;
  lo.seed = o.seed;
  const LawReport rep = law_battery(m, lo);
  if (o.json) {
    Json j = header("laws");
    j["trials"] = o.trials;
    j["seed"] = o.seed;
    j["passed"] = rep.passed();
    Json laws = Json::array();
    for (const auto& l : rep.laws) {
      Json failures = Json::array();
      for (const auto& fl : l.failures) failures.push_back({{"instance", fl.instance}, {"world", fl.world}});
      laws.push_back({{"name", l.name}, {"kind", to_string(l.kind)}, {"trials", l.trials},
                      {"vacuous", l.vacuous}, {"failures", failures}});
    }
    j["laws"] = laws;
    emit_json(out, j);
  } else {
    for (const auto& l : rep.laws) {
      out << (l.passed() ? "ok    " : "FAIL  ") << l.name << " (" << to_string(l.kind) << ", " << l.trials
          << " trials";
      if (l.vacuous) out << ", " << l.vacuous << " vacuous";
      out << ")\n";
      for (const auto& fl : l.failures) out << "      at " << fl.world << ": " << fl.instance << "\n";
    }
    out << (rep.passed() ? "all laws hold\n" : std::to_string(rep.failure_count()) + " failures\n");
  }
  return rep.passed() ? kOk : kPropertyFails;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-frame engine for common inductive knowledge", "cik"};
  app.require_subcommand(1);
  Options o;

  auto model_opt = [&](CLI::App* c) { c->add_option("-m,--model", o.model, "Model JSON file")->required(); };
  auto json_flag = [&](CLI::App* c) { c->add_flag("--json", o.json, "Emit JSON"); };

  auto* check = app.add_subcommand("check", "Check validity of a formula");
  model_opt(check);
  check->add_option("-f,--formula", o.formula, "Formula")->required();
  json_flag(check);

  auto* eval = app.add_subcommand("eval", "Print the extension of a formula");
  model_opt(eval);
  eval->add_option("-f,--formula", o.formula, "Formula")->required();
  json_flag(eval);

  auto* rank = app.add_subcommand("rank", "Difference-hierarchy ranks of a set");
  model_opt(rank);
  rank->add_option("-a,--agent", o.agent, "Agent")->required();
  rank->add_option("-s,--set", o.set, "Worlds (comma list or @formula)")->required();
  json_flag(rank);

  auto* ops = app.add_subcommand("ops", "Apply an epistemic operator");
  model_opt(ops);
  ops->add_option("--op", o.op, "R, I, B, S, G, C or L")->required();
  ops->add_option("-a,--agent", o.agent, "Agent (R, I, B, S)");
  ops->add_option("-w,--witness", o.w, "Witness set W");
  ops->add_option("-p,--prop", o.p, "Proposition set P");
  ops->add_option("--cap", o.cap, "World limit for L enumeration");
  json_flag(ops);

  auto* synth = app.add_subcommand("synth", "Synthesize an attestation protocol");
  model_opt(synth);
  synth->add_option("-p,--prop", o.p, "Proposition P")->required();
  synth->add_option("--target", o.target, "Desired success set");
  synth->add_option("--cap", o.cap, "World limit for target search");
  json_flag(synth);

  auto* sim = app.add_subcommand("simulate", "Run a simulation scenario");
  sim->add_option("-s,--scenario", o.scenario, "Scenario JSON file")->required();
  sim->add_flag("--trace", o.trace, "Print the step table");
  json_flag(sim);

  auto* laws = app.add_subcommand("laws", "Run the soundness battery");
  model_opt(laws);
  laws->add_option("--trials", o.trials, "Trials per law");
  laws->add_option("--seed", o.seed, "Seed");
  json_flag(laws);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*eval) return cmd_eval(o, out);
    if (*rank) return cmd_rank(o, out);
    if (*ops) return cmd_ops(o, out);
    if (*synth) return cmd_synth(o, out);
    if (*sim) return cmd_simulate(o, out);
    if (*laws) return cmd_laws(o, out);
  } catch (const FormulaError& e) {
    err << "error: " << e.error.what() << "\n  " << e.text << "\n  " << std::string(e.error.position(), ' ') << "^\n";
    return kInputError;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    return kPropertyFails;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}

}  // namespace cik::cli
