#include "cik/error.hpp"
#include "json_io.hpp"

#include "cik/attest.hpp"

namespace cik {

namespace {

using detail::json;
using detail::require;
using detail::schema_error;

WorldSet names_to_set(const WorldTable& worlds, const json& j, std::string_view source, const std::string& path) {
  if (!j.is_array()) schema_error(source, path, "expected an array of world names");
  std::vector<std::string> names;
  for (const auto& n : j) {
    if (!n.is_string()) schema_error(source, path, "expected world names");
    names.push_back(n.get<std::string>());
  }
  try {
    return worlds.set_of(names);
  } catch (const InputError& e) {
    schema_error(source, path, e.what());
  }
}

Attest parse_attest(const json& j, std::string_view source, const std::string& path) {
  if (j == "yes") return Attest::Yes;
  if (j == "defer") return Attest::Defer;
  schema_error(source, path, "verdict must be \"yes\" or \"defer\"");
}

FaultBehavior parse_behavior(const json& j, std::string_view source, const std::string& path) {
  if (j == "random") return FaultBehavior::Random;
  if (j == "always-yes") return FaultBehavior::AlwaysYes;
  if (j == "always-defer") return FaultBehavior::AlwaysDefer;
  schema_error(source, path, "behavior must be random, always-yes or always-defer");
}

std::size_t element_index(const EvidenceBasis& b, const WorldSet& e, std::string_view source, const std::string& path,
                          const WorldTable& worlds) {
  auto idx = b.find(e);
  if (!idx) schema_error(source, path, worlds.format(e) + " is not a basis element");
  return *idx;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base, std::string_view source) {
  const json doc = detail::parse_json(json_text, source);
  if (!doc.is_object()) schema_error(source, "", "expected a JSON object");

  const json& frame_j = require(doc, "frame", source, "");
  std::optional<ModelDocument> model;
  if (frame_j.is_string()) {
    std::filesystem::path path = frame_j.get<std::string>();
    if (path.is_relative()) path = base / path;
    model = load_model(path);
  } else if (frame_j.is_object()) {
    model = detail::model_from_json(frame_j, std::string(source) + ": frame");
  } else {
    schema_error(source, "frame", "expected a path or an inline frame object");
  }

  Scenario sc{std::move(*model), WorldSet(), true, std::nullopt, {}, 0, {}, 0, kDefaultSteps, {}};
  const Frame& frame = sc.model.frame;
  const WorldTable& worlds = frame.worlds();

  const json& p_j = require(doc, "P", source, "");
  if (p_j.is_object()) {
    const json& f = require(p_j, "formula", source, "P");
    if (!f.is_string()) schema_error(source, "P.formula", "expected a string");
    Model m(frame, sc.model.valuation);
    try {
      sc.p = evaluate(m, parse(f.get<std::string>()));
    } catch (const InputError& e) {
      schema_error(source, "P.formula", e.what());
    }
  } else {
    sc.p = names_to_set(worlds, p_j, source, "P");
  }

  const json& w_j = require(doc, "world", source, "");
  if (!w_j.is_string() || !worlds.has(w_j.get<std::string>())) schema_error(source, "world", "expected a world name");
  sc.world = worlds.index_of(w_j.get<std::string>());

  if (auto it = doc.find("protocol"); it != doc.end()) {
    const json& kind = require(*it, "kind", source, "protocol");
    if (kind == "synthesized") {
      if (auto t = it->find("target"); t != it->end()) sc.target = names_to_set(worlds, *t, source, "protocol.target");
    } else if (kind == "explicit") {
      sc.synthesized = false;
      const json& strategies = require(*it, "strategies", source, "protocol");
      if (!strategies.is_object()) schema_error(source, "protocol.strategies", "expected an object keyed by agent");
      for (const auto& agent : frame.agents()) {
        const std::string path = "protocol.strategies." + agent.name;
        auto s = strategies.find(agent.name);
        if (s == strategies.end() || !s->is_array()) schema_error(source, path, "missing strategy");
        std::vector<std::optional<Attest>> table(agent.basis.size());
        for (std::size_t k = 0; k < s->size(); ++k) {
          const std::string rp = path + "[" + std::to_string(k) + "]";
          const json& row = (*s)[k];
          const std::size_t e =
              element_index(agent.basis, names_to_set(worlds, require(row, "evidence", source, rp), source, rp + ".evidence"),
                            source, rp + ".evidence", worlds);
          if (table[e]) schema_error(source, rp, "evidence listed twice");
          table[e] = parse_attest(require(row, "verdict", source, rp), source, rp + ".verdict");
        }
        AttestationStrategy strategy{agent.name, {}};
        for (std::size_t e = 0; e < table.size(); ++e) {
          if (!table[e]) schema_error(source, path, "no verdict for " + worlds.format(agent.basis.element(e)));
          strategy.verdicts.push_back(*table[e]);
        }
        sc.protocol.strategies.push_back(std::move(strategy));
      }
      for (auto s = strategies.begin(); s != strategies.end(); ++s) {
        frame.agent_index(s.key());
      }
    } else {
      schema_error(source, "protocol.kind", "expected \"synthesized\" or \"explicit\"");
    }
  }

  if (auto it = doc.find("faults"); it != doc.end()) {
    if (!it->is_array()) schema_error(source, "faults", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string path = "faults[" + std::to_string(k) + "]";
      const json& f = (*it)[k];
      Fault fault;
      if (f.is_string()) {
        fault.agent = f.get<std::string>();
      } else {
        const json& a = require(f, "agent", source, path);
        if (!a.is_string()) schema_error(source, path + ".agent", "expected an agent name");
        fault.agent = a.get<std::string>();
        if (auto b = f.find("behavior"); b != f.end()) fault.behavior = parse_behavior(*b, source, path + ".behavior");
      }
      try {
        frame.agent_index(fault.agent);
      } catch (const InputError& e) {
        schema_error(source, path, e.what());
      }
      sc.faults.push_back(std::move(fault));
    }
  }

  if (auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_unsigned()) schema_error(source, "seed", "expected a non-negative integer");
    sc.seed = it->get<std::uint64_t>();
  }
  if (auto it = doc.find("steps"); it != doc.end()) {
    if (!it->is_number_unsigned()) schema_error(source, "steps", "expected a non-negative integer");
    sc.steps = it->get<std::size_t>();
  }

  if (auto it = doc.find("streams"); it != doc.end()) {
    if (!it->is_object()) schema_error(source, "streams", "expected an object keyed by agent");
    for (const auto& agent : frame.agents()) {
      const std::string path = "streams." + agent.name;
      auto s = it->find(agent.name);
      if (s == it->end() || !s->is_array()) schema_error(source, path, "missing stream");
      EvidenceStream stream{agent.name, sc.world, {}};
      for (std::size_t k = 0; k < s->size(); ++k) {
        const std::string ep = path + "[" + std::to_string(k) + "]";
        stream.chain.push_back(element_index(agent.basis, names_to_set(worlds, (*s)[k], source, ep), source, ep, worlds));
      }
      try {
        validate_stream(frame, stream);
      } catch (const DomainError& e) {
        schema_error(source, path, e.what());
      }
      sc.streams.push_back(std::move(stream));
    }
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path), path.parent_path(), path.string());
}

ScenarioRun run_scenario(const Scenario& sc) {
  ScenarioRun run;
  const Frame& frame = sc.model.frame;
  if (sc.synthesized) {
    OperatorContext ctx(frame);
    run.protocol = synthesize(ctx, sc.p, sc.target).protocol;
  } else {
    run.protocol = sc.protocol;
  }
  run.verification = verify_protocol(frame, run.protocol, sc.p);
  run.streams = sc.streams;
  if (run.streams.empty()) {
    // Distinct per-agent stream seeds, all derived from the scenario seed.
    for (std::size_t i = 0; i < frame.agent_count(); ++i) {
      run.streams.push_back(generate_stream(frame, i, sc.world, sc.seed + 1 + i));
    }
  }
  run.simulation = simulate(frame, run.protocol, sc.world, run.streams, sc.faults, sc.p, sc.seed, sc.steps);
  return run;
}

}  // namespace cik
