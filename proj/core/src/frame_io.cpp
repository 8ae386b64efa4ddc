#include <fstream>
#include <sstream>

#include "cik/error.hpp"
#include "json_io.hpp"

namespace cik {

namespace detail {

void schema_error(std::string_view source, const std::string& path, const std::string& msg) {
  throw InputError(std::string(source) + ": " + (path.empty() ? "" : path + ": ") + msg);
}

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string(source) + ": invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

const json& require(const json& obj, const char* key, std::string_view source, const std::string& path) {
  if (!obj.is_object()) schema_error(source, path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(source, path, std::string("missing field '") + key + "'");
  return *it;
}

namespace {

struct UnknownNames {
  std::vector<std::string> entries;

  void add(const std::string& name, const std::string& where) { entries.push_back("'" + name + "' (" + where + ")"); }
};

std::vector<std::string> string_list(const json& j, std::string_view source, const std::string& path) {
  if (!j.is_array()) schema_error(source, path, "expected an array of names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) schema_error(source, path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

WorldSet world_list(const WorldTable& worlds, const json& j, std::string_view source, const std::string& path,
                    UnknownNames& unknown) {
  WorldSet out = worlds.empty_set();
  for (const auto& n : string_list(j, source, path)) {
    if (worlds.has(n)) {
      out = out.with(worlds.index_of(n));
    } else {
      unknown.add(n, path);
    }
  }
  return out;
}

}  // namespace

ModelDocument model_from_json(const json& doc, std::string_view source) {
  if (!doc.is_object()) schema_error(source, "", "expected a JSON object");
  std::shared_ptr<const WorldTable> worlds;
  try {
    worlds = WorldTable::make(string_list(require(doc, "worlds", source, ""), source, "worlds"));
  } catch (const InputError& e) {
    schema_error(source, "worlds", e.what());
  }

  const json& agents_j = require(doc, "agents", source, "");
  if (!agents_j.is_array()) schema_error(source, "agents", "expected an array");

  UnknownNames unknown;
  struct Raw {
    std::string name;
    std::size_t tolerance;
    std::vector<WorldSet> basis;
  };
  std::vector<Raw> raw;
  for (std::size_t a = 0; a < agents_j.size(); ++a) {
    const std::string path = "agents[" + std::to_string(a) + "]";
    const json& aj = agents_j[a];
    const json& name = require(aj, "name", source, path);
    if (!name.is_string()) schema_error(source, path + ".name", "expected a string");
    const json& tol = require(aj, "tolerance", source, path);
    if (!tol.is_number_integer() || tol.get<long long>() < 0) {
      schema_error(source, path + ".tolerance", "expected a non-negative integer");
    }
    const json& basis = require(aj, "basis", source, path);
    if (!basis.is_array()) schema_error(source, path + ".basis", "expected an array of world lists");
    Raw r{name.get<std::string>(), tol.get<std::size_t>(), {}};
    for (std::size_t e = 0; e < basis.size(); ++e) {
      r.basis.push_back(world_list(*worlds, basis[e], source, path + ".basis[" + std::to_string(e) + "]", unknown));
    }
    raw.push_back(std::move(r));
  }

  Valuation valuation;
  if (auto it = doc.find("valuation"); it != doc.end()) {
    if (!it->is_object()) schema_error(source, "valuation", "expected an object");
    for (auto v = it->begin(); v != it->end(); ++v) {
      valuation.emplace(v.key(), world_list(*worlds, v.value(), source, "valuation." + v.key(), unknown));
    }
  }

  if (!unknown.entries.empty()) {
    std::string msg = "unknown world name" + std::string(unknown.entries.size() > 1 ? "s: " : ": ");
    for (std::size_t i = 0; i < unknown.entries.size(); ++i) msg += (i ? ", " : "") + unknown.entries[i];
    schema_error(source, "", msg);
  }

  std::vector<AgentSpec> specs;
  for (std::size_t a = 0; a < raw.size(); ++a) {
    BasisReport report = validate_basis(raw[a].basis, worlds->full_set());
    if (!report.valid()) {
      std::string msg = "invalid information basis:";
      for (const auto& v : report.violations) msg += "\n  " + describe(v, raw[a].basis, *worlds);
      schema_error(source, "agents[" + std::to_string(a) + "].basis", msg);
    }
    specs.push_back({raw[a].name, EvidenceBasis::make(raw[a].basis, worlds->full_set()), raw[a].tolerance});
  }
  for (const auto& [name, set] : valuation) {
    if (is_keyword(name) || name.empty()) schema_error(source, "valuation", "'" + name + "' is not a proposition name");
  }
  return ModelDocument{Frame::make(worlds, std::move(specs)), std::move(valuation)};
}

}  // namespace detail

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ModelDocument parse_model(std::string_view json_text, std::string_view source) {
  return detail::model_from_json(detail::parse_json(json_text, source), source);
}

ModelDocument load_model(const std::filesystem::path& path) {
  return parse_model(read_text_file(path), path.string());
}

std::string model_to_json(const Frame& frame, const Valuation& valuation) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["worlds"] = frame.worlds().names();
  ordered_json agents = ordered_json::array();
  for (const auto& a : frame.agents()) {
    ordered_json basis = ordered_json::array();
    for (const auto& e : a.basis.elements()) basis.push_back(frame.worlds().names_of(e));
    agents.push_back({{"name", a.name}, {"tolerance", a.tolerance}, {"basis", basis}});
  }
  doc["agents"] = agents;
  if (!valuation.empty()) {
    ordered_json v = ordered_json::object();
    for (const auto& [name, set] : valuation) v[name] = frame.worlds().names_of(set);
    doc["valuation"] = v;
  }
  return doc.dump(2) + "\n";
}

}  // namespace cik
