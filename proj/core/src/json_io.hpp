#pragma once

// Shared by the model and scenario loaders; keeps nlohmann out of the
// public headers.

#include <nlohmann/json.hpp>

#include "cik/frame_io.hpp"

namespace cik::detail {

using nlohmann::json;

ModelDocument model_from_json(const json& doc, std::string_view source);

json parse_json(std::string_view text, std::string_view source);

[[noreturn]] void schema_error(std::string_view source, const std::string& path, const std::string& msg);

const json& require(const json& obj, const char* key, std::string_view source, const std::string& path);

}  // namespace cik::detail
