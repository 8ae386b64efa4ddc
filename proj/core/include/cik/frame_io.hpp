#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cik/frame.hpp"
#include "cik/model.hpp"

namespace cik {

struct ModelDocument {
  Frame frame;
  Valuation valuation;
};

/// Reads the frame/model JSON format. All problems are InputError: syntax
/// errors carry the byte offset, unknown world names are listed together
/// with their locations, and basis violations are described with witnesses.
ModelDocument parse_model(std::string_view json_text, std::string_view source = "<input>");
ModelDocument load_model(const std::filesystem::path& path);

/// Inverse of parse_model, pretty-printed.
std::string model_to_json(const Frame& frame, const Valuation& valuation = {});

std::string read_text_file(const std::filesystem::path& path);

}  // namespace cik
