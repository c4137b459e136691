#pragma once

#include "cutset/function_builder.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>

namespace cutset {

/// Function document: construction metadata, the zero set's spec, and the term list with exact
/// "p/q" endpoints. Doubles are written in shortest round-trip form, so save/load is bit-identical.
nlohmann::json function_to_json(const PiecewiseFunction& pf);
PiecewiseFunction function_from_json(const nlohmann::json& doc);

void save_function(const PiecewiseFunction& pf, const std::filesystem::path& path);
PiecewiseFunction load_function(const std::filesystem::path& path);

} // namespace cutset
