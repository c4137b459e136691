#pragma once

#include "cutset/set_model.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>

namespace cutset {

/// Set-spec document:
///
///   {"parts": [
///      {"type": "central_cantor", "carrier": ["0","1"],
///       "xi": {"rule": "ratios", "ratios": ["1/3"], "repeat_tail": true}},
///      {"type": "central_cantor", "xi": {"rule": "alpha", "alpha": "1/2"}},
///      {"type": "finite_points", "points": ["1/2"]},
///      {"type": "geometric", "limit": "1/2", "offset": "1/12", "ratio": "1/2",
///       "direction": "right"}]}
///
/// Rationals are strings "p/q" (plain integers and decimals are also accepted on input).
SetSpec set_spec_from_json(const nlohmann::json& doc);
nlohmann::json set_spec_to_json(const SetSpec& spec);

SetSpec load_set_spec(const std::filesystem::path& path);
void save_set_spec(const SetSpec& spec, const std::filesystem::path& path);

/// Accepts a JSON string or a number for a rational field.
Rational rational_from_json(const nlohmann::json& value);

} // namespace cutset
