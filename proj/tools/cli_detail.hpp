#pragma once

#include "cli.hpp"

#include "cutset/set_model.hpp"

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>

namespace cutset::cli::detail {

using nlohmann::json;

ValidatedSet load_validated(const std::string& path);
PiecewiseFunction load_fn(const RunConfig& cfg);

/// Writes the report (with header) to --report, and to `out` as JSON when --json is set.
/// Otherwise `text` goes to `out`.
void emit(const RunConfig& cfg, std::ostream& out, json report, const std::string& text,
          const std::vector<std::string>& deviations);

std::string fmt(double v);

int cmd_detect(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_conditions(const RunConfig& cfg, std::ostream& out);
int cmd_variation(const RunConfig& cfg, std::ostream& out);
int cmd_porosity(const RunConfig& cfg, std::ostream& out);
int cmd_zcprobe(const RunConfig& cfg, std::ostream& out);

} // namespace cutset::cli::detail
