#pragma once

#include "cutset/function_builder.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cutset::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum Exit : int {
    Ok = 0,
    Invalid = 1,
    Incomplete = 2,   ///< certification stopped at the truncation scale
    Internal = 3
};

struct RunConfig
{
    std::string subcommand;
    std::string spec_path;
    std::string fn_path;               ///< "zero" selects the zero function where allowed
    std::string construction = "prescribed";
    std::string rule = "power:2";      ///< c_n for the sine construction: power:s or geometric:k
    int depth = kDefaultDepth;
    std::size_t budget = kDefaultBudget;
    double delta = 1e-4;
    double zeta = 1e-12;
    double eps = 1.0;
    int n = 10;
    double alpha = 0.5;
    std::size_t grid = 1024;
    int orders = 0;                    ///< highest derivative in samples / conditions
    int order = 0;                     ///< single derivative for eval / kernel
    int samples = 256;
    std::string at;                    ///< evaluation point, "p/q" or decimal
    int trials = 200;
    std::uint64_t seed = 0;
    double bound = 1e3;
    bool smooth_noise = false;
    bool json = false;                 ///< JSON on stdout instead of text
    std::string out_path;              ///< artifact (function JSON or CSV)
    std::string report_path;           ///< JSON report file
    std::string csv_path;              ///< extra CSV for `gaps`
};

/// Entries every report carries besides the function's own deviations.
std::vector<std::string> standard_deviations();

/// Reproducibility header: tool version, seed, depth, configuration and deviations.
nlohmann::json report_header(const RunConfig& cfg, const std::vector<std::string>& deviations);

/// Dispatches to the subcommand. Diagnostics go to `err`, reports to `out`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// CSV `x,f0,...,fP` on i/grid plus refinement points next to every support boundary.
void export_plot_data(const PiecewiseFunction& pf, std::size_t grid, int orders, std::ostream& os);

/// Parses "power:2", "geometric:1", optionally with "*scale".
CoefficientRule parse_rule(const std::string& text);

} // namespace cutset::cli
