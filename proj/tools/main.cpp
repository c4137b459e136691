#include "cli.hpp"

#include "cutset/bump_kernel.hpp"

#include <CLI11.hpp>

#include <iostream>

using cutset::cli::RunConfig;

namespace {

void common(CLI::App* sub, RunConfig& cfg)
{
    sub->add_flag("--json", cfg.json, "Print the JSON report instead of text");
    sub->add_option("--report", cfg.report_path, "Also write the JSON report here");
    sub->add_option("--seed", cfg.seed, "Seed for every randomized step");
}

} // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    CLI::App app{"cutset: smooth functions with a prescribed cutting set"};
    app.require_subcommand(1);
    int max_order = -1;
    app.add_option("--max-order", max_order, "Derivative order cap (overrides CUTSET_MAX_ORDER)");

    auto* validate = app.add_subcommand("validate", "Check a set spec and report its structure");
    validate->add_option("--spec", cfg.spec_path)->required();
    validate->add_option("--depth", cfg.depth, "Depth of the measure bracket")->check(CLI::Range(0, 4096));

    auto* gaps = app.add_subcommand("gaps", "Print the gap tree");
    gaps->add_option("--spec", cfg.spec_path)->required();
    gaps->add_option("--depth", cfg.depth)->check(CLI::Range(1, 4096));
    gaps->add_option("--budget", cfg.budget, "Components materialized per gap");
    gaps->add_option("--csv", cfg.csv_path, "CSV with kind,index,left,right,length");

    auto* kernel = app.add_subcommand("kernel", "Dump the bump h and its derivatives");
    kernel->add_option("--order", cfg.order)->check(CLI::NonNegativeNumber);
    kernel->add_option("--samples", cfg.samples);
    kernel->add_option("--out", cfg.out_path, "CSV file (default stdout)");

    auto* build = app.add_subcommand("build", "Build a function and save its term list");
    build->add_option("--spec", cfg.spec_path)->required();
    build->add_option("--construction", cfg.construction)
        ->check(CLI::IsMember({"sine", "bumpsine", "prescribed", "zero"}));
    build->add_option("--depth", cfg.depth)->check(CLI::Range(1, 4096));
    build->add_option("--budget", cfg.budget);
    build->add_option("--rule", cfg.rule, "c_n for sine: power:S or geometric:K, optional *scale");
    build->add_option("--out", cfg.out_path, "Function JSON (default stdout)");

    auto* ev = app.add_subcommand("eval", "Evaluate f^(p) at a point");
    ev->add_option("--fn", cfg.fn_path)->required();
    ev->add_option("--at", cfg.at, "Point as p/q or decimal")->required();
    ev->add_option("--order", cfg.order)->check(CLI::NonNegativeNumber);

    auto* sample = app.add_subcommand("sample", "Sample f and derivatives to CSV");
    sample->add_option("--fn", cfg.fn_path)->required();
    sample->add_option("--grid", cfg.grid)->check(CLI::Range(2, 1 << 26));
    sample->add_option("--orders", cfg.orders)->check(CLI::NonNegativeNumber);
    sample->add_option("--out", cfg.out_path, "CSV file (default stdout)");

    auto* detect = app.add_subcommand("detect", "Black-box cutting-set detection");
    detect->add_option("--fn", cfg.fn_path)->required();
    detect->add_option("--delta", cfg.delta)->check(CLI::PositiveNumber);
    detect->add_option("--zeta", cfg.zeta)->check(CLI::NonNegativeNumber);
    detect->add_option("--grid", cfg.grid, "Uniform probes besides the structured ones");
    detect->add_option("--samples", cfg.samples, "Samples per radius");

    auto* verify = app.add_subcommand("verify", "Certify E(f) = F on structured probes");
    verify->add_option("--fn", cfg.fn_path)->required();
    verify->add_option("--spec", cfg.spec_path, "Set to compare against (default: the function's own)");

    auto* conditions = app.add_subcommand("conditions", "Check conditions (i)-(iii)");
    conditions->add_option("--fn", cfg.fn_path)->required();
    conditions->add_option("--orders", cfg.orders, "Highest derivative order")->check(CLI::NonNegativeNumber);
    conditions->add_option("--bound", cfg.bound, "Variation bound for the certificate");

    auto* var = app.add_subcommand("variation", "Total variation and divergence certificate");
    var->add_option("--fn", cfg.fn_path)->required();
    var->add_option("--bound", cfg.bound);

    auto* porosity = app.add_subcommand("porosity", "Porosity experiment around f");
    porosity->add_option("--fn", cfg.fn_path, "Function JSON or 'zero'")->required();
    porosity->add_option("--eps", cfg.eps)->check(CLI::PositiveNumber);
    porosity->add_option("--n", cfg.n)->check(CLI::Range(1, 1 << 20));
    porosity->add_option("--trials", cfg.trials)->check(CLI::Range(1, 1 << 24));
    porosity->add_flag("--smooth-noise", cfg.smooth_noise, "Add smooth noise between vertices");

    auto* zc = app.add_subcommand("zcprobe", "Heuristic ZC_alpha membership probe");
    zc->add_option("--fn", cfg.fn_path)->required();
    zc->add_option("--alpha", cfg.alpha)->check(CLI::Range(0.0, 1.0));
    zc->add_option("--grid", cfg.grid)->check(CLI::Range(2, 1 << 26));

    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        common(sub, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cutset::cli::Invalid;
    }
    if (max_order >= 0)
        cutset::set_max_order(max_order);
    cfg.subcommand = app.get_subcommands().front()->get_name();
    // sample grids default finer than the uniform detector grid
    if (cfg.subcommand == "zcprobe" && app.get_subcommands().front()->count("--grid") == 0)
        cfg.grid = 1 << 16;
    return cutset::cli::run(cfg, std::cout, std::cerr);
}
