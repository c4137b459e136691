#include "cli_detail.hpp"

#include "cutset/bump_kernel.hpp"
#include "cutset/errors.hpp"
#include "cutset/evaluator.hpp"
#include "cutset/function_io.hpp"
#include "cutset/gap_tree.hpp"
#include "cutset/set_spec_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cutset::cli {

using nlohmann::json;

std::vector<std::string> standard_deviations()
{
    return {
        "prescribed coefficients use (n+1)^-2 so that the root level n = 0 carries a finite weight",
        "Var of c sin(2 pi u) over one full period is 4c; variation certificates use 4 c_n per gap",
        "black-box variation is a grid lower bound; the porosity witness is built for 2 * estimate + slack",
    };
}

json report_header(const RunConfig& cfg, const std::vector<std::string>& deviations)
{
    json h;
    h["tool"] = "cutset";
    h["version"] = kToolVersion;
    h["subcommand"] = cfg.subcommand;
    h["seed"] = cfg.seed;
    h["depth"] = cfg.depth;
    h["max_order"] = max_order();
    h["config"] = {{"spec", cfg.spec_path}, {"fn", cfg.fn_path},       {"construction", cfg.construction},
                   {"rule", cfg.rule},      {"budget", cfg.budget},     {"delta", cfg.delta},
                   {"zeta", cfg.zeta},      {"eps", cfg.eps},           {"n", cfg.n},
                   {"alpha", cfg.alpha},    {"grid", cfg.grid},         {"orders", cfg.orders},
                   {"order", cfg.order},    {"trials", cfg.trials},     {"bound", cfg.bound},
                   {"smooth_noise", cfg.smooth_noise}};
    std::vector<std::string> all = standard_deviations();
    for (const auto& d : deviations)
        if (std::find(all.begin(), all.end(), d) == all.end())
            all.push_back(d);
    h["deviations"] = all;
    return h;
}

CoefficientRule parse_rule(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ValidationError("rule must look like power:S or geometric:K, got '" + text + "'");
    const std::string kind = text.substr(0, colon);
    std::string rest = text.substr(colon + 1);
    double scale = 1.0;
    if (const auto star = rest.find('*'); star != std::string::npos) {
        scale = std::stod(rest.substr(star + 1));
        rest = rest.substr(0, star);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
    if (ec != std::errc() || ptr != rest.data() + rest.size())
        throw ValidationError("bad rule parameter '" + rest + "'");
    if (kind == "power")
        return CoefficientRule::power(value, scale);
    if (kind == "geometric")
        return CoefficientRule::geometric(value, scale);
    throw ValidationError("unknown rule kind '" + kind + "'");
}

void export_plot_data(const PiecewiseFunction& pf, std::size_t grid, int orders, std::ostream& os)
{
    if (grid < 2)
        throw ValidationError("grid must be at least 2");
    std::vector<double> xs;
    xs.reserve(grid + 1 + pf.terms.size() * 4);
    for (std::size_t i = 0; i <= grid; ++i)
        xs.push_back(static_cast<double>(i) / static_cast<double>(grid));
    for (const auto& t : pf.terms)
        for (double u : {1e-3, 1e-2})
            for (double x : {t.a + u * t.width, t.b - u * t.width})
                if (x > t.a && x < t.b)
                    xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    os << "x";
    for (int p = 0; p <= orders; ++p)
        os << ",f" << p;
    os << '\n';
    for (double x : xs) {
        os << detail::fmt(x);
        for (double v : eval_all(pf, x, orders))
            os << ',' << detail::fmt(v);
        os << '\n';
    }
}

namespace detail {

std::string fmt(double v)
{
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

ValidatedSet load_validated(const std::string& path)
{
    if (path.empty())
        throw ValidationError("--spec is required");
    return validate_spec(load_set_spec(path));
}

PiecewiseFunction load_fn(const RunConfig& cfg)
{
    if (cfg.fn_path.empty())
        throw ValidationError("--fn is required");
    return load_function(cfg.fn_path);
}

void emit(const RunConfig& cfg, std::ostream& out, json report, const std::string& text,
          const std::vector<std::string>& deviations)
{
    json doc;
    doc["header"] = report_header(cfg, deviations);
    doc["report"] = std::move(report);
    if (!cfg.report_path.empty()) {
        std::ofstream f(cfg.report_path);
        if (!f)
            throw ValidationError("cannot write " + cfg.report_path);
        f << doc.dump(2) << '\n';
    }
    if (cfg.json)
        out << doc.dump(2) << '\n';
    else
        out << text;
}

namespace {

json interval_json(const Rational& l, const Rational& r)
{
    return json::array({to_string(l), to_string(r)});
}

std::ostream& open_or(const std::string& path, std::ofstream& file, std::ostream& fallback)
{
    if (path.empty())
        return fallback;
    file.open(path);
    if (!file)
        throw ValidationError("cannot write " + path);
    return file;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out)
{
    const ValidatedSet vs = load_validated(cfg.spec_path);
    const MeasureBracket mb = measure(vs, cfg.depth);
    json r;
    r["perfect_parts"] = vs.perfect.size();
    r["isolated_points"] = vs.countable.isolated_points.size();
    r["sequences"] = vs.countable.sequences.size();
    std::vector<std::string> acc;
    for (const auto& y : vs.countable.accumulation_points)
        acc.push_back(to_string(y));
    r["accumulation_points"] = acc;
    if (vs.hull)
        r["hull"] = interval_json(vs.hull->left, vs.hull->right);
    r["boundary"] = {{"zero", to_string(vs.boundary.at_zero)}, {"one", to_string(vs.boundary.at_one)}};
    r["measure"] = {{"lower", to_string(mb.lower)}, {"upper", to_string(mb.upper)}, {"depth", mb.depth}};
    if (mb.limit)
        r["measure"]["limit"] = to_string(*mb.limit);

    std::ostringstream t;
    t << "valid set: " << vs.perfect.size() << " Cantor part(s), " << vs.countable.isolated_points.size()
      << " isolated point(s), " << vs.countable.sequences.size() << " sequence(s)\n";
    t << "boundary: 0 " << to_string(vs.boundary.at_zero) << ", 1 " << to_string(vs.boundary.at_one) << '\n';
    t << "measure at depth " << mb.depth << ": [" << to_double(mb.lower) << ", " << to_double(mb.upper) << "]";
    if (mb.limit)
        t << ", limit " << to_string(*mb.limit);
    t << '\n';
    emit(cfg, out, r, t.str(), {});
    return Ok;
}

const char* gap_kind(Gap::Kind k)
{
    switch (k) {
    case Gap::Kind::Tree: return "tree";
    case Gap::Kind::ExtraLeft: return "extra_left";
    case Gap::Kind::ExtraRight: return "extra_right";
    case Gap::Kind::Whole: return "whole";
    }
    return "?";
}

int cmd_gaps(const RunConfig& cfg, std::ostream& out)
{
    const ValidatedSet vs = load_validated(cfg.spec_path);
    const GapTree gt = build_gap_tree(vs, cfg.depth);
    const ComponentTable ct = build_component_table(gt, vs, cfg.budget);

    std::ostringstream t;
    json gaps = json::array();
    // tree order: preorder by address, pseudo-gaps first
    std::vector<const Gap*> order;
    for (const auto& g : gt.gaps)
        order.push_back(&g);
    std::sort(order.begin(), order.end(), [](const Gap* a, const Gap* b) {
        const bool ta = a->kind == Gap::Kind::Tree;
        const bool tb = b->kind == Gap::Kind::Tree;
        if (ta != tb)
            return tb;
        return a->address < b->address;
    });
    for (const Gap* g : order) {
        const std::string name = g->kind == Gap::Kind::Tree ? "J_" + (g->address.empty() ? "e" : g->address)
                                                            : g->address;
        t << std::string(static_cast<std::size_t>(g->level) * 2, ' ') << name << " (" << to_string(g->interval.left)
          << ", " << to_string(g->interval.right) << ")";
        const auto& row = ct.rows.at(g->address);
        if (!row.whole) {
            t << "  " << row.components.size() << " components";
            for (const auto& b : row.blocks)
                t << " [" << to_string(b.type) << "]";
            if (row.truncated())
                t << " truncated";
        }
        t << '\n';
        gaps.push_back({{"kind", gap_kind(g->kind)},
                        {"address", g->address},
                        {"level", g->level},
                        {"interval", interval_json(g->interval.left, g->interval.right)},
                        {"components", row.components.size()},
                        {"truncated", row.truncated()}});
    }
    if (!cfg.csv_path.empty()) {
        std::ofstream f(cfg.csv_path);
        if (!f)
            throw ValidationError("cannot write " + cfg.csv_path);
        f << "kind,index,left,right,length\n";
        for (const auto& g : gt.gaps)
            f << gap_kind(g.kind) << ',' << (g.address.empty() ? "e" : g.address) << ','
              << to_string(g.interval.left) << ',' << to_string(g.interval.right) << ','
              << to_string(g.interval.length()) << '\n';
    }
    json r;
    r["gaps"] = gaps;
    r["tree_gaps"] = gt.tree_gap_count();
    r["components"] = ct.component_count();
    emit(cfg, out, r, t.str(), {});
    return Ok;
}

int cmd_kernel(const RunConfig& cfg, std::ostream& out)
{
    if (cfg.samples < 2)
        throw ValidationError("--samples must be at least 2");
    std::ofstream file;
    std::ostream& os = open_or(cfg.out_path, file, out);
    os << "x,h";
    for (int k = 1; k <= cfg.order; ++k)
        os << ",h" << k;
    os << '\n';
    for (int i = 0; i < cfg.samples; ++i) {
        const double x = static_cast<double>(i) / (cfg.samples - 1);
        os << fmt(x);
        for (double v : h_jet(x, cfg.order).v)
            os << ',' << fmt(v);
        os << '\n';
    }
    return Ok;
}

PiecewiseFunction build_from(const RunConfig& cfg)
{
    const Construction c = construction_from_string(cfg.construction);
    const SetSpec spec = load_set_spec(cfg.spec_path);
    if (c == Construction::Prescribed)
        return build_prescribed_cutset(validate_spec(spec), cfg.depth, cfg.budget);
    if (c == Construction::Zero)
        return zero_function(validate_spec(spec));
    if (spec.parts.size() != 1 || !std::holds_alternative<CentralCantorSpec>(spec.parts.front()))
        throw ValidationError("the sine constructions need a spec with exactly one central_cantor part");
    const auto& cc = std::get<CentralCantorSpec>(spec.parts.front());
    if (c == Construction::SineC0)
        return build_sine_c0(cc, parse_rule(cfg.rule), cfg.depth);
    return build_bump_sine_cinf(cc, cfg.depth);
}

int cmd_build(const RunConfig& cfg, std::ostream& out)
{
    if (cfg.spec_path.empty())
        throw ValidationError("--spec is required");
    const PiecewiseFunction pf = build_from(cfg);
    if (cfg.out_path.empty()) {
        out << function_to_json(pf).dump(2) << '\n';
        return Ok;
    }
    save_function(pf, cfg.out_path);
    json r;
    r["construction"] = to_string(pf.construction);
    r["terms"] = pf.terms.size();
    r["depth"] = pf.depth;
    r["truncated_gaps"] = pf.truncated_gaps.size();
    r["out"] = cfg.out_path;
    std::ostringstream t;
    t << "built " << to_string(pf.construction) << " function with " << pf.terms.size() << " terms at depth "
      << pf.depth << " -> " << cfg.out_path << '\n';
    for (const auto& d : pf.deviations)
        t << "  note: " << d << '\n';
    emit(cfg, out, r, t.str(), pf.deviations);
    return Ok;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out)
{
    const PiecewiseFunction pf = load_fn(cfg);
    if (cfg.at.empty())
        throw ValidationError("--at is required");
    const Rational x = parse_rational(cfg.at);
    const EvalResult r = eval(pf, x, cfg.order);
    json j;
    j["x"] = to_string(x);
    j["order"] = cfg.order;
    j["value"] = r.value;
    j["sign"] = r.signed_value.sign;
    j["log_abs"] = r.signed_value.zero() ? json(nullptr) : json(r.signed_value.log_abs);
    j["in_zero_set"] = r.in_zero_set;
    j["term"] = r.term ? json(*r.term) : json(nullptr);
    std::ostringstream t;
    t << "f^(" << cfg.order << ")(" << to_string(x) << ") = " << fmt(r.value);
    if (!r.signed_value.zero() && r.value == 0.0)
        t << " (sign " << r.signed_value.sign << ", log|f| = " << r.signed_value.log_abs << ")";
    if (r.in_zero_set)
        t << "  [x in F]";
    else if (r.term)
        t << "  [term " << *r.term << "]";
    t << '\n';
    emit(cfg, out, j, t.str(), pf.deviations);
    return Ok;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out)
{
    const PiecewiseFunction pf = load_fn(cfg);
    std::ofstream file;
    export_plot_data(pf, cfg.grid, cfg.orders, open_or(cfg.out_path, file, out));
    return Ok;
}

int dispatch(const RunConfig& cfg, std::ostream& out)
{
    const std::string& s = cfg.subcommand;
    if (s == "validate") return cmd_validate(cfg, out);
    if (s == "gaps") return cmd_gaps(cfg, out);
    if (s == "kernel") return cmd_kernel(cfg, out);
    if (s == "build") return cmd_build(cfg, out);
    if (s == "eval") return cmd_eval(cfg, out);
    if (s == "sample") return cmd_sample(cfg, out);
    if (s == "detect") return cmd_detect(cfg, out);
    if (s == "verify") return cmd_verify(cfg, out);
    if (s == "conditions") return cmd_conditions(cfg, out);
    if (s == "variation") return cmd_variation(cfg, out);
    if (s == "porosity") return cmd_porosity(cfg, out);
    if (s == "zcprobe") return cmd_zcprobe(cfg, out);
    throw ValidationError("unknown subcommand '" + s + "'");
}

} // namespace
} // namespace detail

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        return detail::dispatch(cfg, out);
    } catch (const HypothesisError& e) {
        err << "hypothesis violated: " << e.what() << '\n';
        return Invalid;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << '\n';
        return Invalid;
    } catch (const OrderError& e) {
        err << "invalid order: " << e.what() << '\n';
        return Invalid;
    } catch (const DepthError& e) {
        err << "depth: " << e.what() << '\n';
        return Invalid;
    } catch (const BudgetExhausted& e) {
        err << "budget: " << e.what() << '\n';
        return Incomplete;
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << '\n';
        return Internal;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return Internal;
    }
}

} // namespace cutset::cli
