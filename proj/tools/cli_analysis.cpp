#include "cli_detail.hpp"

#include "cutset/analysis.hpp"
#include "cutset/errors.hpp"
#include "cutset/evaluator.hpp"
#include "cutset/porosity_lab.hpp"
#include "cutset/set_spec_io.hpp"

#include <sstream>

namespace cutset::cli::detail {

namespace {

json stats_json(const GroundTruthStats& s)
{
    return {{"true_positive", s.true_positive},
            {"false_positive", s.false_positive},
            {"true_negative", s.true_negative},
            {"false_negative", s.false_negative},
            {"uncertified", s.uncertified}};
}

json optional_json(const std::optional<long long>& v)
{
    return v ? json(*v) : json(nullptr);
}

} // namespace

int cmd_detect(const RunConfig& cfg, std::ostream& out)
{
    const PiecewiseFunction pf = load_fn(cfg);
    std::vector<double> probes;
    for (std::size_t i = 0; i <= cfg.grid; ++i)
        probes.push_back(static_cast<double>(i) / static_cast<double>(cfg.grid));
    for (const auto& p : make_probe_plan(pf).probes)
        probes.push_back(to_double(p.x));
    DetectOptions opt;
    opt.delta = cfg.delta;
    opt.zeta = cfg.zeta;
    opt.samples = cfg.samples;
    CutsetReport rep = detect_cutting_set(black_box(pf), probes, opt);
    score_detection(rep, pf.zero_set);
    const ResolutionChecks rc = resolution_checks(rep, pf);
    const DetectStats& s = *rep.stats;

    json r;
    r["probes"] = rep.probes.size();
    r["flagged"] = rep.flagged();
    r["stats"] = {{"true_positive", s.true_positive},   {"near_positive", s.near_positive},
                  {"false_positive", s.false_positive}, {"false_negative", s.false_negative},
                  {"true_negative", s.true_negative}};
    r["resolution_checks"] = {{"closed", rc.closed},
                              {"nowhere_dense", rc.nowhere_dense},
                              {"endpoint_accumulation", rc.endpoint_accumulation},
                              {"max_distance", rc.max_distance},
                              {"longest_run", rc.longest_run},
                              {"note", rc.note}};
    std::ostringstream t;
    t << rep.probes.size() << " probes, " << rep.flagged().size() << " flagged (delta " << rep.delta << ", zeta "
      << rep.zeta << ")\n";
    t << "vs F: tp " << s.true_positive << ", near " << s.near_positive << ", fp " << s.false_positive << ", fn "
      << s.false_negative << ", tn " << s.true_negative << '\n';
    t << "closed " << (rc.closed ? "yes" : "no") << " (max distance " << rc.max_distance << "), nowhere dense "
      << (rc.nowhere_dense ? "yes" : "no") << " (longest run " << rc.longest_run << "), endpoints "
      << (rc.endpoint_accumulation ? "yes" : "no") << '\n';
    emit(cfg, out, r, t.str(), pf.deviations);
    return Ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out)
{
    const PiecewiseFunction pf = load_fn(cfg);
    const ValidatedSet vs = cfg.spec_path.empty() ? pf.zero_set : load_validated(cfg.spec_path);
    const GroundTruthReport rep = verify_ground_truth(pf, vs, make_probe_plan(pf));
    std::size_t shared = 0;
    const bool alternation = sign_alternation_holds(pf, &shared);

    json probes = json::array();
    std::ostringstream t;
    for (const auto& p : rep.probes) {
        probes.push_back({{"x", to_string(p.x)},
                          {"kind", to_string(p.kind)},
                          {"expected_in_E", p.expected_in_e},
                          {"verdict", to_string(p.verdict)},
                          {"radii_checked", p.radii_checked},
                          {"truncation_scale", p.truncation_scale},
                          {"note", p.note}});
        if (p.verdict != Verdict::Certified)
            t << "  " << to_string(p.verdict) << ' ' << to_string(p.kind) << " x = " << to_string(p.x) << ": "
              << p.note << '\n';
    }
    json r;
    r["stats"] = stats_json(rep.stats);
    r["agreement"] = rep.agreement();
    r["sign_alternation"] = {{"holds", alternation}, {"shared_endpoints", shared}};
    r["probes"] = probes;
    const auto& s = rep.stats;
    std::ostringstream head;
    head << rep.probes.size() << " structured probes at depth " << rep.depth << ": tp " << s.true_positive << ", tn "
         << s.true_negative << ", fp " << s.false_positive << ", fn " << s.false_negative << ", uncertified "
         << s.uncertified << '\n'
         << "E(f) = F " << (rep.agreement() ? "agrees" : "DISAGREES") << "; sign alternation "
         << (alternation ? "holds" : "FAILS") << " on " << shared << " shared endpoints\n"
         << t.str();
    emit(cfg, out, r, head.str(), pf.deviations);
    if (!rep.agreement() || !alternation)
        return Internal;
    return s.uncertified > 0 ? Incomplete : Ok;
}

int cmd_conditions(const RunConfig& cfg, std::ostream& out)
{
    const PiecewiseFunction pf = load_fn(cfg);
    const ConditionReport rep = check_conditions(pf, pf.zero_set, cfg.orders, cfg.bound);
    json tails = json::array();
    std::ostringstream t;
    t << "condition (i) " << (rep.cond_i ? "holds" : "FAILS") << '\n';
    for (const auto& row : rep.tails) {
        json n_eps = json::object();
        t << "  p = " << row.order << ": tail at truncation " << row.at_truncation;
        for (const auto& [eps, n] : row.n_eps) {
            n_eps[fmt(eps)] = optional_json(n);
            t << ", N(" << eps << ") = " << (n ? std::to_string(*n) : std::string("none"));
        }
        t << '\n';
        tails.push_back({{"order", row.order}, {"n_eps", n_eps}, {"at_truncation", row.at_truncation}, {"pass", row.pass}});
    }
    t << "condition (ii) " << (rep.cond_ii ? "holds" : "FAILS") << " on " << rep.hits.size()
      << " basic intervals up to level " << rep.scan_depth << "; |M-| = " << rep.minus_terms
      << ", |M+| = " << rep.plus_terms << '\n';
    json hits = json::array();
    for (const auto& h : rep.hits)
        hits.push_back({{"address", h.address}, {"level", h.level}, {"negative", h.negative}, {"positive", h.positive}});
    json r;
    r["cond_i"] = rep.cond_i;
    r["tails"] = tails;
    r["truncation_bound"] = rep.truncation_bound;
    r["cond_ii"] = rep.cond_ii;
    r["scan_depth"] = rep.scan_depth;
    r["minus_terms"] = rep.minus_terms;
    r["plus_terms"] = rep.plus_terms;
    r["hits"] = hits;
    if (rep.cond_iii) {
        const auto& c = *rep.cond_iii;
        r["cond_iii"] = {{"bound", c.bound}, {"level", c.level ? json(*c.level) : json(nullptr)}, {"note", c.note}};
        t << "condition (iii): " << c.note << '\n';
    }
    r["notes"] = rep.notes;
    for (const auto& n : rep.notes)
        t << "note: " << n << '\n';
    emit(cfg, out, r, t.str(), pf.deviations);
    return Ok;
}

int cmd_variation(const RunConfig& cfg, std::ostream& out)
{
    const PiecewiseFunction pf = load_fn(cfg);
    const VariationResult v = variation(pf, cfg.bound);
    json r;
    r["value"] = v.value;
    r["status"] = to_string(v.status);
    r["terms_summed"] = v.partial.size();
    std::ostringstream t;
    t << "sum of term variations over " << v.partial.size() << " terms: " << v.value << " ("
      << to_string(v.status) << ")\n";
    if (pf.construction == Construction::SineC0 && pf.rule) {
        const VariationCertificate c = sine_variation_certificate(*pf.rule, cfg.bound);
        r["certificate"] = {{"bound", c.bound},
                            {"level", c.level ? json(*c.level) : json(nullptr)},
                            {"cumulative", c.cumulative},
                            {"per_term_factor", c.per_term_factor},
                            {"note", c.note}};
        t << "certificate: " << c.note << '\n';
    }
    emit(cfg, out, r, t.str(), pf.deviations);
    return Ok;
}

int cmd_porosity(const RunConfig& cfg, std::ostream& out)
{
    std::function<double(double)> f = [](double) { return 0.0; };
    PiecewiseFunction pf;
    std::vector<std::string> deviations;
    if (cfg.fn_path != "zero") {
        pf = load_fn(cfg);
        deviations = pf.deviations;
        f = [&pf](double x) { return eval(pf, x, 0).value; };
    }
    PorosityOptions opt;
    opt.trials = cfg.trials;
    opt.seed = cfg.seed;
    opt.smooth_noise = cfg.smooth_noise;
    const PorosityReport rep = verify_inclusion(f, cfg.eps, cfg.n, opt);
    json r;
    r["eps"] = rep.eps;
    r["n"] = rep.n;
    r["k"] = rep.k;
    r["variation_estimate"] = rep.variation_estimate;
    r["variation_used"] = rep.variation_used;
    r["witness_variation"] = rep.witness.variation();
    r["witness_sup"] = rep.witness.sup_norm();
    r["trials"] = rep.trials;
    r["successes"] = rep.successes;
    r["max_sup_change"] = rep.max_sup_change;
    r["min_partition_sum"] = rep.min_partition_sum;
    r["gamma_bound"] = rep.gamma_bound ? json(*rep.gamma_bound) : json(nullptr);
    r["porosity_bound"] = rep.porosity_bound ? json(to_string(*rep.porosity_bound)) : json(nullptr);
    std::ostringstream t;
    t << "eps " << rep.eps << ", n " << rep.n << ": k = " << rep.k << ", Var(g) = " << rep.witness.variation()
      << ", " << rep.successes << "/" << rep.trials << " perturbations inside B(f, eps) and U_n\n";
    if (rep.porosity_bound)
        t << "gamma >= " << *rep.gamma_bound << ", porosity >= " << to_string(*rep.porosity_bound) << '\n';
    emit(cfg, out, r, t.str(), deviations);
    return rep.all_succeeded() ? Ok : Internal;
}

int cmd_zcprobe(const RunConfig& cfg, std::ostream& out)
{
    const PiecewiseFunction pf = load_fn(cfg);
    const ZcReport z = zc_alpha_probe(pf, cfg.alpha, cfg.grid);
    json fr = json::array();
    for (const auto& [zeta, frac] : z.fractions)
        fr.push_back({{"zeta", zeta}, {"fraction", frac}});
    json r;
    r["alpha"] = z.alpha;
    r["zero_exists"] = z.zero_exists;
    r["interior_empty"] = z.interior_empty;
    r["longest_flat"] = z.longest_flat;
    r["fractions"] = fr;
    r["measure_lower"] = z.measure_lower;
    r["measure_upper"] = z.measure_upper;
    if (z.structural)
        r["structural"] = {{"lower", to_string(z.structural->lower)}, {"upper", to_string(z.structural->upper)}};
    r["consistent"] = z.consistent;
    r["verdict"] = z.verdict;
    std::ostringstream t;
    t << z.verdict << '\n'
      << "zero found " << (z.zero_exists ? "yes" : "no") << ", longest flat run " << z.longest_flat
      << ", measure estimate [" << z.measure_lower << ", " << z.measure_upper << "]";
    if (z.structural)
        t << ", structural [" << to_double(z.structural->lower) << ", " << to_double(z.structural->upper) << "]";
    t << '\n';
    emit(cfg, out, r, t.str(), pf.deviations);
    return Ok;
}

} // namespace cutset::cli::detail
