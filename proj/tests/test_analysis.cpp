#include "fixtures.hpp"

#include "cutset/analysis.hpp"
#include "cutset/bump_kernel.hpp"
#include "cutset/evaluator.hpp"
#include "cutset/function_builder.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cutset;
using fixtures::R;

namespace {

std::vector<double> uniform(std::size_t m)
{
    std::vector<double> xs;
    for (std::size_t i = 0; i <= m; ++i)
        xs.push_back(static_cast<double>(i) / static_cast<double>(m));
    return xs;
}

std::vector<double> as_doubles(const ProbePlan& plan)
{
    std::vector<double> xs;
    for (const auto& p : plan.probes)
        xs.push_back(to_double(p.x));
    return xs;
}

} // namespace

TEST_CASE("detector on closed-form functions")
{
    DetectOptions opt;
    opt.delta = 1e-3;
    std::vector<double> probes = uniform(1000);

    const CutsetReport line = detect_cutting_set(black_box([](double x) { return x - 0.5; }), probes, opt);
    const auto flagged = line.flagged();
    REQUIRE(flagged.size() == 1);
    CHECK(flagged.front() == 0.5);
    for (const auto& p : line.probes)
        if (p.flagged) {
            REQUIRE(p.witness);
            CHECK(p.witness->negative < 0.5);
            CHECK(p.witness->positive > 0.5);
            CHECK(std::abs(p.witness->negative - 0.5) < opt.delta);
        }

    // touching zero without changing sign does not cut
    const CutsetReport square =
        detect_cutting_set(black_box([](double x) { return (x - 0.5) * (x - 0.5); }), probes, opt);
    CHECK(square.flagged().empty());

    // a zero interval is not cut in its interior
    const CutsetReport flat = detect_cutting_set(
        black_box([](double x) { return x < 0.4 ? x - 0.4 : (x > 0.6 ? x - 0.6 : 0.0); }), probes, opt);
    for (double x : flat.flagged())
        CHECK((std::abs(x - 0.4) < 0.01 || std::abs(x - 0.6) < 0.01));
}

TEST_CASE("distance to F")
{
    const ValidatedSet t = validate_spec(fixtures::ternary_spec());
    CHECK(distance_to_set(t, 0.5) == doctest::Approx(1.0 / 6));
    CHECK(distance_to_set(t, 0.25) == 0.0);
    CHECK(distance_to_set(t, 0.0) == 0.0);
    CHECK(distance_to_set(t, 0.4) == doctest::Approx(0.4 - 1.0 / 3));
}

TEST_CASE("detection on the prescribed ternary function")
{
    const PiecewiseFunction pf = build_prescribed_cutset(validate_spec(fixtures::ternary_spec()), 8);
    DetectOptions opt;
    opt.delta = 2e-3;
    const ProbePlan plan = make_probe_plan(pf, 4);
    CutsetReport rep = detect_cutting_set(black_box(pf), as_doubles(plan), opt);
    score_detection(rep, pf.zero_set);
    REQUIRE(rep.stats);
    CHECK(rep.stats->false_positive == 0);
    CHECK(rep.stats->false_negative == 0);
    CHECK(rep.stats->true_positive > 30);

    const ResolutionChecks rc = resolution_checks(rep, pf);
    CHECK(rc.closed);
    CHECK(rc.nowhere_dense);
    CHECK(rc.endpoint_accumulation);
    CHECK(rc.all());
}

TEST_CASE("probe plan and ground truth")
{
    const PiecewiseFunction pf = build_prescribed_cutset(validate_spec(fixtures::ternary_spec()), 8);
    const ProbePlan plan = make_probe_plan(pf);
    CHECK(plan.endpoint_depth == 6);
    CHECK(plan.probes.size() >= 500);
    for (std::size_t i = 1; i < plan.probes.size(); ++i)
        CHECK(plan.probes[i - 1].x < plan.probes[i].x);
    std::size_t in_f = 0;
    for (const auto& p : plan.probes) {
        const bool member = membership(pf.zero_set, p.x) != Membership::OutsideF;
        CHECK(member == (p.kind == ProbeKind::DPoint));
        in_f += member ? 1 : 0;
    }
    CHECK(in_f > 100);

    const GroundTruthReport gt = verify_ground_truth(pf);
    CHECK(gt.agreement());
    CHECK(gt.stats.uncertified == 0);
    CHECK(gt.stats.true_positive == in_f);
    CHECK(gt.stats.true_negative == plan.probes.size() - in_f);
}

TEST_CASE("ground truth on a set with isolated points")
{
    const PiecewiseFunction pf = build_prescribed_cutset(validate_spec(fixtures::mixed_spec()), 6);
    const GroundTruthReport gt = verify_ground_truth(pf);
    CHECK(gt.agreement());
    bool saw_isolated = false;
    bool saw_limit = false;
    for (const auto& c : gt.probes) {
        saw_isolated = saw_isolated || (c.kind == ProbeKind::IsolatedPoint && c.verdict == Verdict::Certified);
        saw_limit = saw_limit || (c.kind == ProbeKind::AccumulationPoint && c.verdict == Verdict::Certified);
    }
    CHECK(saw_isolated);
    CHECK(saw_limit);
}

TEST_CASE("ground truth for the sine constructions counts the zero crossings")
{
    const PiecewiseFunction pf = build_sine_c0(fixtures::ternary_part(), CoefficientRule::power(2), 6);
    const GroundTruthReport gt = verify_ground_truth(pf);
    CHECK(gt.agreement());
    std::size_t mids = 0;
    for (const auto& c : gt.probes)
        if (c.kind == ProbeKind::SineMidpoint) {
            ++mids;
            CHECK(c.expected_in_e);
        }
    CHECK(mids == pf.terms.size());
}

TEST_CASE("sign alternation")
{
    PiecewiseFunction pf = build_prescribed_cutset(validate_spec(fixtures::mixed_spec()), 5);
    std::size_t shared = 0;
    CHECK(sign_alternation_holds(pf, &shared));
    CHECK(shared > 0);
    for (std::size_t i = 1; i < pf.terms.size(); ++i)
        if (pf.terms[i - 1].support.right == pf.terms[i].support.left) {
            pf.terms[i].sign = pf.terms[i - 1].sign;
            break;
        }
    CHECK_FALSE(sign_alternation_holds(pf));
}

TEST_CASE("variation of closed forms")
{
    const VariationResult s = variation([](double x) { return std::sin(2 * std::numbers::pi * x); }, 0, 1);
    CHECK(s.status == VariationStatus::Converged);
    CHECK(s.value == doctest::Approx(4.0).epsilon(1e-8));
    for (std::size_t i = 1; i < s.partial.size(); ++i)
        CHECK(s.partial[i] >= s.partial[i - 1] - 1e-15);

    const VariationResult v = variation([](double x) { return std::abs(x - 0.3); }, 0, 1);
    // dyadic sums miss the kink at 0.3 by at most twice the mesh
    CHECK(v.value <= 1.0 + 1e-15);
    CHECK(v.value >= 1.0 - std::ldexp(2.0, -v.refinement_depth));

    const VariationResult wild =
        variation([](double x) { return x > 0 ? std::sin(1 / x) : 0.0; }, 0, 1, 1e-10, 100.0);
    CHECK(wild.status == VariationStatus::DivergesPastBound);
    CHECK(wild.value > 100.0);
}

TEST_CASE("unit variations")
{
    CHECK(unit_variation(Kernel::Bump) == doctest::Approx(2 * std::exp(-8.0)).epsilon(1e-14));
    CHECK(unit_variation(Kernel::PlainSine) == 4.0);
    const VariationResult direct =
        variation([](double u) { return h_eval(u) * std::sin(2 * std::numbers::pi * u); }, 0, 1, 1e-14);
    CHECK(unit_variation(Kernel::BumpSine) == doctest::Approx(direct.value).epsilon(1e-6));

    const PiecewiseFunction pf = build_prescribed_cutset(validate_spec(fixtures::ternary_spec()), 6);
    double expect = 0.0;
    for (const auto& t : pf.terms) {
        CHECK(term_variation(t) == doctest::Approx(t.coefficient * 2 * std::exp(-8.0)).epsilon(1e-12));
        expect += term_variation(t);
    }
    const VariationResult total = variation(pf);
    CHECK(total.status == VariationStatus::Converged);
    CHECK(total.value == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("variation certificate for the sine construction")
{
    const VariationCertificate c = sine_variation_certificate(CoefficientRule::power(2), 1e3);
    double sum = 0.0;
    for (int n = 1; n <= static_cast<int>(c.cumulative.size()); ++n) {
        sum += std::exp2(n - 1) * 4.0 / (n * n);
        CHECK(c.cumulative[static_cast<std::size_t>(n - 1)] == doctest::Approx(sum).epsilon(1e-12));
    }
    REQUIRE(c.level);
    CHECK(c.cumulative[static_cast<std::size_t>(*c.level - 1)] > 1e3);
    if (*c.level > 1)
        CHECK(c.cumulative[static_cast<std::size_t>(*c.level - 2)] <= 1e3);

    // 2^n c_n = 1: each step adds 2, so the bound is passed at step 500
    const VariationCertificate flat = sine_variation_certificate(CoefficientRule::geometric(0), 999);
    REQUIRE(flat.level);
    CHECK(*flat.level == 500);

    const VariationCertificate extra = sine_variation_certificate(CoefficientRule::power(2), 1e3, 4096, 2);
    CHECK(extra.cumulative.front() == doctest::Approx(12.0));
}

TEST_CASE("conditions on the prescribed function")
{
    const ValidatedSet vs = validate_spec(fixtures::mixed_spec());
    const PiecewiseFunction pf = build_prescribed_cutset(vs, 6);
    const ConditionReport r = check_conditions(pf, vs, 3);
    CHECK(r.cond_i);
    CHECK(r.cond_ii);
    CHECK_FALSE(r.cond_iii);
    REQUIRE(r.tails.size() == 4);
    for (const auto& row : r.tails) {
        CHECK(row.pass);
        for (const auto& [eps, n] : row.n_eps) {
            REQUIRE(n);
            CHECK(tail_bound(pf, *n, row.order) <= eps);
            if (*n > 0)
                CHECK(tail_bound(pf, *n - 1, row.order) > eps);
        }
    }
    CHECK(r.scan_depth == 4);
    CHECK(r.minus_terms > 0);
    CHECK(r.plus_terms > 0);
    for (const auto& h : r.hits) {
        CHECK(h.negative > 0);
        CHECK(h.positive > 0);
    }
}

TEST_CASE("conditions on the sine construction")
{
    const PiecewiseFunction pf = build_sine_c0(fixtures::ternary_part(), CoefficientRule::power(2), 8);
    const ConditionReport r = check_conditions(pf, pf.zero_set, 0);
    CHECK(r.cond_i);
    CHECK(r.cond_ii);
    REQUIRE(r.cond_iii);
    CHECK(r.cond_iii->level);
    // every sine term attains both signs, so M- and M+ each hold every term
    CHECK(r.minus_terms == pf.terms.size());
    CHECK(r.plus_terms == pf.terms.size());
}

TEST_CASE("ZC probe")
{
    const PiecewiseFunction half = build_prescribed_cutset(validate_spec(fixtures::alpha_spec(R("1/2"))), 12);
    const ZcReport yes = zc_alpha_probe(half, 0.4, 1 << 14);
    CHECK(yes.zero_exists);
    CHECK(yes.interior_empty);
    REQUIRE(yes.structural);
    CHECK(yes.consistent);
    CHECK(yes.verdict.find("heuristic") == 0);

    const ZcReport too_much = zc_alpha_probe(half, 0.6, 1 << 14);
    CHECK_FALSE(too_much.consistent);

    const PiecewiseFunction tern = build_prescribed_cutset(validate_spec(fixtures::ternary_spec()), 8);
    CHECK_FALSE(zc_alpha_probe(tern, 0.1, 1 << 14).consistent);

    // a flat interval of zeros is caught by the black-box probe
    const ZcReport flat = zc_alpha_probe(
        black_box([](double x) { return x < 0.4 ? x - 0.4 : (x > 0.6 ? x - 0.6 : 0.0); }), 0.1, 1 << 12);
    CHECK(flat.zero_exists);
    CHECK_FALSE(flat.interior_empty);
    CHECK_FALSE(flat.consistent);
    CHECK(flat.longest_flat == doctest::Approx(0.2).epsilon(1e-2));
    for (std::size_t i = 1; i < flat.fractions.size(); ++i)
        CHECK(flat.fractions[i].second <= flat.fractions[i - 1].second);
}

TEST_CASE("expected set for the sine construction includes zero crossings")
{
    const PiecewiseFunction pf = build_sine_c0(fixtures::ternary_part(), CoefficientRule::power(2), 4);
    CHECK(distance_to_expected(pf, 0.5) == 0.0);
    CHECK(distance_to_expected(pf, 0.45) == doctest::Approx(0.05));
    CHECK(distance_to_expected(pf, 0.25) == 0.0);
}
