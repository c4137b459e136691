#include "fixtures.hpp"

#include "cutset/analysis.hpp"
#include "cutset/errors.hpp"
#include "cutset/evaluator.hpp"
#include "cutset/function_builder.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cutset;
using fixtures::R;

namespace {

const SignedBumpTerm* term_on(const PiecewiseFunction& pf, const Rational& l, const Rational& r)
{
    for (const auto& t : pf.terms)
        if (t.support.left == l && t.support.right == r)
            return &t;
    return nullptr;
}

void check_supports(const PiecewiseFunction& pf)
{
    for (std::size_t i = 1; i < pf.terms.size(); ++i)
        CHECK(pf.terms[i - 1].support.right <= pf.terms[i].support.left);
    for (const auto& t : pf.terms) {
        CHECK(t.support.left < t.support.right);
        // an open support misses F: its midpoint and quarter points are outside
        const Rational w = t.support.length();
        const Rational probes[] = {t.support.left + w / 4, t.support.midpoint(), t.support.right - w / 4};
        for (const Rational& x : probes)
            CHECK(membership(pf.zero_set, x) == Membership::OutsideF);
    }
}

} // namespace

TEST_CASE("sine construction on the ternary set")
{
    const PiecewiseFunction pf = build_sine_c0(fixtures::ternary_part(), CoefficientRule::power(2), 5);
    CHECK(pf.terms.size() == 31);
    const SignedBumpTerm* root = term_on(pf, R("1/3"), R("2/3"));
    REQUIRE(root);
    CHECK(root->level == 1);
    CHECK(root->coefficient == doctest::Approx(1.0));
    const SignedBumpTerm* second = term_on(pf, R("1/9"), R("2/9"));
    REQUIRE(second);
    CHECK(second->coefficient == doctest::Approx(0.25));
    for (const auto& t : pf.terms)
        CHECK(t.coefficient == doctest::Approx(1.0 / (t.level * t.level)));
    check_supports(pf);

    // value c_n sin(2 pi (x - a)/|J|) at the quarter point of the root gap
    CHECK(eval(pf, R("5/12"), 0).value == doctest::Approx(1.0));
    CHECK(eval(pf, R("7/12"), 0).value == doctest::Approx(-1.0));
    CHECK(eval(pf, R("1/4"), 0).value == 0.0);
}

TEST_CASE("E1 requirements on the amplitude rule")
{
    CHECK(check_e1(CoefficientRule::power(2)).satisfied());
    const E1Report slow = check_e1(CoefficientRule::power(1));
    CHECK_FALSE(slow.summable);
    CHECK_FALSE(slow.note.empty());
    const E1Report geo = check_e1(CoefficientRule::geometric(0));
    CHECK(geo.summable);
    CHECK_FALSE(geo.growth_unbounded);
    CHECK(check_e1(CoefficientRule::geometric(1)).satisfied());

    CHECK(CoefficientRule::power(2)(3) == doctest::Approx(1.0 / 9));
    CHECK(CoefficientRule::geometric(1)(3) == doctest::Approx(3.0 / 8));
    CHECK(CoefficientRule::power(2, 0.5)(2) == doctest::Approx(0.125));
}

TEST_CASE("coefficient tails against direct sums")
{
    for (const auto& rule : {CoefficientRule::power(2), CoefficientRule::power(3), CoefficientRule::geometric(1),
                             CoefficientRule::geometric(2)}) {
        for (long long N : {1LL, 5LL, 40LL}) {
            double direct = 0.0;
            for (int n = static_cast<int>(N) + 1; n < 2000000; ++n) {
                const double c = rule(n);
                direct += c;
                if (c < 1e-300)
                    break;
            }
            INFO(rule.describe() << " N = " << N);
            CHECK(rule.tail_sum(N) >= direct * (1 - 1e-9));
            // an integral bound overshoots by at most the first omitted term
            CHECK(rule.tail_sum(N) <= direct + rule(static_cast<int>(N)) + 1e-12);
        }
    }
    CHECK(std::isinf(CoefficientRule::power(1).tail_sum(10)));
    CHECK(CoefficientRule::geometric(1).tail_sum(1LL << 40) >= 0.0);
}

TEST_CASE("smooth sine construction")
{
    const PiecewiseFunction pf = build_bump_sine_cinf(fixtures::ternary_part(), 4);
    CHECK(pf.terms.size() == 15);
    const SignedBumpTerm* root = term_on(pf, R("1/3"), R("2/3"));
    REQUIRE(root);
    CHECK(root->index == 1);
    CHECK(root->log_coefficient == doctest::Approx(-3.0));
    CHECK(root->coefficient == doctest::Approx(std::exp(-3.0)));
    // ranks: longest first, leftmost among equals
    CHECK(term_on(pf, R("1/9"), R("2/9"))->index == 2);
    CHECK(term_on(pf, R("7/9"), R("8/9"))->index == 3);
    CHECK(term_on(pf, R("1/27"), R("2/27"))->index == 4);
    // sin(pi) in floating point
    CHECK(std::abs(eval(pf, R("1/2"), 0).value) <= 1e-15 * root->coefficient);
    for (const auto& t : pf.terms) {
        CHECK(term_attains(t, 1));
        CHECK(term_attains(t, -1));
    }
    // the term takes both signs on a sample of its support
    bool pos = false;
    bool neg = false;
    for (int i = 1; i < 200; ++i) {
        const double v = eval(pf, 1.0 / 3 + i / 600.0, 0).value;
        pos = pos || v > 0;
        neg = neg || v < 0;
    }
    CHECK(pos);
    CHECK(neg);
    check_supports(pf);
}

TEST_CASE("prescribed construction on the ternary set")
{
    const PiecewiseFunction pf = build_prescribed_cutset(validate_spec(fixtures::ternary_spec()), 3);
    CHECK(pf.terms.size() == 7);
    for (const auto& t : pf.terms) {
        CHECK(t.kernel == Kernel::Bump);
        CHECK(t.sign == (t.level % 2 == 0 ? 1 : -1));
        CHECK(t.index == 1);
    }
    const SignedBumpTerm* root = term_on(pf, R("1/3"), R("2/3"));
    REQUIRE(root);
    CHECK(root->level == 0);
    CHECK(root->log_coefficient == doctest::Approx(-std::numbers::ln2 - 3.0));
    CHECK(root->coefficient == doctest::Approx(0.5 * std::exp(-3.0)));
    const SignedBumpTerm* deep = term_on(pf, R("1/27"), R("2/27"));
    REQUIRE(deep);
    CHECK(deep->log_coefficient == doctest::Approx(-2 * std::log(3.0) - std::numbers::ln2 - 27.0));
    check_supports(pf);
}

TEST_CASE("a single isolated zero")
{
    const PiecewiseFunction pf =
        build_prescribed_cutset(validate_spec(SetSpec{{PointClusterSpec::finite({R("1/2")})}}), 2);
    REQUIRE(pf.terms.size() == 2);
    CHECK(pf.terms[0].support.left == 0);
    CHECK(pf.terms[0].support.right == R("1/2"));
    CHECK(pf.terms[1].support.left == R("1/2"));
    CHECK(pf.terms[1].support.right == 1);
    CHECK(pf.terms[0].sign == -pf.terms[1].sign);
    CHECK(eval(pf, R("1/2"), 0).value == 0.0);
    CHECK(eval(pf, R("1/4"), 0).value * eval(pf, R("3/4"), 0).value < 0.0);
}

TEST_CASE("sign assignment")
{
    SUBCASE("whole gaps follow level parity")
    {
        const ValidatedSet vs = validate_spec(fixtures::ternary_spec());
        const GapTree gt = build_gap_tree(vs, 4);
        const SignAssignment sa = assign_signs(gt, build_component_table(gt, vs));
        CHECK(sa.parity.at("") == 1);
        CHECK(sa.parity.at("0") == -1);
        CHECK(sa.parity.at("10") == 1);
        CHECK(sa.anchors.empty());
    }
    SUBCASE("a finite block alternates from its left end")
    {
        const ValidatedSet vs = validate_spec(
            SetSpec{{fixtures::ternary_part(), PointClusterSpec::finite({R("4/9"), R("5/9")})}});
        const GapTree gt = build_gap_tree(vs, 3);
        const ComponentTable ct = build_component_table(gt, vs);
        const SignAssignment sa = assign_signs(gt, ct);
        CHECK(sa.sign_of({"", 1}) == 1);
        CHECK(sa.sign_of({"", 2}) == -1);
        CHECK(sa.sign_of({"", 3}) == 1);
        CHECK(sa.anchors.at({"", 0}) == 1);
    }
    SUBCASE("an integer-type block alternates away from its middle")
    {
        const ValidatedSet vs = validate_spec(SetSpec{
            {fixtures::ternary_part(),
             PointClusterSpec::geometric(R("5/12"), R("1/48"), R("1/2"), PointClusterSpec::Direction::Right),
             PointClusterSpec::geometric(R("7/12"), R("1/48"), R("1/2"), PointClusterSpec::Direction::Left)}});
        const GapTree gt = build_gap_tree(vs, 2);
        const ComponentTable ct = build_component_table(gt, vs, 32);
        const SignAssignment sa = assign_signs(gt, ct);
        const ComponentRow& row = ct.rows.at("");
        bool seen = false;
        for (std::size_t m = 0; m < row.blocks.size(); ++m) {
            const Block& b = row.blocks[m];
            if (b.type != OrderType::Integers)
                continue;
            seen = true;
            const std::size_t anchor_index = sa.anchors.at({"", m});
            std::size_t anchor = b.members.size();
            for (std::size_t j = 0; j < b.members.size(); ++j)
                if (row.components[b.members[j]].index == anchor_index)
                    anchor = j;
            REQUIRE(anchor < b.members.size());
            const auto& mid = row.components[b.members[anchor]].interval;
            CHECK(mid.left <= b.span.midpoint());
            CHECK(b.span.midpoint() <= mid.right);
            for (std::size_t j = 0; j < b.members.size(); ++j) {
                const std::size_t d = j > anchor ? j - anchor : anchor - j;
                CHECK(sa.sign_of(row.components[b.members[j]].key()) == (d % 2 == 0 ? 1 : -1));
            }
        }
        CHECK(seen);
    }
}

TEST_CASE("prescribed invariants on the mixed set")
{
    const ValidatedSet vs = validate_spec(fixtures::mixed_spec());
    const int depth = 7;
    const PiecewiseFunction pf = build_prescribed_cutset(vs, depth);
    check_supports(pf);

    // neighbours across an isolated zero carry opposite signs
    std::size_t shared = 0;
    for (std::size_t i = 1; i < pf.terms.size(); ++i)
        if (pf.terms[i - 1].support.right == pf.terms[i].support.left) {
            ++shared;
            CHECK(pf.terms[i - 1].sign == -pf.terms[i].sign);
        }
    CHECK(shared > 0);
    std::size_t counted = 0;
    CHECK(sign_alternation_holds(pf, &counted));
    CHECK(counted == shared);

    // every basic interval above the working depth holds terms of both signs
    const GapTree gt = build_gap_tree(vs, depth);
    for (const auto& [address, iv] : gt.basic) {
        if (static_cast<int>(address.size()) > depth - 2)
            continue;
        bool pos = false;
        bool neg = false;
        for (const auto& t : pf.terms)
            if (iv.left <= t.support.left && t.support.right <= iv.right) {
                pos = pos || t.sign > 0;
                neg = neg || t.sign < 0;
            }
        INFO("I_" << address);
        CHECK(pos);
        CHECK(neg);
    }
    CHECK_FALSE(pf.truncated_gaps.empty());
}

TEST_CASE("term_at and the zero function")
{
    const PiecewiseFunction pf = build_prescribed_cutset(validate_spec(fixtures::ternary_spec()), 3);
    const auto at = pf.term_at(R("1/2"));
    REQUIRE(at);
    CHECK(pf.terms[*at].support.left == R("1/3"));
    CHECK_FALSE(pf.term_at(R("1/4")));
    CHECK_FALSE(pf.term_at(R("1/3")));
    CHECK(pf.term_at(0.5).value() == *at);

    const PiecewiseFunction z = zero_function(pf.zero_set);
    CHECK(z.terms.empty());
    CHECK(eval(z, 0.5, 3).value == 0.0);
    CHECK(kernel_from_string(to_string(Kernel::BumpSine)) == Kernel::BumpSine);
    CHECK(construction_from_string(to_string(Construction::Prescribed)) == Construction::Prescribed);
    CHECK_THROWS_AS(kernel_from_string("cosine"), ValidationError);
}
