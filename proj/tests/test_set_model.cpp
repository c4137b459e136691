#include "fixtures.hpp"

#include "cutset/errors.hpp"
#include "cutset/set_spec_io.hpp"

#include <doctest.h>

#include <boost/integer/common_factor.hpp>

#include <vector>

using namespace cutset;
using fixtures::R;

namespace {

// depth-N ternary intervals built by repeated thirds, independent of the library's xi tables
std::vector<ClosedInterval> ternary_intervals(int depth)
{
    std::vector<ClosedInterval> level{{Rational(0), Rational(1)}};
    for (int n = 0; n < depth; ++n) {
        std::vector<ClosedInterval> next;
        for (const auto& iv : level) {
            const Rational third = iv.length() / 3;
            next.push_back({iv.left, iv.left + third});
            next.push_back({iv.right - third, iv.right});
        }
        level = std::move(next);
    }
    return level;
}

bool in_union(const std::vector<ClosedInterval>& ivs, const Rational& x)
{
    for (const auto& iv : ivs)
        if (iv.contains(x))
            return true;
    return false;
}

// base-3 digits of x avoid 1 (allowing the terminating ...1 = ...0222 form)
bool ternary_digit_oracle(Rational x, int digits)
{
    if (x == 1)
        return true;
    for (int i = 0; i < digits; ++i) {
        x *= 3;
        const auto d = static_cast<int>(boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x));
        x -= d;
        if (d == 1)
            return x == 0;
        if (x == 0)
            return true;
    }
    return true;
}

} // namespace

TEST_CASE("validate_spec splits F into D and Q")
{
    const ValidatedSet t = validate_spec(fixtures::ternary_spec());
    CHECK(t.perfect.size() == 1);
    CHECK(t.countable.empty());
    REQUIRE(t.hull);
    CHECK(t.hull->left == 0);
    CHECK(t.hull->right == 1);

    const ValidatedSet half = validate_spec(SetSpec{{PointClusterSpec::finite({R("1/2")})}});
    CHECK(half.perfect_empty());
    CHECK(half.countable.isolated_points == std::vector<Rational>{R("1/2")});
    CHECK(half.boundary.at_zero == PointStatus::NotInF);

    CHECK_THROWS_AS(validate_spec(SetSpec{{PointClusterSpec::finite({R("0"), R("1/2")})}}), HypothesisError);
    CHECK_THROWS_AS(validate_spec(SetSpec{{PointClusterSpec::finite({R("1")})}}), HypothesisError);
}

TEST_CASE("validate_spec rejects bad specs")
{
    CHECK_THROWS_AS(validate_spec(SetSpec{{fixtures::ternary_part(R("0"), R("1/2")),
                                           fixtures::ternary_part(R("1/4"), R("1"))}}),
                    ValidationError);
    CHECK_THROWS_AS(validate_spec(SetSpec{{CentralCantorSpec{XiRule::constant_ratio(R("1/2")), {0, 1}}}}),
                    ValidationError);
    CHECK_THROWS_AS(validate_spec(SetSpec{{fixtures::ternary_part(), PointClusterSpec::finite({R("1/4")})}}),
                    ValidationError);
    CHECK_THROWS_AS(validate_spec(SetSpec{{PointClusterSpec::geometric(R("9/10"), R("1/2"), R("1/2"),
                                                                       PointClusterSpec::Direction::Right)}}),
                    ValidationError);
}

TEST_CASE("membership examples")
{
    const ValidatedSet t = validate_spec(fixtures::ternary_spec());
    CHECK(membership(t, R("1/4")) == Membership::InD);
    CHECK(ternary_digit_oracle(R("1/4"), 40));
    CHECK(membership(t, R("1/2")) == Membership::OutsideF);
    CHECK(membership(t, R("1/3")) == Membership::InD);
    CHECK(membership(t, R("3/4")) == Membership::InD);
    CHECK(membership(t, R("1/10")) == Membership::InD);   // 0.0022002200..._3
    CHECK(membership(t, R("1/5")) == Membership::OutsideF);

    const ValidatedSet g = validate_spec(SetSpec{
        {PointClusterSpec::geometric(R("1/2"), R("1/4"), R("1/2"), PointClusterSpec::Direction::Right)}});
    CHECK(membership(g, R("1/2")) == Membership::AccumulationPoint);
    CHECK(membership(g, R("1/2") + R("1/32")) == Membership::IsolatedPoint);
    CHECK(membership(g, R("1/2") + R("1/5")) == Membership::OutsideF);
    CHECK(membership(g, R("1/2") - R("1/32")) == Membership::OutsideF);
}

TEST_CASE("ternary membership agrees with brute force for denominators up to 729")
{
    const ValidatedSet t = validate_spec(fixtures::ternary_spec());
    const auto ivs = ternary_intervals(6);
    std::size_t probes = 0;
    std::size_t mismatches = 0;
    for (int q = 1; q <= 729; q += (q < 100 ? 1 : 7)) {
        for (int p = 0; p <= q; ++p) {
            if (boost::integer::gcd(p, q) != 1 && !(p == 0 && q == 1))
                continue;
            const Rational x(p, q);
            const bool at_depth = membership(t, x, 6) == Membership::InD;
            const bool exact = membership(t, x) == Membership::InD;
            mismatches += at_depth != in_union(ivs, x) ? 1 : 0;
            mismatches += exact != ternary_digit_oracle(x, 2000) ? 1 : 0;
            ++probes;
        }
    }
    CHECK(probes > 10000);
    CHECK(mismatches == 0);
}

TEST_CASE("depth-limited membership matches the depth-N union")
{
    const ValidatedSet t = validate_spec(fixtures::ternary_spec());
    const auto ivs = ternary_intervals(4);
    for (int p = 0; p <= 200; ++p) {
        const Rational x(p, 200);
        CHECK((membership(t, x, 4) != Membership::OutsideF) == in_union(ivs, x));
    }
}

TEST_CASE("measure brackets")
{
    const ValidatedSet t = validate_spec(fixtures::ternary_spec());
    Rational prev_upper = 2;
    for (int n = 1; n <= 12; ++n) {
        const MeasureBracket m = measure(t, n);
        Rational expect = 1;
        for (int i = 0; i < n; ++i)
            expect *= Rational(2, 3);
        CHECK(m.upper == expect);
        CHECK(m.lower == 0);
        CHECK(m.upper <= prev_upper);
        prev_upper = m.upper;
    }

    const ValidatedSet a = validate_spec(fixtures::alpha_spec(R("1/2")));
    for (int n : {1, 5, 12}) {
        const MeasureBracket m = measure(a, n);
        Rational tail = Rational(1, 2);
        for (int i = 0; i < n; ++i)
            tail /= 2;
        CHECK(m.lower == R("1/2"));
        CHECK(m.upper == R("1/2") + tail);   // 2^n xi_n = 1/2 + 2^-(n+1)
    }

    CHECK(measure(validate_spec(SetSpec{{PointClusterSpec::finite({R("1/2")})}}), 6).upper == 0);
}

TEST_CASE("Cantor-Bendixson split and boundary report")
{
    const ValidatedSet v = validate_spec(SetSpec{{fixtures::ternary_part(), PointClusterSpec::finite({R("1/2")})}});
    const CantorBendixsonSplit s = cantor_bendixson_split(v);
    CHECK(s.perfect.size() == 1);
    CHECK(s.countable.isolated_points == std::vector<Rational>{R("1/2")});
    CHECK(membership(v, R("1/2")) == Membership::IsolatedPoint);

    const ValidatedSet g = validate_spec(SetSpec{
        {PointClusterSpec::geometric(R("0"), R("1/4"), R("1/2"), PointClusterSpec::Direction::Right)}});
    CHECK(g.boundary.at_zero == PointStatus::AccumulationPoint);
    CHECK(g.boundary.at_one == PointStatus::NotInF);
    const CantorBendixsonSplit gs = cantor_bendixson_split(g);
    CHECK(gs.perfect.empty());
    CHECK(gs.countable.accumulation_points == std::vector<Rational>{R("0")});

    const ValidatedSet f = validate_spec(SetSpec{{PointClusterSpec::finite({R("1/3"), R("2/3")})}});
    const BoundaryReport b = boundary_accumulation_check(f);
    CHECK(b.at_zero == PointStatus::NotInF);
    CHECK(b.at_one == PointStatus::NotInF);
    CHECK(boundary_accumulation_check(validate_spec(fixtures::ternary_spec())).at_one ==
          PointStatus::AccumulationPoint);
}

TEST_CASE("split is a partition on probes")
{
    const ValidatedSet v = validate_spec(fixtures::mixed_spec());
    for (int p = 0; p <= 720; ++p) {
        const Rational x(p, 720);
        const Membership m = membership(v, x);
        const bool in_q = std::find(v.countable.isolated_points.begin(), v.countable.isolated_points.end(), x) !=
                          v.countable.isolated_points.end();
        if (in_q)
            CHECK(m == Membership::IsolatedPoint);
        if (m == Membership::InD)
            CHECK_FALSE(in_q);
    }
}

TEST_CASE("xi invariants")
{
    for (const auto& spec : {fixtures::ternary_spec(), fixtures::alpha_spec(R("1/2")), fixtures::alpha_spec(R("1/5"))}) {
        const ValidatedSet v = validate_spec(spec);
        const auto& xi = v.perfect.front().xi;
        CHECK(xi.front() == 1);
        Rational prev = 2;
        for (std::size_t n = 0; n + 1 < std::min<std::size_t>(xi.size(), 40); ++n) {
            CHECK(xi[n + 1] > 0);
            CHECK(2 * xi[n + 1] < xi[n]);
            Rational pow2 = 1;
            for (std::size_t i = 0; i < n; ++i)
                pow2 *= 2;
            CHECK(pow2 * xi[n] <= prev);
            prev = pow2 * xi[n];
        }
    }
}

TEST_CASE("complementary interval")
{
    const ValidatedSet t = validate_spec(fixtures::ternary_spec());
    const auto iv = complementary_interval(t, R("1/2"));
    REQUIRE(iv);
    CHECK(iv->left == R("1/3"));
    CHECK(iv->right == R("2/3"));
    CHECK_FALSE(complementary_interval(t, R("1/4")));
}

TEST_CASE("spec JSON round trip")
{
    const SetSpec s = fixtures::mixed_spec();
    const SetSpec back = set_spec_from_json(set_spec_to_json(s));
    REQUIRE(back.parts.size() == s.parts.size());
    for (std::size_t i = 0; i < s.parts.size(); ++i)
        CHECK(back.parts[i] == s.parts[i]);
    CHECK(rational_from_json(nlohmann::json("3/9")) == R("1/3"));
    CHECK(rational_from_json(nlohmann::json(0.25)) == R("1/4"));
    CHECK_THROWS_AS(set_spec_from_json(nlohmann::json::parse(R"({"parts":[{"type":"blob"}]})")), ValidationError);
}
