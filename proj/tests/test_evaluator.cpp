#include "fixtures.hpp"

#include "cutset/bump_kernel.hpp"
#include "cutset/errors.hpp"
#include "cutset/evaluator.hpp"
#include "cutset/function_builder.hpp"
#include "cutset/function_io.hpp"

#include <doctest.h>

#include <boost/math/differentiation/autodiff.hpp>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <numbers>

using namespace cutset;
using fixtures::R;

namespace {

constexpr int kOrders = 5;

// closed form of one term, differentiated by forward-mode AD in x
std::array<double, kOrders + 1> oracle(const SignedBumpTerm& t, double x)
{
    using boost::math::differentiation::make_fvar;
    const auto v = make_fvar<double, kOrders>(x);
    const auto u = (v - t.a) / t.width;
    auto k = exp(-1.0 / (u * u)) * exp(-1.0 / ((u - 1.0) * (u - 1.0)));
    if (t.kernel == Kernel::BumpSine)
        k = k * sin(2 * std::numbers::pi * u);
    const auto f = t.sign * t.coefficient * k;
    std::array<double, kOrders + 1> out{};
    for (int p = 0; p <= kOrders; ++p)
        out[static_cast<std::size_t>(p)] = f.derivative(static_cast<std::size_t>(p));
    return out;
}

PiecewiseFunction ternary_prescribed(int depth = 4)
{
    return build_prescribed_cutset(validate_spec(fixtures::ternary_spec()), depth);
}

} // namespace

TEST_CASE("derivatives agree with automatic differentiation of the closed form")
{
    for (const PiecewiseFunction& pf :
         {ternary_prescribed(), build_bump_sine_cinf(fixtures::ternary_part(), 3),
          build_prescribed_cutset(validate_spec(fixtures::mixed_spec()), 4)}) {
        for (const auto& t : pf.terms) {
            if (t.width < 1e-2)
                continue;   // exp(-1/|J|) underflows the AD oracle
            for (int j = 1; j < 40; ++j) {
                const double x = t.a + t.width * (0.1 + 0.8 * j / 40.0);
                const auto want = oracle(t, x);
                const auto got = eval_all(pf, x, kOrders);
                for (int p = 0; p <= kOrders; ++p) {
                    const double w = want[static_cast<std::size_t>(p)];
                    const double scale = term_bound(t, p).middle;
                    INFO("x = " << x << ", p = " << p);
                    CHECK(std::abs(got[static_cast<std::size_t>(p)] - w) <= 1e-9 * std::abs(w) + 1e-12 * scale);
                }
            }
        }
    }
}

TEST_CASE("sine derivatives by finite differences")
{
    const PiecewiseFunction pf = build_sine_c0(fixtures::ternary_part(), CoefficientRule::power(2), 4);
    const double h = 1e-6;
    for (double x : {0.4, 0.45, 0.6, 0.15, 0.8}) {
        const double fd = (eval(pf, x + h, 0).value - eval(pf, x - h, 0).value) / (2 * h);
        CHECK(eval(pf, x, 1).value == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("evaluation at exact points")
{
    const PiecewiseFunction pf = ternary_prescribed();
    const EvalResult in_f = eval(pf, R("1/4"), 2);
    CHECK(in_f.in_zero_set);
    CHECK(in_f.value == 0.0);
    CHECK(in_f.signed_value.zero());
    const EvalResult mid = eval(pf, R("1/2"), 0);
    CHECK_FALSE(mid.in_zero_set);
    REQUIRE(mid.term);
    CHECK(mid.value == doctest::Approx(std::exp(-std::numbers::ln2 - 3.0) * std::exp(-8.0)).epsilon(1e-12));
    CHECK(mid.value == doctest::Approx(eval(pf, 0.5, 0).value).epsilon(1e-14));
    CHECK_THROWS_AS(eval(pf, R("3/2"), 0), ValidationError);
    CHECK_THROWS_AS(eval(pf, 0.5, max_order() + 1), OrderError);
    // a gap below the working depth holds no term
    const EvalResult deep = eval(pf, R("1/162"), 0);
    CHECK_FALSE(deep.in_zero_set);
    CHECK_FALSE(deep.term);
    CHECK(deep.value == 0.0);
}

TEST_CASE("grid sup of every term stays under its envelope")
{
    const PiecewiseFunction pf = build_prescribed_cutset(validate_spec(fixtures::mixed_spec()), 5);
    for (const auto& t : pf.terms) {
        for (int p = 0; p <= kOrders; ++p) {
            double sup = 0.0;
            for (int j = 1; j < 1024; ++j)
                sup = std::max(sup, std::exp(term_jet(t, j / 1024.0, p).back().log_abs));
            const TermBound b = term_bound(t, p);
            const double n1 = t.level + 1.0;
            const double envelope =
                envelope_constant(p, EnvelopeVariant::Main) / (n1 * n1 * std::exp2(static_cast<double>(t.index)));
            INFO(t.gap << "/" << t.index << " p = " << p);
            CHECK(sup <= b.middle * (1 + 1e-12));
            CHECK(b.middle <= b.right * (1 + 1e-12));
            CHECK(b.right == doctest::Approx(envelope).epsilon(1e-14));
        }
    }
}

TEST_CASE("tail bounds")
{
    const PiecewiseFunction pf = ternary_prescribed(6);
    for (int p = 0; p <= 3; ++p) {
        for (long long N : {0LL, 3LL, 10LL, 1000LL}) {
            double direct = 0.0;
            for (long long n = N + 1; n < 2000000; ++n)
                direct += 1.0 / static_cast<double>((n + 1) * (n + 1));
            direct += 1.0 / 2000001.0;   // integral remainder
            CHECK(tail_bound(pf, N, p) ==
                  doctest::Approx(envelope_constant(p, EnvelopeVariant::Main) * direct).epsilon(1e-6));
        }
        CHECK(tail_bound(pf, 5, p) > tail_bound(pf, 6, p));
    }
    CHECK(truncation_level(pf) == 5);
    CHECK(truncation_bound(pf, 0) == 0.0);
    CHECK(total_error_bound(pf, 1) == tail_bound(pf, 5, 1));
    CHECK(tail_bound(pf, 1LL << 62, 0) >= 0.0);

    const PiecewiseFunction mixed = build_prescribed_cutset(validate_spec(fixtures::mixed_spec()), 5);
    CHECK(truncation_bound(mixed, 0) > 0.0);
    CHECK(truncation_bound(mixed, 0) < 1e-10);

    const PiecewiseFunction sine = build_sine_c0(fixtures::ternary_part(), CoefficientRule::power(2), 4);
    CHECK(std::isinf(tail_bound(sine, 4, 1)));
    CHECK(tail_bound(sine, 4, 0) == CoefficientRule::power(2).tail_sum(4));
    CHECK(tail_bound(zero_function(pf.zero_set), 0, 3) == 0.0);
}

TEST_CASE("C-infinity distance")
{
    const PiecewiseFunction f = ternary_prescribed();
    const PiecewiseFunction z = zero_function(f.zero_set);
    const DistanceResult self = cinf_distance(f, f, 4, 512);
    CHECK(self.value == 0.0);
    CHECK(self.slack == doctest::Approx(1.0 / 16));

    const DistanceResult d = cinf_distance(f, z, 4, 512);
    const DistanceResult back = cinf_distance(z, f, 4, 512);
    CHECK(d.value == back.value);
    double expect = 0.0;
    for (int n = 0; n <= 4; ++n)
        expect += std::exp2(-n) * std::min(1.0, d.per_order_sup[static_cast<std::size_t>(n)]);
    CHECK(d.value == doctest::Approx(expect).epsilon(1e-14));
    CHECK(d.per_order_sup[0] == doctest::Approx(0.5 * std::exp(-3.0 - 8.0)).epsilon(1e-6));
    CHECK(d.value < 1.0);
}

TEST_CASE("save and load reproduce every value bit for bit")
{
    const PiecewiseFunction pf = build_prescribed_cutset(validate_spec(fixtures::mixed_spec()), 5);
    const auto path = std::filesystem::temp_directory_path() / "cutset_eval_roundtrip.json";
    save_function(pf, path);
    const PiecewiseFunction back = load_function(path);
    std::filesystem::remove(path);
    REQUIRE(back.terms.size() == pf.terms.size());
    CHECK(function_to_json(back).dump() == function_to_json(pf).dump());
    for (int i = 0; i <= 4096; ++i) {
        const double x = i / 4096.0;
        const auto a = eval_all(pf, x, 3);
        const auto b = eval_all(back, x, 3);
        for (std::size_t p = 0; p < a.size(); ++p)
            CHECK(std::memcmp(&a[p], &b[p], sizeof(double)) == 0);
    }
    CHECK(back.truncated_gaps == pf.truncated_gaps);

    const PiecewiseFunction sine = build_sine_c0(fixtures::ternary_part(), CoefficientRule::geometric(1), 4);
    const PiecewiseFunction sback = function_from_json(function_to_json(sine));
    REQUIRE(sback.rule);
    CHECK(*sback.rule == *sine.rule);
}

TEST_CASE("sampling")
{
    const PiecewiseFunction pf = ternary_prescribed();
    const auto rows = sample(pf, 100, 2);
    REQUIRE(rows.size() == 101);
    CHECK(rows.front().x == 0.0);
    CHECK(rows.back().x == 1.0);
    CHECK(rows[50].d.size() == 3);
    CHECK(rows[50].d[0] == eval(pf, 0.5, 0).value);
    const auto grid = probe_grid(pf, nullptr, 8);
    CHECK(grid.size() <= 9 + 15 * pf.terms.size());
    CHECK(std::is_sorted(grid.begin(), grid.end()));
}
