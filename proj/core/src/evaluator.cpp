#include "cutset/evaluator.hpp"

#include "cutset/bump_kernel.hpp"
#include "cutset/errors.hpp"
#include "cutset/taylor.hpp"

#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cutset {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

void check_order(int p)
{
    if (p < 0)
        throw ValidationError("derivative order must be non-negative");
    if (p > max_order())
        throw OrderError("derivative order " + std::to_string(p) + " exceeds the configured maximum " +
                         std::to_string(max_order()));
}

SignedValue make_signed(double mantissa, double log_scale, int sign)
{
    if (mantissa == 0.0 || !std::isfinite(log_scale))
        return {};
    return SignedValue{mantissa > 0 ? sign : -sign, std::log(std::abs(mantissa)) + log_scale};
}

} // namespace

double SignedValue::value() const
{
    return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

std::vector<SignedValue> term_jet(const SignedBumpTerm& t, double u, int p)
{
    std::vector<SignedValue> out(static_cast<std::size_t>(p) + 1);
    if (!(u > 0.0 && u < 1.0))
        return out;
    const double log_w = std::log(t.width);
    if (t.kernel == Kernel::PlainSine) {
        for (int k = 0; k <= p; ++k) {
            double phase = kTau * u;
            double s = 0.0;
            switch (k % 4) {
            case 0: s = std::sin(phase); break;
            case 1: s = std::cos(phase); break;
            case 2: s = -std::sin(phase); break;
            default: s = -std::cos(phase); break;
            }
            out[static_cast<std::size_t>(k)] =
                make_signed(s, t.log_coefficient + k * (std::log(kTau) - log_w), t.sign);
        }
        return out;
    }
    const ScaledJet h = h_scaled_jet(u, p);
    if (h.zero)
        return out;
    taylor::Series series = h.taylor;
    if (t.kernel == Kernel::BumpSine)
        series = taylor::mul(series, taylor::sin_linear(kTau, u, series.size()));
    for (int k = 0; k <= p; ++k) {
        const double scale = h.log_scale + t.log_coefficient + std::lgamma(k + 1.0) - k * log_w;
        out[static_cast<std::size_t>(k)] = make_signed(series[static_cast<std::size_t>(k)], scale, t.sign);
    }
    return out;
}

EvalResult eval(const PiecewiseFunction& pf, double x, int p)
{
    check_order(p);
    EvalResult r;
    r.order = p;
    const auto idx = pf.term_at(x);
    if (!idx)
        return r;
    const auto& t = pf.terms[*idx];
    r.term = idx;
    r.signed_value = term_jet(t, (x - t.a) / t.width, p).back();
    r.value = r.signed_value.value();
    return r;
}

EvalResult eval(const PiecewiseFunction& pf, const Rational& x, int p)
{
    check_order(p);
    EvalResult r;
    r.order = p;
    if (x < 0 || x > 1)
        throw ValidationError("evaluation point " + to_string(x) + " outside [0,1]");
    if (membership(pf.zero_set, x) != Membership::OutsideF) {
        r.in_zero_set = true;
        return r;
    }
    const auto idx = pf.term_at(x);
    if (!idx)
        return r;
    const auto& t = pf.terms[*idx];
    r.term = idx;
    const double u = to_double((x - t.support.left) / t.support.length());
    r.signed_value = term_jet(t, u, p).back();
    r.value = r.signed_value.value();
    return r;
}

SignedValue eval_signed(const PiecewiseFunction& pf, double x, int p)
{
    return eval(pf, x, p).signed_value;
}

std::vector<double> eval_all(const PiecewiseFunction& pf, double x, int p)
{
    check_order(p);
    std::vector<double> out(static_cast<std::size_t>(p) + 1, 0.0);
    const auto idx = pf.term_at(x);
    if (!idx)
        return out;
    const auto& t = pf.terms[*idx];
    const auto jet = term_jet(t, (x - t.a) / t.width, p);
    for (std::size_t k = 0; k < jet.size(); ++k)
        out[k] = jet[k].value();
    return out;
}

TermBound term_bound(const SignedBumpTerm& t, int p)
{
    check_order(p);
    TermBound b;
    const double log_w = std::log(t.width);
    switch (t.kernel) {
    case Kernel::Bump: {
        b.middle = std::exp(t.log_coefficient + std::log(h_norm_bound(p)) - p * log_w);
        const double n1 = t.level + 1.0;
        b.right = envelope_constant(p, EnvelopeVariant::Main) /
                  (n1 * n1 * std::exp2(static_cast<double>(t.index)));
        break;
    }
    case Kernel::BumpSine: {
        const double m = envelope_constant(p, EnvelopeVariant::Sine);
        b.middle = std::exp(t.log_coefficient + std::log(m) - p * log_w);
        const double n = static_cast<double>(t.index);
        b.right = m * exp_power_sup(p) / (n * n);
        break;
    }
    case Kernel::PlainSine:
        b.middle = std::exp(t.log_coefficient + p * (std::log(kTau) - log_w));
        b.right = b.middle;
        break;
    }
    return b;
}

int truncation_level(const PiecewiseFunction& pf)
{
    switch (pf.construction) {
    case Construction::Prescribed: return pf.depth - 1;
    case Construction::BumpSineCinf: return static_cast<int>(pf.terms.size());
    case Construction::SineC0: return pf.depth;
    case Construction::Zero: return 0;
    }
    return 0;
}

double tail_bound(const PiecewiseFunction& pf, long long after_level, int p)
{
    check_order(p);
    const long long N = std::max(after_level, 0LL);
    switch (pf.construction) {
    case Construction::Prescribed:
        // sum_{n > N} (n+1)^-2 = trigamma(N + 2)
        return envelope_constant(p, EnvelopeVariant::Main) * boost::math::trigamma(static_cast<double>(N) + 2.0);
    case Construction::BumpSineCinf:
        return envelope_constant(p, EnvelopeVariant::Sine) * exp_power_sup(p) *
               boost::math::trigamma(static_cast<double>(N) + 1.0);
    case Construction::SineC0:
        if (p > 0 || !pf.rule)
            return std::numeric_limits<double>::infinity();
        return pf.rule->tail_sum(N);
    case Construction::Zero:
        return 0.0;
    }
    return std::numeric_limits<double>::infinity();
}

double truncation_bound(const PiecewiseFunction& pf, int p)
{
    if (pf.construction != Construction::Prescribed || pf.truncated_gaps.empty())
        return 0.0;
    const double m = envelope_constant(p, EnvelopeVariant::Main);
    double total = 0.0;
    for (const auto& [gap, info] : pf.truncated_gaps) {
        const double n1 = info.first + 1.0;
        // omitted components renumbered after the materialized ones: sup <= M_p/((n+1)^2 2^m)
        total += m / (n1 * n1) * std::exp2(-static_cast<double>(info.second));
    }
    return total;
}

double total_error_bound(const PiecewiseFunction& pf, int p)
{
    return tail_bound(pf, truncation_level(pf), p) + truncation_bound(pf, p);
}

std::vector<double> probe_grid(const PiecewiseFunction& f, const PiecewiseFunction* g, std::size_t grid)
{
    std::vector<double> xs;
    const std::size_t m = std::max<std::size_t>(grid, 1);
    for (std::size_t i = 0; i <= m; ++i)
        xs.push_back(static_cast<double>(i) / static_cast<double>(m));
    auto add_terms = [&xs](const PiecewiseFunction& pf) {
        for (const auto& t : pf.terms)
            for (int j = 1; j < 16; ++j)
                xs.push_back(t.a + t.width * j / 16.0);
    };
    add_terms(f);
    if (g)
        add_terms(*g);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

DistanceResult cinf_distance(const PiecewiseFunction& f, const PiecewiseFunction& g, int orders,
                             std::size_t grid)
{
    check_order(orders);
    DistanceResult d;
    d.per_order_sup.assign(static_cast<std::size_t>(orders) + 1, 0.0);
    for (double x : probe_grid(f, &g, grid)) {
        const auto a = eval_all(f, x, orders);
        const auto b = eval_all(g, x, orders);
        for (std::size_t n = 0; n < a.size(); ++n)
            d.per_order_sup[n] = std::max(d.per_order_sup[n], std::abs(a[n] - b[n]));
    }
    for (std::size_t n = 0; n < d.per_order_sup.size(); ++n)
        d.value += std::exp2(-static_cast<double>(n)) * std::min(1.0, d.per_order_sup[n]);
    d.slack = std::exp2(-static_cast<double>(orders));
    return d;
}

std::vector<SampleRow> sample(const PiecewiseFunction& pf, std::size_t grid, int orders)
{
    check_order(orders);
    std::vector<SampleRow> rows;
    const std::size_t m = std::max<std::size_t>(grid, 1);
    rows.reserve(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(m);
        rows.push_back(SampleRow{x, eval_all(pf, x, orders)});
    }
    return rows;
}

} // namespace cutset
