#pragma once

#include "cutset/function_builder.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace cutset {

/// sign * exp(log_abs); sign 0 means an exact zero. Keeps tiny values whose double form underflows.
struct SignedValue
{
    int sign = 0;
    double log_abs = -std::numeric_limits<double>::infinity();

    [[nodiscard]] double value() const;
    [[nodiscard]] bool zero() const { return sign == 0; }
};

struct EvalResult
{
    double value = 0.0;
    SignedValue signed_value;
    std::optional<std::size_t> term;   ///< index into pf.terms of the contributing term
    int order = 0;
    bool in_zero_set = false;          ///< only decided for exact (rational) probes
};

/// Derivatives 0..p of one term at the point with normalized coordinate u = (x - a)/(b - a).
std::vector<SignedValue> term_jet(const SignedBumpTerm& t, double u, int p);

/// Throw OrderError when p > max_order().
EvalResult eval(const PiecewiseFunction& pf, double x, int p);
EvalResult eval(const PiecewiseFunction& pf, const Rational& x, int p);

SignedValue eval_signed(const PiecewiseFunction& pf, double x, int p = 0);

/// f(x), f'(x), ..., f^(p)(x).
std::vector<double> eval_all(const PiecewiseFunction& pf, double x, int p);

struct TermBound
{
    double middle = 0.0;   ///< c ||K^(p)|| / |P|^p
    double right = 0.0;    ///< the envelope form M_p / (weights)
};

TermBound term_bound(const SignedBumpTerm& t, int p);

/// Sup bound for the p-th derivative of all terms past level N of the ideal series.
double tail_bound(const PiecewiseFunction& pf, long long after_level, int p);

/// Level N at which the materialized function stops.
int truncation_level(const PiecewiseFunction& pf);

/// Sup bound for the components cut from infinite families (prescribed construction only).
double truncation_bound(const PiecewiseFunction& pf, int p);

/// tail_bound at truncation_level plus truncation_bound.
double total_error_bound(const PiecewiseFunction& pf, int p);

struct DistanceResult
{
    double value = 0.0;
    double slack = 0.0;    ///< 2^-P for the omitted orders
    std::vector<double> per_order_sup;
};

/// sum_{n <= P} 2^-n min(1, sup |f^(n) - g^(n)|) over a uniform grid with m intervals plus
/// 15 interior points of every support.
DistanceResult cinf_distance(const PiecewiseFunction& f, const PiecewiseFunction& g, int orders,
                             std::size_t grid = 4096);

/// Probe points used by cinf_distance.
std::vector<double> probe_grid(const PiecewiseFunction& f, const PiecewiseFunction* g, std::size_t grid);

struct SampleRow
{
    double x = 0.0;
    std::vector<double> d;   ///< f, f', ..., f^(P)
};

std::vector<SampleRow> sample(const PiecewiseFunction& pf, std::size_t grid, int orders);

} // namespace cutset
