#pragma once

#include "cutset/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace cutset {

/// Piecewise linear function through (x_i, v_i), 0 = x_0 < ... < x_k = 1.
struct PolygonalFunction
{
    std::vector<std::pair<double, double>> vertices;

    [[nodiscard]] double operator()(double x) const;
    /// Sum of |v_i - v_{i-1}|, which is the exact variation.
    [[nodiscard]] double variation() const;
    [[nodiscard]] double sup_norm() const;
    [[nodiscard]] std::vector<double> nodes() const;
};

/// g(x) = eps * dist((k/2) x, Z) with the smallest even k such that k eps / 4 > V + n.
PolygonalFunction build_polygonal_witness(double variation, double eps, int n);

/// Smallest even k with k eps / 4 > V + n.
int witness_k(double variation, double eps, int n);

/// Sum of |h(x_i) - h(x_{i-1})| over the partition; a lower bound for Var(h).
double partition_sum(const std::function<double(double)>& h, const std::vector<double>& partition);

/// Uniform-grid partition sum, used as the variation estimate of a black-box f.
double variation_estimate(const std::function<double(double)>& f, std::size_t grid = 1 << 16);

struct PerturbationCheck
{
    bool in_ball = false;          ///< sup |h - g| < eps / 8 on the check grid
    double distance_to_g = 0.0;
    double sup_change = 0.0;       ///< sup |(f + h) - f|
    double partition_sum = 0.0;    ///< of f + h on the vertex partition of g
    bool success = false;          ///< in_ball, sup_change < eps, partition_sum > n
};

/// Samples h on the vertices of g plus `per_segment` interior points per segment.
PerturbationCheck check_perturbation(const std::function<double(double)>& f,
                                     const std::function<double(double)>& h, const PolygonalFunction& g,
                                     double eps, int n, int per_segment = 32);

struct PorosityOptions
{
    int trials = 200;
    std::uint64_t seed = 0;
    bool smooth_noise = false;
    double variation_slack = 0.0;   ///< added to twice the grid estimate of Var(f)
};

struct PorosityReport
{
    double eps = 0.0;
    int n = 0;
    int k = 0;
    double variation_estimate = 0.0;   ///< grid estimate of Var(f)
    double variation_used = 0.0;       ///< 2 * estimate + slack, the value fed to the witness
    PolygonalFunction witness;
    int trials = 0;
    int successes = 0;
    double max_sup_change = 0.0;
    double min_partition_sum = 0.0;
    std::optional<double> gamma_bound;     ///< eps / 8 when every trial succeeded
    std::optional<Rational> porosity_bound;
    std::uint64_t seed = 0;

    [[nodiscard]] bool all_succeeded() const { return trials > 0 && successes == trials; }
};

/// Random h with |h - g| <= 0.99 eps / 8: uniform vertex noise, linear in between, optionally
/// plus smooth noise vanishing at the vertices. Checks B(f + g, eps/8) ⊂ B(f, eps) ∩ U_n on samples.
PorosityReport verify_inclusion(const std::function<double(double)>& f, double eps, int n,
                                const PorosityOptions& opt = {});

struct PorosityBound
{
    double gamma = 0.0;      ///< eps / 8
    Rational porosity;       ///< 2 gamma / eps
};

PorosityBound porosity_lower_bound(double eps);

/// Empty unless every trial in the report succeeded.
std::optional<PorosityBound> porosity_lower_bound(const PorosityReport& report);

} // namespace cutset
