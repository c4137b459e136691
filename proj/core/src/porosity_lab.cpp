#include "cutset/porosity_lab.hpp"

#include "cutset/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace cutset {

double PolygonalFunction::operator()(double x) const
{
    if (vertices.empty())
        return 0.0;
    if (x <= vertices.front().first)
        return vertices.front().second;
    if (x >= vertices.back().first)
        return vertices.back().second;
    auto it = std::upper_bound(vertices.begin(), vertices.end(), x,
                               [](double v, const std::pair<double, double>& p) { return v < p.first; });
    const auto& [x1, v1] = *it;
    const auto& [x0, v0] = *(it - 1);
    return v0 + (v1 - v0) * (x - x0) / (x1 - x0);
}

double PolygonalFunction::variation() const
{
    double s = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i)
        s += std::abs(vertices[i].second - vertices[i - 1].second);
    return s;
}

double PolygonalFunction::sup_norm() const
{
    double s = 0.0;
    for (const auto& v : vertices)
        s = std::max(s, std::abs(v.second));
    return s;
}

std::vector<double> PolygonalFunction::nodes() const
{
    std::vector<double> out;
    out.reserve(vertices.size());
    for (const auto& v : vertices)
        out.push_back(v.first);
    return out;
}

int witness_k(double variation, double eps, int n)
{
    if (!(eps > 0.0))
        throw ValidationError("eps must be positive");
    if (n < 1)
        throw ValidationError("n must be at least 1");
    if (!std::isfinite(variation) || variation < 0.0)
        throw ValidationError("variation estimate must be finite and non-negative");
    const double target = variation + n;
    // k = 2m with m eps / 2 > target
    auto m = static_cast<long long>(std::floor(2.0 * target / eps)) + 1;
    while (m > 1 && (m - 1) * eps / 2.0 > target)
        --m;
    while (!(m * eps / 2.0 > target))
        ++m;
    if (m > (1LL << 28))
        throw ValidationError("witness needs too many vertices");
    return static_cast<int>(2 * m);
}

PolygonalFunction build_polygonal_witness(double variation, double eps, int n)
{
    const int k = witness_k(variation, eps, n);
    PolygonalFunction g;
    g.vertices.reserve(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i)
        g.vertices.emplace_back(i == k ? 1.0 : static_cast<double>(i) / k, i % 2 == 0 ? 0.0 : eps / 2.0);
    return g;
}

double partition_sum(const std::function<double(double)>& h, const std::vector<double>& partition)
{
    for (std::size_t i = 1; i < partition.size(); ++i)
        if (!(partition[i] > partition[i - 1]))
            throw ValidationError("partition must be strictly increasing");
    double s = 0.0;
    double prev = partition.empty() ? 0.0 : h(partition.front());
    for (std::size_t i = 1; i < partition.size(); ++i) {
        const double cur = h(partition[i]);
        s += std::abs(cur - prev);
        prev = cur;
    }
    return s;
}

double variation_estimate(const std::function<double(double)>& f, std::size_t grid)
{
    std::vector<double> xs(grid + 1);
    for (std::size_t i = 0; i <= grid; ++i)
        xs[i] = static_cast<double>(i) / static_cast<double>(grid);
    return partition_sum(f, xs);
}

PerturbationCheck check_perturbation(const std::function<double(double)>& f,
                                     const std::function<double(double)>& h, const PolygonalFunction& g,
                                     double eps, int n, int per_segment)
{
    PerturbationCheck c;
    const auto& v = g.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const int steps = i + 1 < v.size() ? per_segment + 1 : 1;
        for (int j = 0; j < steps; ++j) {
            const double x = i + 1 < v.size() ? v[i].first + (v[i + 1].first - v[i].first) * j / steps
                                              : v[i].first;
            const double hx = h(x);
            const double fx = f(x);
            c.distance_to_g = std::max(c.distance_to_g, std::abs(hx - g(x)));
            c.sup_change = std::max(c.sup_change, std::abs((fx + hx) - fx));
        }
    }
    c.in_ball = c.distance_to_g < eps / 8.0;
    c.partition_sum = partition_sum([&](double x) { return f(x) + h(x); }, g.nodes());
    c.success = c.in_ball && c.sup_change < eps && c.partition_sum > n;
    return c;
}

PorosityReport verify_inclusion(const std::function<double(double)>& f, double eps, int n, const PorosityOptions& opt)
{
    if (opt.trials < 1)
        throw ValidationError("at least one trial is required");
    PorosityReport rep;
    rep.eps = eps;
    rep.n = n;
    rep.seed = opt.seed;
    rep.variation_estimate = variation_estimate(f);
    rep.variation_used = 2.0 * rep.variation_estimate + opt.variation_slack;
    rep.witness = build_polygonal_witness(rep.variation_used, eps, n);
    rep.k = static_cast<int>(rep.witness.vertices.size()) - 1;
    rep.trials = opt.trials;
    rep.min_partition_sum = std::numeric_limits<double>::infinity();

    const double radius = 0.99 * eps / 8.0;
    const double vertex_radius = opt.smooth_noise ? radius / 2.0 : radius;
    const double smooth_radius = radius - vertex_radius;
    const std::size_t nv = rep.witness.vertices.size();

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> vertex_noise(-vertex_radius, vertex_radius);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> mode(1, 4);

    for (int t = 0; t < opt.trials; ++t) {
        PolygonalFunction linear = rep.witness;
        for (auto& v : linear.vertices)
            v.second += vertex_noise(rng);
        std::vector<double> amp(nv, 0.0);
        std::vector<int> freq(nv, 1);
        if (opt.smooth_noise)
            for (std::size_t i = 0; i + 1 < nv; ++i) {
                amp[i] = smooth_radius * unit(rng);
                freq[i] = mode(rng);
            }
        const auto& verts = linear.vertices;
        auto h = [&](double x) {
            double y = linear(x);
            if (!opt.smooth_noise)
                return y;
            auto it = std::upper_bound(verts.begin(), verts.end(), x,
                                       [](double v, const std::pair<double, double>& p) { return v < p.first; });
            if (it == verts.begin() || it == verts.end())
                return y;
            const auto i = static_cast<std::size_t>(it - verts.begin()) - 1;
            const double u = (x - verts[i].first) / (verts[i + 1].first - verts[i].first);
            return y + amp[i] * std::sin(std::numbers::pi * freq[i] * u);
        };
        const PerturbationCheck c = check_perturbation(f, h, rep.witness, eps, n);
        if (c.success)
            ++rep.successes;
        rep.max_sup_change = std::max(rep.max_sup_change, c.sup_change);
        rep.min_partition_sum = std::min(rep.min_partition_sum, c.partition_sum);
    }
    if (auto b = porosity_lower_bound(rep)) {
        rep.gamma_bound = b->gamma;
        rep.porosity_bound = b->porosity;
    }
    return rep;
}

PorosityBound porosity_lower_bound(double eps)
{
    if (!(eps > 0.0))
        throw ValidationError("eps must be positive");
    const Rational e = from_double(eps);
    const Rational gamma = e / 8;
    return PorosityBound{to_double(gamma), 2 * gamma / e};
}

std::optional<PorosityBound> porosity_lower_bound(const PorosityReport& report)
{
    if (!report.all_succeeded())
        return std::nullopt;
    return porosity_lower_bound(report.eps);
}

} // namespace cutset
