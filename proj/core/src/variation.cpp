#include "cutset/analysis.hpp"

#include "cutset/bump_kernel.hpp"
#include "cutset/errors.hpp"
#include "cutset/taylor.hpp"

#include <cmath>
#include <numbers>

namespace cutset {

const char* to_string(VariationStatus s)
{
    switch (s) {
    case VariationStatus::Converged: return "converged";
    case VariationStatus::DivergesPastBound: return "diverges_past_bound";
    case VariationStatus::RefinementExhausted: return "refinement_exhausted";
    }
    return "?";
}

VariationResult variation(const std::function<double(double)>& f, double a, double b, double tol, double bound,
                          int max_depth)
{
    if (!(a < b))
        throw ValidationError("variation needs a < b");
    VariationResult r;
    r.left = a;
    r.right = b;
    r.status = VariationStatus::RefinementExhausted;
    // partition sums over nested dyadic partitions never decrease
    std::vector<double> values{f(a), f(b)};
    int quiet = 0;
    for (int d = 0; d <= max_depth; ++d) {
        if (d > 0) {
            std::vector<double> next(values.size() * 2 - 1);
            const double n = std::ldexp(1.0, d);
            for (std::size_t i = 0; i + 1 < values.size(); ++i) {
                next[2 * i] = values[i];
                next[2 * i + 1] = f(a + (b - a) * static_cast<double>(2 * i + 1) / n);
            }
            next.back() = values.back();
            values = std::move(next);
        }
        double sum = 0.0;
        for (std::size_t i = 1; i < values.size(); ++i)
            sum += std::abs(values[i] - values[i - 1]);
        r.partial.push_back(sum);
        r.value = sum;
        r.refinement_depth = d;
        if (sum > bound) {
            r.status = VariationStatus::DivergesPastBound;
            return r;
        }
        // a kink between dyadic points can stall one or two refinements, so ask for three quiet ones
        if (d > 0 && sum - r.partial[r.partial.size() - 2] < tol * std::max(1.0, sum))
            ++quiet;
        else
            quiet = 0;
        if (d >= 4 && quiet >= 3) {
            r.status = VariationStatus::Converged;
            return r;
        }
    }
    return r;
}

double unit_variation(Kernel k)
{
    switch (k) {
    case Kernel::Bump:
        return 2.0 * std::exp(-8.0);  // h rises to e^-8 at 1/2 and falls back
    case Kernel::PlainSine:
        return 4.0;
    case Kernel::BumpSine: {
        static const double v = [] {
            auto g = [](double u) { return h_eval(u) * std::sin(2.0 * std::numbers::pi * u); };
            return variation(g, 0.0, 1.0, 1e-12, 1e3, 20).value;
        }();
        return v;
    }
    }
    return 0.0;
}

double term_variation(const SignedBumpTerm& t)
{
    return std::exp(t.log_coefficient) * unit_variation(t.kernel);
}

VariationResult variation(const PiecewiseFunction& pf, double bound)
{
    VariationResult r;
    r.status = VariationStatus::Converged;
    for (const auto& t : pf.terms) {
        r.value += term_variation(t);
        r.partial.push_back(r.value);
        if (r.value > bound) {
            r.status = VariationStatus::DivergesPastBound;
            break;
        }
    }
    return r;
}

VariationCertificate sine_variation_certificate(const CoefficientRule& rule, double bound, int max_level,
                                                int extra_gaps)
{
    VariationCertificate cert;
    cert.bound = bound;
    double total = 0.0;
    for (int n = 1; n <= max_level; ++n) {
        const double c = rule(n);
        double gaps = std::ldexp(1.0, n - 1);
        if (n == 1)
            gaps += extra_gaps;
        if (c > 0.0)
            total += std::exp(std::log(gaps) + std::log(cert.per_term_factor * c));
        cert.cumulative.push_back(total);
        if (total > bound) {
            cert.level = n;
            break;
        }
    }
    cert.note = cert.level ? "partial variation exceeds " + std::to_string(bound) + " at removal step " +
                                 std::to_string(*cert.level)
                           : "bound not reached within " + std::to_string(max_level) + " steps";
    return cert;
}

} // namespace cutset
