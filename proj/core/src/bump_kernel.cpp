#include "cutset/bump_kernel.hpp"

#include "cutset/errors.hpp"
#include "cutset/taylor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace cutset {

namespace {

std::atomic<int>& order_cap()
{
    static std::atomic<int> cap = [] {
        if (const char* env = std::getenv("CUTSET_MAX_ORDER")) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && v >= 0 && v <= 64)
                return static_cast<int>(v);
        }
        return kDefaultMaxOrder;
    }();
    return cap;
}

double exponent(double x)
{
    const double a = 1.0 / x;
    const double b = 1.0 / (x - 1.0);
    return -a * a - b * b;
}

} // namespace

int max_order()
{
    return order_cap().load();
}

void set_max_order(int p)
{
    if (p < 0)
        throw ValidationError("maximum derivative order must be non-negative");
    order_cap().store(p);
}

double h_eval(double x)
{
    if (!(x > 0.0 && x < 1.0))
        return 0.0;
    return std::exp(exponent(x));
}

ScaledJet h_scaled_jet(double x, int p)
{
    ScaledJet out;
    out.taylor.assign(static_cast<std::size_t>(p) + 1, 0.0);
    if (!(x > 0.0 && x < 1.0))
        return out;
    const double g0 = exponent(x);
    if (!std::isfinite(g0) || g0 < kLogFloor)
        return out;

    // Taylor coefficients of -(x0+t)^-2 - (x0-1+t)^-2
    taylor::Series g(static_cast<std::size_t>(p) + 1, 0.0);
    g[0] = g0;
    const double ia = 1.0 / x;
    const double ib = 1.0 / (x - 1.0);
    double pa = ia * ia;
    double pb = ib * ib;
    for (int k = 1; k <= p; ++k) {
        pa *= -ia;
        pb *= -ib;
        g[static_cast<std::size_t>(k)] = -static_cast<double>(k + 1) * (pa + pb);
    }
    taylor::Series e = taylor::exp_shifted(g);
    // very close to an endpoint the series overflows; h vanishes to all orders there
    for (double v : e)
        if (!std::isfinite(v))
            return out;
    out.taylor = std::move(e);
    out.log_scale = g0;
    out.zero = false;
    return out;
}

Jet h_jet(double x, int p)
{
    if (p < 0)
        throw ValidationError("derivative order must be non-negative");
    if (p > max_order())
        throw OrderError("derivative order " + std::to_string(p) + " exceeds the configured maximum " +
                         std::to_string(max_order()));
    Jet j;
    j.order = p;
    j.v.assign(static_cast<std::size_t>(p) + 1, 0.0);
    const ScaledJet s = h_scaled_jet(x, p);
    if (s.zero)
        return j;
    for (int k = 0; k <= p; ++k) {
        const double t = s.taylor[static_cast<std::size_t>(k)];
        if (t == 0.0)
            continue;
        const double mag = std::exp(std::lgamma(k + 1.0) + std::log(std::abs(t)) + s.log_scale);
        j.v[static_cast<std::size_t>(k)] = t > 0 ? mag : -mag;
    }
    return j;
}

SupNorm h_sup_norm_uncached(int k)
{
    auto value = [k](double x) { return std::abs(h_jet(x, k).v.back()); };

    constexpr int n = 4096;
    std::vector<double> grid(n + 1, 0.0);
    for (int i = 1; i < n; ++i)
        grid[static_cast<std::size_t>(i)] = value(static_cast<double>(i) / n);

    std::vector<int> peaks;
    for (int i = 1; i < n; ++i)
        if (grid[static_cast<std::size_t>(i)] >= grid[static_cast<std::size_t>(i) - 1] &&
            grid[static_cast<std::size_t>(i)] >= grid[static_cast<std::size_t>(i) + 1] &&
            grid[static_cast<std::size_t>(i)] > 0.0)
            peaks.push_back(i);
    std::sort(peaks.begin(), peaks.end(), [&](int a, int b) {
        return grid[static_cast<std::size_t>(a)] > grid[static_cast<std::size_t>(b)];
    });
    if (peaks.size() > 6)
        peaks.resize(6);

    SupNorm best;
    for (int i : peaks) {
        double c = static_cast<double>(i) / n;
        double v = grid[static_cast<std::size_t>(i)];
        double w = 1.0 / n;
        for (int iter = 0; iter < 80; ++iter) {
            constexpr int m = 64;
            double bc = c;
            double bv = v;
            for (int j = 0; j <= m; ++j) {
                const double x = c - w + 2.0 * w * j / m;
                if (!(x > 0.0 && x < 1.0))
                    continue;
                const double y = value(x);
                if (y > bv) {
                    bv = y;
                    bc = x;
                }
            }
            const double change = v > 0.0 ? (bv - v) / v : 1.0;
            c = bc;
            v = bv;
            w /= 8.0;
            if (iter >= 2 && change < kSupRelTol)
                break;
            if (w < 1e-13)
                break;
        }
        if (v > best.value) {
            best.value = v;
            best.argmax = c;
        }
    }
    best.bound = best.value * (1.0 + kSupRelTol);
    return best;
}

double exp_power_sup(int p)
{
    if (p < 0)
        throw ValidationError("exponent must be non-negative");
    if (p == 0)
        return std::exp(-1.0);
    const double pd = static_cast<double>(p);
    return std::exp(pd * std::log(pd) - pd);
}

double exp_power_sup_grid(int p, int points)
{
    double best = 0.0;
    for (int i = 1; i <= points; ++i) {
        const double x = static_cast<double>(i) / points;
        best = std::max(best, std::exp(-1.0 / x - p * std::log(x)));
    }
    return best;
}

const char* to_string(EnvelopeVariant v)
{
    return v == EnvelopeVariant::Main ? "main" : "sine";
}

EnvelopeTable& EnvelopeTable::global()
{
    static EnvelopeTable table;
    return table;
}

SupNorm EnvelopeTable::sup_norm(int k)
{
    if (k < 0)
        throw ValidationError("derivative order must be non-negative");
    if (k > max_order())
        throw OrderError("derivative order " + std::to_string(k) + " exceeds the configured maximum " +
                         std::to_string(max_order()));
    std::lock_guard lock(mutex_);
    const auto idx = static_cast<std::size_t>(k);
    if (norms_.size() <= idx) {
        norms_.resize(idx + 1);
        ready_.resize(idx + 1, false);
    }
    if (!ready_[idx]) {
        norms_[idx] = h_sup_norm_uncached(k);
        ready_[idx] = true;
    }
    return norms_[idx];
}

double EnvelopeTable::envelope(int p, EnvelopeVariant variant)
{
    if (variant == EnvelopeVariant::Main)
        return sup_norm(p).bound * exp_power_sup(p);
    const double tau = 2.0 * std::numbers::pi;
    double sum = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= p; ++k) {
        if (k > 0)
            binom = binom * (p - k + 1) / k;
        sum += binom * std::pow(tau, -k) * sup_norm(k).bound;
    }
    return std::pow(tau, p) * sum;
}

SupNorm h_sup_norm(int k)
{
    return EnvelopeTable::global().sup_norm(k);
}

double h_norm_bound(int k)
{
    return h_sup_norm(k).bound;
}

double envelope_constant(int p, EnvelopeVariant variant)
{
    return EnvelopeTable::global().envelope(p, variant);
}

} // namespace cutset
