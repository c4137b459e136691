#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

// Truncated power series in t, stored as Taylor coefficients a[k] = f^(k)(x0) / k!.
namespace cutset::taylor {

using Series = std::vector<double>;

inline Series mul(const Series& a, const Series& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    Series c(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j <= k; ++j)
            c[k] += a[j] * b[k - j];
    return c;
}

/// 1 / a, requires a[0] != 0.
inline Series reciprocal(const Series& a)
{
    Series r(a.size(), 0.0);
    if (a.empty())
        return r;
    r[0] = 1.0 / a[0];
    for (std::size_t k = 1; k < a.size(); ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j)
            s += a[j] * r[k - j];
        r[k] = -s / a[0];
    }
    return r;
}

/// exp(a - a[0]); the constant factor e^{a[0]} is left to the caller so it can stay in log space.
inline Series exp_shifted(const Series& a)
{
    Series e(a.size(), 0.0);
    if (a.empty())
        return e;
    e[0] = 1.0;
    for (std::size_t k = 1; k < a.size(); ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j)
            s += static_cast<double>(j) * a[j] * e[k - j];
        e[k] = s / static_cast<double>(k);
    }
    return e;
}

/// sin(w (x0 + t)) expanded in t.
inline Series sin_linear(double w, double x0, std::size_t n)
{
    Series s(n, 0.0);
    const double phase = w * x0;
    const double sn = std::sin(phase);
    const double cs = std::cos(phase);
    double pw = 1.0;
    double fact = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) {
            pw *= w;
            fact *= static_cast<double>(k);
        }
        // k-th derivative of sin is sin(phase + k pi/2)
        double d = 0.0;
        switch (k % 4) {
        case 0: d = sn; break;
        case 1: d = cs; break;
        case 2: d = -sn; break;
        default: d = -cs; break;
        }
        s[k] = d * pw / fact;
    }
    return s;
}

} // namespace cutset::taylor
