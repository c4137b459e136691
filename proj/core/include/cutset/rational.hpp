#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <string_view>

namespace cutset {

/// Exact arbitrary-precision rational used for every endpoint and membership test.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", "p" or a plain decimal literal such as "0.25" into an exact rational.
/// Throws ValidationError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form (or "p" when the denominator is 1).
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Nearest rational with denominator 2^53 scale; exact for every finite double.
Rational from_double(double value);

Rational midpoint(const Rational& a, const Rational& b);

/// Open interval (left, right) with exact endpoints.
struct OpenInterval
{
    Rational left;
    Rational right;

    [[nodiscard]] Rational length() const { return right - left; }
    [[nodiscard]] bool contains(const Rational& x) const { return left < x && x < right; }
    [[nodiscard]] bool contains(double x) const;
    [[nodiscard]] Rational midpoint() const { return cutset::midpoint(left, right); }

    friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

/// Closed interval [left, right] with exact endpoints.
struct ClosedInterval
{
    Rational left;
    Rational right;

    [[nodiscard]] Rational length() const { return right - left; }
    [[nodiscard]] bool contains(const Rational& x) const { return left <= x && x <= right; }
    [[nodiscard]] bool contains_interval(const OpenInterval& j) const
    {
        return left <= j.left && j.right <= right;
    }

    friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

} // namespace cutset
