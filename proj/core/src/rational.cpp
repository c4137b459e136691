#include "cutset/rational.hpp"

#include "cutset/errors.hpp"

#include <cctype>
#include <cmath>

namespace cutset {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_integer(std::string_view text, std::string_view whole)
{
    if (text.empty())
        throw ValidationError("malformed rational '" + std::string(whole) + "'");
    std::size_t pos = 0;
    bool negative = false;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        pos = 1;
    }
    if (pos == text.size())
        throw ValidationError("malformed rational '" + std::string(whole) + "'");
    cpp_int value = 0;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ValidationError("malformed rational '" + std::string(whole) + "'");
        value = value * 10 + (c - '0');
    }
    return negative ? cpp_int(-value) : value;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const std::string_view whole = text;
    text = trim(text);
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const cpp_int num = parse_integer(trim(text.substr(0, slash)), whole);
        const cpp_int den = parse_integer(trim(text.substr(slash + 1)), whole);
        if (den == 0)
            throw ValidationError("zero denominator in '" + std::string(whole) + "'");
        return Rational(num, den);
    }
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        const std::string_view frac_part = text.substr(dot + 1);
        bool negative = false;
        if (!int_part.empty() && (int_part[0] == '-' || int_part[0] == '+')) {
            negative = int_part[0] == '-';
            int_part.remove_prefix(1);
        }
        const cpp_int ip = int_part.empty() ? cpp_int(0) : parse_integer(int_part, whole);
        const cpp_int fp = frac_part.empty() ? cpp_int(0) : parse_integer(frac_part, whole);
        if (int_part.empty() && frac_part.empty())
            throw ValidationError("malformed rational '" + std::string(whole) + "'");
        cpp_int scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i)
            scale *= 10;
        Rational value(ip * scale + fp, scale);
        return negative ? Rational(-value) : value;
    }
    return Rational(parse_integer(text, whole));
}

std::string to_string(const Rational& value)
{
    const auto num = boost::multiprecision::numerator(value);
    const auto den = boost::multiprecision::denominator(value);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& value)
{
    return value.convert_to<double>();
}

Rational from_double(double value)
{
    if (!std::isfinite(value))
        throw ValidationError("cannot convert a non-finite double to a rational");
    int exponent = 0;
    const double mantissa = std::frexp(value, &exponent);
    // mantissa * 2^53 is an exact integer
    const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    Rational r(scaled);
    const int shift = exponent - 53;
    if (shift >= 0)
        r *= Rational(boost::multiprecision::pow(cpp_int(2), static_cast<unsigned>(shift)));
    else
        r /= Rational(boost::multiprecision::pow(cpp_int(2), static_cast<unsigned>(-shift)));
    return r;
}

Rational midpoint(const Rational& a, const Rational& b)
{
    return (a + b) / 2;
}

bool OpenInterval::contains(double x) const
{
    return to_double(left) < x && x < to_double(right);
}

} // namespace cutset
