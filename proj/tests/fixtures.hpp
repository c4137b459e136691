#pragma once

#include "cutset/rational.hpp"
#include "cutset/set_model.hpp"

#include <string>

namespace fixtures {

using cutset::Rational;

inline Rational R(const char* s)
{
    return cutset::parse_rational(s);
}

inline cutset::CentralCantorSpec ternary_part(Rational l = 0, Rational r = 1)
{
    return cutset::CentralCantorSpec{cutset::XiRule::ternary(), cutset::ClosedInterval{l, r}};
}

inline cutset::SetSpec ternary_spec()
{
    return cutset::SetSpec{{ternary_part()}};
}

inline cutset::SetSpec alpha_spec(Rational alpha)
{
    return cutset::SetSpec{{cutset::CentralCantorSpec{cutset::XiRule::positive_measure(alpha), {0, 1}}}};
}

/// Ternary set, a right-sided geometric cluster at 1/2 inside (1/3, 2/3), and 4/9, 5/9.
inline cutset::SetSpec mixed_spec()
{
    using cutset::PointClusterSpec;
    return cutset::SetSpec{{ternary_part(),
                            PointClusterSpec::geometric(R("1/2"), R("1/12"), R("1/2"),
                                                        PointClusterSpec::Direction::Right),
                            PointClusterSpec::finite({R("4/9"), R("5/9")})}};
}

} // namespace fixtures
