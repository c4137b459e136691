#include "cutset/function_builder.hpp"

#include "cutset/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace cutset {

namespace {

const std::string kShiftNote =
    "coefficient index shift: (n+1)^-2 replaces n^-2 so that level n = 0 is defined";
const std::string kPhaseNote =
    "sine phase measured from the left gap endpoint: sin(2 pi (x - a)/(b - a))";

SignedBumpTerm make_term(const OpenInterval& support, int sign, double log_c, Kernel kernel, int level,
                         std::size_t index, std::string gap, std::string expr)
{
    SignedBumpTerm t;
    t.support = support;
    t.sign = sign;
    t.log_coefficient = log_c;
    t.coefficient = std::exp(log_c);
    t.kernel = kernel;
    t.level = level;
    t.index = index;
    t.gap = std::move(gap);
    t.coefficient_expr = std::move(expr);
    t.refresh_cache();
    return t;
}

void sort_terms(PiecewiseFunction& pf)
{
    std::sort(pf.terms.begin(), pf.terms.end(), [](const SignedBumpTerm& x, const SignedBumpTerm& y) {
        return x.support.left < y.support.left;
    });
    for (std::size_t i = 1; i < pf.terms.size(); ++i)
        if (pf.terms[i - 1].support.right > pf.terms[i].support.left)
            throw InvariantViolation("term supports overlap");
}

} // namespace

void SignedBumpTerm::refresh_cache()
{
    a = to_double(support.left);
    b = to_double(support.right);
    width = to_double(support.length());
}

const char* to_string(Kernel k)
{
    switch (k) {
    case Kernel::Bump: return "bump";
    case Kernel::BumpSine: return "bump_sine";
    case Kernel::PlainSine: return "plain_sine";
    }
    return "?";
}

Kernel kernel_from_string(const std::string& s)
{
    if (s == "bump")
        return Kernel::Bump;
    if (s == "bump_sine")
        return Kernel::BumpSine;
    if (s == "plain_sine")
        return Kernel::PlainSine;
    throw ValidationError("unknown kernel '" + s + "'");
}

// ---------------------------------------------------------------------------
// Coefficient rules

CoefficientRule CoefficientRule::power(double s, double scale)
{
    if (!(scale > 0.0))
        throw ValidationError("coefficient scale must be positive");
    return CoefficientRule{Kind::Power, scale, s};
}

CoefficientRule CoefficientRule::geometric(double k, double scale)
{
    if (!(scale > 0.0))
        throw ValidationError("coefficient scale must be positive");
    return CoefficientRule{Kind::Geometric, scale, k};
}

double CoefficientRule::operator()(int n) const
{
    if (n < 1)
        throw ValidationError("coefficient index starts at 1");
    const double nd = n;
    if (kind == Kind::Power)
        return scale * std::pow(nd, -exponent);
    return scale * std::exp(exponent * std::log(nd) - nd * std::numbers::ln2);
}

double CoefficientRule::tail_sum(long long N) const
{
    const double m = static_cast<double>(std::max(N, 0LL)) + 1.0;
    if (kind == Kind::Power) {
        if (exponent <= 1.0)
            return std::numeric_limits<double>::infinity();
        // integral comparison: sum_{n >= m} n^-s <= m^-s + m^{1-s}/(s-1)
        return scale * (std::pow(m, -exponent) + std::pow(m, 1.0 - exponent) / (exponent - 1.0));
    }
    // n^k 2^-n: sum until the ratio of consecutive terms stays below 3/4, then close with a
    // geometric bound.
    if (m > 1e6) {
        const double ratio = std::pow((m + 1.0) / m, exponent) / 2.0;
        return scale * std::exp(exponent * std::log(m) - m * std::numbers::ln2) / (1.0 - ratio);
    }
    double sum = 0.0;
    for (int n = static_cast<int>(m);; ++n) {
        const double t = (*this)(n);
        sum += t;
        const double ratio = std::pow((n + 1.0) / n, exponent) / 2.0;
        if (ratio < 0.75 && (t < 1e-18 * sum || t == 0.0))
            return sum + t * ratio / (1.0 - ratio);
        if (n > 1000000)
            return sum + t * ratio / (1.0 - ratio);
    }
}

std::string CoefficientRule::describe() const
{
    std::ostringstream os;
    os.precision(17);
    if (kind == Kind::Power)
        os << scale << " * n^-" << exponent;
    else
        os << scale << " * n^" << exponent << " * 2^-n";
    return os.str();
}

E1Report check_e1(const CoefficientRule& rule)
{
    E1Report r;
    if (rule.kind == CoefficientRule::Kind::Power) {
        r.summable = rule.exponent > 1.0;
        r.growth_unbounded = true;  // 2^n n^-s -> inf for every s
        if (!r.summable)
            r.note = "sum of c_n diverges (power exponent <= 1): uniform convergence fails";
    } else {
        r.summable = true;
        r.growth_unbounded = rule.exponent > 0.0;
        if (!r.growth_unbounded)
            r.note = "2^n c_n does not tend to infinity: infinite variation is not certified";
    }
    return r;
}

const char* to_string(Construction c)
{
    switch (c) {
    case Construction::SineC0: return "sine";
    case Construction::BumpSineCinf: return "bumpsine";
    case Construction::Prescribed: return "prescribed";
    case Construction::Zero: return "zero";
    }
    return "?";
}

Construction construction_from_string(const std::string& s)
{
    if (s == "sine")
        return Construction::SineC0;
    if (s == "bumpsine")
        return Construction::BumpSineCinf;
    if (s == "prescribed")
        return Construction::Prescribed;
    if (s == "zero")
        return Construction::Zero;
    throw ValidationError("unknown construction '" + s + "'");
}

std::optional<std::size_t> PiecewiseFunction::term_at(double x) const
{
    auto it = std::upper_bound(terms.begin(), terms.end(), x,
                               [](double v, const SignedBumpTerm& t) { return v <= t.a; });
    if (it == terms.begin())
        return std::nullopt;
    --it;
    if (x > it->a && x < it->b)
        return static_cast<std::size_t>(it - terms.begin());
    return std::nullopt;
}

std::optional<std::size_t> PiecewiseFunction::term_at(const Rational& x) const
{
    auto it = std::upper_bound(terms.begin(), terms.end(), x, [](const Rational& v, const SignedBumpTerm& t) {
        return v <= t.support.left;
    });
    if (it == terms.begin())
        return std::nullopt;
    --it;
    if (it->support.contains(x))
        return static_cast<std::size_t>(it - terms.begin());
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Signs

SignAssignment assign_signs(const GapTree& gt, const ComponentTable& ct)
{
    SignAssignment sa;
    for (const auto& [address, row] : ct.rows) {
        if (!gt.find(address))
            throw InvariantViolation("component row without a gap: '" + address + "'");
        if (row.whole) {
            const int s = row.level % 2 == 1 ? -1 : 1;
            sa.parity[address] = s;
            for (const auto& c : row.components)
                sa.signs[c.key()] = s;
            continue;
        }
        for (std::size_t m = 0; m < row.blocks.size(); ++m) {
            const Block& block = row.blocks[m];
            const std::size_t len = block.members.size();
            if (len == 0)
                continue;
            std::size_t anchor = 0;
            switch (block.type) {
            case OrderType::Finite:
            case OrderType::Omega:
                anchor = 0;
                break;
            case OrderType::ReverseOmega:
                anchor = len - 1;
                break;
            case OrderType::Integers: {
                const Rational mid = block.span.midpoint();
                anchor = len;
                for (std::size_t j = 0; j < len; ++j) {
                    const auto& iv = row.components[block.members[j]].interval;
                    if (iv.left <= mid && mid <= iv.right) {
                        anchor = j;
                        break;
                    }
                }
                if (anchor == len)
                    throw InvariantViolation("zeta block of gap '" + address +
                                             "' has no materialized component at its midpoint");
                break;
            }
            }
            for (std::size_t j = 0; j < len; ++j) {
                const std::size_t dist = j > anchor ? j - anchor : anchor - j;
                sa.signs[row.components[block.members[j]].key()] = dist % 2 == 0 ? 1 : -1;
            }
            sa.anchors[{address, m}] = row.components[block.members[anchor]].index;
        }
    }
    return sa;
}

// ---------------------------------------------------------------------------
// Builders

ValidatedSet single_part_set(const CentralCantorSpec& spec)
{
    SetSpec s;
    s.parts.emplace_back(spec);
    return validate_spec(s);
}

PiecewiseFunction build_sine_c0(const CentralCantorSpec& spec, const CoefficientRule& rule, int depth)
{
    PiecewiseFunction pf;
    pf.construction = Construction::SineC0;
    pf.zero_set = single_part_set(spec);
    pf.depth = depth;
    pf.rule = rule;
    pf.deviations.push_back(kPhaseNote);
    const GapTree gt = build_gap_tree(pf.zero_set, depth);
    for (const auto& g : gt.gaps) {
        const int step = g.level + 1;
        const double c = rule(step);
        pf.terms.push_back(make_term(g.interval, 1, std::log(c), Kernel::PlainSine, step, 1, g.address,
                                     "c_n = " + rule.describe() + ", n = " + std::to_string(step)));
    }
    sort_terms(pf);
    return pf;
}

PiecewiseFunction build_bump_sine_cinf(const CentralCantorSpec& spec, int depth)
{
    PiecewiseFunction pf;
    pf.construction = Construction::BumpSineCinf;
    pf.zero_set = single_part_set(spec);
    pf.depth = depth;
    pf.deviations.push_back(kPhaseNote);
    pf.deviations.push_back("gap ranks n count only the materialized gaps of the depth-" +
                            std::to_string(depth) + " tree");
    const GapTree gt = build_gap_tree(pf.zero_set, depth);

    std::vector<const Gap*> order;
    for (const auto& g : gt.gaps)
        order.push_back(&g);
    std::stable_sort(order.begin(), order.end(), [](const Gap* x, const Gap* y) {
        const Rational lx = x->interval.length();
        const Rational ly = y->interval.length();
        if (lx != ly)
            return lx > ly;
        return x->interval.left < y->interval.left;
    });
    for (std::size_t r = 0; r < order.size(); ++r) {
        const Gap& g = *order[r];
        const double n = static_cast<double>(r + 1);
        const double eps = to_double(g.interval.length());
        const double log_c = -2.0 * std::log(n) - 1.0 / eps;
        pf.terms.push_back(make_term(g.interval, 1, log_c, Kernel::BumpSine, g.level, r + 1, g.address,
                                     "n^-2 exp(-1/eps_n), n = " + std::to_string(r + 1)));
    }
    sort_terms(pf);
    return pf;
}

PiecewiseFunction build_prescribed_cutset(const ValidatedSet& vs, int depth, std::size_t budget)
{
    PiecewiseFunction pf;
    pf.construction = Construction::Prescribed;
    pf.zero_set = vs;
    pf.depth = depth;
    pf.budget = budget;
    pf.deviations.push_back(kShiftNote);

    const GapTree gt = build_gap_tree(vs, depth);
    const ComponentTable ct = build_component_table(gt, vs, budget);
    const SignAssignment sa = assign_signs(gt, ct);
    for (const auto& [address, row] : ct.rows) {
        if (row.truncated())
            pf.truncated_gaps[address] = {row.level, row.components.size()};
        for (const auto& c : row.components) {
            const double n1 = row.level + 1.0;
            const double log_c = -2.0 * std::log(n1) - static_cast<double>(c.index) * std::numbers::ln2 -
                                 to_double(Rational(1) / c.interval.length());
            pf.terms.push_back(make_term(c.interval, sa.sign_of(c.key()), log_c, Kernel::Bump, row.level,
                                         c.index, address, "(n+1)^-2 2^-i exp(-1/|J|)"));
        }
    }
    if (!pf.truncated_gaps.empty())
        pf.deviations.push_back("infinite component families truncated at " + std::to_string(budget) +
                                " components per gap");
    sort_terms(pf);
    return pf;
}

PiecewiseFunction zero_function(const ValidatedSet& vs)
{
    PiecewiseFunction pf;
    pf.construction = Construction::Zero;
    pf.zero_set = vs;
    return pf;
}

} // namespace cutset
