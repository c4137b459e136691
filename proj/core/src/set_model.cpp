#include "cutset/set_model.hpp"

#include "cutset/errors.hpp"

#include <algorithm>
#include <set>

namespace cutset {

namespace {

Rational pow2(int n)
{
    Rational r(1);
    for (int i = 0; i < n; ++i)
        r *= 2;
    return r;
}

std::string describe(const Rational& x)
{
    return to_string(x);
}

} // namespace

// ---------------------------------------------------------------------------
// XiRule

XiRule XiRule::ternary()
{
    return constant_ratio(Rational(1, 3));
}

XiRule XiRule::constant_ratio(Rational ratio)
{
    XiRule rule;
    rule.kind = Kind::Ratios;
    rule.ratios = {std::move(ratio)};
    rule.repeat_tail = true;
    return rule;
}

XiRule XiRule::positive_measure(Rational a)
{
    XiRule rule;
    rule.kind = Kind::Alpha;
    rule.alpha = std::move(a);
    return rule;
}

int XiRule::max_level() const
{
    if (kind == Kind::Ratios && !repeat_tail)
        return std::min(static_cast<int>(ratios.size()), kMaxLevel);
    return kMaxLevel;
}

Rational XiRule::ratio(int n) const
{
    if (kind == Kind::Alpha) {
        const Rational p = 1 / pow2(n);
        return (alpha + (1 - alpha) * p / 2) / (2 * (alpha + (1 - alpha) * p));
    }
    if (ratios.empty())
        throw ValidationError("xi rule has an empty ratio list");
    const auto idx = static_cast<std::size_t>(n);
    if (idx < ratios.size())
        return ratios[idx];
    if (!repeat_tail)
        throw DepthError("xi rule is undefined beyond level " + std::to_string(ratios.size()));
    return ratios.back();
}

std::optional<int> XiRule::constant_from() const
{
    if (kind == Kind::Alpha)
        return alpha == 0 ? std::optional<int>(0) : std::nullopt;
    if (repeat_tail && !ratios.empty())
        return static_cast<int>(ratios.size()) - 1;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// PointClusterSpec

PointClusterSpec PointClusterSpec::finite(std::vector<Rational> pts)
{
    PointClusterSpec c;
    c.kind = Kind::FinitePoints;
    c.points = std::move(pts);
    return c;
}

PointClusterSpec PointClusterSpec::geometric(Rational y, Rational a, Rational r, Direction dir)
{
    PointClusterSpec c;
    c.kind = Kind::Geometric;
    c.limit = std::move(y);
    c.offset = std::move(a);
    c.ratio = std::move(r);
    c.direction = dir;
    return c;
}

Rational PointClusterSpec::sequence_offset(int k) const
{
    Rational d = offset;
    for (int i = 0; i < k; ++i)
        d *= ratio;
    return d;
}

Rational PointClusterSpec::sequence_point(int k, int side) const
{
    return side > 0 ? Rational(limit + sequence_offset(k)) : Rational(limit - sequence_offset(k));
}

const char* to_string(Membership m)
{
    switch (m) {
    case Membership::InD: return "in-D";
    case Membership::IsolatedPoint: return "isolated-x_n";
    case Membership::AccumulationPoint: return "accumulation-y_n";
    case Membership::OutsideF: return "outside-F";
    }
    return "?";
}

const char* to_string(PointStatus s)
{
    switch (s) {
    case PointStatus::NotInF: return "not-in-F";
    case PointStatus::AccumulationPoint: return "accumulation-point";
    case PointStatus::IsolatedPoint: return "isolated";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Central part location

CantorLocation locate_in_part(const CantorPart& p, const Rational& x, int max_depth)
{
    CantorLocation loc;
    const auto& carrier = p.spec.carrier;
    if (x < carrier.left || x > carrier.right)
        return loc;

    const auto& rule = p.spec.xi;
    const auto periodic_from = rule.constant_from();
    const int level_cap = std::min(max_depth, rule.kind == XiRule::Kind::Ratios && !rule.repeat_tail
                                                  ? static_cast<int>(rule.ratios.size())
                                                  : max_depth);
    Rational node_left = carrier.left;
    Rational node_len = carrier.length();
    Rational t = (x - node_left) / node_len;
    std::set<Rational> seen;

    for (int n = 0; n < level_cap; ++n) {
        if (t == 0 || t == 1) {
            loc.in_set = true;
            return loc;
        }
        if (periodic_from && n >= *periodic_from) {
            if (!seen.insert(t).second) {
                loc.in_set = true;
                return loc;
            }
        }
        const Rational rho = rule.ratio(n);
        if (t <= rho) {
            t /= rho;
            node_len *= rho;
        } else if (t >= 1 - rho) {
            t = (t - (1 - rho)) / rho;
            node_left += (1 - rho) * node_len;
            node_len *= rho;
        } else {
            loc.gap_level = n;
            loc.gap = OpenInterval{node_left + rho * node_len, node_left + node_len - rho * node_len};
            return loc;
        }
    }
    loc.in_set = true;
    loc.exact = false;
    return loc;
}

namespace {

int exact_depth(const CantorPart& p)
{
    return p.spec.xi.kind == XiRule::Kind::Ratios && !p.spec.xi.repeat_tail
               ? static_cast<int>(p.spec.xi.ratios.size())
               : kMaxMembershipLevel;
}

bool in_perfect(const ValidatedSet& vs, const Rational& x, std::optional<int> depth)
{
    for (const auto& part : vs.perfect) {
        const int d = depth ? *depth : exact_depth(part);
        if (locate_in_part(part, x, d).in_set)
            return true;
    }
    return false;
}

/// Classifies x against a single cluster.
std::optional<Membership> cluster_membership(const PointClusterSpec& c, const Rational& x)
{
    if (c.kind == PointClusterSpec::Kind::FinitePoints) {
        for (const auto& p : c.points)
            if (p == x)
                return Membership::IsolatedPoint;
        return std::nullopt;
    }
    if (x == c.limit)
        return Membership::AccumulationPoint;
    const int side = x > c.limit ? 1 : -1;
    if ((side > 0 && !c.has_right_side()) || (side < 0 && !c.has_left_side()))
        return std::nullopt;
    const Rational d = side > 0 ? Rational(x - c.limit) : Rational(c.limit - x);
    Rational t = c.offset;
    while (t >= d) {
        if (t == d)
            return Membership::IsolatedPoint;
        t *= c.ratio;
    }
    return std::nullopt;
}

std::optional<Membership> countable_membership(const CountablePart& q, const Rational& x)
{
    for (const auto& p : q.isolated_points)
        if (p == x)
            return Membership::IsolatedPoint;
    for (const auto& s : q.sequences)
        if (auto m = cluster_membership(s, x))
            return m;
    return std::nullopt;
}

PointStatus boundary_status(const ValidatedSet& vs, const Rational& x)
{
    if (in_perfect(vs, x, std::nullopt))
        return PointStatus::AccumulationPoint;
    if (auto m = countable_membership(vs.countable, x))
        return *m == Membership::AccumulationPoint ? PointStatus::AccumulationPoint
                                                   : PointStatus::IsolatedPoint;
    return PointStatus::NotInF;
}

void check_xi_rule(const XiRule& rule, std::size_t part_index)
{
    const std::string where = "central_cantor part #" + std::to_string(part_index);
    if (rule.kind == XiRule::Kind::Alpha) {
        if (rule.alpha < 0 || rule.alpha >= 1)
            throw ValidationError(where + ": alpha must lie in [0, 1)");
    } else {
        if (rule.ratios.empty())
            throw ValidationError(where + ": ratio list is empty");
    }
    // xi_{n+1} < xi_n / 2 at every representable level
    const int top = rule.max_level();
    for (int n = 0; n < top; ++n) {
        const Rational r = rule.ratio(n);
        if (r <= 0 || r >= Rational(1, 2))
            throw ValidationError(where + ": xi rule violates 0 < xi_{n+1} < xi_n/2 at level " +
                                  std::to_string(n) + " (ratio " + describe(r) + ")");
    }
}

std::vector<Rational> xi_table(const XiRule& rule)
{
    std::vector<Rational> xi{Rational(1)};
    const int top = rule.max_level();
    for (int n = 0; n < top; ++n)
        xi.push_back(xi.back() * rule.ratio(n));
    return xi;
}

/// Every geometric point far enough from the limit to possibly lie in D, i.e. outside the
/// D-free neighbourhood `safe` of the limit.
std::vector<Rational> exposed_points(const PointClusterSpec& c, const Rational& radius)
{
    std::vector<Rational> pts;
    for (int side : {-1, 1}) {
        if ((side > 0 && !c.has_right_side()) || (side < 0 && !c.has_left_side()))
            continue;
        Rational d = c.offset;
        for (int k = 0; d >= radius; ++k, d *= c.ratio)
            pts.push_back(side > 0 ? Rational(c.limit + d) : Rational(c.limit - d));
    }
    return pts;
}

} // namespace

std::optional<OpenInterval> complementary_interval(const ValidatedSet& vs, const Rational& x)
{
    Rational lo(-1);
    Rational hi(2);
    for (const auto& part : vs.perfect) {
        const auto& c = part.spec.carrier;
        if (c.contains(x)) {
            const auto loc = locate_in_part(part, x, exact_depth(part));
            if (loc.in_set)
                return std::nullopt;
            if (loc.gap_level < 0)
                return std::nullopt;
            return loc.gap;
        }
        if (c.right < x)
            lo = std::max(lo, c.right);
        if (c.left > x)
            hi = std::min(hi, c.left);
    }
    return OpenInterval{lo, hi};
}

// ---------------------------------------------------------------------------
// Validation

ValidatedSet validate_spec(const SetSpec& spec)
{
    ValidatedSet vs;
    vs.spec = spec;

    std::vector<PointClusterSpec> clusters;
    std::size_t index = 0;
    for (const auto& part : spec.parts) {
        ++index;
        if (const auto* cantor = std::get_if<CentralCantorSpec>(&part)) {
            const auto& c = cantor->carrier;
            if (c.left < 0 || c.right > 1 || c.left >= c.right)
                throw ValidationError("central_cantor part #" + std::to_string(index) +
                                      ": carrier must be a nondegenerate subinterval of [0,1]");
            check_xi_rule(cantor->xi, index);
            vs.perfect.push_back(CantorPart{*cantor, xi_table(cantor->xi)});
        } else {
            const auto& cl = std::get<PointClusterSpec>(part);
            const std::string where = "cluster part #" + std::to_string(index);
            if (cl.kind == PointClusterSpec::Kind::FinitePoints) {
                if (cl.points.empty())
                    throw ValidationError(where + ": finite_points needs at least one point");
                for (const auto& p : cl.points)
                    if (p < 0 || p > 1)
                        throw ValidationError(where + ": point " + describe(p) + " outside [0,1]");
            } else {
                if (cl.ratio <= 0 || cl.ratio >= 1)
                    throw ValidationError(where + ": ratio must lie in (0,1)");
                if (cl.offset <= 0)
                    throw ValidationError(where + ": offset must be positive");
                if (cl.limit < 0 || cl.limit > 1)
                    throw ValidationError(where + ": limit outside [0,1]");
                if (cl.has_right_side() && cl.limit + cl.offset > 1)
                    throw ValidationError(where + ": sequence leaves [0,1] on the right");
                if (cl.has_left_side() && cl.limit - cl.offset < 0)
                    throw ValidationError(where + ": sequence leaves [0,1] on the left");
            }
            clusters.push_back(cl);
        }
    }

    std::sort(vs.perfect.begin(), vs.perfect.end(), [](const CantorPart& a, const CantorPart& b) {
        return a.spec.carrier.left < b.spec.carrier.left;
    });
    for (std::size_t i = 1; i < vs.perfect.size(); ++i)
        if (vs.perfect[i - 1].spec.carrier.right > vs.perfect[i].spec.carrier.left)
            throw ValidationError("central_cantor carriers overlap: [" +
                                  describe(vs.perfect[i - 1].spec.carrier.left) + "," +
                                  describe(vs.perfect[i - 1].spec.carrier.right) + "] and [" +
                                  describe(vs.perfect[i].spec.carrier.left) + "," +
                                  describe(vs.perfect[i].spec.carrier.right) + "]");
    if (!vs.perfect.empty())
        vs.hull = ClosedInterval{vs.perfect.front().spec.carrier.left,
                                 vs.perfect.back().spec.carrier.right};

    // Q must avoid D.
    auto reject_if_in_d = [&](const Rational& p, const std::string& what) {
        if (in_perfect(vs, p, std::nullopt))
            throw ValidationError(what + " " + describe(p) + " lies in a central Cantor part");
    };
    std::vector<Rational> limits;
    for (const auto& cl : clusters) {
        if (cl.kind == PointClusterSpec::Kind::FinitePoints) {
            for (const auto& p : cl.points) {
                reject_if_in_d(p, "cluster point");
                vs.countable.isolated_points.push_back(p);
            }
            continue;
        }
        reject_if_in_d(cl.limit, "cluster limit");
        const auto safe = complementary_interval(vs, cl.limit);
        if (!safe)
            throw ValidationError("cluster limit " + describe(cl.limit) + " lies in D");
        const Rational radius = std::min(cl.limit - safe->left, safe->right - cl.limit);
        for (const auto& p : exposed_points(cl, radius))
            reject_if_in_d(p, "cluster point");
        limits.push_back(cl.limit);
        vs.countable.sequences.push_back(cl);
    }

    // Q points must be pairwise distinct across clusters.
    std::sort(limits.begin(), limits.end());
    if (std::adjacent_find(limits.begin(), limits.end()) != limits.end())
        throw ValidationError("two geometric clusters share a limit point; use direction 'both'");
    {
        auto pts = vs.countable.isolated_points;
        std::sort(pts.begin(), pts.end());
        if (auto it = std::adjacent_find(pts.begin(), pts.end()); it != pts.end())
            throw ValidationError("duplicate isolated point " + describe(*it));
        for (const auto& p : pts)
            for (const auto& s : vs.countable.sequences)
                if (cluster_membership(s, p))
                    throw ValidationError("isolated point " + describe(p) +
                                          " coincides with a geometric cluster point");
    }
    const auto& seqs = vs.countable.sequences;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        for (std::size_t j = 0; j < seqs.size(); ++j) {
            if (i == j)
                continue;
            const Rational half = abs(seqs[i].limit - seqs[j].limit) / 2;
            if (cluster_membership(seqs[j], seqs[i].limit))
                throw ValidationError("cluster limit " + describe(seqs[i].limit) +
                                      " coincides with a point of another cluster");
            for (const auto& p : exposed_points(seqs[i], half))
                if (cluster_membership(seqs[j], p))
                    throw ValidationError("geometric clusters share the point " + describe(p));
        }
    }
    vs.countable.accumulation_points = limits;

    vs.boundary.at_zero = boundary_status(vs, Rational(0));
    vs.boundary.at_one = boundary_status(vs, Rational(1));
    if (vs.boundary.at_zero == PointStatus::IsolatedPoint)
        throw HypothesisError("0 is an isolated point of F; no function has this cutting set");
    if (vs.boundary.at_one == PointStatus::IsolatedPoint)
        throw HypothesisError("1 is an isolated point of F; no function has this cutting set");
    return vs;
}

// ---------------------------------------------------------------------------
// Queries

Membership membership(const ValidatedSet& vs, const Rational& x)
{
    if (x < 0 || x > 1)
        throw ValidationError("membership probe " + describe(x) + " outside [0,1]");
    if (in_perfect(vs, x, std::nullopt))
        return Membership::InD;
    if (auto m = countable_membership(vs.countable, x))
        return *m;
    return Membership::OutsideF;
}

Membership membership(const ValidatedSet& vs, const Rational& x, int depth)
{
    if (x < 0 || x > 1)
        throw ValidationError("membership probe " + describe(x) + " outside [0,1]");
    if (in_perfect(vs, x, depth))
        return Membership::InD;
    if (auto m = countable_membership(vs.countable, x))
        return *m;
    return Membership::OutsideF;
}

MeasureBracket measure(const ValidatedSet& vs, int depth)
{
    MeasureBracket b;
    b.depth = depth;
    b.limit = Rational(0);
    for (const auto& part : vs.perfect) {
        if (depth > part.max_level())
            throw DepthError("measure depth " + std::to_string(depth) +
                             " exceeds the xi rule's representable range");
        const Rational len = part.carrier_length();
        b.upper += pow2(depth) * part.xi[static_cast<std::size_t>(depth)] * len;
        const auto& rule = part.spec.xi;
        if (rule.kind == XiRule::Kind::Alpha) {
            b.lower += rule.alpha * len;
            if (b.limit)
                *b.limit += rule.alpha * len;
        } else if (!rule.repeat_tail) {
            b.limit.reset();
        }
        // repeating ratio r < 1/2 gives (2r)^n -> 0: lower bound and limit stay 0
    }
    return b;
}

CantorBendixsonSplit cantor_bendixson_split(const ValidatedSet& vs)
{
    CantorBendixsonSplit split;
    for (const auto& part : vs.perfect)
        split.perfect.push_back(part.spec);
    split.countable = vs.countable;
    return split;
}

BoundaryReport boundary_accumulation_check(const ValidatedSet& vs)
{
    return vs.boundary;
}

} // namespace cutset
