#pragma once

#include "cutset/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cutset {

/// Levels beyond this are never materialized, regardless of the xi rule.
inline constexpr int kMaxLevel = 60;

/// Default truncation depth for infinite constructions.
inline constexpr int kDefaultDepth = 12;

/// Rule producing the lengths xi_n of the level-n basic intervals of a central Cantor set
/// (relative to its carrier, so xi_0 = 1).
///
/// Two families are supported:
///  - ratios: xi_{n+1} = ratios[n] * xi_n; when `repeat_tail` is set the last ratio repeats forever,
///    otherwise the rule is only defined up to level ratios.size().
///  - alpha:  xi_n = (alpha + (1 - alpha) 2^-n) / 2^n, whose measure limit 2^n xi_n -> alpha.
struct XiRule
{
    enum class Kind { Ratios, Alpha };

    Kind kind = Kind::Ratios;
    std::vector<Rational> ratios;
    bool repeat_tail = true;
    Rational alpha;

    static XiRule ternary();
    static XiRule constant_ratio(Rational ratio);
    static XiRule positive_measure(Rational alpha);

    /// Largest level n for which xi_n is defined (capped at kMaxLevel).
    [[nodiscard]] int max_level() const;

    /// Ratio xi_{n+1} / xi_n.
    [[nodiscard]] Rational ratio(int n) const;

    /// Level from which the ratio sequence is periodic with period one, if any.
    [[nodiscard]] std::optional<int> constant_from() const;

    friend bool operator==(const XiRule&, const XiRule&) = default;
};

struct CentralCantorSpec
{
    XiRule xi;
    ClosedInterval carrier{Rational(0), Rational(1)};

    friend bool operator==(const CentralCantorSpec&, const CentralCantorSpec&) = default;
};

/// Countable cluster of points: either a finite list, or the convergent sequence
/// {y} ∪ {y ± a r^k : k >= 0} on the chosen side(s) of the limit y.
struct PointClusterSpec
{
    enum class Kind { FinitePoints, Geometric };
    enum class Direction { Left, Right, Both };

    Kind kind = Kind::FinitePoints;
    std::vector<Rational> points;
    Rational limit;
    Rational offset;
    Rational ratio;
    Direction direction = Direction::Right;

    static PointClusterSpec finite(std::vector<Rational> pts);
    static PointClusterSpec geometric(Rational y, Rational a, Rational r, Direction dir);

    [[nodiscard]] bool has_right_side() const
    {
        return kind == Kind::Geometric && direction != Direction::Left;
    }
    [[nodiscard]] bool has_left_side() const
    {
        return kind == Kind::Geometric && direction != Direction::Right;
    }

    /// k-th sequence point on the given side (+1 right of the limit, -1 left of it).
    [[nodiscard]] Rational sequence_point(int k, int side) const;

    /// a r^k
    [[nodiscard]] Rational sequence_offset(int k) const;

    friend bool operator==(const PointClusterSpec&, const PointClusterSpec&) = default;
};

using SetPart = std::variant<CentralCantorSpec, PointClusterSpec>;

struct SetSpec
{
    std::vector<SetPart> parts;
};

enum class Membership { InD, IsolatedPoint, AccumulationPoint, OutsideF };

const char* to_string(Membership m);

enum class PointStatus { NotInF, AccumulationPoint, IsolatedPoint };

const char* to_string(PointStatus s);

struct BoundaryReport
{
    PointStatus at_zero = PointStatus::NotInF;
    PointStatus at_one = PointStatus::NotInF;
};

/// Countable part Q split into isolated points x_n and their accumulation points y_n.
struct CountablePart
{
    std::vector<Rational> isolated_points;        ///< finite clusters
    std::vector<PointClusterSpec> sequences;      ///< geometric rules (points isolated, limit not)
    std::vector<Rational> accumulation_points;    ///< limits of the sequences, sorted

    [[nodiscard]] bool empty() const
    {
        return isolated_points.empty() && sequences.empty();
    }
};

/// One central Cantor part with its xi table precomputed up to the rule's representable level.
struct CantorPart
{
    CentralCantorSpec spec;
    std::vector<Rational> xi;   ///< xi[n], n = 0..max_level

    [[nodiscard]] Rational carrier_length() const { return spec.carrier.length(); }
    [[nodiscard]] int max_level() const { return static_cast<int>(xi.size()) - 1; }
    /// Absolute length of a level-n basic interval.
    [[nodiscard]] Rational basic_length(int n) const { return xi.at(n) * carrier_length(); }
    /// Absolute length of a level-n central gap.
    [[nodiscard]] Rational gap_length(int n) const
    {
        return (xi.at(n) - 2 * xi.at(n + 1)) * carrier_length();
    }
};

/// Accepted set description together with its Cantor–Bendixson split F = D ∪ Q.
struct ValidatedSet
{
    SetSpec spec;
    std::vector<CantorPart> perfect;    ///< D, sorted by carrier
    CountablePart countable;            ///< Q
    std::optional<ClosedInterval> hull; ///< minimal closed interval containing D
    BoundaryReport boundary;

    [[nodiscard]] bool perfect_empty() const { return perfect.empty(); }
};

/// Accepts a spec or throws ValidationError (HypothesisError when 0 or 1 is isolated in F).
ValidatedSet validate_spec(const SetSpec& spec);

/// Exact classification. Central parts are resolved by iterating affine preimages with cycle
/// detection; rules without a periodic tail fall back to D_{kMaxMembershipLevel}.
Membership membership(const ValidatedSet& vs, const Rational& x);

/// Same classification with D replaced by the level-`depth` approximation D_depth.
Membership membership(const ValidatedSet& vs, const Rational& x, int depth);

inline constexpr int kMaxMembershipLevel = 512;

struct MeasureBracket
{
    Rational lower;
    Rational upper;
    std::optional<Rational> limit;  ///< exact λ(F) when known in closed form
    int depth = 0;
};

/// Lebesgue measure bracket of F at truncation depth N (clusters contribute 0).
MeasureBracket measure(const ValidatedSet& vs, int depth = kDefaultDepth);

struct CantorBendixsonSplit
{
    std::vector<CentralCantorSpec> perfect;
    CountablePart countable;
};

CantorBendixsonSplit cantor_bendixson_split(const ValidatedSet& vs);

BoundaryReport boundary_accumulation_check(const ValidatedSet& vs);

/// Where a point sits relative to one central part.
struct CantorLocation
{
    bool in_set = false;        ///< survived every examined level
    int gap_level = -1;         ///< level of the removed gap containing the point, if any
    OpenInterval gap;           ///< that gap (absolute coordinates)
    bool exact = true;          ///< false when the level cap was reached without a decision
};

/// Locates x against part `p`, examining at most `max_depth` levels.
CantorLocation locate_in_part(const CantorPart& p, const Rational& x, int max_depth);

/// Largest open interval around x that misses D, or nullopt when x ∈ D.
std::optional<OpenInterval> complementary_interval(const ValidatedSet& vs, const Rational& x);

} // namespace cutset
