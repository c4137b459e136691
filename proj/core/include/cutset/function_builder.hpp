#pragma once

#include "cutset/gap_tree.hpp"
#include "cutset/set_model.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cutset {

enum class Kernel { Bump, BumpSine, PlainSine };

const char* to_string(Kernel k);
Kernel kernel_from_string(const std::string& s);

/// One summand sign * c * K((x - a) / (b - a)) supported on (a, b).
struct SignedBumpTerm
{
    OpenInterval support;
    int sign = 1;
    double coefficient = 0.0;       ///< may underflow to 0; log_coefficient is authoritative
    double log_coefficient = 0.0;
    std::string coefficient_expr;   ///< defining expression, e.g. "(n+1)^-2 2^-i exp(-1/|J|)"
    Kernel kernel = Kernel::Bump;
    int level = 0;                  ///< tree level, or removal step / rank depending on the construction
    std::size_t index = 0;          ///< component index i (1-based), or the rank n
    std::string gap;                ///< address of the gap holding the support

    // cached doubles for fast evaluation
    double a = 0.0;
    double b = 0.0;
    double width = 0.0;

    void refresh_cache();
};

/// Amplitude rule c_n for the continuous sine construction.
struct CoefficientRule
{
    enum class Kind {
        Power,      ///< scale * n^-s
        Geometric   ///< scale * n^k 2^-n
    };
    Kind kind = Kind::Power;
    double scale = 1.0;
    double exponent = 2.0;

    static CoefficientRule power(double s, double scale = 1.0);
    static CoefficientRule geometric(double k, double scale = 1.0);

    [[nodiscard]] double operator()(int n) const;
    /// Sum over n > N, +inf when the series diverges.
    [[nodiscard]] double tail_sum(long long N) const;
    [[nodiscard]] std::string describe() const;

    friend bool operator==(const CoefficientRule&, const CoefficientRule&) = default;
};

/// Requirements for the continuous construction: sum c_n < inf and 2^n c_n -> inf.
struct E1Report
{
    bool summable = false;
    bool growth_unbounded = false;
    [[nodiscard]] bool satisfied() const { return summable && growth_unbounded; }
    std::string note;
};

E1Report check_e1(const CoefficientRule& rule);

enum class Construction { SineC0, BumpSineCinf, Prescribed, Zero };

const char* to_string(Construction c);
Construction construction_from_string(const std::string& s);

struct PiecewiseFunction
{
    Construction construction = Construction::Prescribed;
    std::vector<SignedBumpTerm> terms;   ///< sorted by support, supports pairwise disjoint
    ValidatedSet zero_set;
    int depth = 0;
    std::size_t budget = kDefaultBudget;
    std::optional<CoefficientRule> rule;
    /// Materialized component count of every gap whose infinite families were cut, with its level.
    std::map<std::string, std::pair<int, std::size_t>> truncated_gaps;
    std::vector<std::string> deviations;

    /// Index of the term whose open support contains x.
    [[nodiscard]] std::optional<std::size_t> term_at(double x) const;
    [[nodiscard]] std::optional<std::size_t> term_at(const Rational& x) const;
};

struct SignAssignment
{
    std::map<ComponentKey, int> signs;
    std::map<std::string, int> parity;                     ///< whole gaps: sign from the level parity
    std::map<std::pair<std::string, std::size_t>, std::size_t> anchors;  ///< (gap, block) -> component index with sign +

    [[nodiscard]] int sign_of(const ComponentKey& k) const { return signs.at(k); }
};

SignAssignment assign_signs(const GapTree& gt, const ComponentTable& ct);

/// Gaps of a single central Cantor set, with their level, for the sine constructions.
ValidatedSet single_part_set(const CentralCantorSpec& spec);

/// c_n sin(2 pi (x - a) / (b - a)) on every gap removed at step n (level + 1).
PiecewiseFunction build_sine_c0(const CentralCantorSpec& spec, const CoefficientRule& rule,
                                int depth = kDefaultDepth);

/// n^-2 exp(-1/eps_n) h((x - a_n)/eps_n) sin(2 pi (x - a_n)/eps_n), gaps ranked by decreasing length.
PiecewiseFunction build_bump_sine_cinf(const CentralCantorSpec& spec, int depth = kDefaultDepth);

/// ± (n+1)^-2 2^-i exp(-1/|J|) h_{cl J} on every component J = J_{s,(i)}, n = |s|.
PiecewiseFunction build_prescribed_cutset(const ValidatedSet& vs, int depth = kDefaultDepth,
                                          std::size_t budget = kDefaultBudget);

/// The zero function on [0,1] with the given zero set, used as a reference point.
PiecewiseFunction zero_function(const ValidatedSet& vs);

} // namespace cutset
