#pragma once

#include "cutset/set_model.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cutset {

inline constexpr std::size_t kDefaultBudget = 64;

/// A gap of the tree. Tree gaps J_s carry their binary address s; the flanking intervals
/// (0, l(I)) and (r(I), 1) use the pseudo-addresses "<" and ">", and the whole of (0,1)
/// (when D is empty) uses "*". Pseudo-gaps count as level 0.
struct Gap
{
    enum class Kind { Tree, ExtraLeft, ExtraRight, Whole };

    std::string address;
    Kind kind = Kind::Tree;
    int level = 0;
    OpenInterval interval;
};

struct GapTree
{
    int depth = 0;
    std::optional<ClosedInterval> hull;
    std::map<std::string, ClosedInterval> basic;  ///< I_s for |s| <= depth
    std::vector<Gap> gaps;                        ///< every gap, sorted by left endpoint
    std::map<std::string, std::size_t> index;     ///< address -> position in `gaps`

    [[nodiscard]] const Gap* find(const std::string& address) const;
    /// Gap whose open interval contains x.
    [[nodiscard]] const Gap* gap_containing(const Rational& x) const;
    [[nodiscard]] std::vector<const Gap*> extra_gaps() const;
    [[nodiscard]] std::size_t tree_gap_count() const;
};

/// Builds basic intervals down to level `depth` and gaps J_s for |s| < depth.
/// J_s is the leftmost among the longest components of I_s \ D.
GapTree build_gap_tree(const ValidatedSet& vs, int depth);

/// Order type of the chain of components inside a block V_m.
enum class OrderType {
    Finite,        ///< 1°  {1..j}
    ReverseOmega,  ///< 2°  -N: x_n accumulate at l(V_m) from the right
    Omega,         ///< 3°  N:  x_n accumulate at r(V_m) from the left
    Integers       ///< 4°  Z:  both
};

const char* to_string(OrderType t);

using ComponentKey = std::pair<std::string, std::size_t>;  ///< (gap address, i)

struct Component
{
    std::string gap;
    std::size_t index = 0;   ///< i, 1-based, left to right within the gap
    std::size_t block = 0;   ///< position of its V_m in the row's block list
    OpenInterval interval;

    [[nodiscard]] ComponentKey key() const { return {gap, index}; }
};

struct Block
{
    OpenInterval span;                    ///< V_m
    OrderType type = OrderType::Finite;
    std::vector<std::size_t> members;     ///< positions in row.components, left to right
    /// Unmaterialized stretches next to accumulating ends (they hold infinitely many components).
    std::optional<OpenInterval> left_tail;
    std::optional<OpenInterval> right_tail;

    [[nodiscard]] bool truncated() const { return left_tail || right_tail; }
};

struct ComponentRow
{
    std::string gap;
    int level = 0;
    OpenInterval gap_interval;
    bool whole = true;                         ///< J_s contains no point of Q
    std::vector<Component> components;         ///< sorted left to right
    std::vector<Block> blocks;
    std::vector<Rational> isolated_points;     ///< materialized x_n inside the gap
    std::vector<Rational> accumulation_points; ///< y_n inside the gap

    [[nodiscard]] bool truncated() const;
};

struct ComponentTable
{
    std::size_t budget = kDefaultBudget;
    std::map<std::string, ComponentRow> rows;

    [[nodiscard]] const Component* find(const ComponentKey& key) const;
    [[nodiscard]] std::size_t component_count() const;
};

/// Components of J_s \ Q for one gap, grouped into blocks V_m with their order types.
/// Infinite families are materialized up to `budget` components per gap; a finite block that
/// does not fit throws BudgetExhausted.
ComponentRow enumerate_components(const GapTree& gt, const ValidatedSet& vs,
                                  const std::string& address, std::size_t budget = kDefaultBudget);

/// Rows for every gap. Throws DepthError when a point of Q lies in no materialized gap.
ComponentTable build_component_table(const GapTree& gt, const ValidatedSet& vs,
                                     std::size_t budget = kDefaultBudget);

struct Location
{
    enum class Kind {
        Component,         ///< inside a materialized component
        InF,               ///< x ∈ F
        BeyondTruncation   ///< outside F but in no materialized component
    };
    Kind kind = Kind::BeyondTruncation;
    Membership membership = Membership::OutsideF;
    std::optional<ComponentKey> component;
};

Location locate(const GapTree& gt, const ComponentTable& ct, const ValidatedSet& vs, const Rational& x);

/// Components of the same gap sharing an endpoint with `key` (at most two).
std::vector<ComponentKey> neighbours(const ComponentTable& ct, const ComponentKey& key);

} // namespace cutset
