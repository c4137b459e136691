#include "cutset/gap_tree.hpp"

#include "cutset/errors.hpp"

#include <algorithm>
#include <deque>

namespace cutset {

namespace {

struct Candidate
{
    OpenInterval iv;
    bool set = false;

    void offer(const OpenInterval& g)
    {
        if (!set) {
            iv = g;
            set = true;
            return;
        }
        const Rational a = g.length();
        const Rational b = iv.length();
        if (a > b || (a == b && g.left < iv.left))
            iv = g;
    }
};

/// suffix[n] bounds the length of every gap of level >= n; the last entry is xi_max * L,
/// which dominates anything below the representable range.
std::vector<Rational> gap_suffix_bound(const CantorPart& p)
{
    const int top = p.max_level();
    std::vector<Rational> suffix(static_cast<std::size_t>(top) + 1);
    suffix[static_cast<std::size_t>(top)] = p.basic_length(top);
    for (int n = top - 1; n >= 0; --n)
        suffix[static_cast<std::size_t>(n)] =
            std::max(p.gap_length(n), suffix[static_cast<std::size_t>(n) + 1]);
    return suffix;
}

constexpr std::size_t kNodeCap = std::size_t(1) << 20;

/// Leftmost longest component of [lo, hi] \ D, where lo, hi are points of D.
OpenInterval leftmost_longest(const ValidatedSet& vs, const std::vector<std::vector<Rational>>& bounds,
                              const Rational& lo, const Rational& hi)
{
    Candidate best;
    for (std::size_t i = 0; i + 1 < vs.perfect.size(); ++i) {
        OpenInterval g{vs.perfect[i].spec.carrier.right, vs.perfect[i + 1].spec.carrier.left};
        if (g.left < g.right && lo <= g.left && g.right <= hi)
            best.offer(g);
    }
    for (std::size_t pi = 0; pi < vs.perfect.size(); ++pi) {
        const auto& part = vs.perfect[pi];
        const auto& carrier = part.spec.carrier;
        if (!(carrier.right > lo && carrier.left < hi))
            continue;
        const auto& suffix = bounds[pi];
        const int top = part.max_level();
        std::vector<Rational> nodes{carrier.left};
        for (int n = 0;; ++n) {
            if (best.set && best.iv.length() > suffix[static_cast<std::size_t>(std::min(n, top))])
                break;
            if (n >= top)
                throw DepthError("gap search needs level " + std::to_string(n + 1) +
                                 ", beyond the xi rule's representable range");
            const Rational len = part.basic_length(n);
            const Rational child = part.basic_length(n + 1);
            std::vector<Rational> next;
            for (const auto& a : nodes) {
                OpenInterval g{a + child, a + len - child};
                if (lo <= g.left && g.right <= hi)
                    best.offer(g);
                for (const Rational& c : {a, Rational(a + len - child)})
                    if (c < hi && c + child > lo)
                        next.push_back(c);
            }
            if (next.size() > kNodeCap)
                throw DepthError("gap search exceeded the node cap");
            nodes = std::move(next);
        }
    }
    if (!best.set)
        throw DepthError("no gap found inside [" + to_string(lo) + ", " + to_string(hi) + "]");
    return best.iv;
}

void push_gap(GapTree& gt, std::string address, Gap::Kind kind, int level, OpenInterval iv)
{
    gt.gaps.push_back(Gap{std::move(address), kind, level, std::move(iv)});
}

} // namespace

const Gap* GapTree::find(const std::string& address) const
{
    const auto it = index.find(address);
    return it == index.end() ? nullptr : &gaps[it->second];
}

const Gap* GapTree::gap_containing(const Rational& x) const
{
    auto it = std::upper_bound(gaps.begin(), gaps.end(), x,
                               [](const Rational& v, const Gap& g) { return v <= g.interval.left; });
    if (it == gaps.begin())
        return nullptr;
    --it;
    return it->interval.contains(x) ? &*it : nullptr;
}

std::vector<const Gap*> GapTree::extra_gaps() const
{
    std::vector<const Gap*> out;
    for (const auto& g : gaps)
        if (g.kind != Gap::Kind::Tree)
            out.push_back(&g);
    return out;
}

std::size_t GapTree::tree_gap_count() const
{
    return static_cast<std::size_t>(
        std::count_if(gaps.begin(), gaps.end(), [](const Gap& g) { return g.kind == Gap::Kind::Tree; }));
}

GapTree build_gap_tree(const ValidatedSet& vs, int depth)
{
    if (depth < 1)
        throw ValidationError("tree depth must be at least 1");
    if (depth > kMaxLevel)
        throw DepthError("tree depth " + std::to_string(depth) + " exceeds the cap " +
                         std::to_string(kMaxLevel));
    GapTree gt;
    gt.depth = depth;
    gt.hull = vs.hull;

    if (vs.perfect_empty()) {
        push_gap(gt, "*", Gap::Kind::Whole, 0, OpenInterval{Rational(0), Rational(1)});
    } else {
        std::vector<std::vector<Rational>> bounds;
        for (const auto& part : vs.perfect)
            bounds.push_back(gap_suffix_bound(part));

        const auto& hull = *vs.hull;
        if (hull.left > 0)
            push_gap(gt, "<", Gap::Kind::ExtraLeft, 0, OpenInterval{Rational(0), hull.left});
        if (hull.right < 1)
            push_gap(gt, ">", Gap::Kind::ExtraRight, 0, OpenInterval{hull.right, Rational(1)});

        std::deque<std::string> queue{""};
        gt.basic.emplace("", hull);
        while (!queue.empty()) {
            const std::string s = queue.front();
            queue.pop_front();
            const ClosedInterval node = gt.basic.at(s);
            const int level = static_cast<int>(s.size());
            if (level >= depth)
                continue;
            const OpenInterval j = leftmost_longest(vs, bounds, node.left, node.right);
            push_gap(gt, s, Gap::Kind::Tree, level, j);
            gt.basic.emplace(s + "0", ClosedInterval{node.left, j.left});
            gt.basic.emplace(s + "1", ClosedInterval{j.right, node.right});
            queue.push_back(s + "0");
            queue.push_back(s + "1");
        }
    }

    std::sort(gt.gaps.begin(), gt.gaps.end(),
              [](const Gap& a, const Gap& b) { return a.interval.left < b.interval.left; });
    for (std::size_t i = 0; i < gt.gaps.size(); ++i)
        gt.index.emplace(gt.gaps[i].address, i);
    return gt;
}

const char* to_string(OrderType t)
{
    switch (t) {
    case OrderType::Finite: return "1-finite";
    case OrderType::ReverseOmega: return "2-reverse-omega";
    case OrderType::Omega: return "3-omega";
    case OrderType::Integers: return "4-zeta";
    }
    return "?";
}

bool ComponentRow::truncated() const
{
    return std::any_of(blocks.begin(), blocks.end(), [](const Block& b) { return b.truncated(); });
}

const Component* ComponentTable::find(const ComponentKey& key) const
{
    const auto it = rows.find(key.first);
    if (it == rows.end() || key.second == 0 || key.second > it->second.components.size())
        return nullptr;
    return &it->second.components[key.second - 1];
}

std::size_t ComponentTable::component_count() const
{
    std::size_t n = 0;
    for (const auto& [_, row] : rows)
        n += row.components.size();
    return n;
}

namespace {

/// One side of a geometric sequence accumulating at a block endpoint.
struct Tail
{
    const PointClusterSpec* seq = nullptr;
    int side = 1;       ///< +1: points limit + d_k, -1: limit - d_k
    int first = 0;      ///< first k whose point lies in the block
    int last = 0;       ///< last materialized k
};

/// Points limit + side * d_k lying strictly inside (p, q), for a side that does not accumulate there.
void finite_side_points(const PointClusterSpec& s, int side, const Rational& p, const Rational& q,
                        std::size_t cap, std::vector<Rational>& out)
{
    const Rational& y = s.limit;
    if ((side > 0 && y >= q) || (side < 0 && y <= p))
        return;
    Rational d = s.offset;
    for (;;) {
        const Rational pt = side > 0 ? Rational(y + d) : Rational(y - d);
        // points move monotonically towards y; stop once they pass the near end of (p, q)
        if (side > 0 && pt <= p)
            break;
        if (side < 0 && pt >= q)
            break;
        if (p < pt && pt < q) {
            out.push_back(pt);
            if (out.size() > cap)
                throw BudgetExhausted("finite point family inside (" + to_string(p) + ", " +
                                      to_string(q) + ") exceeds the component budget");
        }
        d *= s.ratio;
    }
}

struct BlockPlan
{
    Rational p;
    Rational q;
    std::vector<Rational> fixed;          ///< points that must be materialized
    std::optional<Tail> left;             ///< accumulating at p from the right
    std::optional<Tail> right;            ///< accumulating at q from the left
    Rational left_need;                   ///< left tail cut must lie strictly below this
    Rational right_need;                  ///< right tail cut must lie strictly above this

    [[nodiscard]] Rational tail_point(const Tail& t, int k) const
    {
        const Rational d = t.seq->sequence_offset(k);
        return t.side > 0 ? Rational(t.seq->limit + d) : Rational(t.seq->limit - d);
    }

    [[nodiscard]] std::size_t component_count() const
    {
        std::size_t pts = fixed.size();
        if (left)
            pts += static_cast<std::size_t>(left->last - left->first + 1);
        if (right)
            pts += static_cast<std::size_t>(right->last - right->first + 1);
        // components between consecutive listed points, where listed = points plus the
        // non-accumulating block ends
        const std::size_t ends = (left ? 0 : 1) + (right ? 0 : 1);
        return pts + ends - 1;
    }
};

int first_index_inside(const PointClusterSpec& s, int side, const Rational& p, const Rational& q)
{
    Rational d = s.offset;
    int k = 0;
    while (side > 0 ? !(s.limit + d < q) : !(s.limit - d > p)) {
        d *= s.ratio;
        ++k;
    }
    return k;
}

/// Smallest k >= from whose tail point lies strictly beyond `bound` (below it for the left tail).
int cut_index(const BlockPlan& b, const Tail& t, int from, const Rational& bound, bool below)
{
    int k = from;
    Rational pt = b.tail_point(t, k);
    while (below ? !(pt < bound) : !(pt > bound)) {
        ++k;
        pt = b.tail_point(t, k);
    }
    return k;
}

} // namespace

ComponentRow enumerate_components(const GapTree& gt, const ValidatedSet& vs, const std::string& address,
                                  std::size_t budget)
{
    const Gap* gap = gt.find(address);
    if (!gap)
        throw ValidationError("no gap with address '" + address + "'");
    if (budget == 0)
        throw ValidationError("component budget must be positive");
    const Rational& a = gap->interval.left;
    const Rational& b = gap->interval.right;

    ComponentRow row;
    row.gap = address;
    row.level = gap->level;
    row.gap_interval = gap->interval;

    const auto& q = vs.countable;
    std::vector<Rational> cuts{a};
    for (const auto& y : q.accumulation_points)
        if (a < y && y < b) {
            cuts.push_back(y);
            row.accumulation_points.push_back(y);
        }
    cuts.push_back(b);

    std::vector<BlockPlan> plans;
    std::size_t minimal = 0;
    for (std::size_t m = 0; m + 1 < cuts.size(); ++m) {
        BlockPlan plan;
        plan.p = cuts[m];
        plan.q = cuts[m + 1];
        for (const auto& x : q.isolated_points)
            if (plan.p < x && x < plan.q)
                plan.fixed.push_back(x);
        for (const auto& s : q.sequences) {
            for (int side : {1, -1}) {
                if ((side > 0 && !s.has_right_side()) || (side < 0 && !s.has_left_side()))
                    continue;
                if (side > 0 && s.limit == plan.p) {
                    const int k0 = first_index_inside(s, side, plan.p, plan.q);
                    plan.left = Tail{&s, side, k0, k0};
                } else if (side < 0 && s.limit == plan.q) {
                    const int k0 = first_index_inside(s, side, plan.p, plan.q);
                    plan.right = Tail{&s, side, k0, k0};
                } else {
                    finite_side_points(s, side, plan.p, plan.q, budget, plan.fixed);
                }
            }
        }
        std::sort(plan.fixed.begin(), plan.fixed.end());

        // The left tail window must end before every other point of the block, and symmetrically.
        if (plan.left || plan.right) {
            std::vector<Rational> others = plan.fixed;
            if (plan.left && plan.right)
                others.push_back(plan.p + (plan.q - plan.p) / 2);
            Rational lo_other = plan.q;
            Rational hi_other = plan.p;
            for (const auto& x : others) {
                lo_other = std::min(lo_other, x);
                hi_other = std::max(hi_other, x);
            }
            if (plan.left && plan.right) {
                // each tail's first point may still overshoot the other side's points
                const Rational mid = plan.p + (plan.q - plan.p) / 2;
                plan.left_need = std::min(lo_other, mid);
                plan.right_need = std::max(hi_other, mid);
                Tail& lt = *plan.left;
                Tail& rt = *plan.right;
                // left points with small k may sit far right; those belong to the fixed set
                const int lk = cut_index(plan, lt, lt.first, plan.left_need, true);
                const int rk = cut_index(plan, rt, rt.first, plan.right_need, false);
                for (int k = lt.first; k < lk; ++k)
                    plan.fixed.push_back(plan.tail_point(lt, k));
                for (int k = rt.first; k < rk; ++k)
                    plan.fixed.push_back(plan.tail_point(rt, k));
                lt.first = lt.last = lk;
                rt.first = rt.last = rk;
                std::sort(plan.fixed.begin(), plan.fixed.end());
                // fixed points from the other tail may now sit inside a window: push the cuts further
                for (;;) {
                    Rational lo_fixed = plan.fixed.empty() ? mid : std::min(mid, plan.fixed.front());
                    Rational hi_fixed = plan.fixed.empty() ? mid : std::max(mid, plan.fixed.back());
                    const Rational lp = plan.tail_point(lt, lt.first);
                    const Rational rp = plan.tail_point(rt, rt.first);
                    if (lp < lo_fixed && rp > hi_fixed) {
                        plan.left_need = lo_fixed;
                        plan.right_need = hi_fixed;
                        break;
                    }
                    if (!(lp < lo_fixed)) {
                        plan.fixed.push_back(lp);
                        lt.first = lt.last = lt.first + 1;
                    }
                    if (!(rp > hi_fixed)) {
                        plan.fixed.push_back(rp);
                        rt.first = rt.last = rt.first + 1;
                    }
                    std::sort(plan.fixed.begin(), plan.fixed.end());
                }
            } else if (plan.left) {
                plan.left_need = lo_other;
                Tail& lt = *plan.left;
                const int lk = cut_index(plan, lt, lt.first, lo_other, true);
                for (int k = lt.first; k < lk; ++k)
                    plan.fixed.push_back(plan.tail_point(lt, k));
                lt.first = lt.last = lk;
                std::sort(plan.fixed.begin(), plan.fixed.end());
            } else {
                plan.right_need = hi_other;
                Tail& rt = *plan.right;
                const int rk = cut_index(plan, rt, rt.first, hi_other, false);
                for (int k = rt.first; k < rk; ++k)
                    plan.fixed.push_back(plan.tail_point(rt, k));
                rt.first = rt.last = rk;
                std::sort(plan.fixed.begin(), plan.fixed.end());
            }
        }
        minimal += plan.component_count();
        plans.push_back(std::move(plan));
    }
    if (minimal > budget)
        throw BudgetExhausted("gap '" + address + "' needs " + std::to_string(minimal) +
                              " components, budget is " + std::to_string(budget));

    // Spend the remaining budget round-robin on the accumulating ends.
    std::vector<Tail*> ends;
    for (auto& plan : plans) {
        if (plan.left)
            ends.push_back(&*plan.left);
        if (plan.right)
            ends.push_back(&*plan.right);
    }
    std::size_t total = minimal;
    for (std::size_t turn = 0; !ends.empty() && total < budget; ++turn) {
        ++ends[turn % ends.size()]->last;
        ++total;
    }

    for (std::size_t m = 0; m < plans.size(); ++m) {
        const BlockPlan& plan = plans[m];
        std::vector<Rational> pts = plan.fixed;
        if (plan.left)
            for (int k = plan.left->first; k <= plan.left->last; ++k)
                pts.push_back(plan.tail_point(*plan.left, k));
        if (plan.right)
            for (int k = plan.right->first; k <= plan.right->last; ++k)
                pts.push_back(plan.tail_point(*plan.right, k));
        std::sort(pts.begin(), pts.end());
        if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
            throw InvariantViolation("repeated point while enumerating gap '" + address + "'");
        row.isolated_points.insert(row.isolated_points.end(), pts.begin(), pts.end());

        std::vector<Rational> listed;
        if (!plan.left)
            listed.push_back(plan.p);
        listed.insert(listed.end(), pts.begin(), pts.end());
        if (!plan.right)
            listed.push_back(plan.q);

        Block block;
        block.span = OpenInterval{plan.p, plan.q};
        if (plan.left && plan.right)
            block.type = OrderType::Integers;
        else if (plan.left)
            block.type = OrderType::ReverseOmega;
        else if (plan.right)
            block.type = OrderType::Omega;
        if (plan.left)
            block.left_tail = OpenInterval{plan.p, listed.front()};
        if (plan.right)
            block.right_tail = OpenInterval{listed.back(), plan.q};
        for (std::size_t i = 0; i + 1 < listed.size(); ++i) {
            Component c;
            c.gap = address;
            c.index = row.components.size() + 1;
            c.block = m;
            c.interval = OpenInterval{listed[i], listed[i + 1]};
            block.members.push_back(row.components.size());
            row.components.push_back(std::move(c));
        }
        row.blocks.push_back(std::move(block));
    }
    row.whole = row.isolated_points.empty() && row.accumulation_points.empty() && !row.truncated();
    return row;
}

ComponentTable build_component_table(const GapTree& gt, const ValidatedSet& vs, std::size_t budget)
{
    ComponentTable ct;
    ct.budget = budget;

    auto require_gap = [&](const Rational& x) {
        if (!gt.gap_containing(x))
            throw DepthError("point " + to_string(x) + " of Q lies in no gap of the depth-" +
                             std::to_string(gt.depth) + " tree; increase the depth");
    };
    for (const auto& x : vs.countable.isolated_points)
        require_gap(x);
    for (const auto& s : vs.countable.sequences) {
        for (int side : {1, -1}) {
            if ((side > 0 && !s.has_right_side()) || (side < 0 && !s.has_left_side()))
                continue;
            // the gap that holds the tail of this side
            const Gap* home = nullptr;
            for (const auto& g : gt.gaps) {
                const bool ok = side > 0 ? (g.interval.left <= s.limit && s.limit < g.interval.right)
                                         : (g.interval.left < s.limit && s.limit <= g.interval.right);
                if (ok) {
                    home = &g;
                    break;
                }
            }
            if (!home)
                throw DepthError("accumulation point " + to_string(s.limit) +
                                 " lies in no gap of the depth-" + std::to_string(gt.depth) +
                                 " tree; increase the depth");
            Rational d = s.offset;
            for (;;) {
                const Rational pt = side > 0 ? Rational(s.limit + d) : Rational(s.limit - d);
                if (home->interval.contains(pt))
                    break;
                require_gap(pt);
                d *= s.ratio;
            }
        }
    }
    for (const auto& g : gt.gaps)
        ct.rows.emplace(g.address, enumerate_components(gt, vs, g.address, budget));
    return ct;
}

Location locate(const GapTree& gt, const ComponentTable& ct, const ValidatedSet& vs, const Rational& x)
{
    Location loc;
    loc.membership = membership(vs, x);
    if (loc.membership != Membership::OutsideF) {
        loc.kind = Location::Kind::InF;
        return loc;
    }
    const Gap* g = gt.gap_containing(x);
    if (!g)
        return loc;
    const auto it = ct.rows.find(g->address);
    if (it == ct.rows.end())
        return loc;
    const auto& comps = it->second.components;
    auto c = std::upper_bound(comps.begin(), comps.end(), x,
                              [](const Rational& v, const Component& k) { return v <= k.interval.left; });
    if (c == comps.begin())
        return loc;
    --c;
    if (c->interval.contains(x)) {
        loc.kind = Location::Kind::Component;
        loc.component = c->key();
    }
    return loc;
}

std::vector<ComponentKey> neighbours(const ComponentTable& ct, const ComponentKey& key)
{
    std::vector<ComponentKey> out;
    const Component* self = ct.find(key);
    if (!self)
        return out;
    for (const auto& c : ct.rows.at(key.first).components) {
        if (c.index == self->index)
            continue;
        if (c.interval.right == self->interval.left || c.interval.left == self->interval.right)
            out.push_back(c.key());
    }
    return out;
}

} // namespace cutset
