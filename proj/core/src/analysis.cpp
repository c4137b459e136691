#include "cutset/analysis.hpp"

#include "cutset/errors.hpp"
#include "cutset/gap_tree.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cutset {

BlackBox black_box(const PiecewiseFunction& pf)
{
    return [&pf](double x) { return eval_signed(pf, x, 0); };
}

BlackBox black_box(std::function<double(double)> f)
{
    return [f = std::move(f)](double x) {
        const double v = f(x);
        if (v == 0.0 || !std::isfinite(v))
            return SignedValue{};
        return SignedValue{v > 0 ? 1 : -1, std::log(std::abs(v))};
    };
}

// ---------------------------------------------------------------------------
// Detection

std::vector<double> CutsetReport::flagged() const
{
    std::vector<double> out;
    for (const auto& p : probes)
        if (p.flagged)
            out.push_back(p.x);
    return out;
}

namespace {

bool small(const SignedValue& v, double zeta)
{
    if (v.zero())
        return true;
    return zeta > 0.0 && v.log_abs <= std::log(zeta);
}

std::optional<Witness> scan_both_signs(const BlackBox& f, double x, double r, int samples)
{
    std::optional<double> neg;
    std::optional<double> pos;
    for (int j = 0; j < samples; ++j) {
        const double t = x - r + 2.0 * r * (j + 0.5) / samples;
        if (t < 0.0 || t > 1.0)
            continue;
        const SignedValue v = f(t);
        if (v.sign < 0 && !neg)
            neg = t;
        else if (v.sign > 0 && !pos)
            pos = t;
        if (neg && pos)
            return Witness{*neg, *pos};
    }
    return std::nullopt;
}

} // namespace

CutsetReport detect_cutting_set(const BlackBox& f, std::vector<double> probes, const DetectOptions& opt)
{
    if (!(opt.delta > 0.0))
        throw ValidationError("detection radius delta must be positive");
    if (opt.zeta < 0.0)
        throw ValidationError("zero tolerance zeta must be non-negative");
    if (opt.samples < 2)
        throw ValidationError("at least two samples per radius are needed");
    CutsetReport rep;
    rep.delta = opt.delta;
    rep.zeta = opt.zeta;
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    for (double x : probes) {
        ProbeVerdict pv;
        pv.x = x;
        if (small(f(x), opt.zeta)) {
            bool all = true;
            for (int m = 0; m < 4 && all; ++m) {
                const auto w = scan_both_signs(f, x, opt.delta * std::ldexp(1.0, m), opt.samples);
                if (!w)
                    all = false;
                else if (m == 0)
                    pv.witness = w;
            }
            pv.flagged = all;
            if (!all)
                pv.witness.reset();
        }
        rep.probes.push_back(pv);
    }
    return rep;
}

namespace {

// Level whose basic intervals are shorter than any distance a double can resolve.
int resolution_depth(const ValidatedSet& vs)
{
    int depth = 0;
    for (const auto& part : vs.perfect) {
        int n = 0;
        while (n < part.max_level() && to_double(part.basic_length(n)) > 1e-18)
            ++n;
        depth = std::max(depth, n);
    }
    return depth;
}

} // namespace

double distance_to_set(const ValidatedSet& vs, double x)
{
    const Rational xr = from_double(x);
    if (xr >= 0 && xr <= 1) {
        // exact membership may descend hundreds of levels; stop once the interval is below resolution
        const Membership m = vs.perfect_empty() ? membership(vs, xr) : membership(vs, xr, resolution_depth(vs));
        if (m != Membership::OutsideF)
            return 0.0;
    }
    double best = std::numeric_limits<double>::infinity();
    if (!vs.perfect_empty()) {
        if (auto iv = complementary_interval(vs, xr)) {
            if (iv->left >= 0)
                best = std::min(best, x - to_double(iv->left));
            if (iv->right <= 1)
                best = std::min(best, to_double(iv->right) - x);
        } else {
            return 0.0;
        }
    }
    for (const auto& p : vs.countable.isolated_points)
        best = std::min(best, std::abs(x - to_double(p)));
    for (const auto& s : vs.countable.sequences) {
        const double y = to_double(s.limit);
        best = std::min(best, std::abs(x - y));
        const double ratio = to_double(s.ratio);
        for (int side : {1, -1}) {
            if ((side > 0 && !s.has_right_side()) || (side < 0 && !s.has_left_side()))
                continue;
            double d = to_double(s.offset);
            for (int k = 0; k < 100000 && d > 1e-300; ++k, d *= ratio) {
                best = std::min(best, std::abs(x - (y + side * d)));
                if (d < std::abs(x - y) / 4 && d < best)
                    break;
            }
        }
    }
    return std::max(best, 0.0);
}

void score_detection(CutsetReport& report, const ValidatedSet& vs)
{
    DetectStats st;
    for (const auto& p : report.probes) {
        const double d = distance_to_set(vs, p.x);
        if (p.flagged) {
            if (d == 0.0)
                ++st.true_positive;
            else if (d <= report.delta)
                ++st.near_positive;
            else
                ++st.false_positive;
        } else if (d == 0.0) {
            ++st.false_negative;
        } else {
            ++st.true_negative;
        }
    }
    report.stats = st;
}

// ---------------------------------------------------------------------------
// Structural verification

const char* to_string(ProbeKind k)
{
    switch (k) {
    case ProbeKind::DPoint: return "D";
    case ProbeKind::IsolatedPoint: return "isolated";
    case ProbeKind::AccumulationPoint: return "accumulation";
    case ProbeKind::SineMidpoint: return "sine_zero";
    case ProbeKind::OffF: return "off_F";
    }
    return "?";
}

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::Failed: return "failed";
    case Verdict::Uncertified: return "uncertified";
    }
    return "?";
}

bool term_attains(const SignedBumpTerm& t, int sign)
{
    if (t.kernel == Kernel::Bump)
        return t.sign == sign;
    return true;  // a full sine period takes both signs
}

namespace {

bool is_sine(Kernel k)
{
    return k != Kernel::Bump;
}

struct Structures
{
    std::optional<GapTree> gt;
    std::optional<ComponentTable> ct;
    std::vector<std::pair<Rational, Rational>> truncation;  ///< closed regions, sorted by left end
};

Structures rebuild(const PiecewiseFunction& pf, const ValidatedSet& vs)
{
    Structures st;
    if (pf.construction == Construction::Zero || pf.depth < 1)
        return st;
    st.gt = build_gap_tree(vs, pf.depth);
    st.ct = build_component_table(*st.gt, vs, pf.budget);
    for (const auto& [s, iv] : st.gt->basic)
        if (static_cast<int>(s.size()) == pf.depth)
            st.truncation.emplace_back(iv.left, iv.right);
    for (const auto& [_, row] : st.ct->rows)
        for (const auto& b : row.blocks) {
            if (b.left_tail)
                st.truncation.emplace_back(b.left_tail->left, b.left_tail->right);
            if (b.right_tail)
                st.truncation.emplace_back(b.right_tail->left, b.right_tail->right);
        }
    std::sort(st.truncation.begin(), st.truncation.end());
    return st;
}

bool meets_truncation(const Structures& st, const Rational& lo, const Rational& hi)
{
    // first region whose left end is >= hi cannot meet (lo, hi); check the ones before it
    auto it = std::lower_bound(st.truncation.begin(), st.truncation.end(), hi,
                               [](const std::pair<Rational, Rational>& r, const Rational& v) { return r.first < v; });
    // regions are disjoint and sorted, so right ends are sorted too; only the last one before `it` matters
    if (it == st.truncation.begin())
        return false;
    --it;
    return it->second > lo;
}

/// Opposite-sign terms meeting the open ball (lo, hi): (index attaining < 0, index attaining > 0).
std::optional<std::pair<std::size_t, std::size_t>> find_witness(const PiecewiseFunction& pf, const Rational& lo,
                                                               const Rational& hi)
{
    const double lod = to_double(lo);
    auto it = std::lower_bound(pf.terms.begin(), pf.terms.end(), lod,
                               [](const SignedBumpTerm& t, double v) { return t.b < v; });
    std::optional<std::size_t> neg;
    std::optional<std::size_t> pos;
    for (; it != pf.terms.end(); ++it) {
        const auto& t = *it;
        if (!(t.support.left < hi))
            break;
        if (!(t.support.right > lo))
            continue;
        const auto idx = static_cast<std::size_t>(it - pf.terms.begin());
        if (!is_sine(t.kernel)) {
            (t.sign < 0 ? neg : pos) = idx;
        } else {
            const Rational mid = t.support.midpoint();
            const bool first = lo < mid && hi > t.support.left;    // sin > 0 on the first half
            const bool second = hi > mid && lo < t.support.right;
            if (first)
                (t.sign > 0 ? pos : neg) = idx;
            if (second)
                (t.sign > 0 ? neg : pos) = idx;
        }
        if (neg && pos)
            return std::make_pair(*neg, *pos);
    }
    return std::nullopt;
}

Rational dyadic(int j)
{
    Rational r(1);
    for (int i = 0; i < j; ++i)
        r /= 2;
    return r;
}

constexpr int kMaxDyadic = 40;

/// Level-(depth-2) basic interval containing the D-point x.
Rational d_point_scale(const GapTree& gt, const Rational& x, int level)
{
    std::string s;
    while (static_cast<int>(s.size()) < level) {
        const Gap* g = gt.find(s);
        if (!g)
            break;
        s += x <= g->interval.left ? '0' : '1';
    }
    const auto it = gt.basic.find(s);
    if (it == gt.basic.end())
        throw InvariantViolation("basic interval '" + s + "' missing");
    return it->second.length();
}

} // namespace

ProbePlan make_probe_plan(const PiecewiseFunction& pf, int endpoint_depth)
{
    ProbePlan plan;
    const ValidatedSet& vs = pf.zero_set;
    plan.endpoint_depth = endpoint_depth >= 0 ? endpoint_depth : std::max(pf.depth - 2, 0);
    std::set<Rational> seen;
    auto add = [&](const Rational& x, ProbeKind k) {
        if (x < 0 || x > 1)
            return;
        if (seen.insert(x).second)
            plan.probes.push_back(Probe{x, k});
    };

    if (pf.construction != Construction::Zero && pf.depth >= 1 && !vs.perfect_empty()) {
        const GapTree gt = build_gap_tree(vs, pf.depth);
        for (const auto& [s, iv] : gt.basic) {
            if (static_cast<int>(s.size()) <= plan.endpoint_depth) {
                add(iv.left, ProbeKind::DPoint);
                add(iv.right, ProbeKind::DPoint);
            }
        }
        for (int k = 1; k <= pf.depth; ++k) {
            add(gt.basic.at(std::string(static_cast<std::size_t>(k), '0')).right, ProbeKind::DPoint);
            add(gt.basic.at(std::string(static_cast<std::size_t>(k), '1')).left, ProbeKind::DPoint);
        }
        if (pf.construction == Construction::Prescribed) {
            const ComponentTable ct = build_component_table(gt, vs, pf.budget);
            for (const auto& [_, row] : ct.rows)
                for (const auto& x : row.isolated_points)
                    add(x, ProbeKind::IsolatedPoint);
        }
    } else {
        for (const auto& x : vs.countable.isolated_points)
            add(x, ProbeKind::IsolatedPoint);
    }
    if (pf.construction == Construction::Prescribed && vs.perfect_empty() && pf.depth >= 1) {
        const GapTree gt = build_gap_tree(vs, pf.depth);
        const ComponentTable ct = build_component_table(gt, vs, pf.budget);
        for (const auto& [_, row] : ct.rows)
            for (const auto& x : row.isolated_points)
                add(x, ProbeKind::IsolatedPoint);
    }
    for (const auto& y : vs.countable.accumulation_points)
        add(y, ProbeKind::AccumulationPoint);
    for (const auto& t : pf.terms) {
        const Rational w = t.support.length();
        add(t.support.midpoint(), is_sine(t.kernel) ? ProbeKind::SineMidpoint : ProbeKind::OffF);
        add(t.support.left + w / 4, ProbeKind::OffF);
        add(t.support.left + 3 * w / 4, ProbeKind::OffF);
    }
    std::sort(plan.probes.begin(), plan.probes.end(), [](const Probe& a, const Probe& b) { return a.x < b.x; });
    return plan;
}

GroundTruthReport verify_ground_truth(const PiecewiseFunction& pf, const ValidatedSet& vs, const ProbePlan& plan)
{
    GroundTruthReport rep;
    rep.depth = pf.depth;
    const Structures st = rebuild(pf, vs);
    const int d_level = std::max(pf.depth - 2, 0);

    for (const auto& probe : plan.probes) {
        ProbeCertificate pc;
        pc.x = probe.x;
        pc.kind = probe.kind;
        const Membership m = membership(vs, probe.x);
        const bool in_f = m != Membership::OutsideF;
        const auto term = pf.term_at(probe.x);
        const bool sine_zero = term && is_sine(pf.terms[*term].kernel) &&
                               pf.terms[*term].support.midpoint() == probe.x;
        pc.expected_in_e = in_f || sine_zero;

        if (pc.expected_in_e) {
            if (term && !sine_zero) {
                pc.verdict = Verdict::Failed;
                pc.note = "point of F inside a term support";
            } else if (m == Membership::InD) {
                if (!st.gt) {
                    pc.verdict = Verdict::Uncertified;
                    pc.note = "no gap tree";
                } else {
                    const Rational rho = d_point_scale(*st.gt, probe.x, d_level);
                    pc.truncation_scale = to_double(rho);
                    pc.verdict = Verdict::Certified;
                    for (int j = 1; j <= kMaxDyadic; ++j) {
                        const Rational r = dyadic(j);
                        if (!(r > rho))
                            break;
                        const auto w = find_witness(pf, probe.x - r, probe.x + r);
                        if (!w) {
                            pc.verdict = Verdict::Failed;
                            pc.note = "no opposite-sign pair within radius 2^-" + std::to_string(j);
                            break;
                        }
                        pc.witness_terms = w;
                        ++pc.radii_checked;
                    }
                    if (pc.verdict == Verdict::Certified && pc.radii_checked == 0) {
                        pc.verdict = Verdict::Uncertified;
                        pc.note = "truncation scale above every checked radius";
                    }
                }
            } else {
                // x_n, y_m and sine zero crossings: every radius until truncation intervenes
                pc.verdict = Verdict::Certified;
                pc.truncation_scale = std::ldexp(1.0, -kMaxDyadic);
                for (int j = 1; j <= kMaxDyadic; ++j) {
                    const Rational r = dyadic(j);
                    const Rational lo = probe.x - r;
                    const Rational hi = probe.x + r;
                    const auto w = find_witness(pf, lo, hi);
                    if (w) {
                        pc.witness_terms = w;
                        ++pc.radii_checked;
                        continue;
                    }
                    if (meets_truncation(st, lo, hi)) {
                        pc.truncation_scale = std::ldexp(1.0, -j);
                        pc.note = "truncated below radius 2^-" + std::to_string(j);
                    } else {
                        pc.verdict = Verdict::Failed;
                        pc.note = "no opposite-sign pair within radius 2^-" + std::to_string(j);
                    }
                    break;
                }
                if (pc.verdict == Verdict::Certified && pc.radii_checked == 0)
                    pc.verdict = Verdict::Uncertified;
            }
        } else {
            const EvalResult r = eval(pf, probe.x, 0);
            if (!r.signed_value.zero()) {
                pc.verdict = Verdict::Certified;
                pc.note = "f(x) != 0";
            } else if (term) {
                pc.verdict = Verdict::Failed;
                pc.note = "f vanishes inside a term support";
            } else {
                pc.verdict = Verdict::Uncertified;
                pc.note = "outside every materialized support (truncation)";
            }
        }

        switch (pc.verdict) {
        case Verdict::Certified:
            ++(pc.expected_in_e ? rep.stats.true_positive : rep.stats.true_negative);
            break;
        case Verdict::Failed:
            ++(pc.expected_in_e ? rep.stats.false_negative : rep.stats.false_positive);
            break;
        case Verdict::Uncertified:
            ++rep.stats.uncertified;
            break;
        }
        rep.probes.push_back(std::move(pc));
    }
    return rep;
}

GroundTruthReport verify_ground_truth(const PiecewiseFunction& pf)
{
    return verify_ground_truth(pf, pf.zero_set, make_probe_plan(pf));
}

bool sign_alternation_holds(const PiecewiseFunction& pf, std::size_t* shared_endpoints)
{
    std::size_t shared = 0;
    bool ok = true;
    for (std::size_t i = 1; i < pf.terms.size(); ++i) {
        const auto& a = pf.terms[i - 1];
        const auto& b = pf.terms[i];
        if (a.support.right != b.support.left)
            continue;
        ++shared;
        if (a.sign == b.sign)
            ok = false;
    }
    if (shared_endpoints)
        *shared_endpoints = shared;
    return ok;
}

// ---------------------------------------------------------------------------
// Conditions

namespace {

std::optional<long long> n_for_eps(const PiecewiseFunction& pf, int p, double eps)
{
    auto tail = [&](long long n) { return tail_bound(pf, n, p); };
    if (tail(0) < eps)
        return 0;
    constexpr long long cap = 1LL << 62;
    long long hi = 1;
    while (hi < cap && !(tail(hi) < eps))
        hi *= 2;
    if (!(tail(hi) < eps))
        return std::nullopt;
    long long lo = hi / 2;  // tail(lo) >= eps
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        if (tail(mid) < eps)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

} // namespace

ConditionReport check_conditions(const PiecewiseFunction& pf, const ValidatedSet& vs, int smooth_order,
                                 double variation_bound)
{
    ConditionReport rep;
    rep.smooth_order = smooth_order;

    rep.cond_i = true;
    for (int p = 0; p <= smooth_order; ++p) {
        TailRow row;
        row.order = p;
        row.pass = true;
        for (double eps : kConditionEpsilons) {
            const auto n = n_for_eps(pf, p, eps);
            row.n_eps.emplace_back(eps, n);
            if (!n)
                row.pass = false;
        }
        row.at_truncation = tail_bound(pf, truncation_level(pf), p);
        rep.cond_i = rep.cond_i && row.pass;
        rep.tails.push_back(std::move(row));
    }
    if (pf.construction == Construction::Prescribed)
        rep.truncation_bound = truncation_bound(pf, smooth_order);
    if (pf.rule) {
        const E1Report e1 = check_e1(*pf.rule);
        if (!e1.note.empty())
            rep.notes.push_back(e1.note);
    }

    for (const auto& t : pf.terms) {
        if (term_attains(t, -1))
            ++rep.minus_terms;
        if (term_attains(t, 1))
            ++rep.plus_terms;
    }

    rep.cond_ii = true;
    rep.scan_depth = std::max(pf.depth - 2, 0);
    if (vs.perfect_empty() || pf.depth < 1) {
        rep.notes.push_back("D is empty: condition (ii) holds vacuously");
    } else {
        const GapTree gt = build_gap_tree(vs, pf.depth);
        for (const auto& [s, iv] : gt.basic) {
            const int level = static_cast<int>(s.size());
            if (level > rep.scan_depth)
                continue;
            IntervalHit hit;
            hit.address = s;
            hit.level = level;
            const double lo = to_double(iv.left);
            const double hi = to_double(iv.right);
            auto it = std::lower_bound(pf.terms.begin(), pf.terms.end(), lo,
                                       [](const SignedBumpTerm& t, double v) { return t.a < v; });
            for (; it != pf.terms.end() && it->a < hi; ++it) {
                const double mid = it->a + it->width / 2;
                if (!(mid > lo && mid < hi))
                    continue;
                if (term_attains(*it, -1))
                    ++hit.negative;
                if (term_attains(*it, 1))
                    ++hit.positive;
            }
            if (hit.negative == 0 || hit.positive == 0)
                rep.cond_ii = false;
            rep.hits.push_back(std::move(hit));
        }
    }

    if (pf.construction == Construction::SineC0 && pf.rule) {
        int extra = 0;
        if (auto h = vs.hull) {
            extra += h->left > 0 ? 1 : 0;
            extra += h->right < 1 ? 1 : 0;
        }
        rep.cond_iii = sine_variation_certificate(*pf.rule, variation_bound, 4096, extra);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// ZC_alpha

namespace {

/// `nonzero_between(a, b)`, when given, reports that f is known to be nonzero somewhere in (a, b);
/// such a pair of adjacent grid zeros does not extend a flat run.
ZcReport zc_core(const BlackBox& f, double alpha, std::size_t grid, std::vector<double> zetas, double min_flat,
                 const std::function<bool(double, double)>& nonzero_between)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ValidationError("alpha must lie in (0,1)");
    if (grid < 2)
        throw ValidationError("grid must have at least two intervals");
    ZcReport rep;
    rep.alpha = alpha;
    rep.min_flat = min_flat;
    std::sort(zetas.begin(), zetas.end(), std::greater<>());

    std::vector<std::size_t> counts(zetas.size(), 0);
    std::size_t zeros = 0;
    std::size_t run = 0;
    std::size_t longest = 0;
    int prev_sign = 0;
    for (std::size_t i = 0; i <= grid; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(grid);
        const SignedValue v = f(x);
        if (v.zero()) {
            ++zeros;
            if (run > 0 && nonzero_between &&
                nonzero_between(static_cast<double>(i - 1) / static_cast<double>(grid), x))
                run = 0;
            ++run;
            longest = std::max(longest, run);
            rep.zero_exists = true;
        } else {
            run = 0;
            if (prev_sign != 0 && v.sign != prev_sign)
                rep.zero_exists = true;
            prev_sign = v.sign;
        }
        for (std::size_t z = 0; z < zetas.size(); ++z)
            if (v.zero() || v.log_abs <= std::log(zetas[z]))
                ++counts[z];
    }
    const double total = static_cast<double>(grid + 1);
    rep.longest_flat = longest > 1 ? static_cast<double>(longest - 1) / static_cast<double>(grid) : 0.0;
    rep.interior_empty = rep.longest_flat < min_flat;
    rep.measure_lower = static_cast<double>(zeros) / total;
    for (std::size_t z = 0; z < zetas.size(); ++z)
        rep.fractions.emplace_back(zetas[z], static_cast<double>(counts[z]) / total);
    rep.measure_upper = rep.fractions.empty() ? rep.measure_lower : rep.fractions.front().second;

    rep.consistent = rep.zero_exists && rep.interior_empty && rep.measure_lower >= alpha;
    if (rep.consistent)
        rep.verdict = "heuristic: consistent with ZC_alpha";
    else if (!rep.zero_exists)
        rep.verdict = "heuristic: no zero found on the grid";
    else if (!rep.interior_empty)
        rep.verdict = "heuristic: zero set contains a flat interval at resolution";
    else
        rep.verdict = "heuristic: zero-set measure estimate below alpha";
    return rep;
}

} // namespace

ZcReport zc_alpha_probe(const BlackBox& f, double alpha, std::size_t grid, std::vector<double> zetas,
                        double min_flat)
{
    return zc_core(f, alpha, grid, std::move(zetas), min_flat, {});
}

ZcReport zc_alpha_probe(const PiecewiseFunction& pf, double alpha, std::size_t grid, std::vector<double> zetas,
                        double min_flat)
{
    auto support_between = [&pf](double a, double b) {
        auto it = std::lower_bound(pf.terms.begin(), pf.terms.end(), a,
                                   [](const SignedBumpTerm& t, double v) { return t.b <= v; });
        return it != pf.terms.end() && it->a < b;
    };
    ZcReport rep = zc_core(black_box(pf), alpha, grid, std::move(zetas), min_flat, support_between);
    if (!pf.zero_set.perfect_empty() && pf.depth >= 1) {
        rep.structural = measure(pf.zero_set, pf.depth);
        rep.consistent = rep.zero_exists && rep.interior_empty && to_double(rep.structural->lower) >= alpha;
        if (rep.consistent)
            rep.verdict = "heuristic: consistent with ZC_alpha (structural measure bracket)";
        else if (rep.zero_exists && rep.interior_empty)
            rep.verdict = "heuristic: structural measure bracket below alpha";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Structural properties of the detected set at resolution

double distance_to_expected(const PiecewiseFunction& pf, double x)
{
    double best = distance_to_set(pf.zero_set, x);
    for (const auto& t : pf.terms)
        if (is_sine(t.kernel))
            best = std::min(best, std::abs(x - (t.a + t.width / 2)));
    return best;
}

ResolutionChecks resolution_checks(const CutsetReport& report, const PiecewiseFunction& pf)
{
    ResolutionChecks rc;
    const double delta = report.delta;
    const auto flagged = report.flagged();

    for (std::size_t i = 0; i < flagged.size(); ++i) {
        rc.max_distance = std::max(rc.max_distance, distance_to_expected(pf, flagged[i]));
        if (i > 0 && flagged[i] - flagged[i - 1] < delta)
            rc.max_distance =
                std::max(rc.max_distance, distance_to_expected(pf, (flagged[i] + flagged[i - 1]) / 2));
    }
    rc.closed = rc.max_distance <= delta;

    double run_start = 0.0;
    bool in_run = false;
    for (const auto& p : report.probes) {
        if (p.flagged) {
            if (!in_run) {
                run_start = p.x;
                in_run = true;
            }
            rc.longest_run = std::max(rc.longest_run, p.x - run_start);
        } else {
            in_run = false;
        }
    }
    rc.nowhere_dense = rc.longest_run <= 4 * delta;

    rc.endpoint_accumulation = true;
    const bool zero_flagged = !flagged.empty() && flagged.front() == 0.0;
    const bool one_flagged = !flagged.empty() && flagged.back() == 1.0;
    if (zero_flagged) {
        const bool other = flagged.size() > 1 && flagged[1] <= delta;
        rc.endpoint_accumulation = rc.endpoint_accumulation && other;
        if (!other)
            rc.note += "0 is flagged without another flagged point within delta; ";
    }
    if (one_flagged) {
        const bool other = flagged.size() > 1 && flagged[flagged.size() - 2] >= 1.0 - delta;
        rc.endpoint_accumulation = rc.endpoint_accumulation && other;
        if (!other)
            rc.note += "1 is flagged without another flagged point within delta; ";
    }
    if (!zero_flagged && !one_flagged)
        rc.note += "neither endpoint flagged; ";
    return rc;
}

} // namespace cutset
