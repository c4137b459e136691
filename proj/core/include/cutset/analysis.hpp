#pragma once

#include "cutset/evaluator.hpp"
#include "cutset/function_builder.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cutset {

/// Black-box access to f: only the sign and magnitude of f(x) are observed.
using BlackBox = std::function<SignedValue(double)>;

/// Evaluates pf (which must outlive the returned object).
BlackBox black_box(const PiecewiseFunction& pf);
BlackBox black_box(std::function<double(double)> f);

// ---------------------------------------------------------------------------
// Detection

struct DetectOptions
{
    double delta = 1e-4;
    double zeta = 1e-12;
    int samples = 256;   ///< per radius
};

struct Witness
{
    double negative = 0.0;   ///< y with f(y) < 0
    double positive = 0.0;   ///< z with f(z) > 0
};

struct ProbeVerdict
{
    double x = 0.0;
    bool flagged = false;
    std::optional<Witness> witness;
};

struct DetectStats
{
    std::size_t true_positive = 0;    ///< flagged, x in F
    std::size_t near_positive = 0;    ///< flagged, x not in F but within delta of it
    std::size_t false_positive = 0;   ///< flagged, farther than delta from F
    std::size_t false_negative = 0;   ///< x in F, not flagged
    std::size_t true_negative = 0;
};

struct CutsetReport
{
    double delta = 0.0;
    double zeta = 0.0;
    std::vector<ProbeVerdict> probes;   ///< sorted by x
    std::optional<DetectStats> stats;

    [[nodiscard]] std::vector<double> flagged() const;
};

/// Flags x iff |f(x)| <= zeta and both signs occur among samples in (x - r, x + r) ∩ [0,1] for
/// every r in {delta, 2 delta, 4 delta, 8 delta}. Witnesses come from the r = delta scan.
CutsetReport detect_cutting_set(const BlackBox& f, std::vector<double> probes, const DetectOptions& opt = {});

/// Fills report.stats against the exact set F.
void score_detection(CutsetReport& report, const ValidatedSet& vs);

/// Distance from x to F, with exact membership for x itself.
double distance_to_set(const ValidatedSet& vs, double x);

// ---------------------------------------------------------------------------
// Structural verification

enum class ProbeKind { DPoint, IsolatedPoint, AccumulationPoint, SineMidpoint, OffF };

const char* to_string(ProbeKind k);

struct Probe
{
    Rational x;
    ProbeKind kind = ProbeKind::OffF;
};

struct ProbePlan
{
    std::vector<Probe> probes;
    int endpoint_depth = 0;
};

/// Endpoints of basic intervals up to `endpoint_depth` (default depth - 2), the boundary chains
/// I_{0..0}, I_{1..1} to full depth, every materialized x_n and y_m, the midpoint of every
/// support, and the zero crossing of every sine term.
ProbePlan make_probe_plan(const PiecewiseFunction& pf, int endpoint_depth = -1);

enum class Verdict { Certified, Failed, Uncertified };

const char* to_string(Verdict v);

struct ProbeCertificate
{
    Rational x;
    ProbeKind kind = ProbeKind::OffF;
    bool expected_in_e = false;     ///< x ∈ F, or x is the zero crossing of a sine term
    Verdict verdict = Verdict::Uncertified;
    double truncation_scale = 0.0;  ///< radii at or below this were not examined
    int radii_checked = 0;
    std::optional<std::pair<std::size_t, std::size_t>> witness_terms;  ///< (negative, positive) at the smallest radius
    std::string note;
};

struct GroundTruthStats
{
    std::size_t true_positive = 0;
    std::size_t false_positive = 0;
    std::size_t true_negative = 0;
    std::size_t false_negative = 0;
    std::size_t uncertified = 0;
};

struct GroundTruthReport
{
    std::vector<ProbeCertificate> probes;
    GroundTruthStats stats;
    int depth = 0;

    /// No false positives or negatives.
    [[nodiscard]] bool agreement() const { return stats.false_positive == 0 && stats.false_negative == 0; }
};

/// For F-points: opposite-sign terms meeting (x - r, x + r) for every dyadic r above the
/// truncation scale. For off-F points: f(x) != 0.
GroundTruthReport verify_ground_truth(const PiecewiseFunction& pf, const ValidatedSet& vs, const ProbePlan& plan);
GroundTruthReport verify_ground_truth(const PiecewiseFunction& pf);

/// Every shared endpoint of two terms carries opposite signs.
bool sign_alternation_holds(const PiecewiseFunction& pf, std::size_t* shared_endpoints = nullptr);

// ---------------------------------------------------------------------------
// Variation

enum class VariationStatus { Converged, DivergesPastBound, RefinementExhausted };

const char* to_string(VariationStatus s);

struct VariationResult
{
    double left = 0.0;
    double right = 1.0;
    double value = 0.0;             ///< converged value or lower bound
    VariationStatus status = VariationStatus::Converged;
    int refinement_depth = 0;
    std::vector<double> partial;    ///< partition sums at each refinement (non-decreasing)
};

/// Dyadic partition sums on [a, b] until the increment is below tol or a sum exceeds bound.
VariationResult variation(const std::function<double(double)>& f, double a, double b, double tol = 1e-10,
                          double bound = 1e3, int max_depth = 22);

/// Variation of the kernel on [0,1] at unit amplitude: 2 e^-8 for the bump, 4 for a full sine
/// period, and a refined value for bump x sine.
double unit_variation(Kernel k);

double term_variation(const SignedBumpTerm& t);

/// Sum of term variations in support order; DivergesPastBound once the running sum exceeds bound.
VariationResult variation(const PiecewiseFunction& pf, double bound = 1e3);

struct VariationCertificate
{
    double bound = 1e3;
    std::optional<int> level;              ///< first removal step whose cumulative sum exceeds bound
    std::vector<double> cumulative;        ///< cumulative[n-1] = sum over steps <= n
    double per_term_factor = 4.0;          ///< Var of c sin(2 pi u) over one period, per unit c
    std::string note;
};

/// Level-wise partial sums sum_{n <= L} gaps(n) * 4 c_n for the continuous sine construction,
/// with gaps(n) = 2^(n-1) (+ extra_gaps at n = 1).
VariationCertificate sine_variation_certificate(const CoefficientRule& rule, double bound = 1e3,
                                                int max_level = 4096, int extra_gaps = 0);

// ---------------------------------------------------------------------------
// Conditions

struct TailRow
{
    int order = 0;
    std::vector<std::pair<double, std::optional<long long>>> n_eps;  ///< (eps, N(eps))
    double at_truncation = 0.0;
    bool pass = false;
};

struct IntervalHit
{
    std::string address;
    int level = 0;
    std::size_t negative = 0;
    std::size_t positive = 0;
};

struct ConditionReport
{
    int smooth_order = 0;
    bool cond_i = false;
    std::vector<TailRow> tails;
    double truncation_bound = 0.0;

    bool cond_ii = false;
    int scan_depth = 0;
    std::vector<IntervalHit> hits;
    std::size_t minus_terms = 0;   ///< |M-|: terms attaining negative values
    std::size_t plus_terms = 0;    ///< |M+|

    std::optional<VariationCertificate> cond_iii;
    std::vector<std::string> notes;
};

inline const std::vector<double> kConditionEpsilons{1e-2, 1e-4, 1e-6};

/// (i) tail bounds for orders 0..P with N(eps); (ii) every basic interval of level <= depth - 2
/// holds a negative-attaining and a positive-attaining term; (iii) for the sine construction,
/// the variation certificate.
ConditionReport check_conditions(const PiecewiseFunction& pf, const ValidatedSet& vs, int smooth_order,
                                 double variation_bound = 1e3);

/// Whether the term takes negative (sign < 0) or positive (sign > 0) values somewhere.
bool term_attains(const SignedBumpTerm& t, int sign);

// ---------------------------------------------------------------------------
// ZC_alpha

struct ZcReport
{
    double alpha = 0.0;
    bool zero_exists = false;
    bool interior_empty = false;
    double longest_flat = 0.0;                         ///< longest run of exact zeros on the grid
    double min_flat = 0.0;
    std::vector<std::pair<double, double>> fractions;  ///< (zeta, fraction of grid with |f| <= zeta)
    double measure_lower = 0.0;                        ///< exact-zero fraction
    double measure_upper = 0.0;                        ///< fraction at the largest zeta
    std::optional<MeasureBracket> structural;          ///< from the zero set, when known
    bool consistent = false;
    std::string verdict;                               ///< always labelled heuristic
};

inline const std::vector<double> kDefaultZetaSchedule{1e-3, 1e-6, 1e-9, 1e-12};

ZcReport zc_alpha_probe(const BlackBox& f, double alpha, std::size_t grid = 1 << 16,
                        std::vector<double> zetas = kDefaultZetaSchedule, double min_flat = 1e-3);
ZcReport zc_alpha_probe(const PiecewiseFunction& pf, double alpha, std::size_t grid = 1 << 16,
                        std::vector<double> zetas = kDefaultZetaSchedule, double min_flat = 1e-3);

// ---------------------------------------------------------------------------
// Structural properties of the detected set at resolution

struct ResolutionChecks
{
    bool closed = false;
    bool nowhere_dense = false;
    bool endpoint_accumulation = false;
    double max_distance = 0.0;     ///< farthest flagged or limit point from the expected set
    double longest_run = 0.0;      ///< span of the longest run of consecutive flagged probes
    std::string note;

    [[nodiscard]] bool all() const { return closed && nowhere_dense && endpoint_accumulation; }
};

/// Checks on the flagged set of `report`. The expected set is F plus the zero crossings of sine terms.
ResolutionChecks resolution_checks(const CutsetReport& report, const PiecewiseFunction& pf);

/// Distance to F ∪ {zero crossings of sine terms}.
double distance_to_expected(const PiecewiseFunction& pf, double x);

} // namespace cutset
