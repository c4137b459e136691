#pragma once

#include <mutex>
#include <vector>

namespace cutset {

inline constexpr int kDefaultMaxOrder = 16;

/// Current derivative-order cap. Starts at CUTSET_MAX_ORDER when that variable is set, else 16.
int max_order();
void set_max_order(int p);

/// h(x) = exp(-x^-2) exp(-(x-1)^-2) on (0,1), 0 elsewhere.
double h_eval(double x);

/// Derivatives h(x), h'(x), ..., h^(p)(x).
struct Jet
{
    int order = 0;
    std::vector<double> v;
};

/// Taylor coefficients of h at x with the common factor kept as a logarithm:
/// h^(k)(x) / k! = taylor[k] * exp(log_scale). `zero` marks points where h vanishes to all orders
/// or the scale underflows.
struct ScaledJet
{
    std::vector<double> taylor;
    double log_scale = 0.0;
    bool zero = true;
};

/// Exponent below which h and every derivative are flushed to 0. Far below anything a double
/// holds, so only the log-space representation reaches it.
inline constexpr double kLogFloor = -1.0e250;

ScaledJet h_scaled_jet(double x, int p);

/// Throws OrderError when p > max_order().
Jet h_jet(double x, int p);

struct SupNorm
{
    double value = 0.0;    ///< estimate of sup |h^(k)|
    double argmax = 0.5;
    double bound = 0.0;    ///< value inflated by the refinement tolerance
};

inline constexpr double kSupRelTol = 1e-6;

/// Grid search over 4096 points followed by zoom refinement until the relative change is < 1e-6.
SupNorm h_sup_norm_uncached(int k);

/// sup_{x in (0,1]} e^{-1/x} / x^p: e^{-1} for p = 0, p^p e^{-p} at x = 1/p otherwise.
double exp_power_sup(int p);

/// Grid estimate of the same supremum, used as a cross-check.
double exp_power_sup_grid(int p, int points = 1 << 16);

enum class EnvelopeVariant { Main, Sine };

const char* to_string(EnvelopeVariant v);

/// Cache of sup norms and envelope constants. Entries are computed on first use under a lock.
class EnvelopeTable
{
public:
    static EnvelopeTable& global();

    SupNorm sup_norm(int k);
    /// Main: ||h^(p)|| * sup e^{-1/x}/x^p. Sine: (2 pi)^p sum_k C(p,k) (2 pi)^-k ||h^(k)||.
    /// Built from the inflated norm bounds.
    double envelope(int p, EnvelopeVariant variant);

private:
    std::mutex mutex_;
    std::vector<SupNorm> norms_;
    std::vector<bool> ready_;
};

SupNorm h_sup_norm(int k);
double h_norm_bound(int k);
double envelope_constant(int p, EnvelopeVariant variant);

} // namespace cutset
