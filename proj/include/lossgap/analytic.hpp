#pragma once

#include <optional>
#include <vector>

namespace lossgap {

// Problem parameters of the symmetric Gaussian mixture: x_j ~ N(y*mu, sigma^2)
// per coordinate, labels y in {-1,+1}, linear models bounded by |theta_j| <= gamma.
struct GaussianSpec {
    int d;
    double mu;
    double sigma;
    double gamma;

    GaussianSpec(int d, double mu, double sigma, double gamma);
};

// One point of a loss-gap curve; empirical fields are filled by Monte Carlo runs.
struct GapPoint {
    double n = 0.0;
    double eps = 0.0;
    double analytic_gap = 0.0;
    std::optional<double> empirical_mean;
    std::optional<double> empirical_stderr;
    std::optional<long> trials;
};

using GapCurve = std::vector<GapPoint>;

enum class EpsRegimeKind { DecreasingInEps, IncreasingInEps, AlwaysDecreasing };

struct EpsRegime {
    EpsRegimeKind kind;
    std::optional<double> threshold;  // present iff 0 < eps < mu
};

enum class GapOrdering { RobGreater, StdGreater, Equal };

struct RobRoot {
    double n0;
    double bracket_lo;
    double bracket_hi;
};

struct RobMinimum {
    double n1;
    double value;
};

// Expected test-minus-train loss gap of the exact standard ERM solution:
//   d * gamma * sigma * sqrt(2/(n*pi)) * exp(-n*mu^2 / (2*sigma^2))
double loss_gap_std(const GaussianSpec& spec, double n);

// Robust counterpart:
//   d*gamma*sigma*sqrt(2/(n*pi)) *
//     (exp(-n*(eps+mu)^2/(2s^2)) + exp(-n*(eps-mu)^2/(2s^2)) - exp(-n*mu^2/(2s^2)))
// At eps = 0 this evaluates bit-identically to loss_gap_std.
double loss_gap_rob(const GaussianSpec& spec, double n, double eps);

// Analytic d/dn of loss_gap_std; strictly negative for all n > 0.
double dstd_dn(const GaussianSpec& spec, double n);

// Analytic d/deps of loss_gap_rob.
double drob_deps(const GaussianSpec& spec, double n, double eps);

// Monotonicity of the robust gap in eps at the queried (n, eps).
// For 0 < eps < mu the threshold n* = (sigma^2/(2*mu*eps)) * log((mu+eps)/(mu-eps))
// separates the decreasing (n < n*) and increasing (n > n*) regimes.
// For mu <= eps < 2*mu the gap is decreasing in eps for every n (the eps = mu
// boundary, where the threshold formula is singular, is folded into this case).
// For eps >= 2*mu the reported regime is the evaluated sign of drob_deps.
EpsRegime eps_regime(const GaussianSpec& spec, double n, double eps);

// Root of the robust gap in n. Absent for 0 <= eps <= 2*mu (the gap is positive
// for every finite n). For eps > 2*mu, the unique root is bracketed by
// (2s^2 log2/(eps(eps+2mu)), 2s^2 log2/(eps(eps-2mu))) and located by bisection
// to relative tolerance 1e-12. A missing sign change over the bracket would
// contradict the theory and raises an error rather than being patched over.
std::optional<RobRoot> rob_root(const GaussianSpec& spec, double eps);

// Local minimizer n1 > n0 of n -> loss_gap_rob(spec, n, eps), for eps > 2*mu.
// Located by bracket expansion from the root followed by golden-section search
// to absolute tolerance 1e-9 in n; the value there is negative.
RobMinimum rob_minimum(const GaussianSpec& spec, double eps, double n_ceiling = 1e6);

// Compares the robust and standard gaps; Equal means the difference is within
// tol relative to the larger gap magnitude (exactly equal values included).
GapOrdering compare_rob_std(const GaussianSpec& spec, double n, double eps,
                            double tol = 1e-12);

// Accuracy of the Bayes-optimal rule (any all-positive theta): Phi(sqrt(d)*mu/sigma).
double bayes_accuracy(const GaussianSpec& spec);

}  // namespace lossgap
