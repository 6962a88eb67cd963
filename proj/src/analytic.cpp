#include "lossgap/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lossgap/normal.hpp"

namespace lossgap {
namespace {

constexpr double kPi = 3.14159265358979323846;

void require_n(double n) {
    if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("n must be positive and finite");
}

void require_eps(double eps) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be >= 0 and finite");
}

double prefactor(const GaussianSpec& s, double n) {
    return s.d * s.gamma * s.sigma * std::sqrt(2.0 / (n * kPi));
}

// exp(-n * delta^2 / (2 sigma^2)); shared by both gap forms so that the
// eps = 0 robust gap collapses bit-identically onto the standard gap.
double exp_term(const GaussianSpec& s, double n, double delta) {
    return std::exp(-n * delta * delta / (2.0 * s.sigma * s.sigma));
}

}  // namespace

GaussianSpec::GaussianSpec(int d_, double mu_, double sigma_, double gamma_)
    : d(d_), mu(mu_), sigma(sigma_), gamma(gamma_) {
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be > 0");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be > 0");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be > 0");
}

double loss_gap_std(const GaussianSpec& spec, double n) {
    require_n(n);
    return prefactor(spec, n) * exp_term(spec, n, spec.mu);
}

double loss_gap_rob(const GaussianSpec& spec, double n, double eps) {
    require_n(n);
    require_eps(eps);
    const double bracket = exp_term(spec, n, eps + spec.mu) +
                           exp_term(spec, n, eps - spec.mu) -
                           exp_term(spec, n, spec.mu);
    return prefactor(spec, n) * bracket;
}

double dstd_dn(const GaussianSpec& spec, double n) {
    require_n(n);
    const double e = exp_term(spec, n, spec.mu);
    const double t1 = spec.d * spec.gamma * spec.mu * spec.mu /
                      (spec.sigma * std::sqrt(2.0 * n * kPi));
    const double t2 = spec.d * spec.gamma * spec.sigma /
                      (std::sqrt(2.0 * kPi) * n * std::sqrt(n));
    return -t1 * e - t2 * e;
}

double drob_deps(const GaussianSpec& spec, double n, double eps) {
    require_n(n);
    require_eps(eps);
    const double lo = spec.mu - eps;
    const double hi = spec.mu + eps;
    return spec.d * spec.gamma / spec.sigma * std::sqrt(2.0 * n / kPi) *
           (lo * exp_term(spec, n, lo) - hi * exp_term(spec, n, hi));
}

EpsRegime eps_regime(const GaussianSpec& spec, double n, double eps) {
    require_n(n);
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be > 0");
    if (eps < spec.mu) {
        const double n_star = spec.sigma * spec.sigma / (2.0 * spec.mu * eps) *
                              std::log((spec.mu + eps) / (spec.mu - eps));
        return {n > n_star ? EpsRegimeKind::IncreasingInEps : EpsRegimeKind::DecreasingInEps,
                n_star};
    }
    if (eps <= 2.0 * spec.mu) {
        return {EpsRegimeKind::AlwaysDecreasing, std::nullopt};
    }
    // Beyond 2*mu the theory is silent; report the evaluated sign.
    const double g = drob_deps(spec, n, eps);
    return {g <= 0.0 ? EpsRegimeKind::AlwaysDecreasing : EpsRegimeKind::IncreasingInEps,
            std::nullopt};
}

std::optional<RobRoot> rob_root(const GaussianSpec& spec, double eps) {
    require_eps(eps);
    const double mu = spec.mu;
    const double s2 = spec.sigma * spec.sigma;
    if (eps <= 2.0 * mu) return std::nullopt;

    const double lo = 2.0 * s2 * std::log(2.0) / (eps * (eps + 2.0 * mu));
    const double hi = 2.0 * s2 * std::log(2.0) / (eps * (eps - 2.0 * mu));

    // Same sign as the gap's bracketed factor, with the dominant exponential
    // divided out so large-n evaluation cannot underflow to a spurious zero:
    //   g(n) = exp(-n*eps*(eps+2mu)/(2s^2)) + exp(-n*eps*(eps-2mu)/(2s^2)) - 1
    const double ca = eps * (eps + 2.0 * mu) / (2.0 * s2);
    const double cb = eps * (eps - 2.0 * mu) / (2.0 * s2);
    auto g = [&](double n) { return std::exp(-ca * n) + std::exp(-cb * n) - 1.0; };

    double a = lo, b = hi;
    double ga = g(a), gb = g(b);
    if (!(ga > 0.0 && gb < 0.0)) {
        throw std::runtime_error(
            "rob_root: no sign change of the gap factor over the bracket (" +
            std::to_string(a) + ", " + std::to_string(b) +
            "); this contradicts the single-root theory");
    }
    for (int i = 0; i < 200 && (b - a) > 1e-12 * 0.5 * (a + b); ++i) {
        const double m = 0.5 * (a + b);
        if (g(m) > 0.0) a = m; else b = m;
    }
    return RobRoot{0.5 * (a + b), lo, hi};
}

RobMinimum rob_minimum(const GaussianSpec& spec, double eps, double n_ceiling) {
    if (!(eps > 2.0 * spec.mu)) throw std::invalid_argument("rob_minimum requires eps > 2*mu");
    const auto root = rob_root(spec, eps);
    const double n0 = root->n0;
    auto f = [&](double n) { return loss_gap_rob(spec, n, eps); };

    // Expand to the right of the root until the gap turns back up.
    double a = n0;
    double b = 2.0 * n0;
    double c = 4.0 * n0;
    while (f(c) <= f(b)) {
        a = b;
        b = c;
        c *= 2.0;
        if (c > n_ceiling)
            throw std::runtime_error("rob_minimum: no bracket below the n ceiling");
    }

    // Golden-section on (a, c).
    constexpr double invphi = 0.6180339887498949;
    double x1 = c - invphi * (c - a);
    double x2 = a + invphi * (c - a);
    double f1 = f(x1), f2 = f(x2);
    while (c - a > 1e-9) {
        if (f1 < f2) {
            c = x2;
            x2 = x1; f2 = f1;
            x1 = c - invphi * (c - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + invphi * (c - a);
            f2 = f(x2);
        }
    }
    const double n1 = 0.5 * (a + c);
    return RobMinimum{n1, f(n1)};
}

GapOrdering compare_rob_std(const GaussianSpec& spec, double n, double eps, double tol) {
    const double rob = loss_gap_rob(spec, n, eps);
    const double std_ = loss_gap_std(spec, n);
    // tolerance scaled by the gap magnitude, so the ordering stays resolvable
    // at large n where both gaps are far below any fixed absolute cutoff
    if (std::fabs(rob - std_) <= tol * std::max(std::fabs(rob), std::fabs(std_)))
        return GapOrdering::Equal;
    return rob > std_ ? GapOrdering::RobGreater : GapOrdering::StdGreater;
}

double bayes_accuracy(const GaussianSpec& spec) {
    return normal_cdf(std::sqrt(static_cast<double>(spec.d)) * spec.mu / spec.sigma);
}

}  // namespace lossgap
