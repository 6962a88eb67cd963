#include "lossgap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lossgap/normal.hpp"

namespace lossgap {
namespace {

// Shared evaluator; mu_scale = 1 gives the improved bound, mu_scale = 2*zeta-1
// the label-noise variant. first_term_floor switches to the original bound's 3/2.
double eval_bound(const VectorSpec& spec, double eps, double mu_scale, bool improved) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
    double best = std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t j = 0; j < spec.mu.size(); ++j) {
        if (!(spec.mu[j] > 0.0)) continue;
        any = true;
        const double m = mu_scale * spec.mu[j];
        if (!(eps < m))
            throw std::domain_error("bound: eps=" + std::to_string(eps) +
                                    " >= effective mu at coordinate " + std::to_string(j));
        const double first = improved ? (m / eps) * std::log((m + eps) / (m - eps)) : 1.5;
        const double second = 2.0 * std::log(m / (m - eps));
        const double ratio = spec.sigma[j] / m;
        best = std::min(best, std::max(first, second) * ratio * ratio);
    }
    if (!any) throw std::domain_error("bound: no coordinate with mu_j > 0");
    return best;
}

}  // namespace

VectorSpec::VectorSpec(std::vector<double> mu_, std::vector<double> sigma_)
    : mu(std::move(mu_)), sigma(std::move(sigma_)) {
    if (mu.empty() || mu.size() != sigma.size())
        throw std::invalid_argument("mu and sigma must be non-empty and equal length");
    for (double s : sigma) {
        if (!(s > 0.0)) throw std::invalid_argument("all sigma_j must be > 0");
    }
}

double kappa(double x, double delta) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument("delta must lie in (0,1)");
    return 2.0 * normal_cdf(x) - normal_cdf(x * (1.0 + delta)) - normal_cdf(x * (1.0 - delta));
}

double bound_original(const VectorSpec& spec, double eps) {
    return eval_bound(spec, eps, 1.0, false);
}

double bound_improved(const VectorSpec& spec, double eps) {
    return eval_bound(spec, eps, 1.0, true);
}

double bound_label_noise(const VectorSpec& spec, double eps, double zeta) {
    if (!(zeta > 0.5) || !(zeta <= 1.0))
        throw std::invalid_argument("zeta must lie in (1/2, 1]");
    return eval_bound(spec, eps, 2.0 * zeta - 1.0, true);
}

}  // namespace lossgap
