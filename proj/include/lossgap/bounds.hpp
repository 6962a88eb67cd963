#pragma once

#include <vector>

namespace lossgap {

// Per-coordinate problem parameters for the generalization-gap bounds. Only
// coordinates with mu_j > 0 contribute; all sigma_j must be positive.
struct VectorSpec {
    std::vector<double> mu;
    std::vector<double> sigma;

    VectorSpec(std::vector<double> mu, std::vector<double> sigma);
};

// kappa(x) = 2*Phi(x) - Phi(x*(1+delta)) - Phi(x*(1-delta)), delta in (0,1).
double kappa(double x, double delta);

// min over {j : mu_j > 0} of max(3/2, 2*log(mu_j/(mu_j-eps))) * (sigma_j/mu_j)^2.
// Requires eps < mu_j for every contributing coordinate.
double bound_original(const VectorSpec& spec, double eps);

// Tighter variant: the 3/2 is replaced by (mu_j/eps)*log((mu_j+eps)/(mu_j-eps)).
double bound_improved(const VectorSpec& spec, double eps);

// Label-noise variant: mu_j replaced by (2*zeta-1)*mu_j, zeta in (1/2, 1].
// At zeta = 1 this equals bound_improved exactly.
double bound_label_noise(const VectorSpec& spec, double eps, double zeta);

}  // namespace lossgap
