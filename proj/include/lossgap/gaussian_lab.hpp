#pragma once

#include <cstdint>
#include <vector>

#include "lossgap/analytic.hpp"

namespace lossgap {

struct LabeledSample {
    std::vector<double> x;
    int y;  // -1 or +1
};

struct Dataset {
    std::vector<LabeledSample> samples;
    int d = 0;
    std::uint64_t seed_tag = 0;

    long size() const { return static_cast<long>(samples.size()); }
};

// Linear model with per-coordinate magnitude bound gamma.
struct LinearModel {
    std::vector<double> theta;
    double gamma;

    LinearModel(std::vector<double> theta, double gamma);
};

struct GapEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    long trials = 0;
};

// Which margin enters the robust ERM sign expression. The mean form
// u = (1/n) sum y_i x_i is the default; the unnormalized sum is kept as an
// explicit option since the two disagree when |u| < eps < n|u|.
enum class MarginForm { Mean, Sum };

// Draws n samples: y uniform in {-1,+1}, then each coordinate N(y*mu, sigma^2).
// With label_flip > 0, each coordinate's mean sign is flipped independently
// with that probability (the zeta = 1 - label_flip mixture). Fixed seed gives a
// byte-identical dataset. Draw order per sample: one sign draw for y, then per
// coordinate an optional flip draw (only when label_flip > 0) followed by the
// normal draw.
Dataset sample_dataset(const GaussianSpec& spec, long n, std::uint64_t seed,
                       double label_flip = 0.0);

// Per-coordinate mean margins u_j = (1/n) sum_i y_i x_ij.
std::vector<double> mean_margins(const Dataset& data);

// Exact standard ERM under the sup-norm bound: theta_j = gamma * sign(u_j),
// with sign(0) = 0.
LinearModel erm_std(const Dataset& data, double gamma);

// Exact robust ERM: theta_j = gamma * sign(m_j - eps * sign(m_j)) where m is
// the mean margin (or the unnormalized sum when form == Sum).
LinearModel erm_rob(const Dataset& data, double gamma, double eps,
                    MarginForm form = MarginForm::Mean);

// Linear loss -y * <theta, x>.
double linear_loss(const LinearModel& model, const LabeledSample& sample);

// Exact worst-case linear loss over the sup-norm eps-ball around x:
// -y*<theta, x> + eps * ||theta||_1.
double adversarial_linear_loss(const LinearModel& model, const LabeledSample& sample,
                               double eps);

double mean_linear_loss(const LinearModel& model, const Dataset& data);

// Classification accuracy on n_test fresh samples; sign(<theta,x>) must equal y
// and a zero inner product counts as an error.
double test_accuracy(const LinearModel& model, const GaussianSpec& spec, long n_test,
                     std::uint64_t seed);

}  // namespace lossgap
