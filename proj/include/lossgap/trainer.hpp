#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lossgap/gaussian_lab.hpp"

namespace lossgap {

// Inner perturbation applied before each gradient step.
//   None:     plain linear loss.
//   GradSign: delta_i = eps * sign(grad_x loss) = -eps * y_i * sign(theta);
//             FGSM for the linear loss, whose perturbed objective is
//             -<theta,u> + eps*||theta||_1.
//   MeanSign: delta_i = -eps * y_i * sign(u) with u the dataset mean margin;
//             the projected minimizer of this objective is exactly the
//             closed-form robust ERM solution.
enum class Adversary { None, GradSign, MeanSign };

enum class InitKind { Zeros, SeededUniform };

struct TrainConfig {
    double learning_rate = 0.001;
    long epochs = 200;
    double eps = 0.0;
    Adversary adversary = Adversary::None;
    InitKind init = InitKind::Zeros;
    double init_scale = 0.0;      // theta0 ~ U(-scale, scale) for SeededUniform
    std::uint64_t init_seed = 0;  // stream for SeededUniform
    bool record_theta = false;    // keep full theta per epoch in the trace
};

struct EpochRecord {
    long epoch;        // 1-based
    double mean_loss;  // objective value after the epoch's step
    std::uint64_t theta_hash;
    std::optional<std::vector<double>> theta;
};

struct TrainTrace {
    std::vector<EpochRecord> epochs;
};

// Full-batch projected gradient descent on the mean linear loss, one step per
// epoch, each coordinate clamped to [-gamma, gamma] after every step.
std::pair<LinearModel, TrainTrace> train(const Dataset& data, double gamma,
                                         const TrainConfig& config);

// Monte Carlo estimation of the empirical loss gap ----------------------------

enum class SolverKind { ExactErm, GradientDescent };

struct Solver {
    SolverKind kind = SolverKind::ExactErm;
    TrainConfig config;  // used when kind == GradientDescent; eps is overridden
};

// For each trial draws independent train/test sets of size n, fits theta
// (exact ERM, or gradient descent per the solver config with its eps replaced
// by this eps), and records mean test loss minus mean train loss under the
// standard linear loss. Trial t draws from trial_seed(master_seed, t); trials
// may run concurrently and are aggregated in trial-index order, so the result
// is byte-stable.
GapEstimate empirical_loss_gap(const GaussianSpec& spec, long n, double eps,
                               long trials, std::uint64_t master_seed,
                               const Solver& solver = {});

}  // namespace lossgap
