#include "lossgap/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "lossgap/rng.hpp"

namespace lossgap {
namespace {

double sign_of(double v) {
    if (v > 0.0) return 1.0;
    if (v < 0.0) return -1.0;
    return 0.0;
}

std::uint64_t hash_theta(const std::vector<double>& theta) {
    // FNV-1a over the raw bytes
    std::uint64_t h = 1469598103934665603ull;
    for (double v : theta) {
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &v, sizeof(double));
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 1099511628211ull;
        }
    }
    return h;
}

}  // namespace

std::pair<LinearModel, TrainTrace> train(const Dataset& data, double gamma,
                                         const TrainConfig& config) {
    if (data.samples.empty()) throw std::invalid_argument("dataset is empty");
    if (!(config.learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
    if (config.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (!(config.eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");

    const std::size_t d = static_cast<std::size_t>(data.d);
    const auto u = mean_margins(data);

    std::vector<double> theta(d, 0.0);
    if (config.init == InitKind::SeededUniform) {
        Rng rng(config.init_seed);
        const double scale = std::min(config.init_scale, gamma);
        for (double& t : theta) t = rng.next_symmetric(scale);
    }

    // MeanSign's perturbed gradient is constant across epochs.
    std::vector<double> mean_sign_grad;
    if (config.adversary == Adversary::MeanSign) {
        mean_sign_grad.resize(d);
        for (std::size_t j = 0; j < d; ++j)
            mean_sign_grad[j] = -(u[j] - config.eps * sign_of(u[j]));
    }

    TrainTrace trace;
    trace.epochs.reserve(static_cast<std::size_t>(config.epochs));

    for (long epoch = 1; epoch <= config.epochs; ++epoch) {
        for (std::size_t j = 0; j < d; ++j) {
            double g;
            switch (config.adversary) {
                case Adversary::None:     g = -u[j]; break;
                case Adversary::GradSign: g = -u[j] + config.eps * sign_of(theta[j]); break;
                case Adversary::MeanSign: g = mean_sign_grad[j]; break;
                default:                  g = -u[j]; break;
            }
            theta[j] = std::clamp(theta[j] - config.learning_rate * g, -gamma, gamma);
        }

        // objective value at the updated theta
        double loss = 0.0;
        switch (config.adversary) {
            case Adversary::None:
                for (std::size_t j = 0; j < d; ++j) loss -= theta[j] * u[j];
                break;
            case Adversary::GradSign:
                for (std::size_t j = 0; j < d; ++j)
                    loss += -theta[j] * u[j] + config.eps * std::fabs(theta[j]);
                break;
            case Adversary::MeanSign:
                for (std::size_t j = 0; j < d; ++j)
                    loss -= theta[j] * (u[j] - config.eps * sign_of(u[j]));
                break;
        }
        if (!std::isfinite(loss))
            throw std::runtime_error("train: non-finite loss at epoch " + std::to_string(epoch));

        EpochRecord rec{epoch, loss, hash_theta(theta), std::nullopt};
        if (config.record_theta) rec.theta = theta;
        trace.epochs.push_back(std::move(rec));
    }

    return {LinearModel(std::move(theta), gamma), std::move(trace)};
}

GapEstimate empirical_loss_gap(const GaussianSpec& spec, long n, double eps,
                               long trials, std::uint64_t master_seed,
                               const Solver& solver) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
    if (trials < 2) throw std::invalid_argument("trials must be >= 2");

    std::vector<double> gaps(static_cast<std::size_t>(trials));

    auto run_trial = [&](long t) {
        try {
            Rng stream(trial_seed(master_seed, static_cast<std::uint64_t>(t)));
            const std::uint64_t train_seed = stream.next_u64();
            const std::uint64_t test_seed = stream.next_u64();
            const Dataset train_set = sample_dataset(spec, n, train_seed);
            const Dataset test_set = sample_dataset(spec, n, test_seed);

            LinearModel model = [&] {
                if (solver.kind == SolverKind::GradientDescent) {
                    TrainConfig cfg = solver.config;
                    cfg.eps = eps;
                    if (eps == 0.0) cfg.adversary = Adversary::None;
                    return train(train_set, spec.gamma, cfg).first;
                }
                return eps == 0.0 ? erm_std(train_set, spec.gamma)
                                  : erm_rob(train_set, spec.gamma, eps);
            }();

            gaps[static_cast<std::size_t>(t)] =
                mean_linear_loss(model, test_set) - mean_linear_loss(model, train_set);
        } catch (const std::exception& e) {
            throw std::runtime_error("trial " + std::to_string(t) + ": " + e.what());
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(
        std::min<long>(trials, static_cast<long>(hw)));
    if (workers <= 1) {
        for (long t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mutex;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (long t = w; t < trials; t += workers) run_trial(t);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    // aggregate in trial-index order
    double mean = 0.0;
    for (long t = 0; t < trials; ++t) mean += gaps[static_cast<std::size_t>(t)];
    mean /= static_cast<double>(trials);
    double ss = 0.0;
    for (long t = 0; t < trials; ++t) {
        const double dev = gaps[static_cast<std::size_t>(t)] - mean;
        ss += dev * dev;
    }
    const double stderr_ =
        std::sqrt(ss / static_cast<double>(trials - 1)) / std::sqrt(static_cast<double>(trials));
    return GapEstimate{mean, stderr_, trials};
}

}  // namespace lossgap
