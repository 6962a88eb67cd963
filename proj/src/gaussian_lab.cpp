#include "lossgap/gaussian_lab.hpp"

#include <cmath>
#include <stdexcept>

#include "lossgap/rng.hpp"

namespace lossgap {
namespace {

double sign_of(double v) {
    if (v > 0.0) return 1.0;
    if (v < 0.0) return -1.0;
    return 0.0;
}

}  // namespace

LinearModel::LinearModel(std::vector<double> theta_, double gamma_)
    : theta(std::move(theta_)), gamma(gamma_) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    for (double t : theta) {
        if (!(std::fabs(t) <= gamma + 1e-12))
            throw std::invalid_argument("theta exceeds the gamma sup-norm bound");
    }
}

Dataset sample_dataset(const GaussianSpec& spec, long n, std::uint64_t seed,
                       double label_flip) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(label_flip >= 0.0) || label_flip >= 0.5)
        throw std::invalid_argument("label_flip must lie in [0, 1/2)");
    Rng rng(seed);
    Dataset data;
    data.d = spec.d;
    data.seed_tag = seed;
    data.samples.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        LabeledSample s;
        s.y = rng.next_sign();
        s.x.resize(static_cast<std::size_t>(spec.d));
        for (int j = 0; j < spec.d; ++j) {
            double mean_sign = static_cast<double>(s.y);
            if (label_flip > 0.0 && rng.next_unit() <= label_flip) mean_sign = -mean_sign;
            s.x[static_cast<std::size_t>(j)] = rng.next_normal(mean_sign * spec.mu, spec.sigma);
        }
        data.samples.push_back(std::move(s));
    }
    return data;
}

std::vector<double> mean_margins(const Dataset& data) {
    if (data.samples.empty()) throw std::invalid_argument("dataset is empty");
    std::vector<double> u(static_cast<std::size_t>(data.d), 0.0);
    for (const auto& s : data.samples) {
        for (int j = 0; j < data.d; ++j)
            u[static_cast<std::size_t>(j)] += s.y * s.x[static_cast<std::size_t>(j)];
    }
    const double inv_n = 1.0 / static_cast<double>(data.samples.size());
    for (double& v : u) v *= inv_n;
    return u;
}

LinearModel erm_std(const Dataset& data, double gamma) {
    auto u = mean_margins(data);
    for (double& v : u) v = gamma * sign_of(v);
    return LinearModel(std::move(u), gamma);
}

LinearModel erm_rob(const Dataset& data, double gamma, double eps, MarginForm form) {
    if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
    auto m = mean_margins(data);
    if (form == MarginForm::Sum) {
        const double n = static_cast<double>(data.samples.size());
        for (double& v : m) v *= n;
    }
    for (double& v : m) v = gamma * sign_of(v - eps * sign_of(v));
    return LinearModel(std::move(m), gamma);
}

double linear_loss(const LinearModel& model, const LabeledSample& sample) {
    if (model.theta.size() != sample.x.size())
        throw std::invalid_argument("model/sample dimension mismatch");
    double dot = 0.0;
    for (std::size_t j = 0; j < model.theta.size(); ++j) dot += model.theta[j] * sample.x[j];
    return -sample.y * dot;
}

double adversarial_linear_loss(const LinearModel& model, const LabeledSample& sample,
                               double eps) {
    if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
    double l1 = 0.0;
    for (double t : model.theta) l1 += std::fabs(t);
    return linear_loss(model, sample) + eps * l1;
}

double mean_linear_loss(const LinearModel& model, const Dataset& data) {
    if (data.samples.empty()) throw std::invalid_argument("dataset is empty");
    double acc = 0.0;
    for (const auto& s : data.samples) acc += linear_loss(model, s);
    return acc / static_cast<double>(data.samples.size());
}

double test_accuracy(const LinearModel& model, const GaussianSpec& spec, long n_test,
                     std::uint64_t seed) {
    if (n_test < 1) throw std::invalid_argument("n_test must be >= 1");
    if (static_cast<int>(model.theta.size()) != spec.d)
        throw std::invalid_argument("model/spec dimension mismatch");
    Rng rng(seed);
    long correct = 0;
    for (long i = 0; i < n_test; ++i) {
        const int y = rng.next_sign();
        double dot = 0.0;
        for (int j = 0; j < spec.d; ++j)
            dot += model.theta[static_cast<std::size_t>(j)] *
                   rng.next_normal(y * spec.mu, spec.sigma);
        if ((dot > 0.0 && y == 1) || (dot < 0.0 && y == -1)) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(n_test);
}

}  // namespace lossgap
