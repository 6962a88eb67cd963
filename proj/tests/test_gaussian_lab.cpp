#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lossgap/gaussian_lab.hpp"
#include "lossgap/trainer.hpp"
#include "oracles.hpp"

using namespace lossgap;

namespace {

Dataset make_dataset(std::vector<std::vector<double>> xs, std::vector<int> ys) {
    Dataset d;
    d.d = static_cast<int>(xs.front().size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        d.samples.push_back({std::move(xs[i]), ys[i]});
    return d;
}

}  // namespace

TEST_CASE("sample_dataset determinism and shape") {
    const GaussianSpec spec(4, 1.0, 1.0, 1.0);
    const Dataset a = sample_dataset(spec, 5, 99);
    const Dataset b = sample_dataset(spec, 5, 99);
    REQUIRE(a.samples.size() == 5);
    CHECK(a.seed_tag == 99);
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].y == b.samples[i].y);
        for (int j = 0; j < spec.d; ++j)
            CHECK(a.samples[i].x[j] == b.samples[i].x[j]);
    }
    const Dataset c = sample_dataset(spec, 5, 100);
    bool identical = true;
    for (std::size_t i = 0; i < a.samples.size() && identical; ++i)
        identical = a.samples[i].x == c.samples[i].x;
    CHECK(!identical);
}

TEST_CASE("sample_dataset degenerate sigma concentrates on y*mu") {
    const GaussianSpec spec(3, 2.0, 1e-12, 1.0);
    const Dataset d = sample_dataset(spec, 20, 7);
    for (const auto& s : d.samples)
        for (double v : s.x)
            CHECK(std::fabs(v - s.y * 2.0) < 1e-9);
}

TEST_CASE("sample_dataset margin mean obeys the law of large numbers") {
    const GaussianSpec spec(1, 1.0, 1.0, 1.0);
    const long n = 1000000;
    const Dataset d = sample_dataset(spec, n, 31);
    double mean = 0.0;
    for (const auto& s : d.samples) mean += s.y * s.x[0];
    mean /= static_cast<double>(n);
    CHECK(std::fabs(mean - spec.mu) < 4.0 * spec.sigma / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("sample_dataset label flip shifts the margin mean to (2*zeta-1)*mu") {
    const GaussianSpec spec(1, 1.0, 1.0, 1.0);
    const double flip = 0.25;  // zeta = 0.75
    const Dataset d = sample_dataset(spec, 400000, 13, flip);
    double mean = 0.0;
    for (const auto& s : d.samples) mean += s.y * s.x[0];
    mean /= static_cast<double>(d.samples.size());
    CHECK(std::fabs(mean - 0.5) < 0.01);
    CHECK_THROWS(sample_dataset(spec, 10, 1, 0.5));
    CHECK_THROWS(sample_dataset(spec, 10, 1, -0.1));
}

TEST_CASE("erm_std") {
    SUBCASE("single sample takes the sign of y*x") {
        const auto m = erm_std(make_dataset({{2.0, -3.0}}, {1}), 1.0);
        CHECK(m.theta == std::vector<double>{1.0, -1.0});
    }
    SUBCASE("two samples, hand-evaluated margin") {
        // u = (1*1 + (-1)*4)/2 = -1.5
        const auto m = erm_std(make_dataset({{1.0}, {4.0}}, {1, -1}), 1.0);
        CHECK(m.theta == std::vector<double>{-1.0});
    }
    SUBCASE("flipping every label negates theta") {
        const GaussianSpec spec(6, 1.0, 1.0, 1.0);
        Dataset d = sample_dataset(spec, 9, 5);
        const auto m = erm_std(d, 1.0);
        for (auto& s : d.samples) s.y = -s.y;
        const auto flipped = erm_std(d, 1.0);
        for (int j = 0; j < spec.d; ++j) CHECK(flipped.theta[j] == -m.theta[j]);
    }
    SUBCASE("zero margin gives a zero coordinate") {
        const auto m = erm_std(make_dataset({{1.0}, {1.0}}, {1, -1}), 1.0);
        CHECK(m.theta[0] == 0.0);
    }
}

TEST_CASE("erm_rob") {
    // u = 0.5 from a single sample
    const Dataset d = make_dataset({{0.5}}, {1});
    CHECK(erm_rob(d, 1.0, 0.2).theta[0] == 1.0);
    CHECK(erm_rob(d, 1.0, 0.8).theta[0] == -1.0);  // eps beyond the margin flips the sign

    SUBCASE("eps = 0 reduces to erm_std") {
        const GaussianSpec spec(5, 1.0, 1.0, 1.0);
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const Dataset data = sample_dataset(spec, 4, seed);
            const auto rob = erm_rob(data, 1.0, 0.0);
            const auto std_ = erm_std(data, 1.0);
            CHECK(rob.theta == std_.theta);
        }
    }
    SUBCASE("mean and sum forms disagree when |u| < eps < n|u|") {
        // n = 2, u = 0.5, sum margin = 1.0, eps = 0.7
        const Dataset two = make_dataset({{0.5}, {0.5}}, {1, 1});
        CHECK(erm_rob(two, 1.0, 0.7, MarginForm::Mean).theta[0] == -1.0);
        CHECK(erm_rob(two, 1.0, 0.7, MarginForm::Sum).theta[0] == 1.0);
    }
    SUBCASE("models satisfy the sup-norm bound") {
        const GaussianSpec spec(8, 1.0, 2.0, 0.3);
        const Dataset data = sample_dataset(spec, 6, 77);
        for (double eps : {0.0, 0.5, 1.0, 4.0}) {
            const auto m = erm_rob(data, 0.3, eps);
            for (double t : m.theta) CHECK(std::fabs(t) <= 0.3);
        }
    }
}

TEST_CASE("linear_loss") {
    const LinearModel m({1.0, 1.0}, 1.0);
    CHECK(linear_loss(m, {{1.0, 1.0}, 1}) == -2.0);
    CHECK(linear_loss(m, {{1.0, 1.0}, -1}) == 2.0);
    const LinearModel zero({0.0, 0.0}, 1.0);
    CHECK(linear_loss(zero, {{3.0, -4.0}, 1}) == 0.0);
    CHECK_THROWS(linear_loss(m, {{1.0}, 1}));
}

TEST_CASE("adversarial_linear_loss") {
    const LinearModel m({1.0, -1.0}, 1.0);
    const LabeledSample origin{{0.0, 0.0}, 1};
    CHECK(adversarial_linear_loss(m, origin, 0.0) == linear_loss(m, origin));
    CHECK(adversarial_linear_loss(m, origin, 0.5) == 1.0);
    // linear in eps with slope ||theta||_1
    const LabeledSample s{{0.3, 0.7}, -1};
    const double base = adversarial_linear_loss(m, s, 0.25);
    CHECK(adversarial_linear_loss(m, s, 0.5) == doctest::Approx(base + 0.25 * 2.0));

    SUBCASE("equals the brute-force corner maximum for small d") {
        std::mt19937 gen(11);
        std::uniform_real_distribution<double> coord(-2.0, 2.0);
        std::uniform_int_distribution<int> dim(1, 10);
        for (int rep = 0; rep < 50; ++rep) {
            const int d = dim(gen);
            std::vector<double> theta(d), x(d);
            for (int j = 0; j < d; ++j) { theta[j] = coord(gen); x[j] = coord(gen); }
            const double gamma = 2.5;
            const LinearModel model(theta, gamma);
            const int y = rep % 2 ? 1 : -1;
            const double eps = 0.1 + 0.05 * (rep % 7);
            const double exact = adversarial_linear_loss(model, {x, y}, eps);
            const double brute = oracle::corner_max_loss(theta, x, y, eps);
            CHECK(exact == doctest::Approx(brute).epsilon(1e-12));
        }
    }
}

TEST_CASE("empirical_loss_gap") {
    const GaussianSpec spec(100, 1.0, 1.0, 1.0);
    SUBCASE("reproducible with a fixed seed") {
        const auto a = empirical_loss_gap(spec, 2, 0.0, 2, 42);
        const auto b = empirical_loss_gap(spec, 2, 0.0, 2, 42);
        CHECK(a.mean == b.mean);
        CHECK(a.stderr_ == b.stderr_);
        CHECK(a.trials == 2);
    }
    SUBCASE("matches the closed form at n = 1 within 3 stderr") {
        const auto est = empirical_loss_gap(spec, 1, 0.0, 4000, 7);
        CHECK(std::fabs(est.mean - 48.39414490382867) <= 3.0 * est.stderr_);
        const auto rob = empirical_loss_gap(spec, 1, 2.0, 4000, 7);
        CHECK(std::fabs(rob.mean - 0.8863696823876014) <= 3.0 * rob.stderr_);
    }
    SUBCASE("input validation") {
        CHECK_THROWS(empirical_loss_gap(spec, 0, 0.0, 2, 1));
        CHECK_THROWS(empirical_loss_gap(spec, 1, -1.0, 2, 1));
        CHECK_THROWS(empirical_loss_gap(spec, 1, 0.0, 1, 1));
    }
    SUBCASE("solver failures carry the trial index") {
        Solver bad;
        bad.kind = SolverKind::GradientDescent;
        bad.config.learning_rate = -1.0;
        CHECK_THROWS_WITH_AS(empirical_loss_gap(spec, 1, 0.0, 2, 1, bad),
                             doctest::Contains("trial"), std::runtime_error);
    }
}

TEST_CASE("test_accuracy") {
    const GaussianSpec spec(100, 1.0, 1.0, 1.0);
    const LinearModel positive(std::vector<double>(100, 1.0), 1.0);
    CHECK(test_accuracy(positive, spec, 20000, 3) > 0.9999);
    std::vector<double> neg(100, -1.0);
    const LinearModel negative(neg, 1.0);
    CHECK(test_accuracy(negative, spec, 20000, 3) < 1e-4);
    const LinearModel zero(std::vector<double>(100, 0.0), 1.0);
    CHECK(test_accuracy(zero, spec, 100, 3) == 0.0);  // sign(0) counts as error

    // d=1: accuracy approaches Phi(mu/sigma)
    const GaussianSpec one(1, 1.0, 1.0, 1.0);
    const LinearModel m({1.0}, 1.0);
    const double acc = test_accuracy(m, one, 200000, 5);
    const double p = 0.8413447460685429;
    CHECK(std::fabs(acc - p) < 3.0 * std::sqrt(p * (1 - p) / 200000.0));
}
