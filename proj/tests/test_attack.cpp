#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "lossgap/attack.hpp"
#include "lossgap/rng.hpp"

using namespace lossgap;

TEST_CASE("calibrate_threshold") {
    SUBCASE("median midpoint") {
        const auto c = calibrate_threshold({0, 0, 1}, {2, 3, 4}, ThresholdMethod::MedianMidpoint);
        CHECK(c.tau == 1.5);
        CHECK(!c.degenerate);
    }
    SUBCASE("mean midpoint") {
        const auto c = calibrate_threshold({0, 0, 1}, {2, 3, 4}, ThresholdMethod::MeanMidpoint);
        CHECK(c.tau == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    }
    SUBCASE("even-length median is the midpoint of the central order statistics") {
        const auto c = calibrate_threshold({4, 1, 3, 2}, {10, 20}, ThresholdMethod::MedianMidpoint);
        CHECK(c.tau == (2.5 + 15.0) / 2.0);
    }
    SUBCASE("coinciding statistics raise the degenerate flag") {
        const auto c = calibrate_threshold({1, 1}, {1, 1}, ThresholdMethod::MedianMidpoint);
        CHECK(c.tau == 1.0);
        CHECK(c.degenerate);
    }
    CHECK_THROWS(calibrate_threshold({}, {1.0}, ThresholdMethod::MedianMidpoint));
    CHECK_THROWS(calibrate_threshold({1.0}, {}, ThresholdMethod::MeanMidpoint));
}

TEST_CASE("attack_accuracy") {
    SUBCASE("perfect separation") {
        std::vector<LossRecord> records;
        for (int i = 0; i < 10; ++i) records.push_back({"m" + std::to_string(i), 0.1, true});
        for (int i = 0; i < 10; ++i) records.push_back({"n" + std::to_string(i), 0.9, false});
        const auto rep = attack_accuracy(records, 0.5);
        CHECK(rep.accuracy == 1.0);
        CHECK(rep.loss_gap == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(rep.n_members == 10);
        CHECK(rep.n_nonmembers == 10);
    }
    SUBCASE("a loss exactly at tau predicts nonmember") {
        const std::vector<LossRecord> records = {{"a", 0.5, true}, {"b", 0.5, false}};
        const auto rep = attack_accuracy(records, 0.5);
        CHECK(rep.accuracy == 0.5);  // member misclassified, nonmember right
    }
    SUBCASE("identical distributions give chance accuracy") {
        Rng rng(17);
        std::vector<LossRecord> records;
        const int n = 20000;
        for (int i = 0; i < n; ++i) records.push_back({"m" + std::to_string(i), rng.next_normal(), true});
        for (int i = 0; i < n; ++i) records.push_back({"n" + std::to_string(i), rng.next_normal(), false});
        const auto rep = attack_accuracy(records, 0.0);
        CHECK(std::fabs(rep.accuracy - 0.5) <= 3.0 * std::sqrt(0.25 / (2.0 * n)));
    }
    SUBCASE("N(0,1) members vs N(1,1) nonmembers at tau = 1/2 hits Phi(1/2)") {
        Rng rng(23);
        std::vector<LossRecord> records;
        const int n = 200000;
        for (int i = 0; i < n; ++i)
            records.push_back({"m" + std::to_string(i), rng.next_normal(), true});
        for (int i = 0; i < n; ++i)
            records.push_back({"n" + std::to_string(i), rng.next_normal(1.0, 1.0), false});
        const auto rep = attack_accuracy(records, 0.5);
        const double p = 0.6914624612740131;
        CHECK(std::fabs(rep.accuracy - p) <= 3.0 * std::sqrt(p * (1 - p) / (2.0 * n)));
    }
    SUBCASE("missing class is rejected") {
        const std::vector<LossRecord> only_members = {{"a", 0.1, true}};
        CHECK_THROWS(attack_accuracy(only_members, 0.5));
    }
    SUBCASE("degenerate thresholds score exactly 1/2 on balanced traces") {
        Rng rng(31);
        std::vector<LossRecord> records;
        for (int i = 0; i < 100; ++i)
            records.push_back({std::to_string(i), rng.next_normal(), i % 2 == 0});
        CHECK(attack_accuracy(records, 1e308).accuracy == 0.5);   // everyone member
        CHECK(attack_accuracy(records, -1e308).accuracy == 0.5);  // everyone nonmember
    }
    SUBCASE("invariant under increasing affine maps of losses and tau") {
        Rng rng(5);
        std::vector<LossRecord> records;
        for (int i = 0; i < 500; ++i)
            records.push_back({std::to_string(i), rng.next_normal(i % 2 ? 1.0 : 0.0, 1.0), i % 2 == 0});
        const double tau = 0.37;
        const auto base = attack_accuracy(records, tau);
        const double a = 2.75, b = -4.0;
        for (auto& r : records) r.loss = a * r.loss + b;
        const auto mapped = attack_accuracy(records, a * tau + b);
        CHECK(mapped.accuracy == base.accuracy);
    }
}

TEST_CASE("comparative_leakage") {
    CHECK(comparative_leakage(0.7, 0.7) == 0.0);
    CHECK(comparative_leakage(0.2, 0.9) == doctest::Approx(0.7));
    CHECK(comparative_leakage(0.9, 0.2) == -comparative_leakage(0.2, 0.9));
    CHECK_THROWS(comparative_leakage(std::nan(""), 1.0));
}

TEST_CASE("run_membership_experiment") {
    const GaussianSpec spec(100, 1.0, 1.0, 1.0);
    SUBCASE("deterministic for a fixed master seed") {
        const auto a = run_membership_experiment(spec, 4, 0.0, 6, 99, ThresholdMethod::MedianMidpoint);
        const auto b = run_membership_experiment(spec, 4, 0.0, 6, 99, ThresholdMethod::MedianMidpoint);
        REQUIRE(a.size() == 6);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].tau == b[i].tau);
            CHECK(a[i].accuracy == b[i].accuracy);
            CHECK(a[i].loss_gap == b[i].loss_gap);
        }
        CHECK(a.front().n_members == 4);
        CHECK(a.front().n_nonmembers == 4);
    }
    SUBCASE("robust training at eps = 2*mu attacks no better than standard") {
        const long trials = 400;
        const auto std_reports =
            run_membership_experiment(spec, 2, 0.0, trials, 11, ThresholdMethod::MedianMidpoint);
        const auto rob_reports =
            run_membership_experiment(spec, 2, 2.0, trials, 11, ThresholdMethod::MedianMidpoint);
        double std_acc = 0, rob_acc = 0, std_ss = 0, rob_ss = 0;
        for (const auto& r : std_reports) std_acc += r.accuracy;
        for (const auto& r : rob_reports) rob_acc += r.accuracy;
        std_acc /= trials;
        rob_acc /= trials;
        for (const auto& r : std_reports) std_ss += (r.accuracy - std_acc) * (r.accuracy - std_acc);
        for (const auto& r : rob_reports) rob_ss += (r.accuracy - rob_acc) * (r.accuracy - rob_acc);
        const double se = std::sqrt((std_ss + rob_ss) / (trials * (trials - 1.0)));
        CHECK(rob_acc <= std_acc + 3.0 * se);
        // the calibrated attack never performs below chance beyond noise
        const double se_std = std::sqrt(std_ss / (trials * (trials - 1.0)));
        const double se_rob = std::sqrt(rob_ss / (trials * (trials - 1.0)));
        CHECK(std_acc >= 0.5 - 3.0 * se_std);
        CHECK(rob_acc >= 0.5 - 3.0 * se_rob);
    }
    CHECK_THROWS(run_membership_experiment(spec, 0, 0.0, 1, 1, ThresholdMethod::MedianMidpoint));
    CHECK_THROWS(run_membership_experiment(spec, 1, 0.0, 0, 1, ThresholdMethod::MedianMidpoint));
}

TEST_CASE("load_loss_trace") {
    SUBCASE("well-formed trace") {
        std::istringstream in("example_id,loss,is_member\na,0.25,1\nb,-1.5e-2,0\n");
        const auto records = load_loss_trace(in);
        REQUIRE(records.size() == 2);
        CHECK(records[0].example_id == "a");
        CHECK(records[0].loss == 0.25);
        CHECK(records[0].is_member);
        CHECK(records[1].loss == -0.015);
        CHECK(!records[1].is_member);
    }
    SUBCASE("trailing newline is optional") {
        std::istringstream in("example_id,loss,is_member\na,1,1\nb,2,0");
        CHECK(load_loss_trace(in).size() == 2);
    }
    SUBCASE("bad header") {
        std::istringstream in("id,loss,member\na,1,1\n");
        CHECK_THROWS_WITH_AS(load_loss_trace(in), doctest::Contains("header"), std::runtime_error);
    }
    SUBCASE("duplicate id names the offender") {
        std::istringstream in("example_id,loss,is_member\nx,1,1\nx,2,0\n");
        CHECK_THROWS_WITH_AS(load_loss_trace(in), doctest::Contains("'x'"), std::runtime_error);
    }
    SUBCASE("NaN loss is rejected with its line number") {
        std::istringstream in("example_id,loss,is_member\na,1,1\nb,NaN,0\n");
        CHECK_THROWS_WITH_AS(load_loss_trace(in), doctest::Contains("line 3"), std::runtime_error);
    }
    SUBCASE("malformed rows carry line numbers") {
        std::istringstream in("example_id,loss,is_member\na,1\n");
        CHECK_THROWS_WITH_AS(load_loss_trace(in), doctest::Contains("line 2"), std::runtime_error);
        std::istringstream in2("example_id,loss,is_member\na,xyz,1\n");
        CHECK_THROWS_WITH_AS(load_loss_trace(in2), doctest::Contains("line 2"), std::runtime_error);
        std::istringstream in3("example_id,loss,is_member\na,1,2\n");
        CHECK_THROWS_WITH_AS(load_loss_trace(in3), doctest::Contains("line 2"), std::runtime_error);
    }
    SUBCASE("empty input") {
        std::istringstream in("");
        CHECK_THROWS(load_loss_trace(in));
    }
}
