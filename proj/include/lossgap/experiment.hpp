#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lossgap/analytic.hpp"
#include "lossgap/attack.hpp"
#include "lossgap/trainer.hpp"

namespace lossgap {

// Everything an experiment run depends on. Identical manifests produce
// byte-identical outputs; no environment state is consulted.
struct ExperimentManifest {
    int d = 100;
    double mu = 1.0;
    double sigma = 1.0;
    double gamma = 1.0;
    std::vector<double> n_grid;      // reals allowed for theory; mc needs integers
    std::vector<double> eps_list;
    long trials = 1000;
    std::uint64_t master_seed = 1;
    SolverKind solver = SolverKind::ExactErm;
    Adversary adversary = Adversary::GradSign;  // adversary for the gd solver
    double learning_rate = 0.001;
    long epochs = 200;
    ThresholdMethod threshold = ThresholdMethod::MedianMidpoint;

    GaussianSpec spec() const { return GaussianSpec(d, mu, sigma, gamma); }
    void validate_for_theory() const;
    void validate_for_mc() const;   // additionally requires integer n, trials >= 2
};

// Parse a JSON manifest document. Unknown keys are rejected so typos cannot
// silently change an experiment. n_grid is either an array of numbers or
// {"from": a, "to": b, "points": k, "log": true|false}.
ExperimentManifest manifest_from_json(const std::string& text);

// `theory`: one row per (n, eps) with both closed-form gaps, their difference,
// the eps-regime label, and root/minimum annotations where eps > 2*mu.
std::string cmd_theory(const ExperimentManifest& m);

// `mc`: Monte Carlo gap estimates joined with the analytic values and a
// z-score column (empirical - analytic)/stderr.
std::string cmd_mc(const ExperimentManifest& m);

// `attack` over the Gaussian experiment: per-trial rows and per-(n,eps)
// aggregate rows, returned as two CSV documents.
struct AttackCsv {
    std::string trials_csv;
    std::string aggregate_csv;
};
AttackCsv cmd_attack(const ExperimentManifest& m);

// `attack` on an external loss trace: calibrates tau on the trace itself with
// the chosen method and reports the in-sample audit.
std::string cmd_attack_trace(const std::vector<LossRecord>& records,
                             ThresholdMethod method);

// `bounds`: evaluates the three bounds for one (mu, sigma, eps[, zeta]).
std::string cmd_bounds(const std::vector<double>& mu, const std::vector<double>& sigma,
                       double eps, const std::optional<double>& zeta);

// `bayes`: d,mu,sigma,bayes_accuracy as CSV.
std::string cmd_bayes(int d, double mu, double sigma);

// `plot`: renders named CSV columns as an SVG line chart. y_columns become one
// series each; a missing column is an error naming it; an input without data
// rows is an error and nothing is written.
struct PlotRequest {
    std::string x_column;
    std::vector<std::string> y_columns;
    bool log_x = false;
    std::string title;
};
std::string cmd_plot(const std::string& csv_text, const PlotRequest& request);

// gap-curve SVG shared by `theory --svg` and `mc --svg`
std::string gap_curves_svg(const ExperimentManifest& m, const std::string& csv_text,
                           const std::string& y_column);

// `trace`: trains once on a sampled dataset and exports (epoch, mean_loss).
std::string cmd_train_trace(const ExperimentManifest& m, long n, double eps,
                            std::uint64_t seed);

}  // namespace lossgap
