#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lossgap/analytic.hpp"

namespace lossgap {

// Per-example loss observation with its membership bit; the unit the attack
// machinery consumes, whether produced in-process or loaded from a trace file.
struct LossRecord {
    std::string example_id;
    double loss;
    bool is_member;
};

enum class ThresholdMethod { MedianMidpoint, MeanMidpoint };

struct Calibration {
    double tau;
    bool degenerate;  // the two calibration statistics coincided
};

struct AttackReport {
    double tau = 0.0;
    double accuracy = 0.0;
    double loss_gap = 0.0;  // mean nonmember loss - mean member loss
    long n_members = 0;
    long n_nonmembers = 0;
    ThresholdMethod method = ThresholdMethod::MedianMidpoint;
    bool degenerate_calibration = false;
};

// tau = midpoint of the two per-class statistics (median or mean). The median
// of an even-length list is the midpoint of the two central order statistics.
Calibration calibrate_threshold(std::vector<double> member_losses,
                                std::vector<double> nonmember_losses,
                                ThresholdMethod method);

// Predict member iff loss < tau (strictly; ties count as nonmember) and score
// against the true membership bits. Requires at least one record of each class.
AttackReport attack_accuracy(const std::vector<LossRecord>& records, double tau,
                             ThresholdMethod method = ThresholdMethod::MedianMidpoint,
                             bool degenerate = false);

// Leakage of example b relative to example a under a constant threshold:
// loss_b - loss_a. Antisymmetric, zero on the diagonal.
double comparative_leakage(double loss_a, double loss_b);

// Shadow-calibrated threshold attack on the Gaussian model. Per trial: draw
// shadow train/test sets and fit the shadow model (exact ERM), calibrate tau
// from its per-example losses, then draw fresh target train/test sets, fit the
// target model and score all 2n examples. Shadow and target use disjoint seed
// streams (trial_seed(master, 2t) and trial_seed(master, 2t+1)). Trials may run
// concurrently; the report list is in trial order.
std::vector<AttackReport> run_membership_experiment(const GaussianSpec& spec, long n,
                                                    double eps, long trials,
                                                    std::uint64_t master_seed,
                                                    ThresholdMethod method);

// Loss-trace CSV ingestion. Schema (exact): header `example_id,loss,is_member`;
// `loss` a decimal float literal; `is_member` exactly `0` or `1`; UTF-8 with LF
// line endings, trailing newline optional. Malformed rows are reported with
// their line number; duplicate ids and non-finite losses are rejected.
std::vector<LossRecord> load_loss_trace(std::istream& in);
std::vector<LossRecord> load_loss_trace(const std::string& path);

}  // namespace lossgap
