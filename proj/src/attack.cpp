#include "lossgap/attack.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "lossgap/gaussian_lab.hpp"
#include "lossgap/rng.hpp"

namespace lossgap {
namespace {

double median_of(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

Calibration calibrate_threshold(std::vector<double> member_losses,
                                std::vector<double> nonmember_losses,
                                ThresholdMethod method) {
    if (member_losses.empty() || nonmember_losses.empty())
        throw std::invalid_argument("calibrate_threshold: empty loss list");
    double sm, sn;
    if (method == ThresholdMethod::MedianMidpoint) {
        sm = median_of(member_losses);
        sn = median_of(nonmember_losses);
    } else {
        sm = mean_of(member_losses);
        sn = mean_of(nonmember_losses);
    }
    return Calibration{0.5 * (sm + sn), sm == sn};
}

AttackReport attack_accuracy(const std::vector<LossRecord>& records, double tau,
                             ThresholdMethod method, bool degenerate) {
    if (records.empty()) throw std::invalid_argument("attack_accuracy: no records");
    long members = 0, nonmembers = 0, correct = 0;
    double member_sum = 0.0, nonmember_sum = 0.0;
    for (const auto& r : records) {
        const bool predicted_member = r.loss < tau;
        if (r.is_member) {
            ++members;
            member_sum += r.loss;
            if (predicted_member) ++correct;
        } else {
            ++nonmembers;
            nonmember_sum += r.loss;
            if (!predicted_member) ++correct;
        }
    }
    if (members == 0 || nonmembers == 0)
        throw std::invalid_argument("attack_accuracy: records must contain both classes");
    AttackReport rep;
    rep.tau = tau;
    rep.accuracy = static_cast<double>(correct) / static_cast<double>(members + nonmembers);
    rep.loss_gap = nonmember_sum / static_cast<double>(nonmembers) -
                   member_sum / static_cast<double>(members);
    rep.n_members = members;
    rep.n_nonmembers = nonmembers;
    rep.method = method;
    rep.degenerate_calibration = degenerate;
    return rep;
}

double comparative_leakage(double loss_a, double loss_b) {
    if (!std::isfinite(loss_a) || !std::isfinite(loss_b))
        throw std::invalid_argument("comparative_leakage: losses must be finite");
    return loss_b - loss_a;
}

std::vector<AttackReport> run_membership_experiment(const GaussianSpec& spec, long n,
                                                    double eps, long trials,
                                                    std::uint64_t master_seed,
                                                    ThresholdMethod method) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");

    std::vector<AttackReport> reports(static_cast<std::size_t>(trials));

    auto fit = [&](const Dataset& data) {
        return eps == 0.0 ? erm_std(data, spec.gamma) : erm_rob(data, spec.gamma, eps);
    };

    auto run_trial = [&](long t) {
        Rng shadow_stream(trial_seed(master_seed, 2 * static_cast<std::uint64_t>(t)));
        Rng target_stream(trial_seed(master_seed, 2 * static_cast<std::uint64_t>(t) + 1));

        const Dataset shadow_train = sample_dataset(spec, n, shadow_stream.next_u64());
        const Dataset shadow_test = sample_dataset(spec, n, shadow_stream.next_u64());
        const LinearModel shadow = fit(shadow_train);
        std::vector<double> member_losses, nonmember_losses;
        member_losses.reserve(shadow_train.samples.size());
        nonmember_losses.reserve(shadow_test.samples.size());
        for (const auto& s : shadow_train.samples) member_losses.push_back(linear_loss(shadow, s));
        for (const auto& s : shadow_test.samples) nonmember_losses.push_back(linear_loss(shadow, s));
        const Calibration cal = calibrate_threshold(std::move(member_losses),
                                                    std::move(nonmember_losses), method);

        const Dataset target_train = sample_dataset(spec, n, target_stream.next_u64());
        const Dataset target_test = sample_dataset(spec, n, target_stream.next_u64());
        const LinearModel target = fit(target_train);
        std::vector<LossRecord> records;
        records.reserve(2 * static_cast<std::size_t>(n));
        long id = 0;
        for (const auto& s : target_train.samples)
            records.push_back({"tr" + std::to_string(id++), linear_loss(target, s), true});
        id = 0;
        for (const auto& s : target_test.samples)
            records.push_back({"te" + std::to_string(id++), linear_loss(target, s), false});

        reports[static_cast<std::size_t>(t)] =
            attack_accuracy(records, cal.tau, method, cal.degenerate);
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(std::min<long>(trials, static_cast<long>(hw)));
    if (workers <= 1) {
        for (long t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mutex;
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
    return reports;
}

std::vector<LossRecord> load_loss_trace(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("loss trace: empty input, expected header");
    if (line != "example_id,loss,is_member")
        throw std::runtime_error("loss trace line 1: bad header '" + line +
                                 "', expected 'example_id,loss,is_member'");

    std::vector<LossRecord> out;
    std::unordered_set<std::string> seen;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            throw std::runtime_error("loss trace line " + std::to_string(line_no) +
                                     ": empty row");
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos ||
            line.find(',', c2 + 1) != std::string::npos) {
            throw std::runtime_error("loss trace line " + std::to_string(line_no) +
                                     ": expected 3 comma-separated fields");
        }
        std::string id = line.substr(0, c1);
        const std::string loss_text = line.substr(c1 + 1, c2 - c1 - 1);
        const std::string member_text = line.substr(c2 + 1);

        if (id.empty())
            throw std::runtime_error("loss trace line " + std::to_string(line_no) +
                                     ": empty example_id");
        double loss = 0.0;
        const auto [ptr, ec] =
            std::from_chars(loss_text.data(), loss_text.data() + loss_text.size(), loss);
        if (ec != std::errc{} || ptr != loss_text.data() + loss_text.size())
            throw std::runtime_error("loss trace line " + std::to_string(line_no) +
                                     ": bad loss value '" + loss_text + "'");
        if (!std::isfinite(loss))
            throw std::runtime_error("loss trace line " + std::to_string(line_no) +
                                     ": non-finite loss '" + loss_text + "'");
        bool member;
        if (member_text == "1") member = true;
        else if (member_text == "0") member = false;
        else
            throw std::runtime_error("loss trace line " + std::to_string(line_no) +
                                     ": is_member must be 0 or 1, got '" + member_text + "'");
        if (!seen.insert(id).second)
            throw std::runtime_error("loss trace line " + std::to_string(line_no) +
                                     ": duplicate example_id '" + id + "'");
        out.push_back({std::move(id), loss, member});
    }
    return out;
}

std::vector<LossRecord> load_loss_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("loss trace: cannot open '" + path + "'");
    return load_loss_trace(in);
}

}  // namespace lossgap
