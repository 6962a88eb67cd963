#include "lossgap/experiment.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lossgap/bounds.hpp"
#include "lossgap/csv.hpp"
#include "lossgap/svg.hpp"

namespace lossgap {
namespace {

const char* regime_label(const ExperimentManifest& m, double n, double eps) {
    if (eps == 0.0) return "identical";
    switch (eps_regime(m.spec(), n, eps).kind) {
        case EpsRegimeKind::DecreasingInEps: return "decreasing_in_eps";
        case EpsRegimeKind::IncreasingInEps: return "increasing_in_eps";
        case EpsRegimeKind::AlwaysDecreasing: return "always_decreasing";
    }
    return "";
}

std::string method_label(ThresholdMethod m) {
    return m == ThresholdMethod::MedianMidpoint ? "median" : "mean";
}

}  // namespace

void ExperimentManifest::validate_for_theory() const {
    spec();  // validates d, mu, sigma, gamma
    if (n_grid.empty()) throw std::invalid_argument("n_grid must be non-empty");
    if (eps_list.empty()) throw std::invalid_argument("eps_list must be non-empty");
    for (double n : n_grid)
        if (!(n > 0.0)) throw std::invalid_argument("n_grid entries must be > 0");
    for (double e : eps_list)
        if (!(e >= 0.0)) throw std::invalid_argument("eps_list entries must be >= 0");
}

void ExperimentManifest::validate_for_mc() const {
    validate_for_theory();
    if (trials < 2) throw std::invalid_argument("trials must be >= 2");
    for (double n : n_grid)
        if (n != std::floor(n))
            throw std::invalid_argument("mc requires integer n values in n_grid");
}

ExperimentManifest manifest_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("manifest: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("manifest: expected a JSON object");

    static const char* known[] = {"d",       "mu",        "sigma",   "gamma",
                                  "n_grid",  "eps_list",  "trials",  "seed",
                                  "solver",  "adversary", "learning_rate",
                                  "epochs",  "threshold"};
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok) throw std::invalid_argument("manifest: unknown key '" + item.key() + "'");
    }

    ExperimentManifest m;
    if (j.contains("d")) m.d = j.at("d").get<int>();
    if (j.contains("mu")) m.mu = j.at("mu").get<double>();
    if (j.contains("sigma")) m.sigma = j.at("sigma").get<double>();
    if (j.contains("gamma")) m.gamma = j.at("gamma").get<double>();
    if (j.contains("trials")) m.trials = j.at("trials").get<long>();
    if (j.contains("seed")) m.master_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("learning_rate")) m.learning_rate = j.at("learning_rate").get<double>();
    if (j.contains("epochs")) m.epochs = j.at("epochs").get<long>();
    if (j.contains("eps_list")) m.eps_list = j.at("eps_list").get<std::vector<double>>();
    if (j.contains("n_grid")) {
        const auto& g = j.at("n_grid");
        if (g.is_array()) {
            m.n_grid = g.get<std::vector<double>>();
        } else if (g.is_object()) {
            const double from = g.at("from").get<double>();
            const double to = g.at("to").get<double>();
            const int points = g.at("points").get<int>();
            const bool log_spaced = g.value("log", false);
            if (points < 2 || !(from > 0.0) || !(to > from))
                throw std::invalid_argument("manifest: bad n_grid range");
            for (int i = 0; i < points; ++i) {
                const double t = static_cast<double>(i) / (points - 1);
                m.n_grid.push_back(log_spaced
                                       ? std::exp(std::log(from) + t * (std::log(to) - std::log(from)))
                                       : from + t * (to - from));
            }
        } else {
            throw std::invalid_argument("manifest: n_grid must be an array or a range object");
        }
    }
    if (j.contains("solver")) {
        const auto s = j.at("solver").get<std::string>();
        if (s == "exact") m.solver = SolverKind::ExactErm;
        else if (s == "gd") m.solver = SolverKind::GradientDescent;
        else throw std::invalid_argument("manifest: solver must be 'exact' or 'gd'");
    }
    if (j.contains("adversary")) {
        const auto a = j.at("adversary").get<std::string>();
        if (a == "none") m.adversary = Adversary::None;
        else if (a == "gradsign") m.adversary = Adversary::GradSign;
        else if (a == "meansign") m.adversary = Adversary::MeanSign;
        else throw std::invalid_argument("manifest: adversary must be none/gradsign/meansign");
    }
    if (j.contains("threshold")) {
        const auto t = j.at("threshold").get<std::string>();
        if (t == "median") m.threshold = ThresholdMethod::MedianMidpoint;
        else if (t == "mean") m.threshold = ThresholdMethod::MeanMidpoint;
        else throw std::invalid_argument("manifest: threshold must be 'median' or 'mean'");
    }
    return m;
}

std::string cmd_theory(const ExperimentManifest& m) {
    m.validate_for_theory();
    const GaussianSpec spec = m.spec();
    std::ostringstream out;
    write_csv_row(out, {"n", "eps", "r_std", "r_rob", "diff", "regime", "n_star", "n0",
                        "bracket_lo", "bracket_hi", "n1", "r_min"});
    for (double eps : m.eps_list) {
        std::string n0, blo, bhi, n1, rmin;
        if (eps > 2.0 * m.mu) {
            const auto root = rob_root(spec, eps);
            const auto minimum = rob_minimum(spec, eps);
            n0 = format_double(root->n0);
            blo = format_double(root->bracket_lo);
            bhi = format_double(root->bracket_hi);
            n1 = format_double(minimum.n1);
            rmin = format_double(minimum.value);
        }
        for (double n : m.n_grid) {
            const double r_std = loss_gap_std(spec, n);
            const double r_rob = loss_gap_rob(spec, n, eps);
            std::string n_star;
            if (eps > 0.0 && eps < m.mu)
                n_star = format_double(*eps_regime(spec, n, eps).threshold);
            write_csv_row(out, {format_double(n), format_double(eps), format_double(r_std),
                                format_double(r_rob), format_double(r_rob - r_std),
                                regime_label(m, n, eps), n_star, n0, blo, bhi, n1, rmin});
        }
    }
    return out.str();
}

std::string cmd_mc(const ExperimentManifest& m) {
    m.validate_for_mc();
    const GaussianSpec spec = m.spec();
    Solver solver;
    solver.kind = m.solver;
    solver.config.learning_rate = m.learning_rate;
    solver.config.epochs = m.epochs;
    solver.config.adversary = m.adversary;

    GapCurve curve;
    for (double eps : m.eps_list) {
        for (double n : m.n_grid) {
            GapPoint p;
            p.n = n;
            p.eps = eps;
            p.analytic_gap = eps == 0.0 ? loss_gap_std(spec, n) : loss_gap_rob(spec, n, eps);
            const GapEstimate est = empirical_loss_gap(spec, static_cast<long>(n), eps,
                                                       m.trials, m.master_seed, solver);
            p.empirical_mean = est.mean;
            p.empirical_stderr = est.stderr_;
            p.trials = est.trials;
            curve.push_back(p);
        }
    }

    std::ostringstream out;
    write_csv_row(out, {"n", "eps", "analytic", "empirical_mean", "empirical_stderr",
                        "trials", "z"});
    for (const GapPoint& p : curve) {
        const double z = *p.empirical_stderr > 0.0
                             ? (*p.empirical_mean - p.analytic_gap) / *p.empirical_stderr
                             : 0.0;
        write_csv_row(out, {format_double(p.n), format_double(p.eps),
                            format_double(p.analytic_gap), format_double(*p.empirical_mean),
                            format_double(*p.empirical_stderr), format_long(*p.trials),
                            format_double(z)});
    }
    return out.str();
}

AttackCsv cmd_attack(const ExperimentManifest& m) {
    m.validate_for_mc();
    const GaussianSpec spec = m.spec();
    std::ostringstream trials_out, agg_out;
    write_csv_row(trials_out, {"n", "eps", "trial", "tau", "accuracy", "loss_gap",
                               "n_members", "n_nonmembers", "method", "degenerate"});
    write_csv_row(agg_out, {"n", "eps", "trials", "mean_accuracy", "stderr_accuracy",
                            "mean_loss_gap", "stderr_loss_gap", "mean_tau"});
    for (double eps : m.eps_list) {
        for (double n : m.n_grid) {
            const long ni = static_cast<long>(n);
            const auto reports =
                run_membership_experiment(spec, ni, eps, m.trials, m.master_seed, m.threshold);
            double acc_mean = 0.0, gap_mean = 0.0, tau_mean = 0.0;
            for (std::size_t t = 0; t < reports.size(); ++t) {
                const auto& r = reports[t];
                write_csv_row(trials_out,
                              {format_double(n), format_double(eps), format_long(static_cast<long>(t)),
                               format_double(r.tau), format_double(r.accuracy),
                               format_double(r.loss_gap), format_long(r.n_members),
                               format_long(r.n_nonmembers), method_label(r.method),
                               r.degenerate_calibration ? "1" : "0"});
                acc_mean += r.accuracy;
                gap_mean += r.loss_gap;
                tau_mean += r.tau;
            }
            const double count = static_cast<double>(reports.size());
            acc_mean /= count;
            gap_mean /= count;
            tau_mean /= count;
            double acc_ss = 0.0, gap_ss = 0.0;
            for (const auto& r : reports) {
                acc_ss += (r.accuracy - acc_mean) * (r.accuracy - acc_mean);
                gap_ss += (r.loss_gap - gap_mean) * (r.loss_gap - gap_mean);
            }
            const double denom = count > 1 ? count - 1 : 1;
            write_csv_row(agg_out, {format_double(n), format_double(eps),
                                    format_long(static_cast<long>(reports.size())),
                                    format_double(acc_mean),
                                    format_double(std::sqrt(acc_ss / denom) / std::sqrt(count)),
                                    format_double(gap_mean),
                                    format_double(std::sqrt(gap_ss / denom) / std::sqrt(count)),
                                    format_double(tau_mean)});
        }
    }
    return {trials_out.str(), agg_out.str()};
}

std::string cmd_attack_trace(const std::vector<LossRecord>& records, ThresholdMethod method) {
    std::vector<double> member, nonmember;
    for (const auto& r : records) (r.is_member ? member : nonmember).push_back(r.loss);
    const Calibration cal = calibrate_threshold(std::move(member), std::move(nonmember), method);
    const AttackReport rep = attack_accuracy(records, cal.tau, method, cal.degenerate);
    std::ostringstream out;
    write_csv_row(out, {"tau", "accuracy", "loss_gap", "n_members", "n_nonmembers", "method",
                        "degenerate"});
    write_csv_row(out, {format_double(rep.tau), format_double(rep.accuracy),
                        format_double(rep.loss_gap), format_long(rep.n_members),
                        format_long(rep.n_nonmembers), method_label(rep.method),
                        rep.degenerate_calibration ? "1" : "0"});
    return out.str();
}

std::string cmd_bounds(const std::vector<double>& mu, const std::vector<double>& sigma,
                       double eps, const std::optional<double>& zeta) {
    const VectorSpec spec(mu, sigma);
    std::ostringstream out;
    write_csv_row(out, {"eps", "zeta", "bound_original", "bound_improved",
                        "bound_label_noise"});
    write_csv_row(out, {format_double(eps), zeta ? format_double(*zeta) : "",
                        format_double(bound_original(spec, eps)),
                        format_double(bound_improved(spec, eps)),
                        zeta ? format_double(bound_label_noise(spec, eps, *zeta)) : ""});
    return out.str();
}

std::string cmd_bayes(int d, double mu, double sigma) {
    const GaussianSpec spec(d, mu, sigma, 1.0);
    std::ostringstream out;
    write_csv_row(out, {"d", "mu", "sigma", "bayes_accuracy"});
    write_csv_row(out, {format_long(d), format_double(mu), format_double(sigma),
                        format_double(bayes_accuracy(spec))});
    return out.str();
}

std::string cmd_plot(const std::string& csv_text, const PlotRequest& request) {
    std::istringstream in(csv_text);
    const CsvTable table = read_csv(in);
    if (table.rows.empty()) throw std::invalid_argument("plot: input CSV has no data rows");
    const int xc = table.column(request.x_column);
    if (xc < 0) throw std::invalid_argument("plot: missing column '" + request.x_column + "'");
    if (request.y_columns.empty()) throw std::invalid_argument("plot: no y columns given");

    std::vector<PlotSeries> series;
    for (const auto& name : request.y_columns) {
        const int yc = table.column(name);
        if (yc < 0) throw std::invalid_argument("plot: missing column '" + name + "'");
        PlotSeries s;
        s.name = name;
        for (const auto& row : table.rows) {
            const auto& xs = row[static_cast<std::size_t>(xc)];
            const auto& ys = row[static_cast<std::size_t>(yc)];
            if (xs.empty() || ys.empty()) continue;
            s.x.push_back(std::stod(xs));
            s.y.push_back(std::stod(ys));
        }
        series.push_back(std::move(s));
    }
    PlotOptions opts;
    opts.title = request.title;
    opts.x_label = request.x_column;
    opts.log_x = request.log_x;
    return render_line_plot(series, opts);
}

std::string gap_curves_svg(const ExperimentManifest& m, const std::string& csv_text,
                           const std::string& y_column) {
    std::istringstream in(csv_text);
    const CsvTable table = read_csv(in);
    const int nc = table.column("n");
    const int ec = table.column("eps");
    const int yc = table.column(y_column);
    if (nc < 0 || ec < 0 || yc < 0)
        throw std::invalid_argument("gap curves: missing column");
    std::vector<PlotSeries> series;
    for (double eps : m.eps_list) {
        PlotSeries s;
        s.name = "eps=" + format_double(eps);
        const std::string tag = format_double(eps);
        for (const auto& row : table.rows) {
            if (row[static_cast<std::size_t>(ec)] != tag) continue;
            s.x.push_back(std::stod(row[static_cast<std::size_t>(nc)]));
            s.y.push_back(std::stod(row[static_cast<std::size_t>(yc)]));
        }
        series.push_back(std::move(s));
    }
    PlotOptions opts;
    opts.title = "loss gap vs training set size";
    opts.x_label = "n";
    opts.y_label = y_column;
    return render_line_plot(series, opts);
}

std::string cmd_train_trace(const ExperimentManifest& m, long n, double eps,
                            std::uint64_t seed) {
    const GaussianSpec spec = m.spec();
    const Dataset data = sample_dataset(spec, n, seed);
    TrainConfig cfg;
    cfg.learning_rate = m.learning_rate;
    cfg.epochs = m.epochs;
    cfg.eps = eps;
    cfg.adversary = eps == 0.0 ? Adversary::None : m.adversary;
    const auto [model, trace] = train(data, spec.gamma, cfg);
    (void)model;
    std::ostringstream out;
    write_csv_row(out, {"epoch", "mean_loss"});
    for (const auto& rec : trace.epochs)
        write_csv_row(out, {format_long(rec.epoch), format_double(rec.mean_loss)});
    return out.str();
}

}  // namespace lossgap
