#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lossgap/csv.hpp"
#include "lossgap/experiment.hpp"

namespace {

using lossgap::ExperimentManifest;

std::vector<double> split_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw CLI::ValidationError("expected a comma-separated number list");
    return out;
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Shared experiment flags; values set on the command line win over the manifest.
struct ManifestFlags {
    std::string manifest_path;
    int d = 0;
    double mu = 0, sigma = 0, gamma = 0;
    std::string n_grid, eps_list;
    double eps = -1.0;
    long trials = 0;
    std::uint64_t seed = 0;
    std::string solver, adversary, threshold;
    double lr = 0;
    long epochs = 0;

    CLI::App* app = nullptr;

    void attach(CLI::App* cmd) {
        app = cmd;
        cmd->add_option("--manifest", manifest_path, "JSON manifest with experiment parameters");
        cmd->add_option("--d", d, "data dimension");
        cmd->add_option("--mu", mu, "per-coordinate class mean (> 0)");
        cmd->add_option("--sigma", sigma, "per-coordinate standard deviation (> 0)");
        cmd->add_option("--gamma", gamma, "sup-norm bound on theta (> 0)");
        cmd->add_option("--n-grid", n_grid, "comma-separated training set sizes");
        cmd->add_option("--eps-list", eps_list, "comma-separated adversarial radii");
        cmd->add_option("--eps", eps, "single adversarial radius (shorthand for --eps-list)");
        cmd->add_option("--trials", trials, "Monte Carlo trials per grid point");
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--solver", solver, "exact | gd")
            ->check(CLI::IsMember({"exact", "gd"}));
        cmd->add_option("--adversary", adversary, "none | gradsign | meansign")
            ->check(CLI::IsMember({"none", "gradsign", "meansign"}));
        cmd->add_option("--threshold", threshold, "median | mean")
            ->check(CLI::IsMember({"median", "mean"}));
        cmd->add_option("--lr", lr, "gradient descent learning rate");
        cmd->add_option("--epochs", epochs, "gradient descent epochs");
    }

    ExperimentManifest build() const {
        ExperimentManifest m;
        if (app->count("--manifest")) m = lossgap::manifest_from_json(read_file(manifest_path));
        if (app->count("--d")) m.d = d;
        if (app->count("--mu")) m.mu = mu;
        if (app->count("--sigma")) m.sigma = sigma;
        if (app->count("--gamma")) m.gamma = gamma;
        if (app->count("--n-grid")) m.n_grid = split_doubles(n_grid);
        if (app->count("--eps-list")) m.eps_list = split_doubles(eps_list);
        if (app->count("--eps")) m.eps_list = {eps};
        if (app->count("--trials")) m.trials = trials;
        if (app->count("--seed")) m.master_seed = seed;
        if (app->count("--solver"))
            m.solver = solver == "gd" ? lossgap::SolverKind::GradientDescent
                                      : lossgap::SolverKind::ExactErm;
        if (app->count("--adversary")) {
            if (adversary == "none") m.adversary = lossgap::Adversary::None;
            if (adversary == "gradsign") m.adversary = lossgap::Adversary::GradSign;
            if (adversary == "meansign") m.adversary = lossgap::Adversary::MeanSign;
        }
        if (app->count("--threshold"))
            m.threshold = threshold == "mean" ? lossgap::ThresholdMethod::MeanMidpoint
                                              : lossgap::ThresholdMethod::MedianMidpoint;
        if (app->count("--lr")) m.learning_rate = lr;
        if (app->count("--epochs")) m.epochs = epochs;
        return m;
    }
};

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const auto dot = path.rfind('.');
    const auto slash = path.rfind('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"loss-gap analysis of standard vs adversarially trained linear models "
                 "on Gaussian data"};
    app.require_subcommand(1);

    // theory ------------------------------------------------------------------
    auto* theory = app.add_subcommand("theory", "closed-form gap curves over (n, eps)");
    ManifestFlags theory_flags;
    theory_flags.attach(theory);
    std::string theory_out, theory_svg;
    theory->add_option("--out", theory_out, "output CSV path")->required();
    theory->add_option("--svg", theory_svg, "also render the curves to this SVG path");

    // mc ----------------------------------------------------------------------
    auto* mc = app.add_subcommand("mc", "Monte Carlo gap estimates vs the closed forms");
    ManifestFlags mc_flags;
    mc_flags.attach(mc);
    std::string mc_out, mc_svg;
    mc->add_option("--out", mc_out, "output CSV path")->required();
    mc->add_option("--svg", mc_svg, "also render the empirical curves to this SVG path");

    // attack ------------------------------------------------------------------
    auto* attack = app.add_subcommand("attack", "membership-inference experiment or trace audit");
    ManifestFlags attack_flags;
    attack_flags.attach(attack);
    std::string attack_out, attack_trace;
    attack->add_option("--out", attack_out, "output CSV path")->required();
    attack->add_option("--trace", attack_trace,
                       "audit an existing loss-trace CSV instead of running the experiment");

    // bounds ------------------------------------------------------------------
    auto* bounds = app.add_subcommand("bounds", "generalization-gap sample-size bounds");
    std::string bounds_mu, bounds_sigma, bounds_out;
    double bounds_eps = 0.0;
    double bounds_zeta = 0.0;
    bounds->add_option("--mu-list", bounds_mu, "comma-separated per-coordinate means")->required();
    bounds->add_option("--sigma-list", bounds_sigma, "comma-separated per-coordinate stds")
        ->required();
    bounds->add_option("--eps", bounds_eps, "adversarial radius")->required();
    auto* zeta_opt = bounds->add_option("--zeta", bounds_zeta, "label-noise rate in (1/2, 1]");
    bounds->add_option("--out", bounds_out, "output CSV path (stdout when omitted)");

    // bayes -------------------------------------------------------------------
    auto* bayes = app.add_subcommand("bayes", "Bayes accuracy Phi(sqrt(d)*mu/sigma)");
    int bayes_d = 100;
    double bayes_mu = 1.0, bayes_sigma = 1.0;
    std::string bayes_out;
    bayes->add_option("--d", bayes_d, "data dimension");
    bayes->add_option("--mu", bayes_mu, "per-coordinate class mean");
    bayes->add_option("--sigma", bayes_sigma, "per-coordinate standard deviation");
    bayes->add_option("--out", bayes_out, "output CSV path (stdout when omitted)");

    // plot --------------------------------------------------------------------
    auto* plot = app.add_subcommand("plot", "render CSV columns as an SVG line chart");
    std::string plot_in, plot_out, plot_x, plot_y, plot_title;
    bool plot_logx = false;
    plot->add_option("--in", plot_in, "input CSV path")->required();
    plot->add_option("--out", plot_out, "output SVG path")->required();
    plot->add_option("--x", plot_x, "x-axis column name")->required();
    plot->add_option("--y", plot_y, "comma-separated y column names")->required();
    plot->add_flag("--logx", plot_logx, "logarithmic x axis");
    plot->add_option("--title", plot_title, "chart title");

    // trace -------------------------------------------------------------------
    auto* trace = app.add_subcommand("trace", "train once and export (epoch, mean_loss)");
    ManifestFlags trace_flags;
    trace_flags.attach(trace);
    long trace_n = 10;
    std::string trace_out;
    trace->add_option("--n", trace_n, "training set size");
    trace->add_option("--out", trace_out, "output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*theory) {
            const auto m = theory_flags.build();
            const std::string csv = lossgap::cmd_theory(m);
            if (!theory_svg.empty())
                write_file(theory_svg, lossgap::gap_curves_svg(m, csv, "r_rob"));
            write_file(theory_out, csv);
        } else if (*mc) {
            const auto m = mc_flags.build();
            const std::string csv = lossgap::cmd_mc(m);
            if (!mc_svg.empty())
                write_file(mc_svg, lossgap::gap_curves_svg(m, csv, "empirical_mean"));
            write_file(mc_out, csv);
        } else if (*attack) {
            if (!attack_trace.empty()) {
                const auto records = lossgap::load_loss_trace(attack_trace);
                const auto m = attack_flags.build();
                write_file(attack_out, lossgap::cmd_attack_trace(records, m.threshold));
            } else {
                const auto m = attack_flags.build();
                const auto result = lossgap::cmd_attack(m);
                write_file(attack_out, result.trials_csv);
                write_file(with_suffix(attack_out, "_agg"), result.aggregate_csv);
            }
        } else if (*bounds) {
            std::optional<double> zeta;
            if (zeta_opt->count()) zeta = bounds_zeta;
            const std::string csv = lossgap::cmd_bounds(split_doubles(bounds_mu),
                                                        split_doubles(bounds_sigma),
                                                        bounds_eps, zeta);
            if (bounds_out.empty()) std::cout << csv;
            else write_file(bounds_out, csv);
        } else if (*bayes) {
            const std::string csv = lossgap::cmd_bayes(bayes_d, bayes_mu, bayes_sigma);
            if (bayes_out.empty()) std::cout << csv;
            else write_file(bayes_out, csv);
        } else if (*plot) {
            lossgap::PlotRequest req;
            req.x_column = plot_x;
            req.y_columns = split_names(plot_y);
            req.log_x = plot_logx;
            req.title = plot_title;
            const std::string svg = lossgap::cmd_plot(read_file(plot_in), req);
            write_file(plot_out, svg);
        } else if (*trace) {
            const auto m = trace_flags.build();
            const double eps = m.eps_list.empty() ? 0.0 : m.eps_list.front();
            write_file(trace_out, lossgap::cmd_train_trace(m, trace_n, eps, m.master_seed));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
