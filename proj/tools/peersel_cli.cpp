// peersel: impartial peer selection mechanisms, analytic performance model,
// and a seeded Monte Carlo experiment harness.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "peersel/analytic.hpp"
#include "peersel/harness.hpp"

namespace {

using namespace peersel;

struct CommonOpts {
    ExperimentConfig config;
    std::vector<std::string> algorithm_names;
    std::string format = "csv";
    bool epsilon_given = false;
};

void add_grid_options(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--n", opts.config.n, "Number of agents")->capture_default_str();
    cmd->add_option("--m", opts.config.m_values, "Reviews per agent (repeatable)")
        ->capture_default_str();
    cmd->add_option("--k", opts.config.k_values, "Target selection size (repeatable)")
        ->capture_default_str();
    cmd->add_option("--clusters", opts.config.l, "Number of clusters l")->capture_default_str();
    cmd->add_option("--phi", opts.config.phi, "Mallows dispersion in [0,1]")
        ->capture_default_str();
    cmd->add_option("--trials", opts.config.trials, "Trials per grid cell")
        ->capture_default_str();
    cmd->add_option("--seed", opts.config.master_seed, "Master RNG seed")->capture_default_str();
    cmd->add_option("--threads", opts.config.threads, "Worker threads (0 = auto)")
        ->capture_default_str();
    cmd->add_option_function<double>(
           "--epsilon",
           [&opts](double e) {
               opts.config.epsilon_mode = EpsilonMode::fixed;
               opts.config.fixed_epsilon = e;
               opts.epsilon_given = true;
           },
           "Fixed slack parameter (default: calibrated per cell so the expected size is k)");
    cmd->add_option("--algorithms", opts.algorithm_names,
                    "Subset of peernomination,vanilla,partition,edp")
        ->delimiter(',');
    cmd->add_flag(
        "--shared-assignment",
        [&opts](std::int64_t) { opts.config.shared_clustered_assignment = true; },
        "Run every mechanism on the single clustered assignment instead of giving "
        "PeerNomination/Vanilla their own unclustered one");
    cmd->add_option("--out", opts.config.output_path, "Output file path")->required();
    cmd->add_option("--format", opts.format, "Output format: csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
}

void finalize(CommonOpts& opts) {
    if (!opts.algorithm_names.empty()) {
        opts.config.algorithms.clear();
        for (const auto& name : opts.algorithm_names)
            opts.config.algorithms.push_back(algorithm_from_name(name));
    }
}

OutputFormat parse_format(const std::string& f) {
    return f == "jsonl" ? OutputFormat::json_lines : OutputFormat::csv;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Impartial peer selection: mechanisms, analytic model, experiment harness"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value config file");

    CommonOpts sim_opts;
    auto* simulate = app.add_subcommand(
        "simulate", "Monte Carlo comparison of mechanisms over the (m, k) grid");
    add_grid_options(simulate, sim_opts);

    CommonOpts forced_opts;
    auto* forced = app.add_subcommand(
        "forced-size", "Run PeerNomination, then EDP with k forced to PeerNomination's size");
    add_grid_options(forced, forced_opts);

    struct {
        int n = 130, m = 9, k = 30, grid = 200;
        double epsilon = 0.0, target = -1.0, tolerance = 0.05;
        std::string out;
    } an;

    auto* analytic_cmd =
        app.add_subcommand("analytic", "Print analytic expected size and recall");
    analytic_cmd->add_option("--n", an.n)->capture_default_str();
    analytic_cmd->add_option("--m", an.m)->capture_default_str();
    analytic_cmd->add_option("--k", an.k)->capture_default_str();
    analytic_cmd->add_option("--epsilon", an.epsilon, "Slack parameter")->capture_default_str();
    analytic_cmd->add_option("--out", an.out,
                             "Optional CSV of the per-rank acceptance curve (r, accept_prob)");

    auto* calibrate = app.add_subcommand(
        "calibrate", "Find epsilon so the analytic expected size hits the target");
    calibrate->add_option("--n", an.n)->capture_default_str();
    calibrate->add_option("--m", an.m)->capture_default_str();
    calibrate->add_option("--k", an.k)->capture_default_str();
    calibrate->add_option("--target", an.target, "Target expected size (default: k)");
    calibrate->add_option("--tol", an.tolerance, "Size tolerance")->capture_default_str();

    auto* curves = app.add_subcommand(
        "curves", "Analytic ROC/PR sweep: quota from 0 to m, CSV of epsilon,quota,tpr,fpr,ppv");
    curves->add_option("--n", an.n)->capture_default_str();
    curves->add_option("--m", an.m)->capture_default_str();
    curves->add_option("--k", an.k)->capture_default_str();
    curves->add_option("--grid", an.grid, "Number of grid points")->capture_default_str();
    curves->add_option("--out", an.out, "Output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            finalize(sim_opts);
            auto rows = run_experiment(sim_opts.config);
            write_results(rows, sim_opts.config.output_path, parse_format(sim_opts.format));
            std::cout << rows.size() << " rows written to " << sim_opts.config.output_path
                      << "\n";
        } else if (forced->parsed()) {
            finalize(forced_opts);
            auto rows = run_forced_size_experiment(forced_opts.config);
            write_results(rows, forced_opts.config.output_path, parse_format(forced_opts.format));
            std::cout << rows.size() << " rows written to " << forced_opts.config.output_path
                      << "\n";
        } else if (analytic_cmd->parsed()) {
            std::printf("n=%d m=%d k=%d epsilon=%g\n", an.n, an.m, an.k, an.epsilon);
            std::printf("expected_size   %.4f\n",
                        analytic::expected_size(an.n, an.m, an.k, an.epsilon));
            std::printf("expected_recall %.4f\n",
                        analytic::expected_recall(an.n, an.m, an.k, an.epsilon));
            if (!an.out.empty()) {
                std::ofstream out(an.out);
                out << "r,accept_prob\n";
                for (const auto& p : analytic::acceptance_curve(an.n, an.m, an.k, an.epsilon).points)
                    out << p.rank << ',' << p.accept_prob << "\n";
            }
        } else if (calibrate->parsed()) {
            const double target = an.target > 0 ? an.target : an.k;
            const double eps = analytic::calibrate_epsilon(an.n, an.m, an.k, target, an.tolerance);
            std::printf("epsilon %.4f (expected size %.4f)\n", eps,
                        analytic::expected_size(an.n, an.m, an.k, eps));
        } else if (curves->parsed()) {
            auto points = analytic::roc_pr_curves(an.n, an.m, an.k, an.grid);
            std::ofstream out(an.out);
            if (!out) throw std::runtime_error("cannot open " + an.out);
            out << "epsilon,quota,tpr,fpr,ppv\n";
            for (const auto& p : points)
                out << p.epsilon << ',' << p.quota << ',' << p.tpr << ',' << p.fpr << ',' << p.ppv
                    << "\n";
            std::cout << points.size() << " points written to " << an.out << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
