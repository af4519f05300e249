#include "peersel/harness.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "peersel/analytic.hpp"
#include "peersel/assignment.hpp"
#include "peersel/baselines.hpp"
#include "peersel/metrics.hpp"
#include "peersel/noise.hpp"
#include "peersel/peernomination.hpp"
#include "peersel/rng.hpp"

namespace peersel {

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::peernomination: return "peernomination";
        case Algorithm::vanilla: return "vanilla";
        case Algorithm::partition: return "partition";
        case Algorithm::edp: return "edp";
    }
    return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
    for (Algorithm a : {Algorithm::peernomination, Algorithm::vanilla, Algorithm::partition,
                        Algorithm::edp})
        if (name == algorithm_name(a)) return a;
    throw std::invalid_argument("unknown algorithm: " + name);
}

namespace {

bool uses(const ExperimentConfig& config, Algorithm a) {
    for (Algorithm x : config.algorithms)
        if (x == a) return true;
    return false;
}

bool needs_clusters(const ExperimentConfig& config) {
    return config.shared_clustered_assignment || uses(config, Algorithm::partition) ||
           uses(config, Algorithm::edp);
}

ResultRow make_row(int trial, Algorithm algo, const Instance& inst, const ExperimentConfig& config,
                   double epsilon, const SelectionResult& sel) {
    const auto c = confusion(inst, sel);
    const auto r = rates(c);
    return ResultRow{trial, algo,  inst.n, inst.m, inst.k, config.l,
                     config.phi,   epsilon, static_cast<int>(sel.accepted.size()),
                     c.tp,  c.fp,  c.tn,   c.fn,   r.ppv,  r.tpr, r.fpr};
}

struct TrialData {
    Clustering clustering;
    Assignment clustered;
    Profile clustered_profile;
    Assignment plain;  // used only when assignments are not shared
    Profile plain_profile;
    std::uint64_t seed = 0;
};

TrialData prepare_trial(const ExperimentConfig& config, const Instance& inst,
                        std::uint64_t cell_id, int trial) {
    TrialData d;
    d.seed = sub_seed(config.master_seed, {cell_id, static_cast<std::uint64_t>(trial)});

    std::vector<std::vector<AgentId>> fulls(inst.n + 1);
    for (AgentId i = 1; i <= inst.n; ++i)
        fulls[i] = sample_mallows_ranking(
            inst.n, {config.phi},
            sub_seed(d.seed, {seed_tag::mallows, static_cast<std::uint64_t>(i)}));

    if (needs_clusters(config)) {
        auto [clustering, assignment] = generate_clustered_assignment(
            inst, config.l, sub_seed(d.seed, {seed_tag::clustered_assignment}));
        d.clustering = std::move(clustering);
        d.clustered = std::move(assignment);
        d.clustered_profile = project_profile(d.clustered, fulls);
    }
    if (!config.shared_clustered_assignment &&
        (uses(config, Algorithm::peernomination) || uses(config, Algorithm::vanilla))) {
        d.plain = generate_assignment(inst, sub_seed(d.seed, {seed_tag::assignment}));
        d.plain_profile = project_profile(d.plain, fulls);
    }
    return d;
}

double cell_epsilon(const ExperimentConfig& config, const Instance& inst) {
    if (config.epsilon_mode == EpsilonMode::fixed) return config.fixed_epsilon;
    return analytic::calibrate_epsilon(inst.n, inst.m, inst.k, inst.k, 0.05);
}

// Deterministic parallel map over trials: results land at their trial index.
template <typename Fn>
void for_each_trial(int trials, int threads, Fn&& fn) {
    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 1 || trials < 4) {
        for (int t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::vector<std::future<void>> futures;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w)
        futures.push_back(std::async(std::launch::async, [&] {
            for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) fn(t);
        }));
    for (auto& f : futures) f.get();
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
    std::vector<ResultRow> all;
    std::uint64_t cell_id = 0;
    for (int m : config.m_values) {
        for (int k : config.k_values) {
            const Instance inst{config.n, m, k};
            if (!inst.valid())
                throw std::invalid_argument("run_experiment: infeasible cell m=" +
                                            std::to_string(m) + " k=" + std::to_string(k));
            const double epsilon = cell_epsilon(config, inst);
            std::vector<std::vector<ResultRow>> per_trial(config.trials);
            const std::uint64_t cell = cell_id++;
            for_each_trial(config.trials, config.threads, [&](int t) {
                TrialData d = prepare_trial(config, inst, cell, t);
                const bool shared = config.shared_clustered_assignment;
                const Assignment& free_assignment = shared ? d.clustered : d.plain;
                const Profile& free_profile = shared ? d.clustered_profile : d.plain_profile;
                auto& rows = per_trial[t];
                for (Algorithm algo : config.algorithms) {
                    switch (algo) {
                        case Algorithm::peernomination:
                            rows.push_back(make_row(
                                t, algo, inst, config, epsilon,
                                run_peer_nomination(inst, free_assignment, free_profile, epsilon,
                                                    sub_seed(d.seed, {seed_tag::peernomination}))));
                            break;
                        case Algorithm::vanilla:
                            rows.push_back(make_row(t, algo, inst, config, epsilon,
                                                    run_vanilla(inst, free_assignment,
                                                                free_profile)));
                            break;
                        case Algorithm::partition:
                            rows.push_back(make_row(
                                t, algo, inst, config, epsilon,
                                run_partition(inst, d.clustering, d.clustered,
                                              d.clustered_profile,
                                              sub_seed(d.seed, {seed_tag::partition_extras}))));
                            break;
                        case Algorithm::edp:
                            rows.push_back(make_row(
                                t, algo, inst, config, epsilon,
                                run_edp(inst, d.clustering, d.clustered, d.clustered_profile,
                                        sub_seed(d.seed, {seed_tag::apportionment}))));
                            break;
                    }
                }
            });
            for (auto& rows : per_trial) all.insert(all.end(), rows.begin(), rows.end());
        }
    }
    return all;
}

std::vector<ResultRow> run_forced_size_experiment(const ExperimentConfig& config) {
    ExperimentConfig cfg = config;
    cfg.shared_clustered_assignment = true;  // both mechanisms share the clustered assignment
    std::vector<ResultRow> all;
    std::uint64_t cell_id = 0;
    for (int m : cfg.m_values) {
        for (int k : cfg.k_values) {
            const Instance inst{cfg.n, m, k};
            if (!inst.valid())
                throw std::invalid_argument("run_forced_size_experiment: infeasible cell m=" +
                                            std::to_string(m) + " k=" + std::to_string(k));
            const double epsilon = cell_epsilon(cfg, inst);
            std::vector<std::vector<ResultRow>> per_trial(cfg.trials);
            const std::uint64_t cell = cell_id++;
            for_each_trial(cfg.trials, cfg.threads, [&](int t) {
                TrialData d = prepare_trial(cfg, inst, cell, t);
                auto pn = run_peer_nomination(inst, d.clustered, d.clustered_profile, epsilon,
                                              sub_seed(d.seed, {seed_tag::peernomination}));
                const int realized = static_cast<int>(pn.accepted.size());
                auto edp = run_edp(inst, d.clustering, d.clustered, d.clustered_profile,
                                   sub_seed(d.seed, {seed_tag::apportionment}), realized);
                per_trial[t].push_back(
                    make_row(t, Algorithm::peernomination, inst, cfg, epsilon, pn));
                per_trial[t].push_back(make_row(t, Algorithm::edp, inst, cfg, epsilon, edp));
            });
            for (auto& rows : per_trial) all.insert(all.end(), rows.begin(), rows.end());
        }
    }
    return all;
}

namespace {

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

constexpr const char* kCsvHeader =
    "trial,algorithm,n,m,k,l,phi,epsilon,size,tp,fp,tn,fn,ppv,tpr,fpr";

}  // namespace

void write_results(const std::vector<ResultRow>& rows, const std::string& output_path,
                   OutputFormat format) {
    std::ofstream out(output_path);
    if (!out) throw std::runtime_error("write_results: cannot open " + output_path);
    if (format == OutputFormat::csv) {
        out << kCsvHeader << "\n";
        for (const auto& r : rows) {
            out << r.trial << ',' << algorithm_name(r.algorithm) << ',' << r.n << ',' << r.m << ','
                << r.k << ',' << r.l << ',' << fmt6(r.phi) << ',' << fmt6(r.epsilon) << ','
                << r.size << ',' << r.tp << ',' << r.fp << ',' << r.tn << ',' << r.fn << ','
                << fmt6(r.ppv) << ',' << fmt6(r.tpr) << ',' << fmt6(r.fpr) << "\n";
        }
    } else {
        for (const auto& r : rows) {
            nlohmann::json j{{"trial", r.trial},
                             {"algorithm", algorithm_name(r.algorithm)},
                             {"n", r.n},
                             {"m", r.m},
                             {"k", r.k},
                             {"l", r.l},
                             {"phi", std::stod(fmt6(r.phi))},
                             {"epsilon", std::stod(fmt6(r.epsilon))},
                             {"size", r.size},
                             {"tp", r.tp},
                             {"fp", r.fp},
                             {"tn", r.tn},
                             {"fn", r.fn},
                             {"ppv", std::stod(fmt6(r.ppv))},
                             {"tpr", std::stod(fmt6(r.tpr))},
                             {"fpr", std::stod(fmt6(r.fpr))}};
            out << j.dump() << "\n";
        }
    }
    if (!out) throw std::runtime_error("write_results: write failed for " + output_path);
}

std::vector<ResultRow> read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_results_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::runtime_error("read_results_csv: bad header in " + path);
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 16) throw std::runtime_error("read_results_csv: bad row: " + line);
        ResultRow r;
        r.trial = std::stoi(fields[0]);
        r.algorithm = algorithm_from_name(fields[1]);
        r.n = std::stoi(fields[2]);
        r.m = std::stoi(fields[3]);
        r.k = std::stoi(fields[4]);
        r.l = std::stoi(fields[5]);
        r.phi = std::stod(fields[6]);
        r.epsilon = std::stod(fields[7]);
        r.size = std::stoi(fields[8]);
        r.tp = std::stoi(fields[9]);
        r.fp = std::stoi(fields[10]);
        r.tn = std::stoi(fields[11]);
        r.fn = std::stoi(fields[12]);
        r.ppv = std::stod(fields[13]);
        r.tpr = std::stod(fields[14]);
        r.fpr = std::stod(fields[15]);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace peersel
