#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "peersel/core.hpp"

namespace peersel {

enum class Algorithm { peernomination, vanilla, partition, edp };

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

enum class EpsilonMode { fixed, calibrated };
enum class OutputFormat { csv, json_lines };

struct ExperimentConfig {
    int n = 120;
    std::vector<int> m_values = {5, 7, 9, 11};
    std::vector<int> k_values = {15, 20, 25, 30, 35};
    int l = 4;
    double phi = 0.5;
    int trials = 1000;
    std::uint64_t master_seed = 0;
    std::vector<Algorithm> algorithms = {Algorithm::peernomination, Algorithm::vanilla,
                                         Algorithm::partition, Algorithm::edp};
    EpsilonMode epsilon_mode = EpsilonMode::calibrated;
    double fixed_epsilon = 0.0;
    // By default PeerNomination and Vanilla run on an unclustered assignment of
    // their own (they do not need clusters), while Partition/EDP share a
    // cross-cluster one. Setting shared_clustered_assignment runs everything on
    // the single clustered assignment for strictest comparability.
    bool shared_clustered_assignment = false;
    std::string output_path;
    int threads = 0;  // 0 = hardware concurrency
};

struct ResultRow {
    int trial;
    Algorithm algorithm;
    int n, m, k, l;
    double phi;
    double epsilon;
    int size;
    int tp, fp, tn, fn;
    double ppv, tpr, fpr;
};

// Runs the full (m, k) grid. Within a trial every mechanism sees the same
// Mallows profile (and the clustered mechanisms the same clustering), so rows
// differ only by mechanism. Fully deterministic given (config, master_seed),
// independent of thread count.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

// Level-comparison variant: per trial, run PeerNomination, then run EDP with
// k forced to PeerNomination's realized output size. Emits one row per
// mechanism per trial, sharing the trial id and size.
std::vector<ResultRow> run_forced_size_experiment(const ExperimentConfig& config);

void write_results(const std::vector<ResultRow>& rows, const std::string& output_path,
                   OutputFormat format);

std::vector<ResultRow> read_results_csv(const std::string& path);

}  // namespace peersel
