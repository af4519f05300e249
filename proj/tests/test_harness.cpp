#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "peersel/harness.hpp"

using namespace peersel;

namespace {

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.n = 24;
    cfg.m_values = {5};
    cfg.k_values = {6};
    cfg.l = 2;
    cfg.phi = 0.5;
    cfg.trials = 8;
    cfg.master_seed = 42;
    cfg.threads = 2;
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("row count is trials x algorithms x cells") {
    auto cfg = tiny_config();
    cfg.m_values = {3, 5};
    cfg.k_values = {4, 6};
    auto rows = run_experiment(cfg);
    CHECK(rows.size() == 8u * 4u * 4u);
}

TEST_CASE("repeat runs are byte-identical") {
    auto cfg = tiny_config();
    const std::string p1 = "harness_det_1.csv", p2 = "harness_det_2.csv";
    write_results(run_experiment(cfg), p1, OutputFormat::csv);
    cfg.threads = 1;  // thread count must not affect the output
    write_results(run_experiment(cfg), p2, OutputFormat::csv);
    CHECK(slurp(p1) == slurp(p2));
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("phi=0 makes vanilla recall perfectly reproducible") {
    auto cfg = tiny_config();
    cfg.phi = 0.0;
    cfg.algorithms = {Algorithm::vanilla};
    auto r1 = run_experiment(cfg);
    auto r2 = run_experiment(cfg);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) CHECK(r1[i].tpr == r2[i].tpr);
}

TEST_CASE("rows are internally consistent") {
    auto rows = run_experiment(tiny_config());
    for (const auto& r : rows) {
        CHECK(r.size == r.tp + r.fp);
        CHECK(r.tp + r.fn == r.k);
        CHECK(r.tp + r.fp + r.tn + r.fn == r.n);
        if (r.algorithm != Algorithm::peernomination) CHECK(r.size == r.k);
    }
}

TEST_CASE("csv round-trips") {
    auto rows = run_experiment(tiny_config());
    const std::string path = "harness_roundtrip.csv";
    write_results(rows, path, OutputFormat::csv);
    auto back = read_results_csv(path);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].trial == rows[i].trial);
        CHECK(back[i].algorithm == rows[i].algorithm);
        CHECK(back[i].size == rows[i].size);
        CHECK(back[i].tpr == doctest::Approx(rows[i].tpr));
    }
    std::remove(path.c_str());
}

TEST_CASE("empty row list writes a header-only file") {
    const std::string path = "harness_empty.csv";
    write_results({}, path, OutputFormat::csv);
    auto text = slurp(path);
    CHECK(text == "trial,algorithm,n,m,k,l,phi,epsilon,size,tp,fp,tn,fn,ppv,tpr,fpr\n");
    std::remove(path.c_str());
}

TEST_CASE("json-lines output has one record per row") {
    auto cfg = tiny_config();
    cfg.trials = 3;
    auto rows = run_experiment(cfg);
    const std::string path = "harness_rows.jsonl";
    write_results(rows, path, OutputFormat::json_lines);
    std::ifstream in(path);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++lines;
    CHECK(lines == rows.size());
    std::remove(path.c_str());
}

TEST_CASE("forced-size experiment pairs rows with equal sizes") {
    auto cfg = tiny_config();
    cfg.trials = 20;
    auto rows = run_forced_size_experiment(cfg);
    REQUIRE(rows.size() == 40);
    for (std::size_t i = 0; i < rows.size(); i += 2) {
        CHECK(rows[i].algorithm == Algorithm::peernomination);
        CHECK(rows[i + 1].algorithm == Algorithm::edp);
        CHECK(rows[i].trial == rows[i + 1].trial);
        CHECK(rows[i].size == rows[i + 1].size);
    }
}

TEST_CASE("infeasible grid cells are reported") {
    auto cfg = tiny_config();
    cfg.k_values = {40};  // k > n
    CHECK_THROWS(run_experiment(cfg));
}
