#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"

#include "causal/bench.hpp"

using namespace causal;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path path;
};

ExperimentConfig tiny_oracle_config() {
    ExperimentConfig cfg;
    cfg.node_counts = {6};
    cfg.graphs_per_size = 4;
    cfg.seed = 11;
    return cfg;
}

}  // namespace

TEST_CASE("oracle experiment rows are deterministic and error free") {
    const ExperimentConfig cfg = tiny_oracle_config();
    const ExperimentResult a = run_oracle_experiment(cfg);
    const ExperimentResult b = run_oracle_experiment(cfg);

    REQUIRE(a.rows.size() == 8);  // 4 graphs x 2 algorithms
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].algorithm == b.rows[i].algorithm);
        CHECK(a.rows[i].graph_id == b.rows[i].graph_id);
        CHECK(a.rows[i].total_unique == b.rows[i].total_unique);
        CHECK(a.rows[i].unique_by_size == b.rows[i].unique_by_size);
        CHECK(a.rows[i].cache_hits == b.rows[i].cache_hits);

        CHECK(a.rows[i].ell == 0);
        CHECK(a.rows[i].errors.extra_edges == 0);
        CHECK(a.rows[i].errors.missing_edges == 0);
        CHECK(a.rows[i].errors.wrong_marks == 0);

        std::int64_t by_size = 0;
        for (std::int64_t c : a.rows[i].unique_by_size) by_size += c;
        CHECK(by_size == a.rows[i].total_unique);
    }
    CHECK_FALSE(a.anytime.empty());
}

TEST_CASE("worker count does not change results") {
    ExperimentConfig cfg = tiny_oracle_config();
    TempDir seq("causalbench_test_seq"), par("causalbench_test_par");

    cfg.jobs = 1;
    cfg.out_dir = seq.path.string();
    write_results(cfg, run_oracle_experiment(cfg));

    cfg.jobs = 3;
    cfg.out_dir = par.path.string();
    write_results(cfg, run_oracle_experiment(cfg));

    CHECK(slurp(seq.path / "results.csv") == slurp(par.path / "results.csv"));
    CHECK(slurp(seq.path / "histogram.csv") == slurp(par.path / "histogram.csv"));
    CHECK(slurp(seq.path / "anytime.csv") == slurp(par.path / "anytime.csv"));
}

TEST_CASE("data experiment runs and scores against the exact class") {
    ExperimentConfig cfg;
    cfg.node_counts = {5};
    cfg.graphs_per_size = 2;
    cfg.sample_sizes = {200};
    cfg.seed = 19;
    cfg.conflicts = MarkConflictPolicy::Lenient;
    const ExperimentResult result = run_data_experiment(cfg);
    REQUIRE(result.rows.size() == 4);
    for (const RunRow& row : result.rows) {
        CHECK(row.ell == 200);
        CHECK(row.total_unique > 0);
    }

    ExperimentConfig missing = cfg;
    missing.sample_sizes = {};
    CHECK_THROWS_AS(run_data_experiment(missing), std::invalid_argument);
}

TEST_CASE("report summarises written results") {
    ExperimentConfig cfg = tiny_oracle_config();
    TempDir dir("causalbench_test_report");
    cfg.out_dir = dir.path.string();
    cfg.also_json = true;
    write_results(cfg, run_oracle_experiment(cfg));
    CHECK(fs::exists(dir.path / "results.json"));

    report(cfg.out_dir);
    CHECK(fs::exists(dir.path / "summary.csv"));
    CHECK(fs::exists(dir.path / "ratio.csv"));
    CHECK(fs::exists(dir.path / "ks.csv"));
    CHECK(fs::exists(dir.path / "ecdf_total.csv"));
    CHECK(fs::exists(dir.path / "ecdf_n6_ell0.svg"));
    CHECK(fs::exists(dir.path / "histogram_n6_ell0.svg"));

    // histogram rows must add back up to the per-run totals
    std::map<std::string, std::int64_t> totals, sums;
    {
        std::ifstream in(dir.path / "results.csv");
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            std::stringstream ss(line);
            std::string n, gid, ell, algo, total;
            std::getline(ss, n, ',');
            std::getline(ss, gid, ',');
            std::getline(ss, ell, ',');
            std::getline(ss, algo, ',');
            std::getline(ss, total, ',');
            totals[n + "/" + gid + "/" + ell + "/" + algo] = std::stoll(total);
        }
    }
    {
        std::ifstream in(dir.path / "histogram.csv");
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            std::stringstream ss(line);
            std::string n, gid, ell, algo, size, count;
            std::getline(ss, n, ',');
            std::getline(ss, gid, ',');
            std::getline(ss, ell, ',');
            std::getline(ss, algo, ',');
            std::getline(ss, size, ',');
            std::getline(ss, count, ',');
            sums[n + "/" + gid + "/" + ell + "/" + algo] += std::stoll(count);
        }
    }
    REQUIRE(totals.size() == 8);
    CHECK(totals == sums);
}

TEST_CASE("report refuses an empty results directory without partial output") {
    TempDir dir("causalbench_test_empty");
    CHECK_THROWS_AS(report(dir.path.string()), std::runtime_error);
    CHECK(fs::is_empty(dir.path));
}

TEST_CASE("report renders a single-run input") {
    ExperimentConfig cfg;
    cfg.node_counts = {5};
    cfg.graphs_per_size = 1;
    cfg.run_fci = false;
    cfg.seed = 23;
    TempDir dir("causalbench_test_single");
    cfg.out_dir = dir.path.string();
    write_results(cfg, run_oracle_experiment(cfg));
    report(cfg.out_dir);
    CHECK(fs::exists(dir.path / "summary.csv"));
    CHECK(fs::exists(dir.path / "ecdf_n5_ell0.svg"));
}

TEST_CASE("experiment config validation") {
    ExperimentConfig cfg = tiny_oracle_config();
    cfg.node_counts = {};
    CHECK_THROWS_AS(run_oracle_experiment(cfg), std::invalid_argument);
    cfg = tiny_oracle_config();
    cfg.graphs_per_size = 0;
    CHECK_THROWS_AS(run_oracle_experiment(cfg), std::invalid_argument);
    cfg = tiny_oracle_config();
    cfg.alpha = 1.5;
    CHECK_THROWS_AS(run_oracle_experiment(cfg), std::invalid_argument);
    cfg = tiny_oracle_config();
    cfg.run_icd = cfg.run_fci = false;
    CHECK_THROWS_AS(run_oracle_experiment(cfg), std::invalid_argument);
    cfg = tiny_oracle_config();
    cfg.out_dir.clear();
    CHECK_THROWS_AS(write_results(cfg, ExperimentResult{}), std::invalid_argument);
}
