#ifndef CAUSAL_BENCH_HPP_
#define CAUSAL_BENCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "causal/orientation.hpp"
#include "causal/stats.hpp"

namespace causal {

struct ExperimentConfig {
    std::vector<int> node_counts{15, 20, 25, 35};
    double rho = 2.0;
    int graphs_per_size = 25;
    std::vector<int> sample_sizes{};  // data experiments; ignored by oracle runs
    double alpha = 0.01;
    bool run_icd = true;
    bool run_fci = true;
    int max_cond = -1;
    std::uint64_t seed = 1;
    std::string out_dir;
    int jobs = 1;
    bool also_json = false;
    /// Data-driven tests can produce contradictory orientations; Lenient
    /// keeps the first mark instead of aborting the run.
    MarkConflictPolicy conflicts = MarkConflictPolicy::Throw;
};

/// One (instance, algorithm) outcome. ell is 0 for oracle runs.
struct RunRow {
    int n = 0;
    int graph_id = 0;
    int ell = 0;
    std::string algorithm;
    std::vector<std::int64_t> unique_by_size;
    std::int64_t total_unique = 0;
    std::int64_t cache_hits = 0;
    StructuralErrors errors;
    double duration_ms = 0.0;  // discovery call only
};

/// Per-iteration snapshot of an ICD run.
struct AnytimeRow {
    int n = 0;
    int graph_id = 0;
    int ell = 0;
    int r = 0;
    bool done = false;
    std::int64_t unique_total = 0;
    StructuralErrors errors;
};

struct ExperimentResult {
    std::vector<RunRow> rows;
    std::vector<AnytimeRow> anytime;
};

/// Paired runs of the enabled algorithms against the perfect oracle on
/// shared random ground truth, one instance per (node count, graph id).
ExperimentResult run_oracle_experiment(const ExperimentConfig& cfg);

/// Same pairing against Fisher-z tests on sampled data, one instance per
/// (node count, sample size, graph id).
ExperimentResult run_data_experiment(const ExperimentConfig& cfg);

/// Writes results.csv, histogram.csv, anytime.csv and timings.csv (plus
/// results.json when requested) into cfg.out_dir. Timing data never enters
/// results.csv, so reruns with one seed are byte-identical.
void write_results(const ExperimentConfig& cfg, const ExperimentResult& result);

/// Reads the CSVs from results_dir and emits summary.csv, ratio.csv,
/// ecdf_total.csv, ks.csv and SVG plots alongside them.
void report(const std::string& results_dir);

}  // namespace causal

#endif  // CAUSAL_BENCH_HPP_
