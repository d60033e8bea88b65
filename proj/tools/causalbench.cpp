#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "causal/bench.hpp"
#include "causal/dsep.hpp"
#include "causal/fci.hpp"
#include "causal/icd.hpp"
#include "causal/simgen.hpp"

namespace {

namespace fs = std::filesystem;
using namespace causal;

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

struct GenArgs {
    int nodes = 15;
    double rho = 2.0;
    std::uint64_t seed = 1;
    std::vector<int> samples;
    std::string out;
};

int run_gen(const GenArgs& args) {
    const CausalDag dag =
        select_latents(random_dag({args.nodes, args.rho, mix_seed(args.seed, 1)}),
                       mix_seed(args.seed, 2));
    fs::create_directories(args.out);
    const fs::path dir(args.out);
    {
        auto out = open_out(dir / "truth.dag");
        write_dag(out, dag);
    }
    {
        auto out = open_out(dir / "truth.pag");
        write_pag(out, true_pag(dag));
    }
    if (!args.samples.empty()) {
        const LinearGaussianScm scm = random_scm(dag, mix_seed(args.seed, 3));
        for (int ell : args.samples) {
            if (ell < 1) throw std::invalid_argument("sample sizes must be positive");
            const DataSet data = sample_data(scm, ell, mix_seed(args.seed, 4));
            auto out = open_out(dir / ("data_" + std::to_string(ell) + ".csv"));
            write_data_csv(out, data, dag.observed());
        }
    }
    std::cout << "wrote " << dir.string() << ": truth.dag, truth.pag";
    if (!args.samples.empty()) std::cout << ", " << args.samples.size() << " dataset(s)";
    std::cout << " (" << dag.observed().size() << " observed, " << dag.latent().size()
              << " latent nodes)\n";
    return 0;
}

struct DiscoverArgs {
    std::string dag_file;
    std::string data_file;
    std::string algo = "both";
    double alpha = 0.01;
    int max_cond = -1;
    std::string out;
    std::string format = "csv";
    bool lenient = false;
};

int run_discover(const DiscoverArgs& args) {
    if (args.dag_file.empty() == args.data_file.empty())
        throw std::invalid_argument("provide exactly one of --dag or --data");

    std::optional<CausalDag> dag;
    std::optional<DataSet> data;
    int m = 0;
    if (!args.dag_file.empty()) {
        std::ifstream in(args.dag_file);
        if (!in) throw std::runtime_error("cannot read " + args.dag_file);
        dag.emplace(read_dag(in));
        m = static_cast<int>(dag->observed().size());
    } else {
        std::ifstream in(args.data_file);
        if (!in) throw std::runtime_error("cannot read " + args.data_file);
        data.emplace(read_data_csv(in));
        m = static_cast<int>(data->variable_count());
    }

    fs::create_directories(args.out);
    const fs::path dir(args.out);
    const MarkConflictPolicy policy =
        args.lenient ? MarkConflictPolicy::Lenient : MarkConflictPolicy::Throw;

    nlohmann::json stats = nlohmann::json::array();
    auto run_one = [&](const std::string& name) {
        std::unique_ptr<CiTester> base;
        if (dag)
            base = std::make_unique<OracleCiTester>(*dag);
        else
            base = std::make_unique<FisherZTester>(*data, args.alpha);
        CachedCiTester ci(*base);
        MixedGraph learned(0);
        if (name == "icd") {
            IcdConfig cfg;
            cfg.max_cond = args.max_cond;
            cfg.conflicts = policy;
            learned = icd_main(MixedGraph::complete_circles(m), ci, cfg);
        } else {
            FciConfig cfg;
            cfg.max_cond = args.max_cond;
            cfg.conflicts = policy;
            learned = fci(m, ci, cfg);
        }
        auto out = open_out(dir / (name + ".pag"));
        write_pag(out, learned);
        std::cout << name << ": " << learned.edge_count() << " edges, "
                  << ci.stats().total_unique << " unique CI tests, " << ci.stats().cache_hits
                  << " cache hits\n";
        stats.push_back({{"algorithm", name},
                         {"edges", learned.edge_count()},
                         {"total_unique", ci.stats().total_unique},
                         {"cache_hits", ci.stats().cache_hits},
                         {"unique_by_size", ci.stats().unique_by_size}});
    };
    if (args.algo == "icd" || args.algo == "both") run_one("icd");
    if (args.algo == "fci" || args.algo == "both") run_one("fci");
    if (args.format == "json") {
        auto out = open_out(dir / "discover.json");
        out << stats.dump(2) << '\n';
    }
    return 0;
}

struct BenchArgs {
    std::vector<int> nodes;
    double rho = 2.0;
    int graphs = 0;
    std::vector<int> samples;
    double alpha = 0.01;
    std::string algo = "both";
    int max_cond = -1;
    std::uint64_t seed = 1;
    std::string out;
    int jobs = 1;
    std::string format = "csv";
    bool lenient = false;
};

ExperimentConfig to_config(const BenchArgs& args, bool data_regime) {
    ExperimentConfig cfg;
    if (!args.nodes.empty()) cfg.node_counts = args.nodes;
    cfg.rho = args.rho;
    cfg.graphs_per_size = args.graphs > 0 ? args.graphs : (data_regime ? 1000 : 25);
    cfg.sample_sizes = args.samples;
    cfg.alpha = args.alpha;
    cfg.run_icd = args.algo == "icd" || args.algo == "both";
    cfg.run_fci = args.algo == "fci" || args.algo == "both";
    cfg.max_cond = args.max_cond;
    cfg.seed = args.seed;
    cfg.out_dir = args.out;
    cfg.jobs = args.jobs;
    cfg.also_json = args.format == "json";
    cfg.conflicts = args.lenient ? MarkConflictPolicy::Lenient : MarkConflictPolicy::Throw;
    return cfg;
}

int run_bench(const BenchArgs& args, bool data_regime) {
    const ExperimentConfig cfg = to_config(args, data_regime);
    const ExperimentResult result =
        data_regime ? run_data_experiment(cfg) : run_oracle_experiment(cfg);
    write_results(cfg, result);
    std::cout << "wrote " << result.rows.size() << " result rows to " << cfg.out_dir << '\n';
    return 0;
}

void add_shared_bench_flags(CLI::App* cmd, BenchArgs& args) {
    cmd->add_option("--nodes", args.nodes, "node counts (observed + latent)");
    cmd->add_option("--rho", args.rho, "expected neighbours per node");
    cmd->add_option("--graphs", args.graphs, "instances per configuration");
    cmd->add_option("--algo", args.algo, "algorithm selection")
        ->check(CLI::IsMember({"icd", "fci", "both"}));
    cmd->add_option("--max-cond", args.max_cond, "condition-set size cap (-1 = unbounded)");
    cmd->add_option("--seed", args.seed, "base seed");
    cmd->add_option("--out", args.out, "output directory")->required();
    cmd->add_option("--jobs", args.jobs, "parallel workers (use 1 for timing comparisons)");
    cmd->add_option("--format", args.format, "csv, or json for CSV plus JSON")
        ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"causalbench: anytime causal discovery benchmark harness"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate a ground-truth DAG and datasets");
    gen->add_option("--nodes", gen_args.nodes, "total node count before latent selection");
    gen->add_option("--rho", gen_args.rho, "expected neighbours per node");
    gen->add_option("--seed", gen_args.seed, "base seed");
    gen->add_option("--samples", gen_args.samples, "sample sizes to draw");
    gen->add_option("--out", gen_args.out, "output directory")->required();

    DiscoverArgs disc_args;
    CLI::App* disc = app.add_subcommand("discover", "learn a PAG from one DAG or dataset");
    disc->add_option("--dag", disc_args.dag_file, "ground-truth DAG file (oracle CI tests)");
    disc->add_option("--data", disc_args.data_file, "sample CSV (Fisher-z CI tests)");
    disc->add_option("--algo", disc_args.algo, "algorithm selection")
        ->check(CLI::IsMember({"icd", "fci", "both"}));
    disc->add_option("--alpha", disc_args.alpha, "Fisher-z significance level");
    disc->add_option("--max-cond", disc_args.max_cond, "condition-set size cap (-1 = unbounded)");
    disc->add_option("--out", disc_args.out, "output directory")->required();
    disc->add_option("--format", disc_args.format, "csv, or json for extra stats file")
        ->check(CLI::IsMember({"csv", "json"}));
    disc->add_flag("--lenient-marks,!--strict-marks", disc_args.lenient,
                   "keep the first orientation mark instead of failing on conflicts "
                   "(default: strict)");

    BenchArgs oracle_args;
    CLI::App* bo = app.add_subcommand("bench-oracle", "paired ICD/FCI runs under the d-separation oracle");
    add_shared_bench_flags(bo, oracle_args);
    bo->add_flag("--lenient-marks,!--strict-marks", oracle_args.lenient,
                 "keep the first orientation mark instead of failing on conflicts "
                 "(default: strict)");

    BenchArgs data_args;
    data_args.lenient = true;  // finite-sample CI errors make mark conflicts expected
    CLI::App* bd = app.add_subcommand("bench-data", "paired ICD/FCI runs on sampled data");
    add_shared_bench_flags(bd, data_args);
    bd->add_option("--samples", data_args.samples, "sample sizes")->required();
    bd->add_option("--alpha", data_args.alpha, "Fisher-z significance level");
    bd->add_flag("--lenient-marks,!--strict-marks", data_args.lenient,
                 "keep the first orientation mark instead of failing on conflicts "
                 "(default: lenient)");

    std::string report_dir;
    CLI::App* rep = app.add_subcommand("report", "summarise a results directory into tables and plots");
    rep->add_option("dir", report_dir, "results directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) return run_gen(gen_args);
        if (disc->parsed()) return run_discover(disc_args);
        if (bo->parsed()) return run_bench(oracle_args, false);
        if (bd->parsed()) return run_bench(data_args, true);
        if (rep->parsed()) {
            report(report_dir);
            std::cout << "wrote summaries and plots to " << report_dir << '\n';
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
