#include "causal/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "causal/dsep.hpp"
#include "causal/fci.hpp"
#include "causal/icd.hpp"
#include "causal/simgen.hpp"

namespace causal {

namespace {

namespace fs = std::filesystem;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct InstanceKey {
    int n = 0;
    int ell = 0;  // 0 = oracle
    int graph_id = 0;
};

struct InstanceOutput {
    std::vector<RunRow> rows;
    std::vector<AnytimeRow> anytime;
};

InstanceOutput run_instance(const ExperimentConfig& cfg, const InstanceKey& key) {
    const std::uint64_t s_n = mix_seed(cfg.seed, static_cast<std::uint64_t>(key.n));
    const std::uint64_t s_ell = mix_seed(s_n, static_cast<std::uint64_t>(key.ell));
    const std::uint64_t s_g = mix_seed(s_ell, static_cast<std::uint64_t>(key.graph_id));
    const CausalDag dag =
        select_latents(random_dag({key.n, cfg.rho, mix_seed(s_g, 1)}), mix_seed(s_g, 2));
    const MixedGraph truth = true_pag(dag);
    const int m = static_cast<int>(dag.observed().size());

    std::optional<DataSet> data;
    if (key.ell > 0) {
        const LinearGaussianScm scm = random_scm(dag, mix_seed(s_g, 3));
        data.emplace(sample_data(scm, key.ell, mix_seed(s_g, 4)));
    }

    InstanceOutput out;
    auto run_algo = [&](const std::string& name) {
        std::unique_ptr<CiTester> base;
        if (data)
            base = std::make_unique<FisherZTester>(*data, cfg.alpha);
        else
            base = std::make_unique<OracleCiTester>(dag);
        CachedCiTester ci(*base);
        RunRow row;
        row.n = key.n;
        row.graph_id = key.graph_id;
        row.ell = key.ell;
        row.algorithm = name;
        MixedGraph learned(0);
        const auto t0 = std::chrono::steady_clock::now();
        if (name == "icd") {
            IcdConfig icfg;
            icfg.max_cond = cfg.max_cond;
            icfg.conflicts = cfg.conflicts;
            auto observer = [&](int r, const MixedGraph& g, bool done) {
                AnytimeRow snap;
                snap.n = key.n;
                snap.graph_id = key.graph_id;
                snap.ell = key.ell;
                snap.r = r;
                snap.done = done;
                snap.unique_total = ci.stats().total_unique;
                snap.errors = structural_errors(g, truth);
                out.anytime.push_back(snap);
            };
            learned = icd_main(MixedGraph::complete_circles(m), ci, icfg, observer);
        } else {
            FciConfig fcfg;
            fcfg.max_cond = cfg.max_cond;
            fcfg.conflicts = cfg.conflicts;
            learned = fci(m, ci, fcfg);
        }
        const auto t1 = std::chrono::steady_clock::now();
        row.duration_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        row.unique_by_size = ci.stats().unique_by_size;
        row.total_unique = ci.stats().total_unique;
        row.cache_hits = ci.stats().cache_hits;
        row.errors = structural_errors(learned, truth);
        out.rows.push_back(std::move(row));
    };
    if (cfg.run_icd) run_algo("icd");
    if (cfg.run_fci) run_algo("fci");
    return out;
}

ExperimentResult run_all(const ExperimentConfig& cfg, const std::vector<InstanceKey>& keys) {
    std::vector<InstanceOutput> slots(keys.size());
    std::vector<std::exception_ptr> failures(keys.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= keys.size()) return;
            try {
                slots[i] = run_instance(cfg, keys[i]);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < keys.size(); ++i)
        if (failures[i]) std::rethrow_exception(failures[i]);

    ExperimentResult result;
    for (auto& slot : slots) {
        for (auto& row : slot.rows) result.rows.push_back(std::move(row));
        for (auto& snap : slot.anytime) result.anytime.push_back(std::move(snap));
    }
    return result;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.node_counts.empty()) throw std::invalid_argument("no node counts configured");
    for (int n : cfg.node_counts)
        if (n < 3) throw std::invalid_argument("node counts must be at least 3");
    if (cfg.graphs_per_size < 1) throw std::invalid_argument("graphs_per_size must be positive");
    if (!(cfg.rho > 0)) throw std::invalid_argument("rho must be positive");
    if (!(cfg.alpha > 0 && cfg.alpha < 1)) throw std::invalid_argument("alpha must be in (0,1)");
    if (!cfg.run_icd && !cfg.run_fci) throw std::invalid_argument("no algorithm enabled");
}

}  // namespace

ExperimentResult run_oracle_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    std::vector<InstanceKey> keys;
    for (int n : cfg.node_counts)
        for (int g = 0; g < cfg.graphs_per_size; ++g) keys.push_back({n, 0, g});
    return run_all(cfg, keys);
}

ExperimentResult run_data_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    if (cfg.sample_sizes.empty()) throw std::invalid_argument("no sample sizes configured");
    for (int ell : cfg.sample_sizes)
        if (ell < 1) throw std::invalid_argument("sample sizes must be positive");
    std::vector<InstanceKey> keys;
    for (int n : cfg.node_counts)
        for (int ell : cfg.sample_sizes)
            for (int g = 0; g < cfg.graphs_per_size; ++g) keys.push_back({n, ell, g});
    return run_all(cfg, keys);
}

namespace {

bool row_key_less(const RunRow& a, const RunRow& b) {
    return std::tie(a.n, a.ell, a.graph_id, a.algorithm) <
           std::tie(b.n, b.ell, b.graph_id, b.algorithm);
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace

void write_results(const ExperimentConfig& cfg, const ExperimentResult& result) {
    if (cfg.out_dir.empty()) throw std::invalid_argument("no output directory configured");
    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);

    std::vector<const RunRow*> rows;
    rows.reserve(result.rows.size());
    for (const auto& r : result.rows) rows.push_back(&r);
    std::sort(rows.begin(), rows.end(),
              [](const RunRow* a, const RunRow* b) { return row_key_less(*a, *b); });

    {
        auto out = open_out(dir / "results.csv");
        out << "n,graph_id,ell,algorithm,total_unique,cache_hits,extra_edges,missing_edges,"
               "wrong_marks\n";
        for (const RunRow* r : rows)
            out << r->n << ',' << r->graph_id << ',' << r->ell << ',' << r->algorithm << ','
                << r->total_unique << ',' << r->cache_hits << ',' << r->errors.extra_edges << ','
                << r->errors.missing_edges << ',' << r->errors.wrong_marks << '\n';
    }
    {
        auto out = open_out(dir / "histogram.csv");
        out << "n,graph_id,ell,algorithm,cond_size,unique_tests\n";
        for (const RunRow* r : rows)
            for (std::size_t s = 0; s < r->unique_by_size.size(); ++s)
                out << r->n << ',' << r->graph_id << ',' << r->ell << ',' << r->algorithm << ','
                    << s << ',' << r->unique_by_size[s] << '\n';
    }
    {
        auto out = open_out(dir / "timings.csv");
        out << "n,graph_id,ell,algorithm,duration_ms\n";
        for (const RunRow* r : rows)
            out << r->n << ',' << r->graph_id << ',' << r->ell << ',' << r->algorithm << ','
                << fmt_double(r->duration_ms) << '\n';
    }
    {
        std::vector<const AnytimeRow*> snaps;
        snaps.reserve(result.anytime.size());
        for (const auto& a : result.anytime) snaps.push_back(&a);
        std::sort(snaps.begin(), snaps.end(), [](const AnytimeRow* a, const AnytimeRow* b) {
            return std::tie(a->n, a->ell, a->graph_id, a->r) <
                   std::tie(b->n, b->ell, b->graph_id, b->r);
        });
        auto out = open_out(dir / "anytime.csv");
        out << "n,graph_id,ell,r,done,unique_total,extra_edges,missing_edges,wrong_marks\n";
        for (const AnytimeRow* a : snaps)
            out << a->n << ',' << a->graph_id << ',' << a->ell << ',' << a->r << ','
                << (a->done ? 1 : 0) << ',' << a->unique_total << ',' << a->errors.extra_edges
                << ',' << a->errors.missing_edges << ',' << a->errors.wrong_marks << '\n';
    }
    if (cfg.also_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const RunRow* r : rows) {
            nlohmann::json row{{"n", r->n},
                               {"graph_id", r->graph_id},
                               {"ell", r->ell},
                               {"algorithm", r->algorithm},
                               {"total_unique", r->total_unique},
                               {"cache_hits", r->cache_hits},
                               {"extra_edges", r->errors.extra_edges},
                               {"missing_edges", r->errors.missing_edges},
                               {"wrong_marks", r->errors.wrong_marks},
                               {"unique_by_size", r->unique_by_size}};
            arr.push_back(std::move(row));
        }
        auto out = open_out(dir / "results.json");
        out << arr.dump(2) << '\n';
    }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

struct LoadedRow {
    int n, graph_id, ell;
    std::string algorithm;
    std::int64_t total_unique, cache_hits;
    StructuralErrors errors;
};

std::vector<LoadedRow> load_results(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("missing results file " + file.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty results file " + file.string());
    std::vector<LoadedRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 9) throw std::runtime_error("malformed row in " + file.string());
        LoadedRow r;
        r.n = std::stoi(cells[0]);
        r.graph_id = std::stoi(cells[1]);
        r.ell = std::stoi(cells[2]);
        r.algorithm = cells[3];
        r.total_unique = std::stoll(cells[4]);
        r.cache_hits = std::stoll(cells[5]);
        r.errors.extra_edges = std::stoi(cells[6]);
        r.errors.missing_edges = std::stoi(cells[7]);
        r.errors.wrong_marks = std::stoi(cells[8]);
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw std::runtime_error("no result rows in " + file.string());
    return rows;
}

std::map<std::tuple<int, int, int, std::string>, double> load_timings(const fs::path& file) {
    std::map<std::tuple<int, int, int, std::string>, double> out;
    std::ifstream in(file);
    if (!in) return out;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 5) continue;
        out[{std::stoi(cells[0]), std::stoi(cells[2]), std::stoi(cells[1]), cells[3]}] =
            std::stod(cells[4]);
    }
    return out;
}

// histogram.csv -> (n, ell, algorithm) -> per-size mean unique tests
std::map<std::tuple<int, int, std::string>, std::vector<double>> load_histogram(
    const fs::path& file) {
    std::map<std::tuple<int, int, std::string>, std::vector<double>> sums;
    std::map<std::tuple<int, int, std::string>, int> instances;
    std::ifstream in(file);
    if (!in) return sums;
    std::string line;
    std::getline(in, line);
    std::map<std::tuple<int, int, std::string, int>, char> seen_instance;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 6) continue;
        const std::tuple<int, int, std::string> key{std::stoi(cells[0]), std::stoi(cells[2]),
                                                    cells[3]};
        const int graph_id = std::stoi(cells[1]);
        const std::size_t size = std::stoul(cells[4]);
        auto& acc = sums[key];
        if (acc.size() <= size) acc.resize(size + 1, 0.0);
        acc[size] += std::stod(cells[5]);
        if (!seen_instance.count({std::get<0>(key), std::get<1>(key), std::get<2>(key), graph_id})) {
            seen_instance[{std::get<0>(key), std::get<1>(key), std::get<2>(key), graph_id}] = 1;
            ++instances[key];
        }
    }
    for (auto& [key, acc] : sums) {
        const int count = std::max(1, instances[key]);
        for (double& v : acc) v /= count;
    }
    return sums;
}

struct Group {
    std::vector<double> totals;
    std::vector<const LoadedRow*> rows;
};

std::string svg_header(int width, int height) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    return out.str();
}

const char* series_color(std::size_t i) {
    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    return kColors[i % 4];
}

void write_ecdf_svg(const fs::path& path, const std::string& title,
                    const std::vector<std::pair<std::string, std::vector<double>>>& series) {
    const int w = 640, h = 420, ml = 60, mr = 20, mt = 40, mb = 50;
    double xmax = 1.0;
    for (const auto& [name, values] : series)
        if (!values.empty()) xmax = std::max(xmax, values.back());
    xmax *= 1.05;
    auto px = [&](double x) { return ml + x / xmax * (w - ml - mr); };
    auto py = [&](double f) { return h - mb - f * (h - mt - mb); };
    auto out = open_out(path);
    out << svg_header(w, h);
    out << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
        << "</text>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
        << h - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << ml << "\" y2=\"" << mt
        << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double f = i / 4.0;
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(f) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << fmt_double(f) << "</text>\n";
        const double x = xmax * i / 4.0 / 1.05;
        out << "<text x=\"" << px(x) << "\" y=\"" << h - mb + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << static_cast<long long>(x)
            << "</text>\n";
    }
    out << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
        << "\" text-anchor=\"middle\" font-size=\"12\">unique CI tests</text>\n";
    std::size_t idx = 0;
    for (const auto& [name, values] : series) {
        std::ostringstream pts;
        double prev_f = 0.0;
        pts << px(0) << ',' << py(0) << ' ';
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double f = static_cast<double>(i + 1) / values.size();
            pts << px(values[i]) << ',' << py(prev_f) << ' ' << px(values[i]) << ',' << py(f)
                << ' ';
            prev_f = f;
        }
        out << "<polyline fill=\"none\" stroke=\"" << series_color(idx) << "\" stroke-width=\"2\" "
            << "points=\"" << pts.str() << "\"/>\n";
        out << "<text x=\"" << w - mr - 10 << "\" y=\"" << mt + 18 * (idx + 1)
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << series_color(idx) << "\">"
            << name << "</text>\n";
        ++idx;
    }
    out << "</svg>\n";
}

void write_histogram_svg(const fs::path& path, const std::string& title,
                         const std::vector<std::pair<std::string, std::vector<double>>>& series) {
    const int w = 640, h = 420, ml = 60, mr = 20, mt = 40, mb = 50;
    std::size_t sizes = 1;
    double ymax = 1.0;
    for (const auto& [name, values] : series) {
        sizes = std::max(sizes, values.size());
        for (double v : values) ymax = std::max(ymax, v);
    }
    ymax *= 1.1;
    const double slot = static_cast<double>(w - ml - mr) / sizes;
    const double bar = slot / (series.size() + 1);
    auto py = [&](double v) { return h - mb - v / ymax * (h - mt - mb); };
    auto out = open_out(path);
    out << svg_header(w, h);
    out << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
        << "</text>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
        << h - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << ml << "\" y2=\"" << mt
        << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double v = ymax * i / 4.0 / 1.1;
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(v) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << fmt_double(v) << "</text>\n";
    }
    for (std::size_t s = 0; s < sizes; ++s)
        out << "<text x=\"" << ml + slot * (s + 0.5) << "\" y=\"" << h - mb + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << s << "</text>\n";
    out << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
        << "\" text-anchor=\"middle\" font-size=\"12\">condition-set size</text>\n";
    for (std::size_t idx = 0; idx < series.size(); ++idx) {
        const auto& values = series[idx].second;
        for (std::size_t s = 0; s < values.size(); ++s) {
            if (values[s] <= 0) continue;
            const double x = ml + slot * s + bar * (idx + 0.5);
            out << "<rect x=\"" << x << "\" y=\"" << py(values[s]) << "\" width=\"" << bar
                << "\" height=\"" << (h - mb - py(values[s])) << "\" fill=\"" << series_color(idx)
                << "\"/>\n";
        }
        out << "<text x=\"" << w - mr - 10 << "\" y=\"" << mt + 18 * (idx + 1)
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << series_color(idx) << "\">"
            << series[idx].first << "</text>\n";
    }
    out << "</svg>\n";
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / v.size();
}

}  // namespace

void report(const std::string& results_dir) {
    const fs::path dir(results_dir);
    const std::vector<LoadedRow> rows = load_results(dir / "results.csv");
    const auto timings = load_timings(dir / "timings.csv");
    const auto histogram = load_histogram(dir / "histogram.csv");

    std::map<std::pair<int, int>, std::map<std::string, Group>> groups;
    for (const LoadedRow& r : rows) {
        auto& g = groups[{r.n, r.ell}][r.algorithm];
        g.totals.push_back(static_cast<double>(r.total_unique));
        g.rows.push_back(&r);
    }

    {
        auto out = open_out(dir / "summary.csv");
        out << "n,ell,algorithm,instances,mean_total,p90_total,mean_extra,mean_missing,"
               "mean_wrong_marks,mean_duration_ms\n";
        for (const auto& [key, algos] : groups)
            for (const auto& [algo, g] : algos) {
                double extra = 0, missing = 0, wrong = 0, dur = 0;
                int timed = 0;
                for (const LoadedRow* r : g.rows) {
                    extra += r->errors.extra_edges;
                    missing += r->errors.missing_edges;
                    wrong += r->errors.wrong_marks;
                    auto it = timings.find({r->n, r->ell, r->graph_id, algo});
                    if (it != timings.end()) {
                        dur += it->second;
                        ++timed;
                    }
                }
                const double count = static_cast<double>(g.rows.size());
                const Ecdf ecdf(g.totals);
                out << key.first << ',' << key.second << ',' << algo << ',' << g.rows.size() << ','
                    << fmt_double(mean(g.totals)) << ',' << fmt_double(ecdf.quantile(0.9)) << ','
                    << fmt_double(extra / count) << ',' << fmt_double(missing / count) << ','
                    << fmt_double(wrong / count) << ','
                    << fmt_double(timed ? dur / timed : 0.0) << '\n';
            }
    }

    {
        auto out = open_out(dir / "ratio.csv");
        out << "n,ell,instances,mean_total_ratio,p90_instance_ratio,mean_time_ratio\n";
        for (const auto& [key, algos] : groups) {
            auto icd_it = algos.find("icd");
            auto fci_it = algos.find("fci");
            if (icd_it == algos.end() || fci_it == algos.end()) continue;
            std::map<int, double> icd_by_graph, fci_by_graph;
            for (const LoadedRow* r : icd_it->second.rows)
                icd_by_graph[r->graph_id] = static_cast<double>(r->total_unique);
            for (const LoadedRow* r : fci_it->second.rows)
                fci_by_graph[r->graph_id] = static_cast<double>(r->total_unique);
            std::vector<double> ratios;
            for (const auto& [gid, icd_total] : icd_by_graph) {
                auto it = fci_by_graph.find(gid);
                if (it != fci_by_graph.end() && icd_total > 0)
                    ratios.push_back(it->second / icd_total);
            }
            if (ratios.empty()) continue;
            double time_ratio_sum = 0;
            int time_ratio_count = 0;
            for (const auto& [gid, icd_total] : icd_by_graph) {
                auto ti = timings.find({key.first, key.second, gid, "icd"});
                auto tf = timings.find({key.first, key.second, gid, "fci"});
                if (ti != timings.end() && tf != timings.end() && ti->second > 0) {
                    time_ratio_sum += tf->second / ti->second;
                    ++time_ratio_count;
                }
            }
            const Ecdf ecdf(ratios);
            out << key.first << ',' << key.second << ',' << ratios.size() << ','
                << fmt_double(mean(ratios)) << ',' << fmt_double(ecdf.quantile(0.9)) << ','
                << fmt_double(time_ratio_count ? time_ratio_sum / time_ratio_count : 0.0) << '\n';
        }
    }

    {
        auto out = open_out(dir / "ks.csv");
        out << "n,ell,ks_statistic,p_value\n";
        for (const auto& [key, algos] : groups) {
            auto icd_it = algos.find("icd");
            auto fci_it = algos.find("fci");
            if (icd_it == algos.end() || fci_it == algos.end()) continue;
            const KsResult ks = ks_2sample(icd_it->second.totals, fci_it->second.totals);
            out << key.first << ',' << key.second << ',' << fmt_double(ks.statistic) << ','
                << fmt_double(ks.p_value) << '\n';
        }
    }

    {
        auto out = open_out(dir / "ecdf_total.csv");
        out << "n,ell,algorithm,total,cumulative_fraction\n";
        for (const auto& [key, algos] : groups)
            for (const auto& [algo, g] : algos) {
                std::vector<double> sorted = g.totals;
                std::sort(sorted.begin(), sorted.end());
                for (std::size_t i = 0; i < sorted.size(); ++i)
                    out << key.first << ',' << key.second << ',' << algo << ','
                        << fmt_double(sorted[i]) << ','
                        << fmt_double(static_cast<double>(i + 1) / sorted.size()) << '\n';
            }
    }

    for (const auto& [key, algos] : groups) {
        std::vector<std::pair<std::string, std::vector<double>>> curves;
        std::vector<std::pair<std::string, std::vector<double>>> bars;
        for (const auto& [algo, g] : algos) {
            std::vector<double> sorted = g.totals;
            std::sort(sorted.begin(), sorted.end());
            curves.emplace_back(algo, std::move(sorted));
            auto it = histogram.find({key.first, key.second, algo});
            if (it != histogram.end()) bars.emplace_back(algo, it->second);
        }
        const std::string stem =
            "n" + std::to_string(key.first) + "_ell" + std::to_string(key.second);
        const std::string label = key.second == 0
                                      ? std::to_string(key.first) + " nodes, oracle"
                                      : std::to_string(key.first) + " nodes, " +
                                            std::to_string(key.second) + " samples";
        write_ecdf_svg(dir / ("ecdf_" + stem + ".svg"), "CI tests per run, " + label, curves);
        if (!bars.empty())
            write_histogram_svg(dir / ("histogram_" + stem + ".svg"),
                                "Mean unique CI tests by condition-set size, " + label, bars);
    }
}

}  // namespace causal
