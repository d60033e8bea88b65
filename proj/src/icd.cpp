#include "causal/icd.hpp"

#include <algorithm>
#include <stdexcept>

#include "causal/path_search.hpp"

namespace causal {

std::vector<int> pds_distances(const MixedGraph& g, NodeId a, NodeId b, PdsPathMode mode,
                               int max_len) {
    if (a == b) throw std::invalid_argument("pds_distances: a == b");
    const int n = g.node_count();
    if (max_len < 0) max_len = n;
    std::vector<char> allowed = mode == PdsPathMode::Strict
                                    ? on_simple_path_between(g, a, b)
                                    : std::vector<char>(n, 1);
    return constrained_path_distances(g, a, allowed, max_len);
}

namespace {

int min_reachable(int a, int b) {
    if (a < 0) return b;
    if (b < 0) return a;
    return std::min(a, b);
}

// Shared by pdsep_r and icd_iteration. pool_supports_r, when given, reports
// whether the in-range pool could form at least one size-r set; the returned
// candidates may still be empty when the path-closure filter rejects them all.
std::vector<CandidateSet> pdsep_candidates(const MixedGraph& g, NodeId x, NodeId y, int r,
                                           const IcdConfig& cfg, bool* pool_supports_r) {
    if (pool_supports_r) *pool_supports_r = false;
    if (!g.adjacent(x, y)) throw std::invalid_argument("pdsep_r: pair is not adjacent");
    if (r < 0) throw std::invalid_argument("pdsep_r: negative r");
    if (r == 0) {
        if (pool_supports_r) *pool_supports_r = true;
        return {CandidateSet{{}, 0.0}};
    }

    const int n = g.node_count();
    const NodeId anchor = std::min(x, y), other = std::max(x, y);
    const std::vector<char> allowed = cfg.pds_mode == PdsPathMode::Strict
                                          ? on_simple_path_between(g, anchor, other)
                                          : std::vector<char>(n, 1);
    const std::vector<int> dist_anchor = constrained_path_distances(g, anchor, allowed, r);
    const std::vector<int> dist_other = constrained_path_distances(g, other, allowed, r);

    std::vector<NodeId> pool;
    std::vector<double> node_score(n, 0.0);
    std::vector<int> best_dist(n, -1);
    for (NodeId v = 0; v < n; ++v) {
        if (v == x || v == y) continue;
        const int da = dist_anchor[v], db = dist_other[v];
        if (da < 0 && db < 0) continue;
        pool.push_back(v);
        node_score[v] = da >= 0 ? da : db;
        best_dist[v] = min_reachable(da, db);
    }
    if (static_cast<int>(pool.size()) < r) return {};
    if (pool_supports_r) *pool_supports_r = true;

    // A minimal separating set contains, for each of its members, the nodes
    // of a shortest constrained path reaching that member from one endpoint.
    // Sets where some member loses its shortest distance once paths are
    // confined to the set plus the endpoints can therefore be skipped.
    std::vector<char> confined(n, 0);
    const auto closed_under_paths = [&](const std::vector<NodeId>& nodes) {
        std::fill(confined.begin(), confined.end(), 0);
        confined[x] = confined[y] = 1;
        for (NodeId v : nodes) confined[v] = 1;
        const std::vector<int> ra = constrained_path_distances(g, anchor, confined, r);
        const std::vector<int> rb = constrained_path_distances(g, other, confined, r);
        for (NodeId v : nodes)
            if (min_reachable(ra[v], rb[v]) != best_dist[v]) return false;
        return true;
    };

    std::vector<CandidateSet> out;
    std::vector<int> pick(r);
    // Enumerate size-r index combinations of the pool in lexicographic order.
    for (int i = 0; i < r; ++i) pick[i] = i;
    while (true) {
        CandidateSet cand;
        cand.nodes.reserve(r);
        double sum = 0.0;
        for (int i : pick) {
            cand.nodes.push_back(pool[i]);
            sum += node_score[pool[i]];
        }
        if (closed_under_paths(cand.nodes)) {
            cand.score = sum / r;
            out.push_back(std::move(cand));
        }
        int j = r - 1;
        while (j >= 0 && pick[j] == static_cast<int>(pool.size()) - r + j) --j;
        if (j < 0) break;
        ++pick[j];
        for (int i = j + 1; i < r; ++i) pick[i] = pick[i - 1] + 1;
    }
    if (cfg.ordering == CandidateOrder::MeanDistance)
        std::stable_sort(out.begin(), out.end(), [](const CandidateSet& a, const CandidateSet& b) {
            if (a.score != b.score) return a.score < b.score;
            return a.nodes < b.nodes;
        });
    return out;
}

}  // namespace

std::vector<CandidateSet> pdsep_r(const MixedGraph& g, NodeId x, NodeId y, int r,
                                  const IcdConfig& cfg) {
    return pdsep_candidates(g, x, y, r, cfg, nullptr);
}

std::pair<MixedGraph, bool> icd_iteration(MixedGraph g, SepsetRecord& seps, int r, CiTester& ci,
                                          const IcdConfig& cfg) {
    bool done = true;
    for (const auto& [x, y] : g.edges()) {
        if (!g.adjacent(x, y)) continue;
        bool pool_supports_r = false;
        const std::vector<CandidateSet> candidates =
            pdsep_candidates(g, x, y, r, cfg, &pool_supports_r);
        if (pool_supports_r) done = false;
        for (const CandidateSet& cand : candidates) {
            if (ci.independent(x, y, cand.nodes)) {
                g.remove_edge(x, y);
                seps.record(x, y, cand.nodes);
                break;
            }
        }
    }
    g.reset_marks_to_circles();
    g = orient_v_structures(std::move(g), seps);
    g = apply_rules(std::move(g), seps, cfg.conflicts);
    return {std::move(g), done};
}

MixedGraph icd_main(MixedGraph initial, CiTester& ci, const IcdConfig& cfg,
                    const IterationObserver& observer) {
    const int m = initial.node_count();
    const int cap = cfg.max_cond < 0 ? m - 2 : std::min(cfg.max_cond, m - 2);
    if (cfg.r0 < 0) throw std::invalid_argument("icd_main: negative r0");
    if (cfg.r0 > cap && cap >= 0)
        throw std::invalid_argument("icd_main: r0 exceeds the condition-size cap");

    MixedGraph g = std::move(initial);
    SepsetRecord seps;
    for (int r = cfg.r0; r <= cap; ++r) {
        bool done = false;
        std::tie(g, done) = icd_iteration(std::move(g), seps, r, ci, cfg);
        if (observer) observer(r, g, done);
        if (done) break;
    }
    return g;
}

}  // namespace causal
