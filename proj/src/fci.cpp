#include "causal/fci.hpp"

#include <algorithm>
#include <stdexcept>

#include "causal/path_search.hpp"

namespace causal {

namespace {

// Visit size-k subsets of pool (ascending ids) in lexicographic order until
// the callback returns true; reports whether any callback did.
template <typename Fn>
bool for_each_subset(const std::vector<NodeId>& pool, int k, Fn&& fn) {
    const int m = static_cast<int>(pool.size());
    if (k > m) return false;
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    std::vector<NodeId> subset(k);
    while (true) {
        for (int i = 0; i < k; ++i) subset[i] = pool[pick[i]];
        if (fn(subset)) return true;
        int j = k - 1;
        while (j >= 0 && pick[j] == m - k + j) --j;
        if (j < 0) return false;
        ++pick[j];
        for (int i = j + 1; i < k; ++i) pick[i] = pick[i - 1] + 1;
    }
}

std::vector<NodeId> adjacent_excluding(const MixedGraph& g, NodeId x, NodeId y) {
    std::vector<NodeId> out = g.neighbors(x);
    out.erase(std::remove(out.begin(), out.end(), y), out.end());
    return out;
}

}  // namespace

std::pair<MixedGraph, SepsetRecord> fci_skeleton_phase1(int node_count, CiTester& ci,
                                                        const FciConfig& cfg) {
    MixedGraph g = MixedGraph::complete_circles(node_count);
    SepsetRecord seps;
    const int cap = cfg.max_cond < 0 ? node_count - 2 : std::min(cfg.max_cond, node_count - 2);
    for (int k = 0; k <= cap; ++k) {
        bool any_candidates = false;
        for (const auto& [x, y] : g.edges()) {
            if (!g.adjacent(x, y)) continue;
            const std::vector<NodeId> adj_x = adjacent_excluding(g, x, y);
            const std::vector<NodeId> adj_y = adjacent_excluding(g, y, x);
            if (static_cast<int>(adj_x.size()) >= k ||
                (cfg.phase1_both_endpoints && static_cast<int>(adj_y.size()) >= k))
                any_candidates = true;
            auto try_remove = [&](const std::vector<NodeId>& subset) {
                if (!ci.independent(x, y, subset)) return false;
                g.remove_edge(x, y);
                seps.record(x, y, subset);
                return true;
            };
            bool removed = for_each_subset(adj_x, k, try_remove);
            if (!removed && cfg.phase1_both_endpoints) for_each_subset(adj_y, k, try_remove);
        }
        if (!any_candidates) break;
    }
    return {std::move(g), std::move(seps)};
}

std::vector<NodeId> possible_d_sep(const MixedGraph& g, NodeId a, NodeId b) {
    if (a == b) throw std::invalid_argument("possible_d_sep: a == b");
    const std::vector<char> reach = collider_triangle_reachable(g, a);
    std::vector<NodeId> out;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (reach[v]) out.push_back(v);
    (void)b;  // the pair's second endpoint does not shape the set
    return out;
}

MixedGraph fci(int node_count, CiTester& ci, const FciConfig& cfg) {
    auto [g, seps] = fci_skeleton_phase1(node_count, ci, cfg);
    g = orient_v_structures(std::move(g), seps);

    const int cap = cfg.max_cond < 0 ? node_count - 2 : std::min(cfg.max_cond, node_count - 2);
    const auto edges = g.edges();
    // Candidate sets are fixed by the post-v-structure graph; removals during
    // this stage do not reshape them.
    std::vector<std::pair<std::vector<NodeId>, std::vector<NodeId>>> pools;
    pools.reserve(edges.size());
    for (const auto& [x, y] : edges) {
        auto strip = [](std::vector<NodeId> s, NodeId u, NodeId v) {
            s.erase(std::remove_if(s.begin(), s.end(),
                                   [&](NodeId w) { return w == u || w == v; }),
                    s.end());
            return s;
        };
        pools.emplace_back(strip(possible_d_sep(g, x, y), x, y),
                           strip(possible_d_sep(g, y, x), x, y));
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [x, y] = edges[e];
        const auto& [pool_x, pool_y] = pools[e];
        const int limit =
            std::min(cap, static_cast<int>(std::max(pool_x.size(), pool_y.size())));
        auto try_remove = [&, x = x, y = y](const std::vector<NodeId>& subset) {
            if (!ci.independent(x, y, subset)) return false;
            g.remove_edge(x, y);
            seps.record(x, y, subset);
            return true;
        };
        for (int k = 0; k <= limit && g.adjacent(x, y); ++k) {
            if (for_each_subset(pool_x, k, try_remove)) break;
            if (for_each_subset(pool_y, k, try_remove)) break;
        }
    }

    g.reset_marks_to_circles();
    g = orient_v_structures(std::move(g), seps);
    g = apply_rules(std::move(g), seps, cfg.conflicts);
    return g;
}

}  // namespace causal
