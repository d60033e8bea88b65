#include "causal/path_search.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace causal {

bool collider_or_triangle(const MixedGraph& g, NodeId u, NodeId v, NodeId w) {
    if (g.mark(u, v) == EdgeMark::Arrowhead && g.mark(w, v) == EdgeMark::Arrowhead) return true;
    return g.adjacent(u, w);
}

namespace {

// Biconnected components of the skeleton, found with the classic
// edge-stack DFS. Isolated vertices belong to no block.
struct Blocks {
    std::vector<std::vector<NodeId>> vertices;   // per block
    std::vector<char> is_cut;                    // per node
};

class BlockFinder {
public:
    explicit BlockFinder(const MixedGraph& g)
        : g_(g), disc_(g.node_count(), -1), low_(g.node_count(), 0) {
        out_.is_cut.assign(g.node_count(), 0);
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (disc_[v] < 0) dfs(v, -1);
    }

    Blocks take() { return std::move(out_); }

private:
    void dfs(NodeId u, NodeId parent) {
        disc_[u] = low_[u] = timer_++;
        int child_count = 0;
        for (NodeId v : g_.neighbors(u)) {
            if (v == parent) continue;
            if (disc_[v] < 0) {
                stack_.emplace_back(u, v);
                ++child_count;
                dfs(v, u);
                low_[u] = std::min(low_[u], low_[v]);
                if ((parent < 0 && child_count > 1) || (parent >= 0 && low_[v] >= disc_[u]))
                    out_.is_cut[u] = 1;
                if (low_[v] >= disc_[u]) pop_block(u, v);
            } else if (disc_[v] < disc_[u]) {
                stack_.emplace_back(u, v);
                low_[u] = std::min(low_[u], disc_[v]);
            }
        }
    }

    void pop_block(NodeId u, NodeId v) {
        std::vector<NodeId> members;
        auto add = [&](NodeId x) {
            if (std::find(members.begin(), members.end(), x) == members.end()) members.push_back(x);
        };
        while (!stack_.empty()) {
            auto [a, b] = stack_.back();
            if (disc_[a] < disc_[u] || (a == u && b == v)) break;
            stack_.pop_back();
            add(a);
            add(b);
        }
        if (!stack_.empty() && stack_.back() == std::make_pair(u, v)) stack_.pop_back();
        add(u);
        add(v);
        out_.vertices.push_back(std::move(members));
    }

    const MixedGraph& g_;
    std::vector<int> disc_, low_;
    std::vector<std::pair<NodeId, NodeId>> stack_;
    int timer_ = 0;
    Blocks out_;
};

}  // namespace

std::vector<char> on_simple_path_between(const MixedGraph& g, NodeId a, NodeId b) {
    const int n = g.node_count();
    std::vector<char> mask(n, 0);
    if (a == b) {
        mask[a] = 1;
        return mask;
    }
    Blocks blocks = BlockFinder(g).take();
    const int block_count = static_cast<int>(blocks.vertices.size());

    // Block-cut tree: one tree node per block, one per cut vertex.
    std::vector<int> cut_id(n, -1);
    int tree_size = block_count;
    for (NodeId v = 0; v < n; ++v)
        if (blocks.is_cut[v]) cut_id[v] = tree_size++;
    std::vector<std::vector<int>> tree(tree_size);
    std::vector<int> home_block(n, -1);  // a block containing the vertex
    for (int bi = 0; bi < block_count; ++bi)
        for (NodeId v : blocks.vertices[bi]) {
            home_block[v] = bi;
            if (cut_id[v] >= 0) {
                tree[bi].push_back(cut_id[v]);
                tree[cut_id[v]].push_back(bi);
            }
        }

    auto tree_node = [&](NodeId v) { return cut_id[v] >= 0 ? cut_id[v] : home_block[v]; };
    if (home_block[a] < 0 || home_block[b] < 0) return mask;  // isolated endpoint

    const int src = tree_node(a), dst = tree_node(b);
    std::vector<int> prev(tree_size, -2);
    std::queue<int> q;
    q.push(src);
    prev[src] = -1;
    while (!q.empty() && prev[dst] == -2) {
        int t = q.front();
        q.pop();
        for (int u : tree[t])
            if (prev[u] == -2) {
                prev[u] = t;
                q.push(u);
            }
    }
    if (prev[dst] == -2) return mask;  // different components

    for (int t = dst; t != -1; t = prev[t])
        if (t < block_count)
            for (NodeId v : blocks.vertices[t]) mask[v] = 1;
    return mask;
}

namespace {

// Shortest non-backtracking walk relaxation of the simple-path distances:
// a lower bound, used to prune the exact search and to detect saturation.
std::vector<int> walk_lower_bounds(const MixedGraph& g, NodeId a, const std::vector<char>& allowed,
                                   int max_len) {
    const int n = g.node_count();
    std::vector<int> state_dist(static_cast<std::size_t>(n) * n, -1);  // (prev, cur)
    std::vector<int> lb(n, -1);
    lb[a] = 0;
    std::queue<std::pair<NodeId, NodeId>> q;
    for (NodeId v : g.neighbors(a)) {
        if (!allowed[v]) continue;
        state_dist[static_cast<std::size_t>(a) * n + v] = 1;
        if (lb[v] < 0) lb[v] = 1;
        q.emplace(a, v);
    }
    while (!q.empty()) {
        auto [u, v] = q.front();
        q.pop();
        const int d = state_dist[static_cast<std::size_t>(u) * n + v];
        if (d >= max_len) continue;
        for (NodeId w : g.neighbors(v)) {
            if (w == u || !allowed[w]) continue;
            if (state_dist[static_cast<std::size_t>(v) * n + w] >= 0) continue;
            if (!collider_or_triangle(g, u, v, w)) continue;
            state_dist[static_cast<std::size_t>(v) * n + w] = d + 1;
            if (lb[w] < 0 || d + 1 < lb[w]) lb[w] = d + 1;
            q.emplace(v, w);
        }
    }
    return lb;
}

struct PathDfs {
    const MixedGraph& g;
    const std::vector<char>& allowed;
    const std::vector<int>& lb;
    int max_len;
    std::vector<int> best;
    std::vector<char> on_path;
    int pending = 0;  // nodes whose best distance has not yet met the lower bound

    void run(NodeId a) {
        on_path[a] = 1;
        extend(-1, a, 0);
        on_path[a] = 0;
    }

    void extend(NodeId prev, NodeId v, int len) {
        if (len + 1 > max_len) return;
        for (NodeId w : g.neighbors(v)) {
            if (on_path[w] || !allowed[w]) continue;
            if (lb[w] < 0 || lb[w] > max_len) continue;
            if (prev >= 0 && !collider_or_triangle(g, prev, v, w)) continue;
            if (best[w] < 0 || len + 1 < best[w]) {
                best[w] = len + 1;
                if (best[w] == lb[w]) --pending;
            }
            if (pending == 0) return;
            if (len + 1 < max_len) {
                on_path[w] = 1;
                extend(v, w, len + 1);
                on_path[w] = 0;
                if (pending == 0) return;
            }
        }
    }
};

}  // namespace

std::vector<int> constrained_path_distances(const MixedGraph& g, NodeId a,
                                            const std::vector<char>& allowed, int max_len) {
    const int n = g.node_count();
    if (static_cast<int>(allowed.size()) != n)
        throw std::invalid_argument("allowed mask size mismatch");
    std::vector<int> best(n, -1);
    if (!allowed[a]) return best;
    if (max_len <= 0) {
        best[a] = 0;
        return best;
    }
    std::vector<int> lb = walk_lower_bounds(g, a, allowed, max_len);
    PathDfs dfs{g, allowed, lb, max_len, std::move(best), std::vector<char>(n, 0)};
    for (NodeId v = 0; v < n; ++v)
        if (v != a && lb[v] >= 0 && lb[v] <= max_len) ++dfs.pending;
    if (dfs.pending > 0) dfs.run(a);
    dfs.best[a] = 0;
    return std::move(dfs.best);
}

std::vector<char> collider_triangle_reachable(const MixedGraph& g, NodeId a) {
    const int n = g.node_count();
    const std::vector<char> all(n, 1);
    // Walk relaxation gives a superset of the reachable nodes and a stopping
    // criterion: once every walk-reachable node has been hit by a simple
    // path, the search is complete.
    std::vector<int> lb = walk_lower_bounds(g, a, all, n);
    std::vector<int> best(n, -1);
    PathDfs dfs{g, all, lb, n, std::move(best), std::vector<char>(n, 0)};
    for (NodeId v = 0; v < n; ++v)
        if (v != a && lb[v] >= 0) ++dfs.pending;
    if (dfs.pending > 0) dfs.run(a);
    std::vector<char> mask(n, 0);
    for (NodeId v = 0; v < n; ++v)
        if (v != a && dfs.best[v] >= 0) mask[v] = 1;
    return mask;
}

}  // namespace causal
