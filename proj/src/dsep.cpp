#include "causal/dsep.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace causal {

namespace {

// Nodes that are in z or have a descendant in z.
std::vector<char> ancestors_of(const CausalDag& dag, const std::vector<char>& z_mask) {
    const int n = dag.node_count();
    std::vector<char> anc(n, 0);
    std::queue<NodeId> q;
    for (NodeId v = 0; v < n; ++v)
        if (z_mask[v]) {
            anc[v] = 1;
            q.push(v);
        }
    while (!q.empty()) {
        NodeId v = q.front();
        q.pop();
        for (NodeId p : dag.parents(v))
            if (!anc[p]) {
                anc[p] = 1;
                q.push(p);
            }
    }
    return anc;
}

}  // namespace

bool d_separated(const CausalDag& dag, NodeId x, NodeId y, const std::vector<NodeId>& z) {
    const int n = dag.node_count();
    auto check = [n](NodeId v) {
        if (v < 0 || v >= n) throw std::invalid_argument("d_separated: node id out of range");
    };
    check(x);
    check(y);
    if (x == y) throw std::invalid_argument("d_separated: x == y");
    std::vector<char> in_z(n, 0);
    for (NodeId v : z) {
        check(v);
        if (v == x || v == y) throw std::invalid_argument("d_separated: endpoint inside z");
        in_z[v] = 1;
    }

    const std::vector<char> anc_z = ancestors_of(dag, in_z);

    // Reachability over (node, direction) states: "up" means the trail leaves
    // v toward its parents next (v was entered from a child, or is the
    // source), "down" means v was entered from a parent.
    enum : int { kUp = 0, kDown = 1 };
    std::vector<char> seen(static_cast<std::size_t>(n) * 2, 0);
    std::queue<std::pair<NodeId, int>> q;
    q.emplace(x, kUp);
    seen[x * 2 + kUp] = 1;
    while (!q.empty()) {
        auto [v, dir] = q.front();
        q.pop();
        if (v == y) return false;
        auto push = [&](NodeId u, int d) {
            if (!seen[u * 2 + d]) {
                seen[u * 2 + d] = 1;
                q.emplace(u, d);
            }
        };
        if (dir == kUp && !in_z[v]) {
            for (NodeId p : dag.parents(v)) push(p, kUp);
            for (NodeId c : dag.children(v)) push(c, kDown);
        } else if (dir == kDown) {
            if (!in_z[v])
                for (NodeId c : dag.children(v)) push(c, kDown);
            if (anc_z[v])
                for (NodeId p : dag.parents(v)) push(p, kUp);
        }
    }
    return true;
}

bool DSepOracle::ci(NodeId x, NodeId y, const std::vector<NodeId>& z) const {
    auto require_observed = [this](NodeId v) {
        if (v < 0 || v >= dag_->node_count())
            throw std::invalid_argument("oracle query: node id out of range");
        if (dag_->role(v) != NodeRole::Observed)
            throw std::invalid_argument("oracle query mentions a non-observed node");
    };
    require_observed(x);
    require_observed(y);
    std::vector<NodeId> cond = z;
    for (NodeId v : cond) require_observed(v);
    for (NodeId v : dag_->selection()) cond.push_back(v);
    return d_separated(*dag_, x, y, cond);
}

OracleCiTester::OracleCiTester(const CausalDag& dag) : oracle_(dag), observed_(dag.observed()) {}

bool OracleCiTester::independent(NodeId x, NodeId y, const std::vector<NodeId>& cond) {
    auto map = [this](NodeId i) {
        if (i < 0 || i >= static_cast<NodeId>(observed_.size()))
            throw std::invalid_argument("observed index out of range");
        return observed_[i];
    };
    std::vector<NodeId> z;
    z.reserve(cond.size());
    for (NodeId i : cond) z.push_back(map(i));
    return oracle_.ci(map(x), map(y), z);
}

}  // namespace causal
