#ifndef CAUSAL_DSEP_HPP_
#define CAUSAL_DSEP_HPP_

#include <vector>

#include "causal/citest.hpp"
#include "causal/graph.hpp"

namespace causal {

/// True iff every undirected path between x and y in dag is blocked given z:
/// a non-collider on the path is in z, or a collider is outside z and has no
/// descendant in z. Linear-time reachability over (node, direction) states.
bool d_separated(const CausalDag& dag, NodeId x, NodeId y, const std::vector<NodeId>& z);

/// Perfect conditional-independence oracle. Queries are posed in DAG node
/// ids over observed nodes and condition implicitly on the full selection
/// set of the dag.
class DSepOracle {
public:
    explicit DSepOracle(const CausalDag& dag) : dag_(&dag) {}

    const CausalDag& dag() const { return *dag_; }

    /// Independence verdict for x, y given z union S. Rejects queries that
    /// mention latent or selection nodes.
    bool ci(NodeId x, NodeId y, const std::vector<NodeId>& z) const;

private:
    const CausalDag* dag_;
};

inline bool oracle_ci(const DSepOracle& o, NodeId x, NodeId y, const std::vector<NodeId>& z) {
    return o.ci(x, y, z);
}

/// CiTester over observed-column indices: index i maps to the i-th observed
/// node of the dag in ascending id order, matching dataset columns.
class OracleCiTester : public CiTester {
public:
    explicit OracleCiTester(const CausalDag& dag);

    bool independent(NodeId x, NodeId y, const std::vector<NodeId>& cond) override;

private:
    DSepOracle oracle_;
    std::vector<NodeId> observed_;
};

/// The PAG of the Markov equivalence class of dag's MAG, over observed-column
/// indices. Computed by running the complete FCI procedure against the
/// perfect oracle with a private cache.
MixedGraph true_pag(const CausalDag& dag);

}  // namespace causal

#endif  // CAUSAL_DSEP_HPP_
