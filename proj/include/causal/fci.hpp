#ifndef CAUSAL_FCI_HPP_
#define CAUSAL_FCI_HPP_

#include <utility>
#include <vector>

#include "causal/citest.hpp"
#include "causal/graph.hpp"
#include "causal/orientation.hpp"

namespace causal {

struct FciConfig {
    int max_cond = -1;                  // largest condition-set size; -1 means |O| - 2
    bool phase1_both_endpoints = true;  // draw phase-1 candidates from adj(x) and adj(y)
    MarkConflictPolicy conflicts = MarkConflictPolicy::Throw;
};

/// Adjacency search: from the complete o-o graph, for k = 0, 1, 2, ... test
/// size-k conditioning sets drawn from the current adjacencies of each edge's
/// endpoints, removing edges and recording separating sets on independence.
/// Stops when no remaining edge offers k candidates.
std::pair<MixedGraph, SepsetRecord> fci_skeleton_phase1(int node_count, CiTester& ci,
                                                        const FciConfig& cfg = {});

/// All nodes z != a reachable from a by a simple path whose every internal
/// node is a collider or forms a triangle with its path neighbors, sorted
/// ascending. Expects v-structures already oriented on g.
std::vector<NodeId> possible_d_sep(const MixedGraph& g, NodeId a, NodeId b);

/// The complete procedure: phase-1 skeleton, v-structures, edge removal over
/// subsets of each endpoint's possible-d-sep set (sizes ascending), then
/// re-orientation from scratch with the full rule set.
MixedGraph fci(int node_count, CiTester& ci, const FciConfig& cfg = {});

}  // namespace causal

#endif  // CAUSAL_FCI_HPP_
