#ifndef CAUSAL_ICD_HPP_
#define CAUSAL_ICD_HPP_

#include <functional>
#include <utility>
#include <vector>

#include "causal/citest.hpp"
#include "causal/graph.hpp"
#include "causal/orientation.hpp"

namespace causal {

/// How candidate conditioning sets are ordered within one edge test.
enum class CandidateOrder {
    MeanDistance,  // ascending mean shortest constrained-path length
    Lexicographic
};

/// Whether constrained-path search additionally requires every node on the
/// path to lie on some simple path between the two tested endpoints. The
/// relaxed mode drops that requirement and uses the collider-or-triangle
/// condition alone.
enum class PdsPathMode { Strict, Off };

struct IcdConfig {
    int r0 = 0;          // first condition-set size
    int max_cond = -1;   // largest condition-set size; -1 means |O| - 2
    CandidateOrder ordering = CandidateOrder::MeanDistance;
    PdsPathMode pds_mode = PdsPathMode::Strict;
    MarkConflictPolicy conflicts = MarkConflictPolicy::Throw;
};

/// One candidate conditioning set with its ordering score.
struct CandidateSet {
    std::vector<NodeId> nodes;
    double score = 0.0;
};

/// Shortest constrained-path length in edges from a to every node (-1 when
/// unreachable): every internal path node must be a collider or form a
/// triangle with its path neighbors, and in Strict mode every path node must
/// lie on a simple path between a and b. max_len, when non-negative, bounds
/// the reported lengths.
std::vector<int> pds_distances(const MixedGraph& g, NodeId a, NodeId b,
                               PdsPathMode mode = PdsPathMode::Strict, int max_len = -1);

/// Size-r conditioning candidates for the adjacent pair (x, y): subsets of
/// the nodes within constrained-path distance <= r of x or y, keeping only
/// sets in which every member still attains its shortest constrained-path
/// distance when paths are confined to the set plus the endpoints. Other
/// subsets cannot be minimal separating sets, so testing them is skipped.
/// Ordered by score ascending (mean distance from the smaller endpoint,
/// falling back to the other endpoint for nodes it cannot reach), ties
/// lexicographic. r = 0 yields the single empty set.
std::vector<CandidateSet> pdsep_r(const MixedGraph& g, NodeId x, NodeId y, int r,
                                  const IcdConfig& cfg = {});

/// One refinement sweep at condition-set size r: test every current edge
/// against its ordered candidates, remove on the first independence and
/// record the separating set, then re-orient from scratch (reset to circles,
/// v-structures, rules). Returns the refined graph and the done flag, which
/// is true iff no edge had enough in-range nodes to form a size-r set
/// (before the path-closure filter, so the sweep schedule does not depend
/// on how many candidate sets the filter keeps).
std::pair<MixedGraph, bool> icd_iteration(MixedGraph g, SepsetRecord& seps, int r, CiTester& ci,
                                          const IcdConfig& cfg = {});

/// Called after each iteration with (r, graph so far, done flag).
using IterationObserver = std::function<void(int, const MixedGraph&, bool)>;

/// Anytime main loop: iterate icd_iteration for r = r0, r0+1, ... up to the
/// condition-size cap, stopping early once an iteration reports done.
/// Callers normally start from MixedGraph::complete_circles(|O|).
MixedGraph icd_main(MixedGraph initial, CiTester& ci, const IcdConfig& cfg = {},
                    const IterationObserver& observer = {});

}  // namespace causal

#endif  // CAUSAL_ICD_HPP_
