#ifndef CAUSAL_ORIENTATION_HPP_
#define CAUSAL_ORIENTATION_HPP_

#include <map>
#include <utility>
#include <vector>

#include "causal/graph.hpp"

namespace causal {

/// Separating sets recorded at edge-removal time, keyed by unordered pair.
class SepsetRecord {
public:
    /// Stores the set (sorted) for the pair {a, b}; overwrites any previous
    /// entry. Endpoints must not be members.
    void record(NodeId a, NodeId b, std::vector<NodeId> z);

    /// The recorded set, or nullptr if none.
    const std::vector<NodeId>* find(NodeId a, NodeId b) const;

    bool contains(NodeId a, NodeId b) const { return find(a, b) != nullptr; }
    std::size_t size() const { return sets_.size(); }

private:
    std::map<std::pair<NodeId, NodeId>, std::vector<NodeId>> sets_;
};

/// What to do when an orientation rule needs to overwrite an existing
/// non-circle mark with a different one. Throw treats it as an internal
/// inconsistency (correct under a perfect oracle); Lenient keeps the first
/// mark, which lets discovery proceed on unfaithful finite-sample input.
enum class MarkConflictPolicy { Throw, Lenient };

/// For every unshielded triple <u, v, w> whose non-adjacent pair {u, w} has a
/// recorded separating set not containing v, set arrowheads at v on both
/// edges. A non-adjacent pair of an unshielded triple without any recorded
/// set is a contract breach and throws.
MixedGraph orient_v_structures(MixedGraph g, const SepsetRecord& seps);

/// The complete final-orientation rule set (arrowhead propagation including
/// the discriminating-path rule, selection-bias tail rules, and the
/// remaining tail rules), applied until fixpoint. Only Circle marks are ever
/// changed. The sepsets feed the discriminating-path rule.
MixedGraph apply_rules(MixedGraph g, const SepsetRecord& seps,
                       MarkConflictPolicy policy = MarkConflictPolicy::Throw);

}  // namespace causal

#endif  // CAUSAL_ORIENTATION_HPP_
