#ifndef CAUSAL_PATH_SEARCH_HPP_
#define CAUSAL_PATH_SEARCH_HPP_

#include <vector>

#include "causal/graph.hpp"

namespace causal {

/// Mask over nodes: v is set iff some simple undirected path from a to b
/// passes through v (endpoints included). All-false when a and b are in
/// different components. Computed from the block-cut tree of the skeleton.
std::vector<char> on_simple_path_between(const MixedGraph& g, NodeId a, NodeId b);

/// True iff v is a collider on <u,v,w> or {u,v,w} is a triangle.
bool collider_or_triangle(const MixedGraph& g, NodeId u, NodeId v, NodeId w);

/// Shortest length, in edges, of a simple path from a to each node such that
/// every internal node v on the path satisfies collider_or_triangle with its
/// path neighbors, every node on the path is in `allowed`, and the length is
/// at most max_len. Returns -1 for nodes with no such path (and for a itself
/// the distance is 0). Exact over simple paths: found by bounded enumeration
/// with a walk-relaxation lower bound for pruning.
std::vector<int> constrained_path_distances(const MixedGraph& g, NodeId a,
                                            const std::vector<char>& allowed, int max_len);

/// Nodes z != a reachable from a by a simple path whose internal nodes all
/// satisfy collider_or_triangle (no length cap, no allowed-set restriction).
std::vector<char> collider_triangle_reachable(const MixedGraph& g, NodeId a);

}  // namespace causal

#endif  // CAUSAL_PATH_SEARCH_HPP_
