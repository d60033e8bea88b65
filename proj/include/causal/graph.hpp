#ifndef CAUSAL_GRAPH_HPP_
#define CAUSAL_GRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace causal {

using NodeId = int;

/// Mark at one end of a mixed-graph edge.
enum class EdgeMark : std::uint8_t { Circle, Arrowhead, Tail };

enum class NodeRole : std::uint8_t { Observed, Latent, Selection };

/// A PAG/MAG-style mixed graph: symmetric adjacency with an end mark on each
/// side of every edge. mark(a, b) is the mark at b's end of edge (a, b).
class MixedGraph {
public:
    explicit MixedGraph(int node_count);

    /// Fully connected graph with circle marks at every end.
    static MixedGraph complete_circles(int node_count);

    int node_count() const { return n_; }
    bool adjacent(NodeId a, NodeId b) const;
    void add_edge(NodeId a, NodeId b, EdgeMark at_a, EdgeMark at_b);
    void remove_edge(NodeId a, NodeId b);

    /// End mark at b on edge (a, b). Throws if the pair is not adjacent.
    EdgeMark mark(NodeId a, NodeId b) const;
    /// Overwrite the end mark at b on edge (a, b).
    void set_mark(NodeId a, NodeId b, EdgeMark at_b);

    std::vector<NodeId> neighbors(NodeId a) const;
    int degree(NodeId a) const;

    /// All edges as (a, b) pairs with a < b, ascending.
    std::vector<std::pair<NodeId, NodeId>> edges() const;
    int edge_count() const;

    /// Set every end mark of every edge back to Circle.
    void reset_marks_to_circles();

    /// True iff no end mark anywhere is a Circle (MAG-role instance).
    bool circle_free() const;

private:
    void check_node(NodeId v) const;

    int n_;
    std::vector<std::uint8_t> m_;  // n x n; 0 = no edge, else EdgeMark + 1
};

/// Identical adjacency and identical end marks. Throws on node-count mismatch.
bool graph_equal(const MixedGraph& a, const MixedGraph& b);

/// True iff the marks at v on (u,v) and (v,w) are both arrowheads.
/// Requires u-v and v-w adjacent and u != w.
bool is_collider(const MixedGraph& g, NodeId u, NodeId v, NodeId w);

/// True iff u, v, w are pairwise adjacent. Requires distinct nodes.
bool forms_triangle(const MixedGraph& g, NodeId u, NodeId v, NodeId w);

/// Ground-truth DAG over observed, latent and selection nodes.
class CausalDag {
public:
    CausalDag(int node_count, const std::vector<std::pair<NodeId, NodeId>>& edges,
              std::vector<NodeRole> roles = {});

    int node_count() const { return n_; }
    const std::vector<NodeId>& parents(NodeId v) const;
    const std::vector<NodeId>& children(NodeId v) const;
    NodeRole role(NodeId v) const;
    bool has_edge(NodeId from, NodeId to) const;
    int edge_count() const;

    std::vector<NodeId> observed() const;
    std::vector<NodeId> latent() const;
    std::vector<NodeId> selection() const;

    /// Same edges, new role assignment.
    CausalDag with_roles(std::vector<NodeRole> roles) const;

    std::vector<std::pair<NodeId, NodeId>> edges() const;
    /// Node ids in a topological order (parents before children).
    std::vector<NodeId> topological_order() const;
    bool weakly_connected() const;

private:
    void check_node(NodeId v) const;

    int n_;
    std::vector<std::vector<NodeId>> parents_;
    std::vector<std::vector<NodeId>> children_;
    std::vector<NodeRole> roles_;
};

int max_in_degree(const CausalDag& d);

// Text format, one edge per line. PAG: header "pag <n>", edges "A <lm>-<rm> B"
// with lm in {o,<,-} and rm in {o,>,-}. DAG: header
// "dag <n> obs=<ids> lat=<ids> sel=<ids>", edges "A -> B".
void write_pag(std::ostream& out, const MixedGraph& g);
MixedGraph read_pag(std::istream& in);
void write_dag(std::ostream& out, const CausalDag& d);
CausalDag read_dag(std::istream& in);

}  // namespace causal

#endif  // CAUSAL_GRAPH_HPP_
