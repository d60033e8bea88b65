#include <sstream>
#include <stdexcept>

#include "doctest.h"

#include "causal/graph.hpp"
#include "causal/simgen.hpp"
#include "oracles.hpp"

using namespace causal;
using namespace causal::testing;

TEST_CASE("is_collider matches the arrowhead definition") {
    SUBCASE("arrowheads both sides") {
        const auto g = make_pag(3, {{0, 1, EdgeMark::Circle, EdgeMark::Arrowhead},
                                    {2, 1, EdgeMark::Circle, EdgeMark::Arrowhead}});
        CHECK(is_collider(g, 0, 1, 2));
        CHECK(is_collider(g, 2, 1, 0));
    }
    SUBCASE("tail on the outgoing side") {
        const auto g = make_pag(3, {{0, 1, EdgeMark::Circle, EdgeMark::Arrowhead},
                                    {1, 2, EdgeMark::Tail, EdgeMark::Arrowhead}});
        CHECK_FALSE(is_collider(g, 0, 1, 2));
    }
    SUBCASE("circles are not arrowheads") {
        const auto g = make_pag(3, {{0, 1, EdgeMark::Circle, EdgeMark::Circle},
                                    {1, 2, EdgeMark::Circle, EdgeMark::Circle}});
        CHECK_FALSE(is_collider(g, 0, 1, 2));
    }
    SUBCASE("non-adjacent pair is rejected") {
        const auto g = make_pag(3, {{0, 1, EdgeMark::Circle, EdgeMark::Circle}});
        CHECK_THROWS_AS(is_collider(g, 0, 1, 2), std::invalid_argument);
    }
}

TEST_CASE("forms_triangle requires all three adjacencies") {
    auto g = make_pag(4, {{0, 1, EdgeMark::Circle, EdgeMark::Circle},
                          {1, 2, EdgeMark::Circle, EdgeMark::Circle},
                          {0, 2, EdgeMark::Circle, EdgeMark::Circle}});
    CHECK(forms_triangle(g, 0, 1, 2));
    g.remove_edge(0, 2);
    CHECK_FALSE(forms_triangle(g, 0, 1, 2));

    const MixedGraph complete = MixedGraph::complete_circles(4);
    for (NodeId u = 0; u < 4; ++u)
        for (NodeId v = 0; v < 4; ++v)
            for (NodeId w = 0; w < 4; ++w)
                if (u != v && v != w && u != w) CHECK(forms_triangle(complete, u, v, w));
}

TEST_CASE("max_in_degree") {
    CHECK(max_in_degree(make_dag(3, {})) == 0);
    CHECK(max_in_degree(make_dag(3, {{0, 1}, {1, 2}})) == 1);
    CHECK(max_in_degree(make_dag(3, {{0, 2}, {1, 2}})) == 2);
}

TEST_CASE("graph_equal compares adjacency and end marks") {
    const auto g = make_pag(3, {{0, 1, EdgeMark::Arrowhead, EdgeMark::Circle},
                                {1, 2, EdgeMark::Tail, EdgeMark::Arrowhead}});
    CHECK(graph_equal(g, g));

    MixedGraph flipped = g;
    flipped.set_mark(1, 0, EdgeMark::Tail);
    CHECK_FALSE(graph_equal(g, flipped));

    MixedGraph smaller = g;
    smaller.remove_edge(1, 2);
    CHECK_FALSE(graph_equal(g, smaller));

    CHECK_THROWS_AS(graph_equal(g, MixedGraph(4)), std::invalid_argument);
}

TEST_CASE("mixed graph adjacency stays symmetric under random mutation") {
    PortableRng rng(7);
    MixedGraph g(6);
    for (int step = 0; step < 300; ++step) {
        const NodeId a = static_cast<NodeId>(rng.uniform_int(0, 5));
        const NodeId b = static_cast<NodeId>(rng.uniform_int(0, 5));
        if (a == b) continue;
        if (g.adjacent(a, b))
            g.remove_edge(a, b);
        else
            g.add_edge(a, b, EdgeMark::Circle, EdgeMark::Arrowhead);
        for (NodeId u = 0; u < 6; ++u)
            for (NodeId v = 0; v < 6; ++v) CHECK(g.adjacent(u, v) == g.adjacent(v, u));
    }
}

TEST_CASE("mark accessor addresses the second argument's end") {
    auto g = make_pag(2, {{0, 1, EdgeMark::Tail, EdgeMark::Arrowhead}});
    CHECK(g.mark(0, 1) == EdgeMark::Arrowhead);
    CHECK(g.mark(1, 0) == EdgeMark::Tail);
    g.set_mark(1, 0, EdgeMark::Circle);
    CHECK(g.mark(1, 0) == EdgeMark::Circle);
    CHECK(g.mark(0, 1) == EdgeMark::Arrowhead);
}

TEST_CASE("complete_circles and mark reset") {
    MixedGraph g = MixedGraph::complete_circles(4);
    CHECK(g.edge_count() == 6);
    g.set_mark(0, 1, EdgeMark::Arrowhead);
    g.set_mark(2, 3, EdgeMark::Tail);
    CHECK_FALSE(graph_equal(g, MixedGraph::complete_circles(4)));
    g.reset_marks_to_circles();
    CHECK(graph_equal(g, MixedGraph::complete_circles(4)));
    CHECK_FALSE(g.circle_free());
}

TEST_CASE("causal dag rejects cycles and self loops") {
    CHECK_THROWS_AS(make_dag(2, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_dag(3, {{0, 1}, {1, 2}, {2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_dag(2, {{1, 1}}), std::invalid_argument);

    PortableRng rng(11);
    int rejected = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (int e = 0; e < 6; ++e) {
            const NodeId a = static_cast<NodeId>(rng.uniform_int(0, 4));
            const NodeId b = static_cast<NodeId>(rng.uniform_int(0, 4));
            const std::pair<NodeId, NodeId> edge{a, b};
            if (a != b && std::find(edges.begin(), edges.end(), edge) == edges.end())
                edges.push_back(edge);
        }
        const bool ok = edges_acyclic(5, edges);
        if (!ok) ++rejected;
        if (ok)
            CHECK_NOTHROW(CausalDag(5, edges));
        else
            CHECK_THROWS_AS(CausalDag(5, edges), std::invalid_argument);
    }
    CHECK(rejected > 0);
}

TEST_CASE("topological order puts parents first") {
    const auto d = make_dag(6, {{3, 1}, {1, 0}, {3, 0}, {4, 5}, {0, 4}});
    const auto order = d.topological_order();
    std::vector<int> pos(6);
    for (int i = 0; i < 6; ++i) pos[order[i]] = i;
    for (const auto& [from, to] : d.edges()) CHECK(pos[from] < pos[to]);
}

TEST_CASE("weak connectivity") {
    CHECK(make_dag(3, {{0, 1}, {1, 2}}).weakly_connected());
    CHECK_FALSE(make_dag(3, {{0, 1}}).weakly_connected());
}

TEST_CASE("dag roles partition the nodes") {
    const auto d = make_dag(3, {{1, 0}, {1, 2}},
                            {NodeRole::Observed, NodeRole::Latent, NodeRole::Observed});
    CHECK(d.observed() == std::vector<NodeId>{0, 2});
    CHECK(d.latent() == std::vector<NodeId>{1});
    CHECK(d.selection().empty());
}

TEST_CASE("pag text format round trips") {
    const auto g = make_pag(5, {{0, 1, EdgeMark::Circle, EdgeMark::Arrowhead},
                                {1, 2, EdgeMark::Tail, EdgeMark::Arrowhead},
                                {3, 4, EdgeMark::Circle, EdgeMark::Circle},
                                {0, 4, EdgeMark::Arrowhead, EdgeMark::Arrowhead}});
    std::stringstream buf;
    write_pag(buf, g);
    CHECK(graph_equal(read_pag(buf), g));
}

TEST_CASE("dag text format round trips with roles") {
    const auto d = make_dag(4, {{0, 1}, {0, 2}, {3, 2}},
                            {NodeRole::Latent, NodeRole::Observed, NodeRole::Observed,
                             NodeRole::Selection});
    std::stringstream buf;
    write_dag(buf, d);
    const CausalDag back = read_dag(buf);
    CHECK(back.node_count() == d.node_count());
    CHECK(back.edges() == d.edges());
    CHECK(back.observed() == d.observed());
    CHECK(back.latent() == d.latent());
    CHECK(back.selection() == d.selection());
}
