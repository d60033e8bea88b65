#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "doctest.h"

#include "causal/dsep.hpp"
#include "causal/icd.hpp"
#include "oracles.hpp"

using namespace causal;
using namespace causal::testing;

namespace {

constexpr EdgeMark kC = EdgeMark::Circle;
constexpr EdgeMark kA = EdgeMark::Arrowhead;
constexpr EdgeMark kT = EdgeMark::Tail;

}  // namespace

TEST_CASE("pds_distances on hand graphs") {
    SUBCASE("complete circle graph puts every node at distance 1") {
        const MixedGraph g = MixedGraph::complete_circles(5);
        for (NodeId a = 0; a < 5; ++a)
            for (NodeId b = 0; b < 5; ++b) {
                if (a == b) continue;
                const auto dist = pds_distances(g, a, b);
                for (NodeId v = 0; v < 5; ++v) CHECK(dist[v] == (v == a ? 0 : 1));
            }
    }
    SUBCASE("non-collider without a triangle blocks the walk") {
        const auto g = make_pag(3, {{0, 1, kC, kA}, {1, 2, kT, kA}});
        CHECK(pds_distances(g, 0, 2) == std::vector<int>{0, 1, -1});
    }
    SUBCASE("same node is rejected") {
        CHECK_THROWS_AS(pds_distances(MixedGraph::complete_circles(3), 1, 1),
                        std::invalid_argument);
    }
}

TEST_CASE("pds_distances matches path enumeration on random graphs") {
    PortableRng rng(41);
    for (int trial = 0; trial < 250; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_int(0, 4));
        const auto g = random_mixed_graph(n, 0.35 + 0.2 * (trial % 3), rng);
        for (NodeId a = 0; a < n; ++a)
            for (NodeId b = 0; b < n; ++b) {
                if (a == b) continue;
                for (const PdsPathMode mode : {PdsPathMode::Strict, PdsPathMode::Off}) {
                    CAPTURE(trial);
                    CAPTURE(a);
                    CAPTURE(b);
                    CHECK(pds_distances(g, a, b, mode) == brute_pds_distances(g, a, b, mode));
                    CHECK(pds_distances(g, a, b, mode, 2) ==
                          brute_pds_distances(g, a, b, mode, 2));
                }
            }
    }
}

TEST_CASE("pdsep_r candidates") {
    SUBCASE("r = 0 is the single empty set") {
        const MixedGraph g = MixedGraph::complete_circles(3);
        const auto cands = pdsep_r(g, 0, 1, 0);
        REQUIRE(cands.size() == 1);
        CHECK(cands[0].nodes.empty());
        CHECK(cands[0].score == 0.0);
    }
    SUBCASE("complete graph, r = 1") {
        const MixedGraph g = MixedGraph::complete_circles(4);
        const auto cands = pdsep_r(g, 0, 1, 1);
        REQUIRE(cands.size() == 2);
        CHECK(cands[0].nodes == std::vector<NodeId>{2});
        CHECK(cands[1].nodes == std::vector<NodeId>{3});
        CHECK(cands[0].score == doctest::Approx(1.0));
        CHECK(cands[1].score == doctest::Approx(1.0));
    }
    SUBCASE("validation") {
        const auto g = make_pag(3, {{0, 1, kC, kC}});
        CHECK_THROWS_AS(pdsep_r(g, 0, 2, 1), std::invalid_argument);
        CHECK_THROWS_AS(pdsep_r(g, 0, 1, -1), std::invalid_argument);
    }
}

TEST_CASE("pdsep_r keeps only path-closed candidate sets") {
    // 0 o-o 1 is the tested edge; 2 is a collider on <0, 2, 3>, so node 3
    // sits at distance 2 from node 0 and is reachable only through node 2.
    const auto g = make_pag(
        5, {{0, 1, kC, kC}, {0, 2, kC, kA}, {3, 2, kC, kA}, {0, 4, kC, kC}});
    IcdConfig cfg;
    cfg.pds_mode = PdsPathMode::Off;
    SUBCASE("r = 1 keeps the distance-1 singletons") {
        const auto cands = pdsep_r(g, 0, 1, 1, cfg);
        REQUIRE(cands.size() == 2);
        CHECK(cands[0].nodes == std::vector<NodeId>{2});
        CHECK(cands[1].nodes == std::vector<NodeId>{4});
    }
    SUBCASE("r = 2 drops the pair that cuts node 3 off from its path") {
        const auto cands = pdsep_r(g, 0, 1, 2, cfg);
        REQUIRE(cands.size() == 2);
        CHECK(cands[0].nodes == std::vector<NodeId>{2, 4});
        CHECK(cands[0].score == doctest::Approx(1.0));
        CHECK(cands[1].nodes == std::vector<NodeId>{2, 3});
        CHECK(cands[1].score == doctest::Approx(1.5));
    }
}

TEST_CASE("pdsep_r candidates match the filtered enumeration oracle") {
    PortableRng rng(43);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_int(0, 3));
        const auto g = random_mixed_graph(n, 0.55, rng);
        for (const auto& [x, y] : g.edges())
            for (int r = 1; r <= 3; ++r) {
                const auto cands = pdsep_r(g, x, y, r);

                const NodeId anchor = std::min(x, y), other = std::max(x, y);
                const auto da = brute_pds_distances(g, anchor, other, PdsPathMode::Strict, r);
                const auto db = brute_pds_distances(g, other, anchor, PdsPathMode::Strict, r);
                std::vector<NodeId> pool;
                for (NodeId v = 0; v < n; ++v)
                    if (v != x && v != y && (da[v] >= 0 || db[v] >= 0)) pool.push_back(v);

                const auto best = [](const std::vector<int>& p, const std::vector<int>& q,
                                     NodeId v) {
                    if (p[v] < 0) return q[v];
                    if (q[v] < 0) return p[v];
                    return std::min(p[v], q[v]);
                };
                const std::vector<char> on_path = brute_on_path_between(g, anchor, other);
                const auto closed = [&](const std::vector<NodeId>& set) {
                    std::vector<char> confined(n, 0);
                    confined[x] = on_path[x];
                    confined[y] = on_path[y];
                    for (NodeId v : set) confined[v] = on_path[v];
                    const auto ra = brute_constrained_distances(g, anchor, confined, r);
                    const auto rb = brute_constrained_distances(g, other, confined, r);
                    for (NodeId v : set)
                        if (best(ra, rb, v) != best(da, db, v)) return false;
                    return true;
                };
                std::vector<std::vector<NodeId>> expected;
                every_subset(pool, r, [&](const std::vector<NodeId>& s) {
                    if (closed(s)) expected.push_back(s);
                    return false;
                });

                CAPTURE(trial);
                CAPTURE(x);
                CAPTURE(y);
                CAPTURE(r);
                if (static_cast<int>(pool.size()) < r) {
                    CHECK(cands.empty());
                    continue;
                }
                std::vector<std::vector<NodeId>> got;
                got.reserve(cands.size());
                for (const auto& c : cands) got.push_back(c.nodes);
                std::sort(got.begin(), got.end());
                CHECK(got == expected);
                for (std::size_t i = 0; i < cands.size(); ++i) {
                    CHECK(static_cast<int>(cands[i].nodes.size()) == r);
                    CHECK(std::is_sorted(cands[i].nodes.begin(), cands[i].nodes.end()));
                    double sum = 0.0;
                    for (NodeId v : cands[i].nodes) sum += da[v] >= 0 ? da[v] : db[v];
                    CHECK(cands[i].score == doctest::Approx(sum / r));
                    if (i > 0)
                        CHECK(std::tie(cands[i - 1].score, cands[i - 1].nodes) <=
                              std::tie(cands[i].score, cands[i].nodes));
                }
            }
    }
}

TEST_CASE("icd_iteration removes edges on the first independence") {
    SUBCASE("marginally independent pair at r = 0") {
        TableCiTester table;
        table.set(0, 1, {}, true);
        SepsetRecord seps;
        auto [g, done] = icd_iteration(MixedGraph::complete_circles(2), seps, 0, table);
        CHECK_FALSE(g.adjacent(0, 1));
        CHECK_FALSE(done);
        REQUIRE(seps.find(0, 1) != nullptr);
        CHECK(seps.find(0, 1)->empty());
    }
    SUBCASE("chain separates only at r = 1") {
        const auto dag = make_dag(3, {{0, 1}, {1, 2}});
        OracleCiTester ci(dag);
        SepsetRecord seps;
        auto [g1, done1] = icd_iteration(MixedGraph::complete_circles(3), seps, 0, ci);
        CHECK(g1.edge_count() == 3);
        CHECK_FALSE(done1);
        auto [g2, done2] = icd_iteration(g1, seps, 1, ci);
        CHECK_FALSE(g2.adjacent(0, 2));
        CHECK(g2.adjacent(0, 1));
        CHECK(g2.adjacent(1, 2));
        REQUIRE(seps.find(0, 2) != nullptr);
        CHECK(*seps.find(0, 2) == std::vector<NodeId>{1});
    }
}

TEST_CASE("icd_main on hand instances") {
    SUBCASE("dependent pair keeps its circle edge") {
        const auto dag = make_dag(2, {{0, 1}});
        OracleCiTester ci(dag);
        const MixedGraph out = icd_main(MixedGraph::complete_circles(2), ci);
        REQUIRE(out.adjacent(0, 1));
        CHECK(out.mark(0, 1) == kC);
        CHECK(out.mark(1, 0) == kC);
    }
    SUBCASE("collider is recovered") {
        const auto dag = make_dag(3, {{0, 1}, {2, 1}});
        OracleCiTester ci(dag);
        const MixedGraph out = icd_main(MixedGraph::complete_circles(3), ci);
        const auto want = make_pag(3, {{0, 1, kC, kA}, {2, 1, kC, kA}});
        CHECK(graph_equal(out, want));
    }
    SUBCASE("config validation") {
        const auto dag = make_dag(3, {{0, 1}, {1, 2}});
        OracleCiTester ci(dag);
        IcdConfig bad;
        bad.r0 = -1;
        CHECK_THROWS_AS(icd_main(MixedGraph::complete_circles(3), ci, bad),
                        std::invalid_argument);
        bad.r0 = 2;  // cap for three observed nodes is 1
        CHECK_THROWS_AS(icd_main(MixedGraph::complete_circles(3), ci, bad),
                        std::invalid_argument);
    }
}

TEST_CASE("icd_main equals true_pag under the oracle on random instances") {
    PortableRng rng(47);
    int done = 0;
    while (done < 12) {
        CausalDag dag = random_test_dag(7, 0.4, rng);
        dag = select_latents(dag, rng.next_u64());
        const int m = static_cast<int>(dag.observed().size());
        if (m < 4) continue;
        ++done;
        OracleCiTester ci(dag);
        const MixedGraph learned = icd_main(MixedGraph::complete_circles(m), ci);
        CAPTURE(done);
        CHECK(graph_equal(learned, true_pag(dag)));
    }
}

TEST_CASE("iterations refine monotonically and query size tracks r") {
    struct Recorder : CiTester {
        explicit Recorder(CiTester& inner) : inner(&inner) {}
        bool independent(NodeId x, NodeId y, const std::vector<NodeId>& z) override {
            sizes.push_back(static_cast<int>(z.size()));
            return inner->independent(x, y, z);
        }
        CiTester* inner;
        std::vector<int> sizes;
    };

    PortableRng rng(53);
    for (int trial = 0; trial < 8; ++trial) {
        CausalDag dag = select_latents(random_test_dag(8, 0.35, rng), rng.next_u64());
        const int m = static_cast<int>(dag.observed().size());
        if (m < 4) continue;
        OracleCiTester oracle(dag);
        Recorder rec(oracle);

        std::vector<int> edge_counts;
        std::vector<std::size_t> boundaries;
        std::vector<int> rs;
        auto observer = [&](int r, const MixedGraph& g, bool) {
            edge_counts.push_back(g.edge_count());
            boundaries.push_back(rec.sizes.size());
            rs.push_back(r);
        };
        icd_main(MixedGraph::complete_circles(m), rec, {}, observer);

        for (std::size_t i = 1; i < edge_counts.size(); ++i)
            CHECK(edge_counts[i] <= edge_counts[i - 1]);
        std::size_t start = 0;
        for (std::size_t i = 0; i < boundaries.size(); ++i) {
            for (std::size_t q = start; q < boundaries[i]; ++q) CHECK(rec.sizes[q] == rs[i]);
            start = boundaries[i];
        }
        CHECK(rs.front() == 0);
    }
}

TEST_CASE("first iteration always reports not done") {
    // r = 0 produces the empty candidate set for every edge, so a complete
    // graph can never be done after the first sweep
    TableCiTester never;
    SepsetRecord seps;
    auto [g, done] = icd_iteration(MixedGraph::complete_circles(4), seps, 0, never);
    CHECK_FALSE(done);
    CHECK(g.edge_count() == 6);
}
