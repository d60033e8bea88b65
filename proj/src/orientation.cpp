#include "causal/orientation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace causal {

void SepsetRecord::record(NodeId a, NodeId b, std::vector<NodeId> z) {
    if (a == b) throw std::invalid_argument("sepset for a self pair");
    for (NodeId v : z)
        if (v == a || v == b) throw std::invalid_argument("sepset contains an endpoint");
    std::sort(z.begin(), z.end());
    sets_[{std::min(a, b), std::max(a, b)}] = std::move(z);
}

const std::vector<NodeId>* SepsetRecord::find(NodeId a, NodeId b) const {
    auto it = sets_.find({std::min(a, b), std::max(a, b)});
    return it == sets_.end() ? nullptr : &it->second;
}

namespace {

// Checked mark write: only circles may change. Returns whether g changed.
bool put_mark(MixedGraph& g, NodeId a, NodeId b, EdgeMark at_b, MarkConflictPolicy policy) {
    const EdgeMark cur = g.mark(a, b);
    if (cur == at_b) return false;
    if (cur != EdgeMark::Circle) {
        if (policy == MarkConflictPolicy::Throw)
            throw std::logic_error("orientation conflict on edge " + std::to_string(a) + "-" +
                                   std::to_string(b));
        return false;
    }
    g.set_mark(a, b, at_b);
    return true;
}

class RuleEngine {
public:
    RuleEngine(MixedGraph& g, const SepsetRecord& seps, MarkConflictPolicy policy)
        : g_(g), seps_(seps), policy_(policy) {}

    void run() {
        bool changed = true;
        while (changed) {
            changed = false;
            changed |= arrow_into_circle_chain();       // R1
            changed |= directed_path_arrowhead();       // R2
            changed |= double_arrow_through_circles();  // R3
            changed |= discriminating_paths();          // R4
            changed |= circle_cycles();                 // R5
            changed |= tail_next_to_undirected();       // R6
            changed |= tail_unshielded_circle();        // R7
            changed |= tail_closing_directed();         // R8
            changed |= tail_from_pd_path();             // R9
            changed |= tail_from_pd_fork();             // R10
        }
    }

private:
    bool set(NodeId a, NodeId b, EdgeMark at_b) { return put_mark(g_, a, b, at_b, policy_); }

    EdgeMark mark(NodeId a, NodeId b) const { return g_.mark(a, b); }

    bool directed(NodeId a, NodeId b) const {  // a -> b
        return g_.adjacent(a, b) && mark(b, a) == EdgeMark::Tail && mark(a, b) == EdgeMark::Arrowhead;
    }

    // Edge a *-* b traversable from a to b on a potentially directed path.
    bool pd_edge(NodeId a, NodeId b) const {
        return mark(b, a) != EdgeMark::Arrowhead && mark(a, b) != EdgeMark::Tail;
    }

    // a *-> b o-* c with a, c non-adjacent: orient b -> c.
    bool arrow_into_circle_chain() {
        bool changed = false;
        for (NodeId b = 0; b < g_.node_count(); ++b) {
            const auto nb = g_.neighbors(b);
            for (NodeId a : nb) {
                if (mark(a, b) != EdgeMark::Arrowhead) continue;
                for (NodeId c : nb) {
                    if (c == a || g_.adjacent(a, c)) continue;
                    if (mark(c, b) != EdgeMark::Circle) continue;
                    changed |= set(c, b, EdgeMark::Tail);
                    changed |= set(b, c, EdgeMark::Arrowhead);
                }
            }
        }
        return changed;
    }

    // a -> b *-> c or a *-> b -> c, with a *-o c: orient a *-> c.
    bool directed_path_arrowhead() {
        bool changed = false;
        for (const auto& [a, c] : g_.edges())
            for (int flip = 0; flip < 2; ++flip) {
                const NodeId x = flip ? c : a, y = flip ? a : c;
                if (mark(x, y) != EdgeMark::Circle) continue;
                for (NodeId b : g_.neighbors(x)) {
                    if (b == y || !g_.adjacent(b, y)) continue;
                    const bool tail_chain = directed(x, b) && mark(b, y) == EdgeMark::Arrowhead;
                    const bool head_chain = mark(x, b) == EdgeMark::Arrowhead && directed(b, y);
                    if (tail_chain || head_chain) {
                        changed |= set(x, y, EdgeMark::Arrowhead);
                        break;
                    }
                }
            }
        return changed;
    }

    // a *-> b <-* c collider, a *-o t o-* c, a, c non-adjacent, t *-o b:
    // orient t *-> b.
    bool double_arrow_through_circles() {
        bool changed = false;
        for (NodeId b = 0; b < g_.node_count(); ++b) {
            const auto nb = g_.neighbors(b);
            for (NodeId t : nb) {
                if (mark(t, b) != EdgeMark::Circle) continue;
                bool fired = false;
                for (std::size_t i = 0; i < nb.size() && !fired; ++i) {
                    const NodeId a = nb[i];
                    if (a == t || mark(a, b) != EdgeMark::Arrowhead) continue;
                    if (!g_.adjacent(a, t) || mark(a, t) != EdgeMark::Circle) continue;
                    for (std::size_t j = 0; j < nb.size() && !fired; ++j) {
                        const NodeId c = nb[j];
                        if (c == t || c == a || mark(c, b) != EdgeMark::Arrowhead) continue;
                        if (g_.adjacent(a, c)) continue;
                        if (!g_.adjacent(c, t) || mark(c, t) != EdgeMark::Circle) continue;
                        changed |= set(t, b, EdgeMark::Arrowhead);
                        fired = true;
                    }
                }
            }
        }
        return changed;
    }

    // Discriminating path <t, ..., a, b, c> for b with b o-* c: orient by
    // whether b lies in the recorded separating set of {t, c}.
    bool discriminating_paths() {
        bool changed = false;
        for (const auto& [x, y] : g_.edges())
            for (int flip = 0; flip < 2; ++flip) {
                const NodeId b = flip ? y : x, c = flip ? x : y;
                if (mark(c, b) != EdgeMark::Circle) continue;
                changed |= search_discriminating(b, c);
            }
        return changed;
    }

    bool search_discriminating(NodeId b, NodeId c) {
        std::vector<NodeId> path{b};
        std::vector<char> on_path(g_.node_count(), 0);
        on_path[b] = 1;
        on_path[c] = 1;
        for (NodeId a : g_.neighbors(b)) {
            if (a == c) continue;
            path.push_back(a);
            on_path[a] = 1;
            if (extend_discriminating(path, on_path, b, c)) return true;
            path.pop_back();
            on_path[a] = 0;
        }
        return false;
    }

    bool extend_discriminating(std::vector<NodeId>& path, std::vector<char>& on_path, NodeId b,
                               NodeId c) {
        const NodeId f = path.back();
        const NodeId toward_b = path[path.size() - 2];
        // f is internal: a collider on the path and a parent of c.
        if (mark(toward_b, f) != EdgeMark::Arrowhead) return false;
        if (!g_.adjacent(f, c) || !directed(f, c)) return false;
        for (NodeId t : g_.neighbors(f)) {
            if (on_path[t]) continue;
            if (mark(t, f) != EdgeMark::Arrowhead) continue;
            if (!g_.adjacent(t, c)) {
                const std::vector<NodeId>* sep = seps_.find(t, c);
                if (!sep) continue;  // no recorded set; cannot decide this path
                const NodeId alpha = path[1];
                bool changed = false;
                if (std::binary_search(sep->begin(), sep->end(), b)) {
                    changed |= set(c, b, EdgeMark::Tail);
                    changed |= set(b, c, EdgeMark::Arrowhead);
                } else {
                    changed |= set(b, alpha, EdgeMark::Arrowhead);
                    changed |= set(alpha, b, EdgeMark::Arrowhead);
                    changed |= set(c, b, EdgeMark::Arrowhead);
                    changed |= set(b, c, EdgeMark::Arrowhead);
                }
                if (changed) return true;
                continue;
            }
            path.push_back(t);
            on_path[t] = 1;
            if (extend_discriminating(path, on_path, b, c)) return true;
            path.pop_back();
            on_path[t] = 0;
        }
        return false;
    }

    // a o-o b with an uncovered all-circle path <a, g1, ..., gk, b> (k >= 2)
    // whose ends are unshielded around the a-b edge: orient the a-b edge and
    // every path edge as tail-tail.
    bool circle_cycles() {
        bool changed = false;
        for (const auto& [a, b] : g_.edges()) {
            if (mark(b, a) != EdgeMark::Circle || mark(a, b) != EdgeMark::Circle) continue;
            std::vector<NodeId> path{a};
            std::vector<char> on_path(g_.node_count(), 0);
            on_path[a] = 1;
            if (extend_circle_path(path, on_path, a, b)) {
                path.push_back(b);
                for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                    changed |= set(path[i + 1], path[i], EdgeMark::Tail);
                    changed |= set(path[i], path[i + 1], EdgeMark::Tail);
                }
                changed |= set(b, a, EdgeMark::Tail);
                changed |= set(a, b, EdgeMark::Tail);
            }
        }
        return changed;
    }

    bool circle_circle(NodeId u, NodeId v) const {
        return mark(v, u) == EdgeMark::Circle && mark(u, v) == EdgeMark::Circle;
    }

    bool extend_circle_path(std::vector<NodeId>& path, std::vector<char>& on_path, NodeId a,
                            NodeId b) {
        const NodeId cur = path.back();
        for (NodeId w : g_.neighbors(cur)) {
            if (w == b) {
                if (path.size() < 3) continue;                    // need two internal nodes
                if (!circle_circle(cur, b)) continue;             // last path edge
                if (g_.adjacent(path[path.size() - 2], b)) continue;  // triple at cur
                if (g_.adjacent(path[1], b)) continue;            // second node vs b
                if (g_.adjacent(path.back(), a)) continue;        // next-to-last vs a
                return true;
            }
            if (on_path[w] || w == a) continue;
            if (!circle_circle(cur, w)) continue;
            if (path.size() >= 2 && g_.adjacent(path[path.size() - 2], w)) continue;
            path.push_back(w);
            on_path[w] = 1;
            if (extend_circle_path(path, on_path, a, b)) return true;
            path.pop_back();
            on_path[w] = 0;
        }
        return false;
    }

    // a --- b o-* c: orient tail at b toward c.
    bool tail_next_to_undirected() {
        bool changed = false;
        for (NodeId b = 0; b < g_.node_count(); ++b) {
            const auto nb = g_.neighbors(b);
            bool has_undirected = false;
            for (NodeId a : nb)
                if (mark(b, a) == EdgeMark::Tail && mark(a, b) == EdgeMark::Tail) {
                    has_undirected = true;
                    break;
                }
            if (!has_undirected) continue;
            for (NodeId c : nb)
                if (mark(c, b) == EdgeMark::Circle) {
                    // The undirected neighbor must differ from c.
                    for (NodeId a : nb)
                        if (a != c && mark(b, a) == EdgeMark::Tail &&
                            mark(a, b) == EdgeMark::Tail) {
                            changed |= set(c, b, EdgeMark::Tail);
                            break;
                        }
                }
        }
        return changed;
    }

    // a --o b o-* c with a, c non-adjacent: orient tail at b toward c.
    bool tail_unshielded_circle() {
        bool changed = false;
        for (NodeId b = 0; b < g_.node_count(); ++b) {
            const auto nb = g_.neighbors(b);
            for (NodeId a : nb) {
                if (mark(b, a) != EdgeMark::Tail || mark(a, b) != EdgeMark::Circle) continue;
                for (NodeId c : nb) {
                    if (c == a || g_.adjacent(a, c)) continue;
                    if (mark(c, b) != EdgeMark::Circle) continue;
                    changed |= set(c, b, EdgeMark::Tail);
                }
            }
        }
        return changed;
    }

    // a -> b -> c or a --o b -> c, with a o-> c: orient tail at a on a-c.
    bool tail_closing_directed() {
        bool changed = false;
        for (const auto& [x, y] : g_.edges())
            for (int flip = 0; flip < 2; ++flip) {
                const NodeId a = flip ? y : x, c = flip ? x : y;
                if (mark(c, a) != EdgeMark::Circle || mark(a, c) != EdgeMark::Arrowhead) continue;
                for (NodeId b : g_.neighbors(a)) {
                    if (b == c || !g_.adjacent(b, c) || !directed(b, c)) continue;
                    const bool chain = directed(a, b);
                    const bool half = mark(b, a) == EdgeMark::Tail && mark(a, b) == EdgeMark::Circle;
                    if (chain || half) {
                        changed |= set(c, a, EdgeMark::Tail);
                        break;
                    }
                }
            }
        return changed;
    }

    // Uncovered potentially-directed path search from `from` whose second
    // node is `second`, ending at `to`.
    bool uncovered_pd_path(NodeId from, NodeId second, NodeId to) {
        if (!pd_edge(from, second)) return false;
        if (second == to) return true;
        std::vector<NodeId> path{from, second};
        std::vector<char> on_path(g_.node_count(), 0);
        on_path[from] = 1;
        on_path[second] = 1;
        return extend_pd_path(path, on_path, to);
    }

    bool extend_pd_path(std::vector<NodeId>& path, std::vector<char>& on_path, NodeId to) {
        const NodeId cur = path.back();
        const NodeId prev = path[path.size() - 2];
        for (NodeId w : g_.neighbors(cur)) {
            if (on_path[w]) continue;
            if (g_.adjacent(prev, w)) continue;  // covered triple
            if (!pd_edge(cur, w)) continue;
            if (w == to) return true;
            path.push_back(w);
            on_path[w] = 1;
            if (extend_pd_path(path, on_path, to)) return true;
            path.pop_back();
            on_path[w] = 0;
        }
        return false;
    }

    // a o-> c with an uncovered pd path <a, b, ..., c>, b, c non-adjacent:
    // orient tail at a on a-c.
    bool tail_from_pd_path() {
        bool changed = false;
        for (const auto& [x, y] : g_.edges())
            for (int flip = 0; flip < 2; ++flip) {
                const NodeId a = flip ? y : x, c = flip ? x : y;
                if (mark(c, a) != EdgeMark::Circle || mark(a, c) != EdgeMark::Arrowhead) continue;
                for (NodeId b : g_.neighbors(a)) {
                    if (b == c || g_.adjacent(b, c)) continue;
                    if (uncovered_pd_path(a, b, c)) {
                        changed |= set(c, a, EdgeMark::Tail);
                        break;
                    }
                }
            }
        return changed;
    }

    // a o-> c, b -> c <- d, uncovered pd paths a..b and a..d whose second
    // nodes mu, omega are distinct and non-adjacent: orient tail at a on a-c.
    bool tail_from_pd_fork() {
        bool changed = false;
        for (const auto& [x, y] : g_.edges())
            for (int flip = 0; flip < 2; ++flip) {
                const NodeId a = flip ? y : x, c = flip ? x : y;
                if (mark(c, a) != EdgeMark::Circle || mark(a, c) != EdgeMark::Arrowhead) continue;
                std::vector<NodeId> parents;
                for (NodeId b : g_.neighbors(c))
                    if (b != a && directed(b, c)) parents.push_back(b);
                if (parents.size() < 2) continue;
                if (fork_tail_applies(a, c, parents)) changed |= set(c, a, EdgeMark::Tail);
            }
        return changed;
    }

    bool fork_tail_applies(NodeId a, NodeId c, const std::vector<NodeId>& parents) {
        const auto starts = g_.neighbors(a);
        for (NodeId b : parents)
            for (NodeId d : parents) {
                if (b == d) continue;
                for (NodeId mu : starts) {
                    if (mu == c || !uncovered_pd_path(a, mu, b)) continue;
                    for (NodeId omega : starts) {
                        if (omega == mu || omega == c || g_.adjacent(mu, omega)) continue;
                        if (uncovered_pd_path(a, omega, d)) return true;
                    }
                }
            }
        return false;
    }

    MixedGraph& g_;
    const SepsetRecord& seps_;
    MarkConflictPolicy policy_;
};

}  // namespace

MixedGraph orient_v_structures(MixedGraph g, const SepsetRecord& seps) {
    const int n = g.node_count();
    for (NodeId v = 0; v < n; ++v) {
        const auto nb = g.neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                const NodeId u = nb[i], w = nb[j];
                if (g.adjacent(u, w)) continue;
                const std::vector<NodeId>* sep = seps.find(u, w);
                if (!sep)
                    throw std::logic_error("unshielded pair " + std::to_string(u) + "," +
                                           std::to_string(w) + " has no recorded separating set");
                if (!std::binary_search(sep->begin(), sep->end(), v)) {
                    put_mark(g, u, v, EdgeMark::Arrowhead, MarkConflictPolicy::Throw);
                    put_mark(g, w, v, EdgeMark::Arrowhead, MarkConflictPolicy::Throw);
                }
            }
    }
    return g;
}

MixedGraph apply_rules(MixedGraph g, const SepsetRecord& seps, MarkConflictPolicy policy) {
    RuleEngine engine(g, seps, policy);
    engine.run();
    return g;
}

}  // namespace causal
