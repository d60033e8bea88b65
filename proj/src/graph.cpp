#include "causal/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace causal {

namespace {

std::string node_pair_str(NodeId a, NodeId b) {
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

MixedGraph::MixedGraph(int node_count) : n_(node_count) {
    if (node_count < 0) throw std::invalid_argument("negative node count");
    m_.assign(static_cast<std::size_t>(n_) * n_, 0);
}

MixedGraph MixedGraph::complete_circles(int node_count) {
    MixedGraph g(node_count);
    for (NodeId a = 0; a < node_count; ++a)
        for (NodeId b = a + 1; b < node_count; ++b)
            g.add_edge(a, b, EdgeMark::Circle, EdgeMark::Circle);
    return g;
}

void MixedGraph::check_node(NodeId v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("node id " + std::to_string(v) + " out of range");
}

bool MixedGraph::adjacent(NodeId a, NodeId b) const {
    check_node(a);
    check_node(b);
    return m_[static_cast<std::size_t>(a) * n_ + b] != 0;
}

void MixedGraph::add_edge(NodeId a, NodeId b, EdgeMark at_a, EdgeMark at_b) {
    check_node(a);
    check_node(b);
    if (a == b) throw std::invalid_argument("self loop at node " + std::to_string(a));
    m_[static_cast<std::size_t>(a) * n_ + b] = static_cast<std::uint8_t>(at_b) + 1;
    m_[static_cast<std::size_t>(b) * n_ + a] = static_cast<std::uint8_t>(at_a) + 1;
}

void MixedGraph::remove_edge(NodeId a, NodeId b) {
    if (!adjacent(a, b)) throw std::invalid_argument("no edge " + node_pair_str(a, b));
    m_[static_cast<std::size_t>(a) * n_ + b] = 0;
    m_[static_cast<std::size_t>(b) * n_ + a] = 0;
}

EdgeMark MixedGraph::mark(NodeId a, NodeId b) const {
    if (!adjacent(a, b)) throw std::invalid_argument("no edge " + node_pair_str(a, b));
    return static_cast<EdgeMark>(m_[static_cast<std::size_t>(a) * n_ + b] - 1);
}

void MixedGraph::set_mark(NodeId a, NodeId b, EdgeMark at_b) {
    if (!adjacent(a, b)) throw std::invalid_argument("no edge " + node_pair_str(a, b));
    m_[static_cast<std::size_t>(a) * n_ + b] = static_cast<std::uint8_t>(at_b) + 1;
}

std::vector<NodeId> MixedGraph::neighbors(NodeId a) const {
    check_node(a);
    std::vector<NodeId> out;
    for (NodeId b = 0; b < n_; ++b)
        if (b != a && m_[static_cast<std::size_t>(a) * n_ + b] != 0) out.push_back(b);
    return out;
}

int MixedGraph::degree(NodeId a) const {
    check_node(a);
    int d = 0;
    for (NodeId b = 0; b < n_; ++b)
        if (b != a && m_[static_cast<std::size_t>(a) * n_ + b] != 0) ++d;
    return d;
}

std::vector<std::pair<NodeId, NodeId>> MixedGraph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId a = 0; a < n_; ++a)
        for (NodeId b = a + 1; b < n_; ++b)
            if (m_[static_cast<std::size_t>(a) * n_ + b] != 0) out.emplace_back(a, b);
    return out;
}

int MixedGraph::edge_count() const {
    int c = 0;
    for (NodeId a = 0; a < n_; ++a)
        for (NodeId b = a + 1; b < n_; ++b)
            if (m_[static_cast<std::size_t>(a) * n_ + b] != 0) ++c;
    return c;
}

void MixedGraph::reset_marks_to_circles() {
    for (auto& cell : m_)
        if (cell != 0) cell = static_cast<std::uint8_t>(EdgeMark::Circle) + 1;
}

bool MixedGraph::circle_free() const {
    for (auto cell : m_)
        if (cell == static_cast<std::uint8_t>(EdgeMark::Circle) + 1) return false;
    return true;
}

bool graph_equal(const MixedGraph& a, const MixedGraph& b) {
    if (a.node_count() != b.node_count())
        throw std::invalid_argument("graph_equal: node counts differ");
    const int n = a.node_count();
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            const bool ea = a.adjacent(u, v);
            if (ea != b.adjacent(u, v)) return false;
            if (ea && (a.mark(u, v) != b.mark(u, v) || a.mark(v, u) != b.mark(v, u))) return false;
        }
    }
    return true;
}

bool is_collider(const MixedGraph& g, NodeId u, NodeId v, NodeId w) {
    if (u == w) throw std::invalid_argument("is_collider: endpoints coincide");
    if (!g.adjacent(u, v) || !g.adjacent(v, w))
        throw std::invalid_argument("is_collider: triple is not a path");
    return g.mark(u, v) == EdgeMark::Arrowhead && g.mark(w, v) == EdgeMark::Arrowhead;
}

bool forms_triangle(const MixedGraph& g, NodeId u, NodeId v, NodeId w) {
    if (u == v || v == w || u == w) throw std::invalid_argument("forms_triangle: nodes not distinct");
    return g.adjacent(u, v) && g.adjacent(v, w) && g.adjacent(u, w);
}

CausalDag::CausalDag(int node_count, const std::vector<std::pair<NodeId, NodeId>>& edges,
                     std::vector<NodeRole> roles)
    : n_(node_count), parents_(node_count), children_(node_count) {
    if (node_count < 0) throw std::invalid_argument("negative node count");
    if (roles.empty()) roles.assign(node_count, NodeRole::Observed);
    if (static_cast<int>(roles.size()) != node_count)
        throw std::invalid_argument("role table size mismatch");
    roles_ = std::move(roles);

    for (const auto& [from, to] : edges) {
        check_node(from);
        check_node(to);
        if (from == to) throw std::invalid_argument("self loop at node " + std::to_string(from));
        children_[from].push_back(to);
        parents_[to].push_back(from);
    }
    for (NodeId v = 0; v < n_; ++v) {
        std::sort(parents_[v].begin(), parents_[v].end());
        std::sort(children_[v].begin(), children_[v].end());
        if (std::adjacent_find(parents_[v].begin(), parents_[v].end()) != parents_[v].end())
            throw std::invalid_argument("duplicate edge into node " + std::to_string(v));
    }
    topological_order();  // throws on a cycle
}

void CausalDag::check_node(NodeId v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("node id " + std::to_string(v) + " out of range");
}

const std::vector<NodeId>& CausalDag::parents(NodeId v) const {
    check_node(v);
    return parents_[v];
}

const std::vector<NodeId>& CausalDag::children(NodeId v) const {
    check_node(v);
    return children_[v];
}

NodeRole CausalDag::role(NodeId v) const {
    check_node(v);
    return roles_[v];
}

bool CausalDag::has_edge(NodeId from, NodeId to) const {
    check_node(from);
    check_node(to);
    return std::binary_search(children_[from].begin(), children_[from].end(), to);
}

int CausalDag::edge_count() const {
    int c = 0;
    for (const auto& ch : children_) c += static_cast<int>(ch.size());
    return c;
}

std::vector<NodeId> CausalDag::observed() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < n_; ++v)
        if (roles_[v] == NodeRole::Observed) out.push_back(v);
    return out;
}

std::vector<NodeId> CausalDag::latent() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < n_; ++v)
        if (roles_[v] == NodeRole::Latent) out.push_back(v);
    return out;
}

std::vector<NodeId> CausalDag::selection() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < n_; ++v)
        if (roles_[v] == NodeRole::Selection) out.push_back(v);
    return out;
}

CausalDag CausalDag::with_roles(std::vector<NodeRole> roles) const {
    return CausalDag(n_, edges(), std::move(roles));
}

std::vector<std::pair<NodeId, NodeId>> CausalDag::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId v = 0; v < n_; ++v)
        for (NodeId c : children_[v]) out.emplace_back(v, c);
    return out;
}

std::vector<NodeId> CausalDag::topological_order() const {
    std::vector<int> in_deg(n_);
    for (NodeId v = 0; v < n_; ++v) in_deg[v] = static_cast<int>(parents_[v].size());
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (NodeId v = 0; v < n_; ++v)
        if (in_deg[v] == 0) ready.push(v);
    std::vector<NodeId> order;
    order.reserve(n_);
    while (!ready.empty()) {
        NodeId v = ready.top();
        ready.pop();
        order.push_back(v);
        for (NodeId c : children_[v])
            if (--in_deg[c] == 0) ready.push(c);
    }
    if (static_cast<int>(order.size()) != n_)
        throw std::invalid_argument("edge set contains a directed cycle");
    return order;
}

bool CausalDag::weakly_connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(n_, 0);
    std::queue<NodeId> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        NodeId v = q.front();
        q.pop();
        for (NodeId u : parents_[v])
            if (!seen[u]) {
                seen[u] = 1;
                ++count;
                q.push(u);
            }
        for (NodeId u : children_[v])
            if (!seen[u]) {
                seen[u] = 1;
                ++count;
                q.push(u);
            }
    }
    return count == n_;
}

int max_in_degree(const CausalDag& d) {
    int best = 0;
    for (NodeId v = 0; v < d.node_count(); ++v)
        best = std::max(best, static_cast<int>(d.parents(v).size()));
    return best;
}

namespace {

char left_mark_char(EdgeMark m) {
    switch (m) {
        case EdgeMark::Circle: return 'o';
        case EdgeMark::Arrowhead: return '<';
        case EdgeMark::Tail: return '-';
    }
    throw std::logic_error("bad mark");
}

char right_mark_char(EdgeMark m) {
    switch (m) {
        case EdgeMark::Circle: return 'o';
        case EdgeMark::Arrowhead: return '>';
        case EdgeMark::Tail: return '-';
    }
    throw std::logic_error("bad mark");
}

EdgeMark parse_left_mark(char c) {
    if (c == 'o') return EdgeMark::Circle;
    if (c == '<') return EdgeMark::Arrowhead;
    if (c == '-') return EdgeMark::Tail;
    throw std::invalid_argument(std::string("bad left mark '") + c + "'");
}

EdgeMark parse_right_mark(char c) {
    if (c == 'o') return EdgeMark::Circle;
    if (c == '>') return EdgeMark::Arrowhead;
    if (c == '-') return EdgeMark::Tail;
    throw std::invalid_argument(std::string("bad right mark '") + c + "'");
}

void write_id_list(std::ostream& out, const char* key, const std::vector<NodeId>& ids) {
    out << key << '=';
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out << ',';
        out << ids[i];
    }
}

std::vector<NodeId> parse_id_list(const std::string& token, const std::string& key) {
    if (token.rfind(key + "=", 0) != 0)
        throw std::invalid_argument("expected '" + key + "=' in dag header, got '" + token + "'");
    std::vector<NodeId> out;
    std::string body = token.substr(key.size() + 1);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

}  // namespace

void write_pag(std::ostream& out, const MixedGraph& g) {
    out << "pag " << g.node_count() << '\n';
    for (const auto& [a, b] : g.edges())
        out << a << ' ' << left_mark_char(g.mark(b, a)) << '-' << right_mark_char(g.mark(a, b))
            << ' ' << b << '\n';
}

MixedGraph read_pag(std::istream& in) {
    std::string kind;
    int n = 0;
    if (!(in >> kind >> n) || kind != "pag")
        throw std::invalid_argument("expected 'pag <node_count>' header");
    MixedGraph g(n);
    NodeId a, b;
    std::string tok;
    while (in >> a >> tok >> b) {
        if (tok.size() != 3 || tok[1] != '-')
            throw std::invalid_argument("bad edge token '" + tok + "'");
        g.add_edge(a, b, parse_left_mark(tok[0]), parse_right_mark(tok[2]));
    }
    return g;
}

void write_dag(std::ostream& out, const CausalDag& d) {
    out << "dag " << d.node_count() << ' ';
    write_id_list(out, "obs", d.observed());
    out << ' ';
    write_id_list(out, "lat", d.latent());
    out << ' ';
    write_id_list(out, "sel", d.selection());
    out << '\n';
    for (const auto& [from, to] : d.edges()) out << from << " -> " << to << '\n';
}

CausalDag read_dag(std::istream& in) {
    std::string kind, obs_tok, lat_tok, sel_tok;
    int n = 0;
    if (!(in >> kind >> n >> obs_tok >> lat_tok >> sel_tok) || kind != "dag")
        throw std::invalid_argument("expected 'dag <n> obs=.. lat=.. sel=..' header");
    std::vector<NodeRole> roles(n, NodeRole::Observed);
    for (NodeId v : parse_id_list(lat_tok, "lat")) roles.at(v) = NodeRole::Latent;
    for (NodeId v : parse_id_list(sel_tok, "sel")) roles.at(v) = NodeRole::Selection;
    // obs list is redundant but validated for consistency
    std::vector<NodeId> obs = parse_id_list(obs_tok, "obs");
    std::vector<std::pair<NodeId, NodeId>> edges;
    NodeId a, b;
    std::string arrow;
    while (in >> a >> arrow >> b) {
        if (arrow != "->") throw std::invalid_argument("bad dag edge token '" + arrow + "'");
        edges.emplace_back(a, b);
    }
    CausalDag d(n, edges, roles);
    if (d.observed() != obs)
        throw std::invalid_argument("dag header obs= list disagrees with lat=/sel= lists");
    return d;
}

}  // namespace causal
