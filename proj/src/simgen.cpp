#include "causal/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace causal {

PortableRng::PortableRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t PortableRng::next_u64() { return engine_(); }

double PortableRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int PortableRng::uniform_int(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return lo + static_cast<int>(v % span);
}

double PortableRng::uniform_real(double lo, double hi) {
    return lo + (hi - lo) * next_double();
}

double PortableRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1;
    do {
        u1 = next_double();
    } while (u1 <= 0.0);
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    // splitmix64 finalizer over base xor stream
    std::uint64_t z = base ^ (stream + 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

CausalDag random_dag(const GenConfig& cfg) {
    if (cfg.n < 2) throw std::invalid_argument("random_dag: need at least two nodes");
    if (!(cfg.rho > 0)) throw std::invalid_argument("random_dag: rho must be positive");
    const double p = std::min(1.0, cfg.rho / (cfg.n - 1));
    PortableRng rng(cfg.seed);
    while (true) {
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (NodeId i = 0; i < cfg.n; ++i)
            for (NodeId j = i + 1; j < cfg.n; ++j)
                if (rng.next_double() < p) edges.emplace_back(i, j);
        CausalDag dag(cfg.n, edges);
        if (dag.weakly_connected()) return dag;
    }
}

CausalDag select_latents(const CausalDag& dag, std::uint64_t seed) {
    std::vector<NodeId> pool;
    for (NodeId v = 0; v < dag.node_count(); ++v)
        if (dag.parents(v).empty() && dag.children(v).size() >= 2) pool.push_back(v);
    const std::size_t want = pool.size() / 2;
    PortableRng rng(seed);
    rng.shuffle(pool);
    pool.resize(want);
    std::vector<NodeRole> roles(dag.node_count(), NodeRole::Observed);
    for (NodeId v : pool) roles[v] = NodeRole::Latent;
    return dag.with_roles(std::move(roles));
}

LinearGaussianScm random_scm(CausalDag dag, std::uint64_t seed) {
    PortableRng rng(seed);
    LinearGaussianScm scm{std::move(dag), {}};
    scm.weights.resize(scm.dag.node_count());
    for (NodeId v = 0; v < scm.dag.node_count(); ++v)
        for (NodeId p : scm.dag.parents(v)) {
            const double magnitude = rng.uniform_real(0.5, 2.0);
            const double sign = rng.next_double() < 0.5 ? -1.0 : 1.0;
            scm.weights[v].emplace_back(p, sign * magnitude);
        }
    return scm;
}

DataSet sample_data(const LinearGaussianScm& scm, int ell, std::uint64_t seed) {
    if (ell < 1) throw std::invalid_argument("sample_data: need at least one sample");
    const int n = scm.dag.node_count();
    const std::vector<NodeId> order = scm.dag.topological_order();
    PortableRng rng(seed);
    Eigen::MatrixXd full(ell, n);
    for (int row = 0; row < ell; ++row)
        for (NodeId v : order) {
            double value = rng.normal();
            for (const auto& [parent, weight] : scm.weights[v])
                value += weight * full(row, parent);
            full(row, v) = value;
        }
    const std::vector<NodeId> obs = scm.dag.observed();
    Eigen::MatrixXd observed(ell, static_cast<int>(obs.size()));
    for (std::size_t j = 0; j < obs.size(); ++j) observed.col(j) = full.col(obs[j]);
    return DataSet(std::move(observed));
}

}  // namespace causal
