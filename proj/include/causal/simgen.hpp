#ifndef CAUSAL_SIMGEN_HPP_
#define CAUSAL_SIMGEN_HPP_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "causal/citest.hpp"
#include "causal/graph.hpp"

namespace causal {

/// Seedable generator with hand-rolled distributions so that streams are
/// identical across platforms and standard-library versions.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed);

    std::uint64_t next_u64();
    /// Uniform in [0, 1) with 53 random bits.
    double next_double();
    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi);
    /// Uniform real in [lo, hi).
    double uniform_real(double lo, double hi);
    /// Standard normal via the Box-Muller transform.
    double normal();

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (int i = static_cast<int>(items.size()) - 1; i > 0; --i)
            std::swap(items[i], items[uniform_int(0, i)]);
    }

private:
    std::mt19937_64 engine_;  // the engine's stream is pinned by the standard
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Derives an independent seed for a sub-stream; same (base, stream) pair
/// always yields the same seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

struct GenConfig {
    int n = 2;
    double rho = 2.0;
    std::uint64_t seed = 0;
};

/// Random DAG: each upper-triangle pair is an edge with probability
/// min(1, rho / (n - 1)), resampled until weakly connected. All nodes start
/// observed.
CausalDag random_dag(const GenConfig& cfg);

/// Marks floor(|P|/2) of P = {parentless nodes with at least two children}
/// as latent, chosen uniformly; everything else stays observed, no selection
/// nodes.
CausalDag select_latents(const CausalDag& dag, std::uint64_t seed);

/// Linear structural equation model X_i = sum_j W_ji X_j + eps_i with
/// standard normal noise.
struct LinearGaussianScm {
    CausalDag dag;
    /// Per node, (parent, weight) pairs aligned with dag.parents(node).
    std::vector<std::vector<std::pair<NodeId, double>>> weights;
};

/// Draws each edge weight uniformly from [-2, -0.5] union [0.5, 2].
LinearGaussianScm random_scm(CausalDag dag, std::uint64_t seed);

/// Ancestral sampling of ell rows; returns only the observed columns, in
/// ascending node-id order.
DataSet sample_data(const LinearGaussianScm& scm, int ell, std::uint64_t seed);

}  // namespace causal

#endif  // CAUSAL_SIMGEN_HPP_
