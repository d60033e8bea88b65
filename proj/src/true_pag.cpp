#include "causal/dsep.hpp"
#include "causal/fci.hpp"

namespace causal {

MixedGraph true_pag(const CausalDag& dag) {
    OracleCiTester oracle(dag);
    CachedCiTester cached(oracle);
    return fci(static_cast<int>(dag.observed().size()), cached);
}

}  // namespace causal
