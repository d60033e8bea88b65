#ifndef CAUSAL_STATS_HPP_
#define CAUSAL_STATS_HPP_

#include <vector>

#include "causal/graph.hpp"

namespace causal {

struct StructuralErrors {
    int extra_edges = 0;
    int missing_edges = 0;
    int wrong_marks = 0;  // per endpoint, over edges present in both graphs
};

StructuralErrors structural_errors(const MixedGraph& learned, const MixedGraph& truth);

/// Empirical cumulative distribution of a sample.
class Ecdf {
public:
    explicit Ecdf(std::vector<double> sample);

    /// Fraction of the sample <= t.
    double value(double t) const;
    /// Smallest sample value t with value(t) >= q; q in (0, 1].
    double quantile(double q) const;
    const std::vector<double>& sorted() const { return sorted_; }

private:
    std::vector<double> sorted_;
};

inline double ecdf_quantile(const Ecdf& e, double q) { return e.quantile(q); }

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test. The p-value is exact (full split
/// enumeration) when C(m+n, min(m,n)) is small enough, otherwise the
/// asymptotic Kolmogorov series with effective size mn/(m+n).
KsResult ks_2sample(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace causal

#endif  // CAUSAL_STATS_HPP_
