#ifndef CAUSAL_CITEST_HPP_
#define CAUSAL_CITEST_HPP_

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "causal/graph.hpp"

namespace causal {

/// Conditional-independence tester contract shared by the discovery
/// algorithms. Implementations must be symmetric in (x, y) and deterministic.
class CiTester {
public:
    virtual ~CiTester() = default;
    /// True iff x is judged independent of y given cond.
    virtual bool independent(NodeId x, NodeId y, const std::vector<NodeId>& cond) = 0;
};

/// Canonical form of a CI query: smaller endpoint first, condition sorted.
struct CiKey {
    NodeId a = 0;
    NodeId b = 0;
    std::vector<NodeId> cond;

    static CiKey canonical(NodeId x, NodeId y, std::vector<NodeId> cond);
    bool operator==(const CiKey& o) const { return a == o.a && b == o.b && cond == o.cond; }
};

struct CiKeyHash {
    std::size_t operator()(const CiKey& k) const;
};

/// Unique-test counters, bucketed by condition-set size.
struct CiStats {
    std::vector<std::int64_t> unique_by_size;
    std::int64_t total_unique = 0;
    std::int64_t cache_hits = 0;

    std::int64_t unique(std::size_t size) const {
        return size < unique_by_size.size() ? unique_by_size[size] : 0;
    }
};

/// Wraps a tester with memoization: repeated queries (in any endpoint order,
/// any condition order) are answered from the cache and counted once.
class CachedCiTester : public CiTester {
public:
    explicit CachedCiTester(CiTester& inner) : inner_(&inner) {}

    bool independent(NodeId x, NodeId y, const std::vector<NodeId>& cond) override;

    const CiStats& stats() const { return stats_; }

    /// Optional audit sink; rows are written as
    /// x,y,cond_size,cond_set,verdict,source with cond ids joined by ';'.
    void set_audit(std::ostream* out) { audit_ = out; }

private:
    CiTester* inner_;
    std::unordered_map<CiKey, bool, CiKeyHash> cache_;
    CiStats stats_;
    std::ostream* audit_ = nullptr;
};

/// Samples for the observed variables, with the covariance computed once.
class DataSet {
public:
    explicit DataSet(Eigen::MatrixXd values);

    int sample_count() const { return static_cast<int>(values_.rows()); }
    int variable_count() const { return static_cast<int>(values_.cols()); }
    const Eigen::MatrixXd& values() const { return values_; }
    const Eigen::MatrixXd& covariance() const { return covariance_; }

private:
    Eigen::MatrixXd values_;
    Eigen::MatrixXd covariance_;
};

/// Partial correlation of columns x and y given the columns in z, computed
/// from the inverse covariance submatrix over {x, y} union z. A singular
/// submatrix (e.g. duplicated columns) is regularized with a small ridge,
/// which drives the result toward +-1.
double partial_correlation(const DataSet& data, NodeId x, NodeId y, const std::vector<NodeId>& z);

/// Quantile of the standard normal distribution, |error| < 1e-9.
double normal_quantile(double p);

/// Fisher-z partial-correlation test. Independent iff
/// |0.5 ln((1+rho)/(1-rho)) sqrt(ell - |z| - 3)| <= Phi^-1(1 - alpha/2).
/// Returns dependent when ell - |z| - 3 <= 0 (underpowered queries must not
/// delete edges).
bool fisher_z_test(const DataSet& data, NodeId x, NodeId y, const std::vector<NodeId>& z,
                   double alpha);

/// CiTester backed by fisher_z_test on a fixed dataset.
class FisherZTester : public CiTester {
public:
    FisherZTester(const DataSet& data, double alpha);

    bool independent(NodeId x, NodeId y, const std::vector<NodeId>& cond) override {
        return fisher_z_test(*data_, x, y, cond, alpha_);
    }

private:
    const DataSet* data_;
    double alpha_;
};

/// Data CSV: header row of column ids, then one sample per line.
void write_data_csv(std::ostream& out, const DataSet& data, const std::vector<NodeId>& column_ids);
DataSet read_data_csv(std::istream& in);

}  // namespace causal

#endif  // CAUSAL_CITEST_HPP_
