#include "causal/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace causal {

StructuralErrors structural_errors(const MixedGraph& learned, const MixedGraph& truth) {
    if (learned.node_count() != truth.node_count())
        throw std::invalid_argument("structural_errors: node counts differ");
    StructuralErrors err;
    for (const auto& [a, b] : learned.edges()) {
        if (!truth.adjacent(a, b)) {
            ++err.extra_edges;
            continue;
        }
        if (learned.mark(a, b) != truth.mark(a, b)) ++err.wrong_marks;
        if (learned.mark(b, a) != truth.mark(b, a)) ++err.wrong_marks;
    }
    for (const auto& [a, b] : truth.edges())
        if (!learned.adjacent(a, b)) ++err.missing_edges;
    return err;
}

Ecdf::Ecdf(std::vector<double> sample) : sorted_(std::move(sample)) {
    if (sorted_.empty()) throw std::invalid_argument("ecdf over an empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::value(double t) const {
    const auto count = std::upper_bound(sorted_.begin(), sorted_.end(), t) - sorted_.begin();
    return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

double Ecdf::quantile(double q) const {
    if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level outside (0,1]");
    const double n = static_cast<double>(sorted_.size());
    for (std::size_t i = 0; i < sorted_.size();) {
        std::size_t j = i;
        while (j + 1 < sorted_.size() && sorted_[j + 1] == sorted_[i]) ++j;
        if (static_cast<double>(j + 1) / n >= q) return sorted_[i];
        i = j + 1;
    }
    return sorted_.back();
}

namespace {

// sup_t |F_a(t) - F_b(t)| for two sorted samples.
double ks_statistic(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t m = a.size(), n = b.size();
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < m || j < n) {
        const double v = i < m && (j >= n || a[i] <= b[j]) ? a[i] : b[j];
        while (i < m && a[i] == v) ++i;
        while (j < n && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / m - static_cast<double>(j) / n));
    }
    return d;
}

double kolmogorov_tail(double t) {
    // 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2)
    if (t < 1e-8) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * t * t);
        sum += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Exact p-value by enumerating every way to split the pooled sample.
double exact_ks_pvalue(const std::vector<double>& a, const std::vector<double>& b, double d_obs) {
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::sort(pooled.begin(), pooled.end());
    const int total = static_cast<int>(pooled.size());
    const int m = static_cast<int>(a.size());
    std::vector<int> pick(m);
    for (int i = 0; i < m; ++i) pick[i] = i;
    long long hits = 0, splits = 0;
    std::vector<double> sa(m), sb(total - m);
    while (true) {
        std::size_t ai = 0, bi = 0;
        int next = 0;
        for (int idx = 0; idx < total; ++idx) {
            if (next < m && pick[next] == idx) {
                sa[ai++] = pooled[idx];
                ++next;
            } else {
                sb[bi++] = pooled[idx];
            }
        }
        ++splits;
        if (ks_statistic(sa, sb) >= d_obs - 1e-9) ++hits;
        int j = m - 1;
        while (j >= 0 && pick[j] == total - m + j) --j;
        if (j < 0) break;
        ++pick[j];
        for (int i = j + 1; i < m; ++i) pick[i] = pick[i - 1] + 1;
    }
    return static_cast<double>(hits) / static_cast<double>(splits);
}

}  // namespace

KsResult ks_2sample(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_2sample: empty sample");
    std::vector<double> sa(a), sb(b);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    KsResult result;
    result.statistic = ks_statistic(sa, sb);
    const int m = static_cast<int>(sa.size()), n = static_cast<int>(sb.size());
    if (binomial(m + n, std::min(m, n)) <= 20000.0) {
        result.p_value = exact_ks_pvalue(sa, sb, result.statistic);
    } else {
        const double effective = std::sqrt(static_cast<double>(m) * n / (m + n));
        result.p_value = kolmogorov_tail(effective * result.statistic);
    }
    return result;
}

}  // namespace causal
