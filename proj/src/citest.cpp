#include "causal/citest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace causal {

CiKey CiKey::canonical(NodeId x, NodeId y, std::vector<NodeId> cond) {
    CiKey k;
    k.a = std::min(x, y);
    k.b = std::max(x, y);
    std::sort(cond.begin(), cond.end());
    k.cond = std::move(cond);
    return k;
}

std::size_t CiKeyHash::operator()(const CiKey& k) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(static_cast<std::size_t>(k.a));
    mix(static_cast<std::size_t>(k.b));
    for (NodeId v : k.cond) mix(static_cast<std::size_t>(v));
    return h;
}

bool CachedCiTester::independent(NodeId x, NodeId y, const std::vector<NodeId>& cond) {
    CiKey key = CiKey::canonical(x, y, cond);
    auto it = cache_.find(key);
    bool fresh = it == cache_.end();
    bool verdict;
    if (fresh) {
        verdict = inner_->independent(key.a, key.b, key.cond);
        cache_.emplace(key, verdict);
        const std::size_t size = key.cond.size();
        if (stats_.unique_by_size.size() <= size) stats_.unique_by_size.resize(size + 1, 0);
        ++stats_.unique_by_size[size];
        ++stats_.total_unique;
    } else {
        verdict = it->second;
        ++stats_.cache_hits;
    }
    if (audit_) {
        *audit_ << key.a << ',' << key.b << ',' << key.cond.size() << ',';
        for (std::size_t i = 0; i < key.cond.size(); ++i) {
            if (i) *audit_ << ';';
            *audit_ << key.cond[i];
        }
        *audit_ << ',' << (verdict ? "independent" : "dependent") << ','
                << (fresh ? "fresh" : "cached") << '\n';
    }
    return verdict;
}

DataSet::DataSet(Eigen::MatrixXd values) : values_(std::move(values)) {
    const auto ell = values_.rows();
    const auto m = values_.cols();
    if (ell < 1 || m < 1) throw std::invalid_argument("empty dataset");
    Eigen::MatrixXd centered = values_.rowwise() - values_.colwise().mean();
    const double denom = ell > 1 ? static_cast<double>(ell - 1) : 1.0;
    covariance_ = (centered.transpose() * centered) / denom;
}

namespace {

void check_query(int m, NodeId x, NodeId y, const std::vector<NodeId>& z) {
    if (x == y) throw std::invalid_argument("ci query with x == y");
    auto check = [m](NodeId v) {
        if (v < 0 || v >= m) throw std::invalid_argument("ci query id out of range");
    };
    check(x);
    check(y);
    for (std::size_t i = 0; i < z.size(); ++i) {
        check(z[i]);
        if (z[i] == x || z[i] == y) throw std::invalid_argument("ci query endpoint inside z");
        for (std::size_t j = i + 1; j < z.size(); ++j)
            if (z[i] == z[j]) throw std::invalid_argument("ci query with duplicate in z");
    }
    if (static_cast<int>(z.size()) + 2 > m)
        throw std::invalid_argument("condition set too large for variable count");
}

}  // namespace

double partial_correlation(const DataSet& data, NodeId x, NodeId y, const std::vector<NodeId>& z) {
    check_query(data.variable_count(), x, y, z);
    const Eigen::MatrixXd& cov = data.covariance();
    const int k = static_cast<int>(z.size()) + 2;
    std::vector<NodeId> idx;
    idx.reserve(k);
    idx.push_back(x);
    idx.push_back(y);
    idx.insert(idx.end(), z.begin(), z.end());
    Eigen::MatrixXd sub(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = cov(idx[i], idx[j]);

    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    if (!lu.isInvertible()) {
        double scale = sub.diagonal().mean();
        if (!(scale > 0)) scale = 1.0;
        sub += 1e-10 * scale * Eigen::MatrixXd::Identity(k, k);
        lu.compute(sub);
    }
    Eigen::MatrixXd prec = lu.inverse();
    const double denom = prec(0, 0) * prec(1, 1);
    if (!(denom > 0)) return 0.0;  // fully degenerate submatrix
    double rho = -prec(0, 1) / std::sqrt(denom);
    return std::clamp(rho, -1.0, 1.0);
}

double normal_quantile(double p) {
    // Wichura's PPND16 rational approximation.
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile needs p in (0,1)");
    const double q = p - 0.5;
    double r;
    if (std::abs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) *
                        r +
                    4.5921953931549871457e4) *
                       r +
                   1.3731693765509461125e4) *
                      r +
                  1.9715909503065514427e3) *
                     r +
                 1.3314166789178437745e2) *
                    r +
                3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) *
                        r +
                    2.1213794301586595867e4) *
                       r +
                   5.3941960214247511077e3) *
                      r +
                  6.8718700749205790830e2) *
                     r +
                 4.2313330701600911252e1) *
                    r +
                1.0);
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) *
                         r +
                     1.27045825245236838258e0) *
                        r +
                    3.64784832476320460504e0) *
                       r +
                   5.76949722146069140550e0) *
                      r +
                  4.63033784615654529590e0) *
                     r +
                 1.42343711074968357734e0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) *
                         r +
                     1.48103976427480074590e-1) *
                        r +
                    6.89767334985100004550e-1) *
                       r +
                   1.67638483018380384940e0) *
                      r +
                  2.05319162663775882187e0) *
                     r +
                 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) *
                         r +
                     2.65321895265761230930e-2) *
                        r +
                    2.96560571828504891230e-1) *
                       r +
                   1.78482653991729133580e0) *
                      r +
                  5.46378491116411436990e0) *
                     r +
                 6.65790464350110377720e0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-9) * r +
                      1.84631831751005468180e-6) *
                         r +
                     7.86869131145613259100e-4) *
                        r +
                    1.48753612908506148525e-2) *
                       r +
                   1.36929880922735805310e-1) *
                      r +
                  5.99832206555887937690e-1) *
                     r +
                 1.0);
    }
    return q < 0.0 ? -value : value;
}

bool fisher_z_test(const DataSet& data, NodeId x, NodeId y, const std::vector<NodeId>& z,
                   double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
    const int dof = data.sample_count() - static_cast<int>(z.size()) - 3;
    if (dof <= 0) return false;
    double rho = partial_correlation(data, x, y, z);
    const double cap = 1.0 - 1e-12;
    rho = std::clamp(rho, -cap, cap);
    const double zstat = 0.5 * std::log((1.0 + rho) / (1.0 - rho)) * std::sqrt(dof);
    return std::abs(zstat) <= normal_quantile(1.0 - alpha / 2.0);
}

FisherZTester::FisherZTester(const DataSet& data, double alpha) : data_(&data), alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
}

void write_data_csv(std::ostream& out, const DataSet& data, const std::vector<NodeId>& column_ids) {
    if (static_cast<int>(column_ids.size()) != data.variable_count())
        throw std::invalid_argument("column id count does not match dataset");
    for (std::size_t j = 0; j < column_ids.size(); ++j) {
        if (j) out << ',';
        out << column_ids[j];
    }
    out << '\n';
    char buf[64];
    for (int i = 0; i < data.sample_count(); ++i) {
        for (int j = 0; j < data.variable_count(); ++j) {
            if (j) out << ',';
            std::snprintf(buf, sizeof buf, "%.17g", data.values()(i, j));
            out << buf;
        }
        out << '\n';
    }
}

DataSet read_data_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty data csv");
    std::size_t cols = std::count(line.begin(), line.end(), ',') + 1;
    std::vector<double> cells;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t got = 0;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(std::stod(cell));
            ++got;
        }
        if (got != cols) throw std::invalid_argument("ragged data csv row");
        ++rows;
    }
    if (rows == 0) throw std::invalid_argument("data csv has no samples");
    Eigen::MatrixXd values(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) values(i, j) = cells[i * cols + j];
    return DataSet(std::move(values));
}

}  // namespace causal
