#pragma once

#include <Eigen/Dense>
#include <vector>

#include "numeric.hpp"

namespace bellforge {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Mat kron(const std::vector<Mat>& ms) {
    if (ms.empty()) return Mat::Identity(1, 1);
    Mat out = ms[0];
    for (std::size_t k = 1; k < ms.size(); ++k) out = kron(out, ms[k]);
    return out;
}

// Party 0 is the most significant digit: index = sum_k i_k d^(n-1-k).
inline long long pack_index(const std::vector<int>& digits, int d) {
    long long idx = 0;
    for (int v : digits) idx = idx * d + v;
    return idx;
}

inline std::vector<int> unpack_index(long long idx, int n, int d) {
    std::vector<int> digits(n);
    for (int k = n - 1; k >= 0; --k) {
        digits[k] = static_cast<int>(idx % d);
        idx /= d;
    }
    return digits;
}

inline Mat dagger(const Mat& m) { return m.adjoint(); }

inline Mat matrix_power(const Mat& m, int p) {
    Mat out = Mat::Identity(m.rows(), m.cols());
    for (int i = 0; i < p; ++i) out = out * m;
    return out;
}

inline Mat partial_trace(const Mat& rho, const std::vector<int>& keep, int n, int d) {
    const int dim = ipow(d, n);
    if (rho.rows() != dim || rho.cols() != dim)
        throw contract_error("partial_trace: dimension mismatch");
    std::vector<bool> kept(n, false);
    for (int k : keep) {
        if (k < 0 || k >= n) throw contract_error("partial_trace: party index out of range");
        kept[k] = true;
    }
    std::vector<int> keep_sorted, drop;
    for (int k = 0; k < n; ++k) (kept[k] ? keep_sorted : drop).push_back(k);
    const int nk = static_cast<int>(keep_sorted.size());
    const int dim_keep = ipow(d, nk);
    const int dim_drop = ipow(d, n - nk);
    Mat out = Mat::Zero(dim_keep, dim_keep);
    std::vector<int> row(n), col(n);
    for (long long a = 0; a < dim_keep; ++a) {
        auto da = unpack_index(a, nk, d);
        for (long long b = 0; b < dim_keep; ++b) {
            auto db = unpack_index(b, nk, d);
            cx acc = 0.0;
            for (long long t = 0; t < dim_drop; ++t) {
                auto dt = unpack_index(t, n - nk, d);
                for (int k = 0; k < nk; ++k) { row[keep_sorted[k]] = da[k]; col[keep_sorted[k]] = db[k]; }
                for (int k = 0; k < n - nk; ++k) { row[drop[k]] = dt[k]; col[drop[k]] = dt[k]; }
                acc += rho(pack_index(row, d), pack_index(col, d));
            }
            out(a, b) = acc;
        }
    }
    return out;
}

inline double purity(const Mat& rho) {
    return (rho * rho).trace().real();
}

inline Mat projector(const Vec& psi) {
    return psi * psi.adjoint();
}

} // namespace bellforge
