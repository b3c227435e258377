#pragma once

#include <algorithm>
#include <utility>

#include "tensor.hpp"

namespace bellforge {

inline Mat pauli_x() { Mat m(2, 2); m << 0, 1, 1, 0; return m; }
inline Mat pauli_y() { Mat m(2, 2); m << 0, cx(0, -1), cx(0, 1), 0; return m; }
inline Mat pauli_z() { Mat m(2, 2); m << 1, 0, 0, -1; return m; }

// X^k Z^j acting as |m> -> w^{jm} |m+k>.
inline Mat weyl_heisenberg(int d, int k, int j) {
    Mat m = Mat::Zero(d, d);
    for (int c = 0; c < d; ++c) m((c + k % d + d) % d, c) = omega_pow(d, static_cast<long long>(j) * c);
    return m;
}

inline Mat gell_mann(int i) {
    if (i < 1 || i > 8) throw contract_error("gell_mann: index must be 1..8");
    Mat m = Mat::Zero(3, 3);
    switch (i) {
        case 1: m(0, 1) = m(1, 0) = 1; break;
        case 2: m(0, 1) = cx(0, -1); m(1, 0) = cx(0, 1); break;
        case 3: m(0, 0) = 1; m(1, 1) = -1; break;
        case 4: m(0, 2) = m(2, 0) = 1; break;
        case 5: m(0, 2) = cx(0, -1); m(2, 0) = cx(0, 1); break;
        case 6: m(1, 2) = m(2, 1) = 1; break;
        case 7: m(1, 2) = cx(0, -1); m(2, 1) = cx(0, 1); break;
        case 8: m(0, 0) = m(1, 1) = 1; m(2, 2) = -2; m /= std::sqrt(3.0); break;
    }
    return m;
}

// Traceless hermitian basis; for d=3 this reproduces gell_mann(1..8) in order.
inline std::vector<Mat> gell_mann_basis(int d) {
    std::vector<Mat> out;
    out.reserve(static_cast<std::size_t>(d) * d - 1);
    for (int k = 1; k < d; ++k) {
        for (int j = 0; j < k; ++j) {
            Mat s = Mat::Zero(d, d);
            s(j, k) = s(k, j) = 1;
            out.push_back(s);
            Mat a = Mat::Zero(d, d);
            a(j, k) = cx(0, -1);
            a(k, j) = cx(0, 1);
            out.push_back(a);
        }
        Mat diag = Mat::Zero(d, d);
        for (int j = 0; j < k; ++j) diag(j, j) = 1;
        diag(k, k) = -k;
        out.push_back(diag * std::sqrt(2.0 / (k * (k + 1.0))));
    }
    return out;
}

inline Mat fourier(int d, bool normalized) {
    Mat f(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) f(j, k) = omega_pow(d, static_cast<long long>(j) * k);
    if (normalized) f /= std::sqrt(static_cast<double>(d));
    return f;
}

// Signed cyclic shift with a global phase; cube-root spectrum only at phi in {0, +-2pi/3}.
inline Mat mos(int d, double phi) {
    Mat m = Mat::Zero(d, d);
    const cx ph = std::polar(1.0, phi);
    m(0, d - 1) = ph;
    for (int i = 1; i < d; ++i) m(i, i - 1) = -ph;
    return m;
}

inline std::pair<Mat, Mat> split_parts(const Mat& m) {
    Mat h = (m + m.adjoint()) / 2.0;
    Mat a = (m - m.adjoint()) / cx(0, 2);
    return {h, a};
}

enum class bracket_kind { commutator, anticommutator, complex_anticommutator };

inline Mat bracket(bracket_kind kind, const Mat& p, const Mat& q) {
    switch (kind) {
        case bracket_kind::commutator: return p * q - q * p;
        case bracket_kind::anticommutator: return p * q + q * p;
        case bracket_kind::complex_anticommutator: return p * q.adjoint() + q * p.adjoint();
    }
    throw contract_error("bracket: unknown kind");
}

inline double hermiticity_defect(const Mat& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

struct eigenpair {
    double value;
    Vec vector;
};

inline eigenpair max_eigenpair(const Mat& h) {
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (hermiticity_defect(h) > tolerances::hermiticity * scale)
        throw contract_error("max_eigenpair: input is not hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0);
    const Eigen::Index last = h.rows() - 1;
    eigenpair out{es.eigenvalues()(last), es.eigenvectors().col(last)};
    const double resid = (h * out.vector - out.value * out.vector).norm();
    if (resid > tolerances::eig_residual * std::max(1.0, h.norm()))
        throw std::runtime_error("max_eigenpair: residual check failed");
    return out;
}

inline Vec normal_eigenvalues(const Mat& m) {
    Eigen::ComplexEigenSolver<Mat> es(m);
    return es.eigenvalues();
}

// Spectral projectors of a normal matrix, grouped by eigenvalue clusters.
inline std::vector<std::pair<cx, Mat>> spectral_projectors(const Mat& m, double cluster_tol = 1e-8) {
    Eigen::ComplexEigenSolver<Mat> es(m);
    const Vec vals = es.eigenvalues();
    const Mat vecs = es.eigenvectors();
    std::vector<bool> taken(vals.size(), false);
    std::vector<std::pair<cx, Mat>> out;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (taken[i]) continue;
        std::vector<Eigen::Index> members;
        for (Eigen::Index j = i; j < vals.size(); ++j)
            if (!taken[j] && std::abs(vals(j) - vals(i)) <= cluster_tol) {
                taken[j] = true;
                members.push_back(j);
            }
        Mat span(m.rows(), static_cast<Eigen::Index>(members.size()));
        for (std::size_t k = 0; k < members.size(); ++k) span.col(static_cast<Eigen::Index>(k)) = vecs.col(members[k]);
        Eigen::HouseholderQR<Mat> qr(span);
        Mat q = qr.householderQ() * Mat::Identity(m.rows(), span.cols());
        out.emplace_back(vals(i), q * q.adjoint());
    }
    return out;
}

struct mub_result {
    bool unbiased;
    double defect;
};

// Degeneracy-safe unbiasedness: compares Tr(P_i Q_j)/(r_i s_j) against 1/d per cluster pair.
inline mub_result is_mub(const Mat& p, const Mat& q, double tol = tolerances::mub) {
    const int d = static_cast<int>(p.rows());
    auto cp = spectral_projectors(p);
    auto cq = spectral_projectors(q);
    double defect = 0.0;
    for (const auto& [lp, pp] : cp) {
        const double ri = pp.trace().real();
        for (const auto& [lq, qq] : cq) {
            const double sj = qq.trace().real();
            const double overlap = (pp * qq).trace().real() / (ri * sj);
            defect = std::max(defect, std::abs(overlap - 1.0 / d));
        }
    }
    return {defect <= tol, defect};
}

inline double spectral_norm(const Mat& m) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

struct nilpotency {
    double defect;
    int power;
};

// min over k <= dim of ||M^k|| / ||M||^k in spectral norm; witness power attains the minimum.
inline nilpotency nilpotency_defect(const Mat& m) {
    const double base = spectral_norm(m);
    if (base == 0.0) return {0.0, 1};
    nilpotency best{1.0, 1};
    Mat acc = m;
    double denom = base;
    for (int k = 1; k <= m.rows(); ++k) {
        const double ratio = spectral_norm(acc) / denom;
        if (ratio < best.defect - 1e-15) best = {ratio, k};
        acc = acc * m;
        denom *= base;
    }
    if (best.defect < tolerances::exact) best.defect = std::abs(best.defect);
    return best;
}

inline Mat exp_i_hermitian(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0);
    Vec phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); ++k) phases(k) = std::polar(1.0, es.eigenvalues()(k));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// V D V^dag with D = diag(w^{outcome_phases[m]}) and V = exp(i sum_i params[i] g_i).
inline Mat root_of_identity_unitary(int d, const std::vector<double>& params,
                                    const std::vector<int>& outcome_phases) {
    if (static_cast<int>(params.size()) != d * d - 1)
        throw contract_error("root_of_identity_unitary: params must have length d^2-1");
    if (static_cast<int>(outcome_phases.size()) != d)
        throw contract_error("root_of_identity_unitary: outcome_phases must have length d");
    auto basis = gell_mann_basis(d);
    Mat h = Mat::Zero(d, d);
    for (std::size_t i = 0; i < basis.size(); ++i) h += params[i] * basis[i];
    Mat v = exp_i_hermitian(h);
    Mat diag = Mat::Zero(d, d);
    for (int m = 0; m < d; ++m) diag(m, m) = omega_pow(d, outcome_phases[m]);
    return v * diag * v.adjoint();
}

inline Mat root_of_identity_unitary(int d, const std::vector<double>& params) {
    std::vector<int> ident(d);
    for (int m = 0; m < d; ++m) ident[m] = m;
    return root_of_identity_unitary(d, params, ident);
}

// Columns ordered so column m is the eigenvector with eigenvalue closest to w^m.
inline Mat root_eigenbasis(const Mat& u) {
    const int d = static_cast<int>(u.rows());
    Eigen::ComplexEigenSolver<Mat> es(u);
    Mat out(d, d);
    std::vector<bool> used(d, false);
    for (int m = 0; m < d; ++m) {
        const cx target = omega_pow(d, m);
        int pick = -1;
        double bestdist = 1e99;
        for (int j = 0; j < d; ++j) {
            if (used[j]) continue;
            const double dist = std::abs(es.eigenvalues()(j) - target);
            if (dist < bestdist) { bestdist = dist; pick = j; }
        }
        used[pick] = true;
        out.col(m) = es.eigenvectors().col(pick).normalized();
    }
    return out;
}

} // namespace bellforge
