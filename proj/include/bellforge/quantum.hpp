#pragma once

#include "classical.hpp"
#include "operators.hpp"
#include "states.hpp"

namespace bellforge {

// settings[party][setting] is a d x d operator
using SettingsAssignment = std::vector<std::vector<Mat>>;

inline Mat assemble(const BellPolynomial& p, const SettingsAssignment& settings) {
    if (static_cast<int>(settings.size()) != p.n) throw contract_error("assemble: party count mismatch");
    const int d = static_cast<int>(settings[0][0].rows());
    const int dim = ipow(d, p.n);
    if (dim > dimension_cap) throw capacity_error("assemble: dimension exceeds cap of 729");
    Mat out = Mat::Zero(dim, dim);
    for (const auto& t : p.terms) {
        std::vector<Mat> factors;
        factors.reserve(p.n);
        for (int k = 0; k < p.n; ++k) {
            const auto& f = t.factors[k];
            if (f.setting >= static_cast<int>(settings[k].size()))
                throw contract_error("assemble: setting index out of range");
            factors.push_back(matrix_power(settings[k][f.setting], f.power));
        }
        out += t.coeff * kron(factors);
    }
    return out;
}

// Part-selected, display-normalized hermitian operator for the polynomial.
inline Mat display_operator(const BellPolynomial& p, const SettingsAssignment& settings) {
    Mat m = assemble(p, settings);
    auto [h, a] = split_parts(m);
    Mat sel = (p.part == part_kind::hermitian) ? h : a;
    return p.scale * sel + p.offset * Mat::Identity(sel.rows(), sel.cols());
}

inline double expectation(const BellPolynomial& p, const SettingsAssignment& settings, const Vec& psi) {
    Mat d = display_operator(p, settings);
    cx v = (psi.adjoint() * d * psi)(0, 0);
    if (std::abs(v.imag()) > tolerances::expectation_imag * std::max(1.0, std::abs(v.real())))
        throw std::runtime_error("expectation: imaginary residue above tolerance");
    return v.real();
}

struct quantum_result {
    double value;
    Vec state;
};

inline quantum_result quantum_value(const BellPolynomial& p, const SettingsAssignment& settings) {
    auto [value, vector] = max_eigenpair(display_operator(p, settings));
    return {value, vector};
}

inline SettingsAssignment rotate_settings(const SettingsAssignment& settings, const std::vector<Mat>& ws) {
    SettingsAssignment out = settings;
    for (std::size_t k = 0; k < settings.size(); ++k)
        for (auto& u : out[k]) u = ws[k] * u * ws[k].adjoint();
    return out;
}

namespace detail {

inline Vec apply_frames(const Vec& psi, const std::vector<Mat>& ws) { return apply_local(psi, ws); }

// One alternating-SVD pass: for each party, the optimal local rotation onto the target
// is V U^dag from the SVD of the cross matrix between party slices.
inline double align_pass(std::vector<Mat>& ws, const Vec& psi, const Vec& target, int n, int d) {
    for (int p = 0; p < n; ++p) {
        std::vector<Mat> other = ws;
        other[p] = Mat::Identity(d, d);
        Vec cur = apply_frames(psi, other);
        const int rest = static_cast<int>(cur.size()) / d;
        const int right = ipow(d, n - p - 1);
        const int left = rest / right;
        Mat a(d, rest), t(d, rest);
        for (int i = 0; i < d; ++i)
            for (int l = 0; l < left; ++l)
                for (int r = 0; r < right; ++r) {
                    const long long full = (static_cast<long long>(l) * d + i) * right + r;
                    a(i, l * right + r) = cur(full);
                    t(i, l * right + r) = target(full);
                }
        Mat k = a * t.adjoint();
        Eigen::JacobiSVD<Mat> svd(k, Eigen::ComputeThinU | Eigen::ComputeThinV);
        ws[p] = svd.matrixV() * svd.matrixU().adjoint();
    }
    cx ov = (target.adjoint() * apply_frames(psi, ws))(0, 0);
    return std::abs(ov);
}

} // namespace detail

struct alignment {
    double overlap;
    std::vector<Mat> frames;
};

// Local frames maximizing |<target| (W_1 x .. x W_n) psi>| by seeded alternating SVD.
inline alignment align_to_target(const Vec& psi, const Vec& target, int n, int d,
                                 int seeds = 12, int iters = 150, std::uint64_t seed = 1000) {
    alignment best{0.0, std::vector<Mat>(n, Mat::Identity(d, d))};
    for (int r = 0; r < seeds; ++r) {
        std::vector<Mat> ws(n, Mat::Identity(d, d));
        if (r > 0) {
            rng_t gen(seed + static_cast<std::uint64_t>(r));
            for (int p = 0; p < n; ++p) {
                Mat g(d, d);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) g(i, j) = cx(normal(gen), normal(gen));
                Eigen::HouseholderQR<Mat> qr(g);
                Mat q = qr.householderQ() * Mat::Identity(d, d);
                ws[p] = q;
            }
        }
        double ov = 0.0;
        for (int it = 0; it < iters; ++it) {
            double next = detail::align_pass(ws, psi, target, n, d);
            if (next < ov + 1e-13 && it > 2) { ov = next; break; }
            ov = next;
        }
        if (ov > best.overlap) {
            cx phase = (target.adjoint() * detail::apply_frames(psi, ws))(0, 0);
            if (std::abs(phase) > 0) ws[0] *= phase / std::abs(phase);
            best = {ov, ws};
        }
        if (best.overlap > 1.0 - 1e-10) break;
    }
    return best;
}

struct sweep_result {
    double gamma_star;
    double value;
};

namespace detail {

inline double quasi_expectation(const Mat& op, int n, double gamma) {
    Vec q = quasi_ghz(n, gamma);
    return (q.adjoint() * op * q)(0, 0).real();
}

inline sweep_result sweep_operator(const Mat& op, int n, int resolution) {
    const double lo = 0.05, hi = 3.0;
    int besti = 0;
    double bestv = -1e300;
    for (int i = 0; i < resolution; ++i) {
        const double g = lo + (hi - lo) * i / (resolution - 1);
        const double v = quasi_expectation(op, n, g);
        if (v > bestv) { bestv = v; besti = i; }
    }
    double a = lo + (hi - lo) * std::max(0, besti - 1) / (resolution - 1);
    double b = lo + (hi - lo) * std::min(resolution - 1, besti + 1) / (resolution - 1);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = quasi_expectation(op, n, x1), f2 = quasi_expectation(op, n, x2);
    while (b - a > tolerances::gamma_refine) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a);
            f2 = quasi_expectation(op, n, x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a);
            f1 = quasi_expectation(op, n, x1);
        }
    }
    const double g = (a + b) / 2;
    return {g, quasi_expectation(op, n, g)};
}

} // namespace detail

// Maximizes <quasi(gamma)| B |quasi(gamma)>. The top eigenvector is generally only
// locally equivalent to the quasi family, so candidate local frames from alternating
// SVD are tried alongside the computational frame and the best sweep wins.
inline sweep_result gamma_sweep(const BellPolynomial& p, const SettingsAssignment& settings,
                                int n, int resolution = 241) {
    if (p.d != 3) throw contract_error("gamma_sweep: defined for qutrit polynomials");
    Mat op = display_operator(p, settings);
    auto top = max_eigenpair(op);
    sweep_result best = detail::sweep_operator(op, n, resolution);
    for (double gref : {0.6, 1.0, 1.6}) {
        auto al = align_to_target(top.vector, quasi_ghz(n, gref), n, 3, 8, 120, 4000 + static_cast<int>(gref * 10));
        std::vector<Mat> ws = al.frames;
        Mat big = kron(ws);
        Mat rotated = big * op * big.adjoint();
        auto cand = detail::sweep_operator(rotated, n, resolution);
        if (cand.value > best.value + 1e-12) best = cand;
    }
    return best;
}

struct optimize_config {
    int restarts = 20;
    int budget = 600;        // objective evaluations per restart
    std::uint64_t seed = 1;
    std::vector<std::vector<std::vector<double>>> warm; // [party][setting] -> params, optional
};

struct optimize_result {
    SettingsAssignment settings;
    double value;
    bool converged;
};

namespace detail {

inline SettingsAssignment settings_from_params(const std::vector<std::vector<std::vector<double>>>& params, int d) {
    SettingsAssignment out;
    for (const auto& party : params) {
        std::vector<Mat> row;
        for (const auto& theta : party) row.push_back(root_of_identity_unitary(d, theta));
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace detail

// Recovers rotation parameters reproducing a root-of-identity setting, for warm starts.
inline std::vector<double> params_from_setting(const Mat& u) {
    const int d = static_cast<int>(u.rows());
    Mat basisv = root_eigenbasis(u);
    // hermitian generator of the eigenbasis, projected on the traceless basis
    Eigen::ComplexEigenSolver<Mat> es(basisv);
    Mat h = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const cx lam = es.eigenvalues()(k);
        h += std::arg(lam) * projector(es.eigenvectors().col(k).normalized());
    }
    h -= (h.trace() / static_cast<double>(d)) * Mat::Identity(d, d);
    auto basis = gell_mann_basis(d);
    std::vector<double> out;
    out.reserve(basis.size());
    for (const auto& g : basis) out.push_back(((h * g).trace() / 2.0).real());
    return out;
}

// Coordinate pattern search with a party-wise refinement stage; every candidate is
// re-scored through quantum_value so the returned value is an achieved lower bound.
inline optimize_result optimize_settings(const BellPolynomial& p, int d, const optimize_config& cfg = {}) {
    if (d < 2) throw contract_error("optimize_settings: d must be at least 2");
    if (ipow(d, p.n) > dimension_cap) throw capacity_error("optimize_settings: dimension exceeds cap of 729");
    const int np = d * d - 1;
    auto score = [&](const std::vector<std::vector<std::vector<double>>>& params) {
        return quantum_value(p, detail::settings_from_params(params, d)).value;
    };
    optimize_result best{{}, -1e300, true};
    std::vector<std::vector<std::vector<double>>> best_params;
    for (int r = 0; r < cfg.restarts; ++r) {
        std::vector<std::vector<std::vector<double>>> params(p.n,
            std::vector<std::vector<double>>(p.s, std::vector<double>(np, 0.0)));
        if (r == 0 && !cfg.warm.empty()) {
            params = cfg.warm;
        } else {
            rng_t gen(cfg.seed * 7919 + static_cast<std::uint64_t>(r));
            for (auto& party : params)
                for (auto& theta : party)
                    for (auto& x : theta) x = 1.2 * normal(gen);
        }
        int evals = 0;
        double cur = score(params);
        ++evals;
        double step = 0.5;
        bool exhausted = false;
        while (step > 1e-4 && !exhausted) {
            bool improved = false;
            for (int k = 0; k < p.n && !exhausted; ++k)
                for (int j = 0; j < p.s && !exhausted; ++j)
                    for (int i = 0; i < np && !exhausted; ++i)
                        for (double sgn : {1.0, -1.0}) {
                            params[k][j][i] += sgn * step;
                            const double v = score(params);
                            if (++evals >= cfg.budget) exhausted = true;
                            if (v > cur + 1e-12) {
                                cur = v;
                                improved = true;
                                break;
                            }
                            params[k][j][i] -= sgn * step;
                            if (exhausted) break;
                        }
            if (!improved) step /= 2;
        }
        // see-saw stage: refine one party at a time with a finer step
        double fine = 0.05;
        for (int round = 0; round < 2 && !exhausted; ++round)
            for (int k = 0; k < p.n && !exhausted; ++k) {
                bool improved = true;
                while (improved && !exhausted) {
                    improved = false;
                    for (int j = 0; j < p.s && !exhausted; ++j)
                        for (int i = 0; i < np && !exhausted; ++i)
                            for (double sgn : {1.0, -1.0}) {
                                params[k][j][i] += sgn * fine;
                                const double v = score(params);
                                if (++evals >= cfg.budget) exhausted = true;
                                if (v > cur + 1e-12) {
                                    cur = v;
                                    improved = true;
                                    break;
                                }
                                params[k][j][i] -= sgn * fine;
                                if (exhausted) break;
                            }
                }
            }
        if (cur > best.value + 1e-12) {
            best.value = cur;
            best_params = params;
            best.converged = !exhausted;
        }
    }
    best.settings = detail::settings_from_params(best_params, d);
    best.value = quantum_value(p, best.settings).value;
    return best;
}

} // namespace bellforge
