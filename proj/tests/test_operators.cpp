#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace bellforge;
using Catch::Matchers::WithinAbs;

namespace {
double mat_dist(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }
} // namespace

TEST_CASE("pauli algebra") {
    const Mat i2 = Mat::Identity(2, 2);
    REQUIRE(mat_dist(pauli_x() * pauli_x(), i2) < 1e-15);
    REQUIRE(mat_dist(pauli_y() * pauli_y(), i2) < 1e-15);
    REQUIRE(mat_dist(pauli_z() * pauli_z(), i2) < 1e-15);
    REQUIRE(mat_dist(pauli_x() * pauli_y() + pauli_y() * pauli_x(), Mat::Zero(2, 2)) < 1e-15);
    REQUIRE(mat_dist(pauli_x() * pauli_y(), cx(0, 1) * pauli_z()) < 1e-15);
}

TEST_CASE("shift and clock generators") {
    const Mat x = weyl_heisenberg(3, 1, 0);
    const Mat z = weyl_heisenberg(3, 0, 1);
    Vec e1 = Vec::Zero(3);
    e1(1) = 1;
    REQUIRE((x * Vec(Vec::Unit(3, 0)) - e1).norm() < 1e-15);
    for (int m = 0; m < 3; ++m) REQUIRE(std::abs(z(m, m) - omega_pow(3, m)) < 1e-15);

    SECTION("weyl relation z x = w x z") {
        REQUIRE(mat_dist(z * x, omega(3) * (x * z)) < 1e-14);
    }
    SECTION("general word equals power product") {
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j)
                REQUIRE(mat_dist(weyl_heisenberg(3, k, j), matrix_power(x, k) * matrix_power(z, j)) < 1e-14);
    }
    SECTION("cube roots of identity") {
        REQUIRE(mat_dist(matrix_power(x, 3), Mat::Identity(3, 3)) < 1e-14);
        REQUIRE(mat_dist(matrix_power(weyl_heisenberg(3, 2, 2), 3), Mat::Identity(3, 3)) < 1e-14);
    }
}

TEST_CASE("gell-mann matrices") {
    for (int i = 1; i <= 8; ++i) {
        Mat g = gell_mann(i);
        REQUIRE(hermiticity_defect(g) < 1e-15);
        REQUIRE(std::abs(g.trace()) < 1e-15);
        for (int j = 1; j <= 8; ++j) {
            const double expected = (i == j) ? 2.0 : 0.0;
            REQUIRE_THAT((g * gell_mann(j)).trace().real(), WithinAbs(expected, 1e-12));
        }
    }
    REQUIRE_THROWS_AS(gell_mann(0), contract_error);
    REQUIRE_THROWS_AS(gell_mann(9), contract_error);
}

TEST_CASE("traceless hermitian basis generalizes the d=3 list") {
    auto b3 = gell_mann_basis(3);
    REQUIRE(b3.size() == 8);
    for (int i = 0; i < 8; ++i) REQUIRE(mat_dist(b3[i], gell_mann(i + 1)) < 1e-14);
    for (int d : {2, 4, 5}) {
        auto basis = gell_mann_basis(d);
        REQUIRE(static_cast<int>(basis.size()) == d * d - 1);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            REQUIRE(hermiticity_defect(basis[i]) < 1e-14);
            REQUIRE(std::abs(basis[i].trace()) < 1e-12);
            for (std::size_t j = 0; j < basis.size(); ++j)
                REQUIRE_THAT((basis[i] * basis[j]).trace().real(),
                             WithinAbs(i == j ? 2.0 : 0.0, 1e-12));
        }
    }
}

TEST_CASE("fourier matrix") {
    for (int d : {2, 3, 5}) {
        Mat f = fourier(d, true);
        REQUIRE(mat_dist(f * f.adjoint(), Mat::Identity(d, d)) < 1e-13);
        Mat raw = fourier(d, false);
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) REQUIRE_THAT(std::abs(raw(j, k)), WithinAbs(1.0, 1e-13));
        // column c is a shift eigenvector with eigenvalue w^{-c}
        Mat x = weyl_heisenberg(d, 1, 0);
        for (int c = 0; c < d; ++c)
            REQUIRE((x * f.col(c) - omega_pow(d, -c) * f.col(c)).norm() < 1e-13);
    }
}

TEST_CASE("signed shift family") {
    Mat m = mos(3, 0.0);
    REQUIRE(mat_dist(matrix_power(m, 3), Mat::Identity(3, 3)) < 1e-14);
    REQUIRE(std::abs(m(0, 2) - cx(1.0)) < 1e-15);
    REQUIRE(std::abs(m(1, 0) - cx(-1.0)) < 1e-15);
    REQUIRE(std::abs(m(2, 1) - cx(-1.0)) < 1e-15);
    // away from the special phases the cube picks up a global phase
    Mat skew = matrix_power(mos(3, 0.1), 3);
    REQUIRE(mat_dist(skew, std::polar(1.0, 0.3) * Mat::Identity(3, 3)) < 1e-13);
    REQUIRE(mat_dist(skew, Mat::Identity(3, 3)) > 0.1);
    REQUIRE(mat_dist(matrix_power(mos(3, 2 * pi / 3), 3), Mat::Identity(3, 3)) < 1e-13);
}

TEST_CASE("part split reconstructs the matrix") {
    auto rng = oracles::seeded(11);
    for (int rep = 0; rep < 10; ++rep) {
        Mat m(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = cx(normal(rng), normal(rng));
        auto [h, a] = split_parts(m);
        REQUIRE(hermiticity_defect(h) < 1e-14);
        REQUIRE(hermiticity_defect(a) < 1e-14);
        REQUIRE(mat_dist(h + cx(0, 1) * a, m) < 1e-14);
    }
}

TEST_CASE("bracket kinds") {
    auto rng = oracles::seeded(12);
    Mat p = oracles::random_unitary(rng, 3), q = oracles::random_unitary(rng, 3);
    REQUIRE(mat_dist(bracket(bracket_kind::commutator, p, q), p * q - q * p) < 1e-14);
    REQUIRE(mat_dist(bracket(bracket_kind::anticommutator, p, q), p * q + q * p) < 1e-14);
    REQUIRE(mat_dist(bracket(bracket_kind::complex_anticommutator, p, q),
                     p * q.adjoint() + q * p.adjoint()) < 1e-14);
}

TEST_CASE("top eigenpair matches power iteration") {
    auto rng = oracles::seeded(21);
    for (int d : {2, 3, 9}) {
        for (int rep = 0; rep < 5; ++rep) {
            Mat h = oracles::random_hermitian(rng, d);
            auto top = max_eigenpair(h);
            REQUIRE_THAT(top.value, WithinAbs(oracles::power_top_eigenvalue(h), 1e-7));
            REQUIRE((h * top.vector - top.value * top.vector).norm() < 1e-9);
            REQUIRE_THAT(top.vector.norm(), WithinAbs(1.0, 1e-12));
        }
    }
    Mat bad(2, 2);
    bad << 0, 1, 0, 0;
    REQUIRE_THROWS_AS(max_eigenpair(bad), contract_error);
}

TEST_CASE("spectral projectors resolve the identity") {
    auto rng = oracles::seeded(31);
    Mat u = oracles::random_root_unitary(rng, 3);
    auto projs = spectral_projectors(u);
    Mat sum = Mat::Zero(3, 3);
    Mat rebuilt = Mat::Zero(3, 3);
    for (const auto& [lambda, p] : projs) {
        REQUIRE(mat_dist(p * p, p) < 1e-10);
        REQUIRE(hermiticity_defect(p) < 1e-10);
        sum += p;
        rebuilt += lambda * p;
    }
    REQUIRE(mat_dist(sum, Mat::Identity(3, 3)) < 1e-10);
    REQUIRE(mat_dist(rebuilt, u) < 1e-9);

    // degenerate spectrum collapses into one rank-2 projector
    Mat deg = Mat::Zero(3, 3);
    deg(0, 0) = deg(1, 1) = 1.0;
    deg(2, 2) = -1.0;
    auto clusters = spectral_projectors(deg);
    REQUIRE(clusters.size() == 2);
}

TEST_CASE("mutually unbiased pairs among the standard qutrit settings") {
    const Mat x = weyl_heisenberg(3, 1, 0);
    const Mat z = weyl_heisenberg(3, 0, 1);
    const Mat xz = weyl_heisenberg(3, 1, 1);
    const Mat xzz = weyl_heisenberg(3, 1, 2);
    const std::vector<Mat> four = {x, z, xz, xzz};
    for (std::size_t i = 0; i < four.size(); ++i)
        for (std::size_t j = i + 1; j < four.size(); ++j) {
            auto r = is_mub(four[i], four[j]);
            INFO("pair " << i << "," << j << " defect " << r.defect);
            REQUIRE(r.unbiased);
        }
    // shared eigenbasis is maximally biased
    auto r = is_mub(z, z * z);
    REQUIRE_FALSE(r.unbiased);
    REQUIRE(r.defect > 0.5);
}

TEST_CASE("nilpotency detector") {
    Mat strict = Mat::Zero(3, 3);
    strict(0, 1) = 2.0;
    strict(1, 2) = -1.0;
    auto n = nilpotency_defect(strict);
    REQUIRE(n.defect < 1e-12);
    REQUIRE(n.power <= 3);
    auto id = nilpotency_defect(Mat::Identity(3, 3));
    REQUIRE(id.defect > 0.99);
}

TEST_CASE("commutator and anticommutator of the optimal qutrit pair are nilpotent") {
    const Mat a = weyl_heisenberg(3, 1, 0);
    const Mat ap = mos(3, 0.0);
    for (auto kind : {bracket_kind::commutator, bracket_kind::anticommutator}) {
        auto n = nilpotency_defect(bracket(kind, a, ap));
        INFO("defect " << n.defect << " at power " << n.power);
        REQUIRE(n.defect < 1e-12);
        REQUIRE(n.power <= 3);
    }
}

TEST_CASE("hermitian exponential") {
    auto rng = oracles::seeded(41);
    Mat h = oracles::random_hermitian(rng, 3);
    Mat u = exp_i_hermitian(h);
    REQUIRE(mat_dist(u * u.adjoint(), Mat::Identity(3, 3)) < 1e-12);
    Mat diag = Mat::Zero(2, 2);
    diag(0, 0) = 0.3;
    diag(1, 1) = -1.2;
    Mat expd = exp_i_hermitian(diag);
    REQUIRE(std::abs(expd(0, 0) - std::polar(1.0, 0.3)) < 1e-13);
    REQUIRE(std::abs(expd(1, 1) - std::polar(1.0, -1.2)) < 1e-13);
}

TEST_CASE("parametrized root-of-identity settings") {
    std::vector<double> params(8, 0.0);
    params[2] = 0.7;
    params[5] = -0.3;
    Mat u = root_of_identity_unitary(3, params);
    REQUIRE(mat_dist(matrix_power(u, 3), Mat::Identity(3, 3)) < 1e-12);
    REQUIRE_THROWS_AS(root_of_identity_unitary(3, {0.1, 0.2}), contract_error);
    REQUIRE_THROWS_AS(root_of_identity_unitary(3, params, {0, 1}), contract_error);

    SECTION("eigenbasis columns reconstruct the unitary") {
        auto rng = oracles::seeded(51);
        for (int rep = 0; rep < 8; ++rep) {
            Mat v = oracles::random_root_unitary(rng, 3);
            Mat b = root_eigenbasis(v);
            Mat diag = Mat::Zero(3, 3);
            for (int m = 0; m < 3; ++m) {
                diag(m, m) = omega_pow(3, m);
                REQUIRE_THAT(b.col(m).norm(), WithinAbs(1.0, 1e-12));
            }
            REQUIRE(mat_dist(b * diag * b.adjoint(), v) < 1e-10);
        }
    }
}
