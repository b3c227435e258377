#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace bellforge;
using Catch::Matchers::WithinAbs;

namespace {

double mat_dist(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

// direct contraction of a pure state, written against the same index convention but
// without going through the density matrix path
Mat traced_oracle(const Vec& psi, const std::vector<int>& keep, int n, int d) {
    std::vector<int> rest;
    for (int p = 0; p < n; ++p)
        if (std::find(keep.begin(), keep.end(), p) == keep.end()) rest.push_back(p);
    const long long dim_keep = ipow(d, static_cast<int>(keep.size()));
    const long long dim_rest = ipow(d, static_cast<int>(rest.size()));
    Mat out = Mat::Zero(dim_keep, dim_keep);
    std::vector<int> digits(n);
    for (long long i = 0; i < dim_keep; ++i)
        for (long long j = 0; j < dim_keep; ++j) {
            auto di = unpack_index(i, static_cast<int>(keep.size()), d);
            auto dj = unpack_index(j, static_cast<int>(keep.size()), d);
            cx acc = 0;
            for (long long r = 0; r < dim_rest; ++r) {
                auto dr = unpack_index(r, static_cast<int>(rest.size()), d);
                for (std::size_t k = 0; k < keep.size(); ++k) digits[keep[k]] = di[k];
                for (std::size_t k = 0; k < rest.size(); ++k) digits[rest[k]] = dr[k];
                const cx a = psi(pack_index(digits, d));
                for (std::size_t k = 0; k < keep.size(); ++k) digits[keep[k]] = dj[k];
                acc += a * std::conj(psi(pack_index(digits, d)));
            }
            out(i, j) = acc;
        }
    return out;
}

} // namespace

TEST_CASE("index packing round trip") {
    auto rng = oracles::seeded(101);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 1 + static_cast<int>(uniform(rng, 0.0, 4.999));
        const int d = 2 + static_cast<int>(uniform(rng, 0.0, 2.999));
        std::vector<int> digits(n);
        for (auto& x : digits) x = static_cast<int>(uniform(rng, 0.0, d - 1e-9));
        REQUIRE(unpack_index(pack_index(digits, d), n, d) == digits);
    }
    REQUIRE(pack_index({1, 2}, 3) == 5); // party 0 is the most significant digit
}

TEST_CASE("kronecker products") {
    auto rng = oracles::seeded(102);
    Mat a = oracles::random_unitary(rng, 2), b = oracles::random_unitary(rng, 3);
    Mat c = oracles::random_unitary(rng, 2), d = oracles::random_unitary(rng, 3);
    REQUIRE(kron(a, b).rows() == 6);
    REQUIRE(mat_dist(kron(a, b) * kron(c, d), kron(Mat(a * c), Mat(b * d))) < 1e-13);
    REQUIRE(mat_dist(kron({a, c}), kron(a, c)) < 1e-15);

    SECTION("local application agrees with the full product") {
        Vec psi = oracles::random_state(rng, 9);
        std::vector<Mat> ops = {oracles::random_unitary(rng, 3), oracles::random_unitary(rng, 3)};
        REQUIRE((apply_local(psi, ops) - kron(ops) * psi).norm() < 1e-13);
    }
}

TEST_CASE("matrix powers") {
    auto rng = oracles::seeded(103);
    Mat m = oracles::random_unitary(rng, 3);
    Mat acc = Mat::Identity(3, 3);
    for (int p = 0; p <= 4; ++p) {
        REQUIRE(mat_dist(matrix_power(m, p), acc) < 1e-12);
        acc = acc * m;
    }
}

TEST_CASE("partial trace against direct contraction") {
    auto rng = oracles::seeded(104);
    for (int rep = 0; rep < 6; ++rep) {
        Vec psi = oracles::random_state(rng, 27);
        Mat rho = projector(psi);
        for (const auto& keep :
             std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}) {
            Mat got = partial_trace(rho, keep, 3, 3);
            REQUIRE(mat_dist(got, traced_oracle(psi, keep, 3, 3)) < 1e-12);
            REQUIRE_THAT(got.trace().real(), WithinAbs(1.0, 1e-12));
        }
    }
}

TEST_CASE("purity and projectors") {
    auto rng = oracles::seeded(105);
    Vec psi = oracles::random_state(rng, 3);
    Mat p = projector(psi);
    REQUIRE(mat_dist(p * p, p) < 1e-13);
    REQUIRE_THAT(purity(p), WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(purity(Mat(Mat::Identity(3, 3) / 3.0)), WithinAbs(1.0 / 3.0, 1e-13));
}

TEST_CASE("shared-symbol states") {
    SECTION("ghz amplitudes") {
        Vec g = ghz(3, 3);
        REQUIRE_THAT(g.norm(), WithinAbs(1.0, 1e-13));
        REQUIRE_THAT(std::abs(g(0)), WithinAbs(1.0 / std::sqrt(3.0), 1e-13));
        REQUIRE_THAT(std::abs(g(pack_index({2, 2, 2}, 3))), WithinAbs(1.0 / std::sqrt(3.0), 1e-13));
        REQUIRE(std::abs(g(1)) < 1e-15);
    }
    SECTION("two-parameter family") {
        Vec q = quasi_ghz(2, 0.5);
        REQUIRE_THAT(q.norm(), WithinAbs(1.0, 1e-13));
        REQUIRE_THAT(std::abs(q(pack_index({1, 1}, 3)) / q(0)), WithinAbs(0.5, 1e-13));
        REQUIRE((quasi_ghz(3, 1.0) - ghz(3, 3)).norm() < 1e-13);
        REQUIRE_THROWS_AS(quasi_ghz(2, -1.0), contract_error);
    }
    SECTION("two-party maximally entangled alias") {
        REQUIRE((bell_plus() - ghz(2, 3)).norm() == 0.0);
    }
}

TEST_CASE("four-party absolutely maximally entangled state") {
    Vec psi = ame43();
    REQUIRE_THAT(psi.norm(), WithinAbs(1.0, 1e-13));
    auto reds = reduction_purities(psi, 4, 3);
    REQUIRE(reds.size() == 10); // 4 singles + 6 pairs
    for (const auto& r : reds) {
        const double expected = (r.parties.size() == 1) ? 1.0 / 3.0 : 1.0 / 9.0;
        INFO("parties " << r.parties.size());
        REQUIRE_THAT(r.purity, WithinAbs(expected, 1e-12));
    }
}

TEST_CASE("ghz reductions are maximally mixed") {
    auto reds = reduction_purities(ghz(4, 3), 4, 3);
    for (const auto& r : reds) REQUIRE_THAT(r.purity, WithinAbs(1.0 / 3.0, 1e-12));
}

TEST_CASE("state registry") {
    REQUIRE((named_state("ghz:3,3") - ghz(3, 3)).norm() == 0.0);
    REQUIRE((named_state("quasi:2,0.792287") - quasi_ghz(2, 0.792287)).norm() == 0.0);
    REQUIRE((named_state("ame43") - ame43()).norm() == 0.0);
    REQUIRE((named_state("bell+") - bell_plus()).norm() == 0.0);
    REQUIRE_THROWS_AS(named_state("w-state"), contract_error);
}
