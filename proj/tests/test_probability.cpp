#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace bellforge;
using Catch::Matchers::WithinAbs;

namespace {

BasisAssignment random_bases(rng_t& rng, int n, int s, int d) {
    BasisAssignment out(n);
    for (int p = 0; p < n; ++p)
        for (int j = 0; j < s; ++j) out[p].push_back(oracles::random_unitary(rng, d));
    return out;
}

SettingsAssignment settings_from_bases(const BasisAssignment& bases, int d) {
    SettingsAssignment out(bases.size());
    for (std::size_t p = 0; p < bases.size(); ++p)
        for (const auto& b : bases[p]) out[p].push_back(detail::setting_from_basis(b, d));
    return out;
}

} // namespace

TEST_CASE("joint outcome probabilities") {
    BasisAssignment comp(2, std::vector<Mat>(1, Mat::Identity(3, 3)));
    Vec psi = Vec::Zero(9);
    psi(pack_index({0, 1}, 3)) = 1.0;
    REQUIRE_THAT(joint_probability(psi, comp, {0, 0}, {0, 1}), WithinAbs(1.0, 1e-13));
    REQUIRE_THAT(joint_probability(psi, comp, {0, 0}, {1, 1}), WithinAbs(0.0, 1e-13));

    SECTION("shared-symbol state correlations") {
        for (int m = 0; m < 3; ++m)
            REQUIRE_THAT(joint_probability(ghz(2, 3), comp, {0, 0}, {m, m}),
                         WithinAbs(1.0 / 3.0, 1e-13));
        REQUIRE_THAT(joint_probability(ghz(2, 3), comp, {0, 0}, {0, 1}), WithinAbs(0.0, 1e-13));
    }
    SECTION("completeness over outcomes") {
        auto rng = oracles::seeded(401);
        auto bases = random_bases(rng, 2, 2, 3);
        Vec state = oracles::random_state(rng, 9);
        for (int ca = 0; ca < 2; ++ca)
            for (int cb = 0; cb < 2; ++cb) {
                double total = 0;
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        total += joint_probability(state, bases, {ca, cb}, {a, b});
                REQUIRE_THAT(total, WithinAbs(1.0, 1e-12));
            }
    }
}

TEST_CASE("two-party functional catalog") {
    auto e3 = probability_catalog("cglmp:3");
    REQUIRE(e3.bound == 2.0);
    REQUIRE(e3.terms.size() == 8);
    auto e4 = probability_catalog("cglmp:4");
    REQUIRE(e4.terms.size() == 16);
    double wmin = 1e9, wmax = -1e9;
    for (const auto& t : e4.terms) {
        wmin = std::min(wmin, std::abs(t.weight));
        wmax = std::max(wmax, std::abs(t.weight));
    }
    REQUIRE_THAT(wmin, WithinAbs(1.0 / 3.0, 1e-13));
    REQUIRE_THAT(wmax, WithinAbs(1.0, 1e-13));
    REQUIRE_THROWS_AS(probability_catalog("cglmp:2"), contract_error);
    REQUIRE_THROWS_AS(probability_catalog("nonesuch"), contract_error);
}

TEST_CASE("two-party functional at the tuned state") {
    auto expr = probability_catalog("cglmp:3");
    auto bases = cglmp_bases(3);
    const double at_star = evaluate_expression(expr, quasi_ghz(2, 0.792287), bases);
    REQUIRE_THAT(at_star, WithinAbs(2.914854216, 1e-6));
    const double at_flat = evaluate_expression(expr, ghz(2, 3), bases);
    REQUIRE(at_flat > 2.0);      // violation already at the flat state
    REQUIRE(at_star > at_flat);  // tuning the middle amplitude helps
}

TEST_CASE("probability and operator languages agree on random bases") {
    auto rng = oracles::seeded(402);
    for (int d : {3, 4, 5}) {
        auto expr = probability_catalog("cglmp:" + std::to_string(d));
        auto poly = detail::cglmp_translation(d);
        for (int rep = 0; rep < 6; ++rep) {
            auto bases = random_bases(rng, 2, 2, d);
            Vec psi = oracles::random_state(rng, static_cast<long long>(d) * d);
            const double via_prob = evaluate_expression(expr, psi, bases);
            const double via_op = expectation(poly, settings_from_bases(bases, d), psi);
            INFO("d = " << d << " rep " << rep);
            REQUIRE_THAT(via_prob, WithinAbs(via_op, 1e-10));
        }
    }
}

TEST_CASE("three-party functional") {
    auto expr = probability_catalog("acin333");
    REQUIRE(expr.bound == 3.0);
    REQUIRE(expr.terms.size() == 8);

    SECTION("operator translation identity on random bases") {
        const cx w = omega(3);
        auto companion = from_prime_counts(3, 3, {1, -w, w * w, 2}, part_kind::hermitian);
        auto rng = oracles::seeded(403);
        for (int rep = 0; rep < 8; ++rep) {
            auto bases = random_bases(rng, 3, 2, 3);
            Vec psi = oracles::random_state(rng, 27);
            const double f = evaluate_expression(expr, psi, bases);
            const double s = expectation(companion, settings_from_bases(bases, 3), psi);
            REQUIRE_THAT(f, WithinAbs(1.0 + (2.0 / 3.0) * s, 1e-10));
        }
    }
    SECTION("aligned measurement recipe reaches the tuned value") {
        auto bases = acin_aligned_bases();
        const double v = evaluate_expression(expr, quasi_ghz(3, 1.186141), bases);
        REQUIRE_THAT(v, WithinAbs(4.3722813, 1e-4));
        REQUIRE(v > 3.0); // above the classical ceiling
    }
}

TEST_CASE("expression json round trip") {
    auto expr = probability_catalog("cglmp:4");
    nlohmann::json j = expr;
    auto back = j.get<ProbabilityExpression>();
    REQUIRE(back.name == expr.name);
    REQUIRE(back.n == expr.n);
    REQUIRE(back.d == expr.d);
    REQUIRE(back.bound == expr.bound);
    REQUIRE(back.terms.size() == expr.terms.size());
    for (std::size_t i = 0; i < expr.terms.size(); ++i) {
        REQUIRE(back.terms[i].weight == expr.terms[i].weight);
        REQUIRE(back.terms[i].choices == expr.terms[i].choices);
        REQUIRE(back.terms[i].signs == expr.terms[i].signs);
        REQUIRE(back.terms[i].residue == expr.terms[i].residue);
    }
}

TEST_CASE("hermitian-settings polynomial is an affine image of the functional") {
    auto poly = detail::c223h_polynomial();
    auto expr = probability_catalog("cglmp:3");
    auto rng = oracles::seeded(404);

    auto settings_for = [&](const BasisAssignment& bases) {
        Mat diag = Mat::Zero(3, 3);
        diag(0, 0) = 1.0;
        diag(1, 1) = -1.0; // third outcome carries value zero
        SettingsAssignment out(2);
        for (int p = 0; p < 2; ++p)
            for (const auto& b : bases[p]) out[p].push_back(b * diag * b.adjoint());
        return out;
    };
    auto pair_at = [&](const Vec& psi, const BasisAssignment& bases) {
        return std::pair<double, double>{expectation(poly, settings_for(bases), psi),
                                         evaluate_expression(expr, psi, bases)};
    };

    auto cal_bases = random_bases(rng, 2, 2, 3);
    auto [l1, f1] = pair_at(oracles::random_state(rng, 9), cal_bases);
    auto [l2, f2] = pair_at(oracles::random_state(rng, 9), cal_bases);
    REQUIRE(std::abs(f1 - f2) > 1e-6);
    const double beta = (l1 - l2) / (f1 - f2);
    const double alpha = l1 - beta * f1;
    REQUIRE_THAT(beta, WithinAbs(1.0, 1e-9));
    REQUIRE_THAT(alpha, WithinAbs(0.0, 1e-9));

    for (int rep = 0; rep < 50; ++rep) {
        auto bases = random_bases(rng, 2, 2, 3);
        auto [lhs, f] = pair_at(oracles::random_state(rng, 9), bases);
        INFO("instance " << rep);
        REQUIRE_THAT(lhs, WithinAbs(alpha + beta * f, 1e-9));
    }
}
