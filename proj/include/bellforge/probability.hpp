#pragma once

#include "catalog.hpp"
#include "states.hpp"

namespace bellforge {

// Per party, per setting: a unitary whose column m is the outcome-m measurement vector.
using BasisAssignment = std::vector<std::vector<Mat>>;

struct probability_term {
    double weight = 0;
    std::vector<int> choices; // setting index per party
    std::vector<int> signs;   // +-1 coefficient per party inside the modular condition
    int residue = 0;          // sum_k signs[k] * outcome[k] = residue (mod d)
};

struct ProbabilityExpression {
    std::string name;
    int n = 0;
    int s = 0;
    int d = 0;
    double bound = 0; // classical ceiling of the functional
    std::vector<probability_term> terms;
};

inline BasisAssignment bases_from_settings(const SettingsAssignment& settings) {
    BasisAssignment out(settings.size());
    for (std::size_t p = 0; p < settings.size(); ++p)
        for (const auto& u : settings[p]) out[p].push_back(root_eigenbasis(u));
    return out;
}

inline double joint_probability(const Vec& psi, const BasisAssignment& bases,
                                const std::vector<int>& choices, const std::vector<int>& outcomes) {
    const int n = static_cast<int>(choices.size());
    Mat column = Mat::Ones(1, 1);
    for (int k = 0; k < n; ++k)
        column = kron(column, Mat(bases[k][choices[k]].col(outcomes[k])));
    const cx amp = (psi.adjoint() * Vec(column.col(0)))(0, 0);
    return std::norm(amp);
}

inline double evaluate_expression(const ProbabilityExpression& expr, const Vec& psi,
                                  const BasisAssignment& bases) {
    if (expr.n <= 0) throw contract_error("evaluate_expression: empty expression");
    const int d = expr.d;
    double total = 0;
    for (const auto& t : expr.terms) {
        std::vector<Mat> adj;
        for (int k = 0; k < expr.n; ++k) adj.push_back(bases[k][t.choices[k]].adjoint());
        Vec amps = kron(adj) * psi; // packed outcome index, party 0 most significant
        for (int idx = 0; idx < amps.size(); ++idx) {
            auto m = unpack_index(idx, expr.n, d);
            long long lhs = 0;
            for (int k = 0; k < expr.n; ++k) lhs += static_cast<long long>(t.signs[k]) * m[k];
            if (((lhs - t.residue) % d + d) % d == 0) total += t.weight * std::norm(amps(idx));
        }
    }
    return total;
}

inline ProbabilityExpression probability_catalog(const std::string& name) {
    if (name.rfind("cglmp:", 0) == 0) {
        const int d = std::stoi(name.substr(6));
        if (d < 3) throw contract_error("probability_catalog: cglmp requires d >= 3");
        ProbabilityExpression e{name, 2, 2, d, 2.0, {}};
        for (const auto& f : detail::cglmp_conditions(d))
            e.terms.push_back({f.wt, {f.ca, f.cb}, {f.sa, f.sb}, ((f.r % d) + d) % d});
        return e;
    }
    if (name == "acin333") {
        ProbabilityExpression e{name, 3, 2, 3, 3.0, {}};
        auto add = [&](double wt, std::vector<int> c, int r) {
            e.terms.push_back({wt, std::move(c), {1, 1, 1}, r});
        };
        add(1, {0, 0, 0}, 0);
        add(1, {0, 1, 1}, 1);
        add(1, {1, 0, 1}, 1);
        add(1, {1, 1, 0}, 1);
        add(2, {1, 1, 1}, 0); // sign chosen so the ceiling is attainable classically
        add(-1, {1, 0, 0}, 2);
        add(-1, {0, 1, 0}, 2);
        add(-1, {0, 0, 1}, 2);
        return e;
    }
    throw contract_error("probability_catalog: unknown name " + name);
}

// Fixed Fourier-phase measurement recipe for the two-party family.
inline BasisAssignment cglmp_bases(int d) {
    BasisAssignment out(2, std::vector<Mat>(2));
    for (int p = 0; p < 2; ++p)
        for (int s = 0; s < 2; ++s) out[p][s] = detail::translation_basis(d, p, s);
    return out;
}

// Three-party bases: take the top eigenvector of the prime-count companion operator at
// settings (X, Z^2), find local frames carrying it onto the near-symmetric two-parameter
// state, then rotate the setting eigenbases by those frames.
inline BasisAssignment acin_aligned_bases() {
    const cx w = omega(3);
    auto companion = from_prime_counts(3, 3, {1, -w, w * w, 2}, part_kind::hermitian);
    SettingsAssignment setts(3, {X3(), Z3() * Z3()});
    auto top = max_eigenpair(display_operator(companion, setts));
    auto al = align_to_target(top.vector, quasi_ghz(3, 1.186141), 3, 3, 40, 250, 1000);
    BasisAssignment out(3, std::vector<Mat>(2));
    const Mat sops[2] = {root_eigenbasis(X3()), root_eigenbasis(Z3() * Z3())};
    for (int p = 0; p < 3; ++p)
        for (int s = 0; s < 2; ++s) out[p][s] = al.frames[p] * sops[s];
    return out;
}

inline BasisAssignment expression_bases(const ProbabilityExpression& expr) {
    if (expr.name.rfind("cglmp:", 0) == 0) return cglmp_bases(expr.d);
    if (expr.name == "acin333") return acin_aligned_bases();
    throw contract_error("expression_bases: no recipe for " + expr.name);
}

inline void to_json(nlohmann::json& j, const probability_term& t) {
    j = {{"weight", t.weight}, {"choices", t.choices}, {"signs", t.signs}, {"residue", t.residue}};
}

inline void from_json(const nlohmann::json& j, probability_term& t) {
    j.at("weight").get_to(t.weight);
    j.at("choices").get_to(t.choices);
    j.at("signs").get_to(t.signs);
    j.at("residue").get_to(t.residue);
}

inline void to_json(nlohmann::json& j, const ProbabilityExpression& e) {
    j = {{"name", e.name}, {"n", e.n}, {"s", e.s}, {"d", e.d},
         {"bound", e.bound}, {"terms", e.terms}};
}

inline void from_json(const nlohmann::json& j, ProbabilityExpression& e) {
    e.name = j.value("name", "");
    j.at("n").get_to(e.n);
    j.at("s").get_to(e.s);
    j.at("d").get_to(e.d);
    e.bound = j.value("bound", 0.0);
    j.at("terms").get_to(e.terms);
}

} // namespace bellforge
