#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <optional>

#include "numeric.hpp"

namespace bellforge {

// One tensor factor: party operator raised to a power; power 0 is the identity.
struct factor {
    int setting = 0;
    int power = 1;
    auto operator<=>(const factor&) const = default;
};

struct term {
    cx coeff;
    std::vector<factor> factors; // one entry per party
};

enum class part_kind { hermitian, antihermitian };

// Outcome value alphabets: w^m roots, or an explicit real list indexed by outcome.
struct alphabet {
    bool roots = true;
    std::vector<double> values;
};

struct BellPolynomial {
    int n = 0; // parties
    int s = 0; // settings per party
    int d = 0; // outcomes
    part_kind part = part_kind::hermitian;
    alphabet outcomes;
    double scale = 1.0;  // display normalization applied on top of the raw terms
    double offset = 0.0; // additive constant applied after scale
    std::vector<term> terms;
};

using monomial_key = std::vector<factor>;

// Merged coefficient map with near-zero entries dropped; duplicates allowed in terms.
inline std::map<monomial_key, cx> coefficient_map(const BellPolynomial& p, double tol = tolerances::exact) {
    std::map<monomial_key, cx> out;
    for (const auto& t : p.terms) {
        monomial_key key = t.factors;
        for (auto& f : key)
            if (f.power == 0) f = {0, 0};
        out[key] += t.coeff;
    }
    for (auto it = out.begin(); it != out.end();)
        it = (std::abs(it->second) <= tol) ? out.erase(it) : std::next(it);
    return out;
}

inline bool polynomial_equal(const BellPolynomial& p, const BellPolynomial& q, double tol = tolerances::exact) {
    if (p.n != q.n || p.s != q.s || p.d != q.d || p.part != q.part) return false;
    auto mp = coefficient_map(p, tol);
    auto mq = coefficient_map(q, tol);
    if (mp.size() != mq.size()) return false;
    for (const auto& [key, c] : mp) {
        auto it = mq.find(key);
        if (it == mq.end() || std::abs(it->second - c) > tol) return false;
    }
    return true;
}

// Dense coefficient tensor over setting tuples; every party appears with power 1.
inline BellPolynomial from_coefficients(int n, int s, int d, const std::vector<cx>& coeffs, part_kind part) {
    if (static_cast<int>(coeffs.size()) != ipow(s, n))
        throw contract_error("from_coefficients: expected s^n coefficients");
    BellPolynomial p{n, s, d, part};
    for (long long idx = 0; idx < static_cast<long long>(coeffs.size()); ++idx) {
        if (coeffs[idx] == cx(0.0)) continue;
        term t;
        t.coeff = coeffs[idx];
        long long rest = idx;
        t.factors.resize(n);
        for (int k = n - 1; k >= 0; --k) {
            t.factors[k] = {static_cast<int>(rest % s), 1};
            rest /= s;
        }
        p.terms.push_back(std::move(t));
    }
    return p;
}

// Two settings per party; coefficient chosen by how many parties use the primed setting.
inline BellPolynomial from_prime_counts(int n, int d, const std::vector<cx>& by_count, part_kind part) {
    if (static_cast<int>(by_count.size()) != n + 1)
        throw contract_error("from_prime_counts: expected n+1 coefficients");
    std::vector<cx> dense(ipow(2, n));
    for (long long idx = 0; idx < static_cast<long long>(dense.size()); ++idx) {
        int count = 0;
        for (long long rest = idx; rest; rest >>= 1) count += static_cast<int>(rest & 1);
        dense[idx] = by_count[count];
    }
    return from_coefficients(n, 2, d, dense, part);
}

namespace detail {

inline int prime_count(const monomial_key& key) {
    int c = 0;
    for (const auto& f : key) c += (f.setting == 1 && f.power != 0) ? 1 : 0;
    return c;
}

} // namespace detail

// Lifts a two-party pattern to three parties.
//
// Grouped route: term lists that repeat monomials encode the target grouping directly;
// consecutive terms sharing one coefficient form group k, and that coefficient is
// assigned to every three-party monomial whose primed-setting count is k.
// Plain route: a duplicate-free all-equal tensor extends to the all-equal tensor.
inline BellPolynomial symmetric_extension(const BellPolynomial& p) {
    if (p.n != 2 || p.s != 2) throw contract_error("symmetric_extension: input must have n=2, s=2");
    std::map<monomial_key, int> seen;
    bool duplicates = false;
    for (const auto& t : p.terms)
        if (++seen[t.factors] > 1) duplicates = true;
    if (duplicates) {
        std::vector<cx> groups;
        for (const auto& t : p.terms)
            if (groups.empty() || std::abs(t.coeff - groups.back()) > tolerances::exact)
                groups.push_back(t.coeff);
        if (groups.size() != 4)
            throw contract_error("symmetric_extension: grouped form must present four coefficient runs");
        return from_prime_counts(3, p.d, groups, p.part);
    }
    auto cmap = coefficient_map(p);
    std::optional<cx> common;
    for (const auto& [key, c] : cmap) {
        if (!common) common = c;
        if (std::abs(c - *common) > tolerances::exact)
            throw contract_error("symmetric_extension: plain form must be constant across monomials");
    }
    std::vector<cx> by_count(4, common.value_or(cx(0.0)));
    return from_prime_counts(3, p.d, by_count, p.part);
}

// Recursive n-party construction over two +-1 settings per party, normalized so the
// classical bound is 1; returns the pair (M_n, M'_n) internally and M_n publicly.
inline std::pair<std::vector<cx>, std::vector<cx>> mermin_pair(int n) {
    std::vector<cx> m{1.0, 0.0}, mp{0.0, 1.0};
    for (int k = 2; k <= n; ++k) {
        const std::size_t prev = m.size();
        std::vector<cx> nm(prev * 2, 0.0), nmp(prev * 2, 0.0);
        for (std::size_t i = 0; i < prev; ++i) {
            nm[2 * i] += 0.5 * (m[i] + mp[i]);      // unprimed on party k
            nm[2 * i + 1] += 0.5 * (m[i] - mp[i]);  // primed on party k
            nmp[2 * i] += 0.5 * (mp[i] - m[i]);     // companion stays the prime swap of m
            nmp[2 * i + 1] += 0.5 * (mp[i] + m[i]);
        }
        m = std::move(nm);
        mp = std::move(nmp);
    }
    return {m, mp};
}

inline BellPolynomial mermin(int n) {
    if (n < 1) throw contract_error("mermin: n must be positive");
    auto [m, mp] = mermin_pair(n);
    (void)mp;
    return from_coefficients(n, 2, 2, m, part_kind::hermitian);
}

inline void to_json(nlohmann::json& j, const BellPolynomial& p) {
    j = nlohmann::json::object();
    j["n"] = p.n;
    j["s"] = p.s;
    j["d"] = p.d;
    j["part"] = (p.part == part_kind::hermitian) ? "H" : "A";
    j["scale"] = p.scale;
    j["offset"] = p.offset;
    if (!p.outcomes.roots) j["outcome_values"] = p.outcomes.values;
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& t : p.terms) {
        bool flat = true;
        for (const auto& f : t.factors) flat = flat && f.power == 1;
        nlohmann::json idx = nlohmann::json::array();
        for (const auto& f : t.factors) {
            if (flat)
                idx.push_back(f.setting);
            else
                idx.push_back(nlohmann::json::array({f.setting, f.power}));
        }
        coeffs.push_back(nlohmann::json::array({idx, {t.coeff.real(), t.coeff.imag()}}));
    }
    j["coeffs"] = coeffs;
}

inline void from_json(const nlohmann::json& j, BellPolynomial& p) {
    p = {};
    p.n = j.at("n").get<int>();
    p.s = j.at("s").get<int>();
    p.d = j.at("d").get<int>();
    p.part = (j.at("part").get<std::string>() == "A") ? part_kind::antihermitian : part_kind::hermitian;
    p.scale = j.value("scale", 1.0);
    p.offset = j.value("offset", 0.0);
    if (j.contains("outcome_values")) {
        p.outcomes.roots = false;
        p.outcomes.values = j.at("outcome_values").get<std::vector<double>>();
    }
    if (j.contains("prime_counts")) {
        std::vector<cx> by_count;
        for (const auto& e : j.at("prime_counts")) by_count.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
        auto lifted = from_prime_counts(p.n, p.d, by_count, p.part);
        p.terms = lifted.terms;
        p.s = lifted.s;
        return;
    }
    for (const auto& entry : j.at("coeffs")) {
        term t;
        t.coeff = cx(entry.at(1).at(0).get<double>(), entry.at(1).at(1).get<double>());
        for (const auto& f : entry.at(0)) {
            if (f.is_array())
                t.factors.push_back({f.at(0).get<int>(), f.at(1).get<int>()});
            else
                t.factors.push_back({f.get<int>(), 1});
        }
        if (static_cast<int>(t.factors.size()) != p.n)
            throw contract_error("polynomial json: factor count must equal n");
        p.terms.push_back(std::move(t));
    }
}

} // namespace bellforge
