#pragma once

#include <cstdlib>
#include <future>
#include <thread>

#include "polynomial.hpp"

namespace bellforge {

// outcomes[party][setting] = outcome index
using DeterministicStrategy = std::vector<std::vector<int>>;

inline cx outcome_value(const BellPolynomial& p, int outcome, int power) {
    if (power == 0) return 1.0;
    if (p.outcomes.roots) return omega_pow(p.d, static_cast<long long>(outcome) * power);
    return std::pow(p.outcomes.values.at(outcome), power);
}

inline cx strategy_value(const BellPolynomial& p, const DeterministicStrategy& strat) {
    if (static_cast<int>(strat.size()) != p.n) throw contract_error("strategy_value: party count mismatch");
    for (const auto& row : strat)
        if (static_cast<int>(row.size()) != p.s) throw contract_error("strategy_value: setting count mismatch");
    cx total = 0.0;
    for (const auto& t : p.terms) {
        cx prod = t.coeff;
        for (int k = 0; k < p.n; ++k)
            prod *= outcome_value(p, strat[k][t.factors[k].setting], t.factors[k].power);
        total += prod;
    }
    return p.scale * total + p.offset;
}

enum class objective { Hmax, Hmin, Amax, Amin };

inline const char* objective_name(objective o) {
    switch (o) {
        case objective::Hmax: return "Hmax";
        case objective::Hmin: return "Hmin";
        case objective::Amax: return "Amax";
        case objective::Amin: return "Amin";
    }
    return "?";
}

struct bound_result {
    double value;
    DeterministicStrategy witness;
};

inline int thread_budget() {
    if (const char* env = std::getenv("BELLFORGE_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

namespace detail {

struct chunk_best {
    double value;
    long long index;
};

// Strategies are numbered by a party-major mixed-radix counter: digit (party, setting)
// with party 0 / setting 0 most significant, the last digit varying fastest.
inline DeterministicStrategy decode_strategy(long long index, int n, int s, int d) {
    DeterministicStrategy strat(n, std::vector<int>(s));
    for (int k = n - 1; k >= 0; --k)
        for (int j = s - 1; j >= 0; --j) {
            strat[k][j] = static_cast<int>(index % d);
            index /= d;
        }
    return strat;
}

inline chunk_best scan_chunk(const BellPolynomial& p, objective obj, long long begin, long long end) {
    const int n = p.n, s = p.s, d = p.d;
    const auto nterms = p.terms.size();
    // factor value tables: value[t][k][m] for this party's chosen setting outcome m
    std::vector<cx> table(nterms * n * d);
    for (std::size_t t = 0; t < nterms; ++t)
        for (int k = 0; k < n; ++k)
            for (int m = 0; m < d; ++m)
                table[(t * n + k) * d + m] = outcome_value(p, m, p.terms[t].factors[k].power);
    const bool want_real = (obj == objective::Hmax || obj == objective::Hmin);
    const bool want_max = (obj == objective::Hmax || obj == objective::Amax);
    chunk_best best{want_max ? -1e300 : 1e300, -1};
    auto strat = decode_strategy(begin, n, s, d);
    std::vector<int> digits(n * s);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < s; ++j) digits[k * s + j] = strat[k][j];
    for (long long idx = begin; idx < end; ++idx) {
        cx total = 0.0;
        for (std::size_t t = 0; t < nterms; ++t) {
            cx prod = p.terms[t].coeff;
            for (int k = 0; k < n; ++k)
                prod *= table[(t * n + k) * d + digits[k * s + p.terms[t].factors[k].setting]];
            total += prod;
        }
        total = p.scale * total + p.offset;
        const double v = want_real ? total.real() : total.imag();
        if ((want_max && v > best.value) || (!want_max && v < best.value)) best = {v, idx};
        for (int pos = n * s - 1; pos >= 0; --pos) {
            if (++digits[pos] < d) break;
            digits[pos] = 0;
        }
    }
    return best;
}

} // namespace detail

inline bound_result enumerate_bound(const BellPolynomial& p, objective obj,
                                    std::uint64_t guard = enumeration_guard_default) {
    long double total_ld = std::pow(static_cast<long double>(p.d), p.n * p.s);
    if (total_ld > static_cast<long double>(guard))
        throw capacity_error("enumerate_bound: " + std::to_string(static_cast<double>(total_ld)) +
                             " strategies exceed the guard of " + std::to_string(guard));
    const long long total = static_cast<long long>(total_ld);
    const int threads = std::min<long long>(thread_budget(), std::max<long long>(1, total / 4096));
    std::vector<std::future<detail::chunk_best>> futs;
    const long long step = (total + threads - 1) / threads;
    for (int c = 0; c < threads; ++c) {
        const long long begin = c * step;
        const long long end = std::min(total, begin + step);
        if (begin >= end) break;
        futs.push_back(std::async(std::launch::async,
                                  [&p, obj, begin, end] { return detail::scan_chunk(p, obj, begin, end); }));
    }
    const bool want_max = (obj == objective::Hmax || obj == objective::Amax);
    detail::chunk_best best{want_max ? -1e300 : 1e300, -1};
    // merge is chunk-order independent: better value wins, ties keep the earliest index
    for (auto& f : futs) {
        auto cb = f.get();
        const bool better = want_max ? cb.value > best.value : cb.value < best.value;
        if (better || (cb.value == best.value && cb.index < best.index)) best = cb;
    }
    return {best.value, detail::decode_strategy(best.index, p.n, p.s, p.d)};
}

struct classical_summary {
    double hmax, hmin, amax, amin;
    DeterministicStrategy hmax_witness, hmin_witness, amax_witness, amin_witness;
    long long strategies = 0;
    bool h_min_is_minus_two_max;
    bool a_min_is_minus_two_max;
    bool h_sqrt3_ladder;
    bool a_sqrt3_ladder;
};

namespace detail {

inline bool sqrt3_ladder(double x) {
    double q = std::abs(x) / std::sqrt(3.0);
    if (q < 0.5) return false;
    double l = std::log(q) / std::log(3.0);
    return std::abs(l - std::round(l)) < 1e-9;
}

} // namespace detail

inline classical_summary classical_report(const BellPolynomial& p,
                                          std::uint64_t guard = enumeration_guard_default) {
    classical_summary r{};
    auto hx = enumerate_bound(p, objective::Hmax, guard);
    auto hn = enumerate_bound(p, objective::Hmin, guard);
    auto ax = enumerate_bound(p, objective::Amax, guard);
    auto an = enumerate_bound(p, objective::Amin, guard);
    r.hmax = hx.value;
    r.hmin = hn.value;
    r.amax = ax.value;
    r.amin = an.value;
    r.hmax_witness = std::move(hx.witness);
    r.hmin_witness = std::move(hn.witness);
    r.amax_witness = std::move(ax.witness);
    r.amin_witness = std::move(an.witness);
    r.strategies = static_cast<long long>(std::pow(static_cast<long double>(p.d), p.n * p.s));
    r.h_min_is_minus_two_max = approx(r.hmin, -2.0 * r.hmax, 1e-9);
    r.a_min_is_minus_two_max = approx(r.amin, -2.0 * r.amax, 1e-9);
    r.h_sqrt3_ladder = detail::sqrt3_ladder(r.hmax);
    r.a_sqrt3_ladder = detail::sqrt3_ladder(r.amax);
    return r;
}

} // namespace bellforge
