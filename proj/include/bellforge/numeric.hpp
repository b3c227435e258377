#pragma once

#include <complex>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace bellforge {

using cx = std::complex<double>;
using std::numbers::pi;

// Central tolerance policy. Every module pins against these; tests quote them.
struct tolerances {
    static constexpr double exact = 1e-12;          // "exact" comparisons of enumerated/algebraic values
    static constexpr double hermiticity = 1e-10;    // max-norm defect accepted before eigensolves
    static constexpr double eig_residual = 1e-8;    // relative residual ||Hv - λv|| / ||H||
    static constexpr double expectation_imag = 1e-10;
    static constexpr double mub = 1e-8;
    static constexpr double gamma_refine = 1e-6;    // golden-section bracket width
};

constexpr std::uint64_t enumeration_guard_default = 100000000;
constexpr int dimension_cap = 729;

inline cx omega(int d) {
    return std::polar(1.0, 2.0 * pi / static_cast<double>(d));
}

inline cx omega_pow(int d, long long k) {
    long long r = k % d;
    if (r < 0) r += d;
    return std::polar(1.0, 2.0 * pi * static_cast<double>(r) / static_cast<double>(d));
}

inline bool approx(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline int ipow(int base, int exp) {
    int r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct contract_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic RNG used by all seeded search/property code.
using rng_t = std::mt19937_64;

inline double uniform(rng_t& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline double normal(rng_t& g) {
    return std::normal_distribution<double>(0.0, 1.0)(g);
}

} // namespace bellforge
