#pragma once

#include "polynomial.hpp"
#include "tensor.hpp"

namespace bellforge {

// Reads a pure state's amplitude tensor as a coefficient tensor: party k's symbol value
// becomes party k's setting index, so a d-level n-party state yields an n-party
// polynomial with d settings. Dividing by the largest amplitude strips normalization,
// leaving integer or root-of-unity coefficients for the structured states of interest.
inline BellPolynomial map_state_to_polynomial(const Vec& psi, int n, int d, part_kind part) {
    if (psi.size() != static_cast<Eigen::Index>(ipow(d, n)))
        throw contract_error("map_state_to_polynomial: state size does not match d^n");
    double peak = 0;
    for (Eigen::Index i = 0; i < psi.size(); ++i) peak = std::max(peak, std::abs(psi(i)));
    if (peak <= 0) throw contract_error("map_state_to_polynomial: zero state");
    std::vector<cx> dense(psi.size());
    for (Eigen::Index i = 0; i < psi.size(); ++i) dense[i] = psi(i) / peak;
    return from_coefficients(n, d, d, dense, part);
}

} // namespace bellforge
