#pragma once

#include <map>
#include <sstream>

#include "tensor.hpp"

namespace bellforge {

inline Vec ghz(int n, int d) {
    const int dim = ipow(d, n);
    Vec psi = Vec::Zero(dim);
    std::vector<int> digits(n);
    for (int m = 0; m < d; ++m) {
        std::fill(digits.begin(), digits.end(), m);
        psi(pack_index(digits, d)) = 1.0;
    }
    return psi / std::sqrt(static_cast<double>(d));
}

// (|0..0> + gamma |1..1> + |2..2>) / sqrt(2 + gamma^2), qutrits only.
inline Vec quasi_ghz(int n, double gamma) {
    if (gamma <= 0.0) throw contract_error("quasi_ghz: gamma must be positive");
    const int dim = ipow(3, n);
    Vec psi = Vec::Zero(dim);
    std::vector<int> digits(n);
    for (int m = 0; m < 3; ++m) {
        std::fill(digits.begin(), digits.end(), m);
        psi(pack_index(digits, 3)) = (m == 1) ? gamma : 1.0;
    }
    return psi / std::sqrt(2.0 + gamma * gamma);
}

// Four-qutrit absolutely maximally entangled state.
inline Vec ame43() {
    Vec psi = Vec::Zero(81);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    psi(pack_index({i, j, k, l}, 3)) =
                        omega_pow(3, static_cast<long long>(j) * (i - k) + static_cast<long long>(l) * (i + k)) / 9.0;
    return psi;
}

inline Vec bell_plus() { return ghz(2, 3); }

inline Vec apply_local(const Vec& psi, const std::vector<Mat>& ops) {
    const int n = static_cast<int>(ops.size());
    if (n == 0) return psi;
    const int d = static_cast<int>(ops[0].rows());
    if (psi.size() != ipow(d, n)) throw contract_error("apply_local: dimension mismatch");
    Vec cur = psi;
    for (int p = 0; p < n; ++p) {
        const int left = ipow(d, p);
        const int right = ipow(d, n - p - 1);
        Vec next = Vec::Zero(cur.size());
        for (int a = 0; a < left; ++a)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    const cx w = ops[p](i, j);
                    if (w == cx(0.0)) continue;
                    for (int b = 0; b < right; ++b)
                        next((static_cast<long long>(a) * d + i) * right + b) +=
                            w * cur((static_cast<long long>(a) * d + j) * right + b);
                }
        cur = next;
    }
    return cur;
}

struct reduction {
    std::vector<int> parties;
    double purity;
};

// Purities of every reduction of size 1..floor(n/2).
inline std::vector<reduction> reduction_purities(const Vec& psi, int n, int d) {
    Mat rho = projector(psi);
    std::vector<reduction> out;
    const int half = n / 2;
    for (int size = 1; size <= half; ++size) {
        std::vector<int> subset(size);
        for (int i = 0; i < size; ++i) subset[i] = i;
        while (true) {
            out.push_back({subset, purity(partial_trace(rho, subset, n, d))});
            int i = size - 1;
            while (i >= 0 && subset[i] == n - size + i) --i;
            if (i < 0) break;
            ++subset[i];
            for (int j = i + 1; j < size; ++j) subset[j] = subset[j - 1] + 1;
        }
    }
    return out;
}

// Registry names: ghz:n,d  quasi:n,gamma  ame43  bell+
inline Vec named_state(const std::string& name) {
    if (name == "ame43") return ame43();
    if (name == "bell+") return bell_plus();
    auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    if (colon != std::string::npos) {
        std::string args = name.substr(colon + 1);
        std::replace(args.begin(), args.end(), ',', ' ');
        std::istringstream in(args);
        if (head == "ghz") {
            int n = 0, d = 0;
            if (in >> n >> d) return ghz(n, d);
        } else if (head == "quasi") {
            int n = 0;
            double gamma = 0;
            if (in >> n >> gamma) return quasi_ghz(n, gamma);
        }
    }
    throw contract_error("named_state: unknown state " + name);
}

} // namespace bellforge
