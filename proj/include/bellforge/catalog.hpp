#pragma once

#include "quantum.hpp"

namespace bellforge {

struct catalog_entry {
    std::string name;
    BellPolynomial polynomial;
    SettingsAssignment recommended;
    part_kind bold_part;        // side whose classical extremum headlines the ratio
    std::string settings_label; // MOS / MUB / GM / Num. / Pauli
};

inline Mat X3() { return weyl_heisenberg(3, 1, 0); }
inline Mat Z3() { return weyl_heisenberg(3, 0, 1); }

// Named setting registry: X, Z, XkZj:k,j, mos:phi, gm:i, fourier
inline Mat named_setting(const std::string& name) {
    if (name == "X") return X3();
    if (name == "Z") return Z3();
    if (name == "fourier") return fourier(3, true);
    auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : name.substr(colon + 1);
    std::replace(args.begin(), args.end(), ',', ' ');
    std::istringstream in(args);
    if (head == "XkZj") {
        int k = 0, j = 0;
        if (in >> k >> j) return weyl_heisenberg(3, k, j);
    } else if (head == "mos") {
        double phi = 0;
        if (in >> phi) return mos(3, phi);
    } else if (head == "gm") {
        int i = 0;
        if (in >> i) return gell_mann(i);
    }
    throw contract_error("named_setting: unknown setting " + name);
}

namespace detail {

inline SettingsAssignment uniform_settings(int n, const std::vector<Mat>& per_party) {
    return SettingsAssignment(n, per_party);
}

inline Mat qubit_axis(double theta) {
    return std::cos(theta) * pauli_x() + std::sin(theta) * pauli_y();
}

// Fourier-phase measurement bases for the two-outcome-per-party translation family:
// party 0 uses phases (0, 1/2), party 1 resolves outcomes as -l with phases (1/4, -1/4).
inline Mat translation_basis(int d, int party, int setting) {
    const double phase = (party == 0) ? (setting == 0 ? 0.0 : 0.5) : (setting == 0 ? 0.25 : -0.25);
    Mat b(d, d);
    for (int j = 0; j < d; ++j)
        for (int col = 0; col < d; ++col) {
            const double exponent = (party == 0) ? j * (col + phase) : j * (-col + phase);
            b(j, col) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), 2.0 * pi * exponent / d);
        }
    return b;
}

inline Mat setting_from_basis(const Mat& basis, int d) {
    Mat diag = Mat::Zero(d, d);
    for (int m = 0; m < d; ++m) diag(m, m) = omega_pow(d, m);
    return basis * diag * basis.adjoint();
}

inline SettingsAssignment translation_settings(int d) {
    SettingsAssignment out(2, std::vector<Mat>(2));
    for (int p = 0; p < 2; ++p)
        for (int s = 0; s < 2; ++s) out[p][s] = setting_from_basis(translation_basis(d, p, s), d);
    return out;
}

// Weighted outcome-difference conditions equivalent to the two-party d-outcome
// functional: weight * p(s_a * a + s_b * b = r mod d) at choices (c_a, c_b).
struct cglmp_condition {
    double wt;
    int ca, cb, sa, sb, r;
};

inline std::vector<cglmp_condition> cglmp_conditions(int d) {
    std::vector<cglmp_condition> fam;
    for (int k = 0; k < d / 2; ++k) {
        const double c = 1.0 - 2.0 * k / (d - 1.0);
        fam.push_back({c, 0, 0, 1, -1, k});
        fam.push_back({c, 1, 0, -1, 1, k + 1});
        fam.push_back({c, 1, 1, 1, -1, k});
        fam.push_back({c, 0, 1, -1, 1, k});
        fam.push_back({-c, 0, 0, 1, -1, -k - 1});
        fam.push_back({-c, 1, 0, -1, 1, -k});
        fam.push_back({-c, 1, 1, 1, -1, -k - 1});
        fam.push_back({-c, 0, 1, -1, 1, -k - 1});
    }
    return fam;
}

// Exact operator translation of the condition family: each condition contributes
// (1/d) sum_s w^{-rs} A^{s_a s} (x) B^{s_b s}.
inline BellPolynomial cglmp_translation(int d) {
    std::map<std::array<int, 4>, cx> acc;
    for (const auto& f : cglmp_conditions(d))
        for (int s = 0; s < d; ++s) {
            const int pa = ((f.sa * s) % d + d) % d;
            const int pb = ((f.sb * s) % d + d) % d;
            acc[{f.ca, pa, f.cb, pb}] += f.wt * omega_pow(d, -static_cast<long long>(f.r) * s) / static_cast<double>(d);
        }
    BellPolynomial p{2, 2, d, part_kind::hermitian};
    for (const auto& [key, c] : acc) {
        if (std::abs(c) < 1e-14) continue;
        p.terms.push_back({c, {{key[0], key[1]}, {key[2], key[3]}}});
    }
    return p;
}

// Printed two-party hermitian-settings polynomial; outcome values are the lambda_3
// spectrum (1, -1, 0) in outcome order, constant carried as the additive offset.
inline BellPolynomial c223h_polynomial() {
    BellPolynomial p{2, 2, 3, part_kind::hermitian};
    p.outcomes.roots = false;
    p.outcomes.values = {1.0, -1.0, 0.0};
    p.offset = 2.0;
    const double q = 3.0 / 4.0, r = 9.0 / 4.0;
    auto add = [&](double c, int sa, int pa, int sb, int pb) {
        p.terms.push_back({c, {{sa, pa}, {sb, pb}}});
    };
    add(-3, 0, 2, 0, 0);
    add(-3, 0, 0, 1, 2);
    add(q, 0, 1, 0, 1);
    add(q, 0, 2, 0, 1);
    add(-q, 1, 1, 0, 1);
    add(-q, 1, 2, 0, 1);
    add(-q, 0, 1, 0, 2);
    add(q, 1, 1, 0, 2);
    add(q, 0, 1, 1, 1);
    add(-q, 0, 2, 1, 1);
    add(q, 1, 1, 1, 1);
    add(q, 1, 2, 1, 1);
    add(q, 0, 1, 1, 2);
    add(-q, 1, 1, 1, 2);
    add(r, 0, 2, 0, 2);
    add(-r, 1, 2, 0, 2);
    add(r, 0, 2, 1, 2);
    add(r, 1, 2, 1, 2);
    return p;
}

inline SettingsAssignment c223h_settings() {
    Mat a = gell_mann(3);
    Mat ap = (2.0 / 3.0) * (gell_mann(1) + gell_mann(6)) +
             (1.0 / 6.0) * (gell_mann(3) + std::sqrt(3.0) * gell_mann(8));
    return uniform_settings(2, {a, ap});
}

inline BellPolynomial c233_polynomial() {
    std::vector<cx> dense(9);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) dense[j * 3 + k] = omega_pow(3, static_cast<long long>(j) * k);
    return from_coefficients(2, 3, 3, dense, part_kind::hermitian);
}

inline std::vector<cx> c433_raw_tensor() {
    std::vector<cx> dense(81);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    dense[pack_index({i, j, k, l}, 3)] =
                        omega_pow(3, static_cast<long long>(j) * (i - k) + static_cast<long long>(l) * (i + k));
    return dense;
}

inline BellPolynomial c433ghz_polynomial() {
    // sign chosen so the hermitian extrema land on (max, min) = (13.5, -27)
    std::vector<cx> dense(81);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l)
                for (int m = 0; m < 3; ++m)
                    dense[pack_index({j, k, l, m}, 3)] = -omega_pow(3, static_cast<long long>(j) * (k + l + m));
    return from_coefficients(4, 3, 3, dense, part_kind::hermitian);
}

// Fourth-party relabel of the raw tensor: slot 1 takes the raw slot-2 coefficient and
// slot 2 takes w times the raw slot-1 coefficient.
inline BellPolynomial c433ame_polynomial() {
    auto raw = c433_raw_tensor();
    std::vector<cx> dense(81);
    for (int base = 0; base < 81; base += 3) {
        dense[base + 0] = raw[base + 0];
        dense[base + 1] = raw[base + 2];
        dense[base + 2] = omega(3) * raw[base + 1];
    }
    return from_coefficients(4, 3, 3, dense, part_kind::hermitian);
}

inline const std::vector<double>& c433ghz_params() {
    static const std::vector<double> params = {
        2.150253544796398, -0.072829544623026765, -0.99257428231842115, -0.019796663731410754,
        -1.3271832846387457, 2.5171881125682676, -1.8138623073225144, 0.57823306279135056,
        0.94387664491529499, -1.1531802659632855, 0.55654279980577437, 1.6498965047848193,
        0.37186622388893897, 0.37575113324701415, 1.0591550997798367, 0.43406177789548417,
        0.81281028223491625, -0.0044922601679502436, 1.2759349598595886, -1.006084156378322,
        0.92388413673325331, -0.69748606016057679, -1.811213621548966, 0.61579052120043754};
    return params;
}

inline const std::vector<double>& c523_params() {
    static const std::vector<double> params = {
        -2.4738754147791044, -0.91293157600075003, 0.98546419744131608, 1.5392660884871221,
        -2.5018727953222832, -0.49810096060545261, 0.76029002048473726, -0.5949782741323193,
        1.9236262356447684, -1.3104556058770915, 0.43370287824656195, -1.0541834528105489,
        1.6369212077206641, -0.071657736701146627, -0.50644175525405777, -1.7184821473279188};
    return params;
}

inline std::vector<Mat> settings_from_flat_params(const std::vector<double>& flat, int count) {
    std::vector<Mat> out;
    for (int s = 0; s < count; ++s)
        out.push_back(root_of_identity_unitary(3, {flat.begin() + 8 * s, flat.begin() + 8 * (s + 1)}));
    return out;
}

} // namespace detail

inline std::vector<std::string> catalog_names() {
    return {"chsh", "mermin:n", "svetlichny3", "c223h", "c223", "c333", "c423",
            "c523", "c623", "c233", "c433ghz", "c433ame", "c22d:d"};
}

inline catalog_entry catalog(const std::string& name) {
    using namespace detail;
    const cx w = omega(3);
    if (name == "chsh") {
        auto p = from_coefficients(2, 2, 2, {1, 1, 1, -1}, part_kind::hermitian);
        Mat b0 = (pauli_z() + pauli_x()) / std::sqrt(2.0);
        Mat b1 = (pauli_z() - pauli_x()) / std::sqrt(2.0);
        return {name, p, {{pauli_z(), pauli_x()}, {b0, b1}}, part_kind::hermitian, "Pauli"};
    }
    if (name.rfind("mermin:", 0) == 0) {
        const int n = std::stoi(name.substr(7));
        auto p = mermin(n);
        if (n == 3) p.scale = 2.0; // familiar three-party display is twice the recursion
        return {name, p, uniform_settings(n, {pauli_x(), pauli_y()}), part_kind::hermitian, "Pauli"};
    }
    if (name == "svetlichny3") {
        auto p = from_prime_counts(3, 2, {1, 1, -1, -1}, part_kind::hermitian);
        SettingsAssignment s = {{pauli_x(), pauli_y()},
                                {pauli_x(), pauli_y()},
                                {qubit_axis(pi / 4), qubit_axis(-pi / 4)}};
        return {name, p, s, part_kind::hermitian, "Pauli"};
    }
    if (name == "c223h")
        return {name, c223h_polynomial(), c223h_settings(), part_kind::hermitian, "GM"};
    if (name == "c223") {
        auto p = from_prime_counts(2, 3, {w, -1, w}, part_kind::antihermitian);
        Mat dphase = Mat::Zero(3, 3);
        dphase(0, 0) = 1;
        dphase(1, 1) = std::polar(1.0, pi / 12);
        dphase(2, 2) = std::polar(1.0, pi / 6);
        Mat a = dphase * X3() * dphase.adjoint();
        Mat ap = dphase * mos(3, 0.0) * dphase.adjoint();
        return {name, p, uniform_settings(2, {a, ap}), part_kind::antihermitian, "MOS"};
    }
    if (name == "c333")
        return {name, from_prime_counts(3, 3, {1, -w * w, w, 2}, part_kind::hermitian),
                uniform_settings(3, {X3(), Z3()}), part_kind::hermitian, "MUB"};
    if (name == "c423")
        return {name, from_prime_counts(4, 3, {2, 1, w, 1, 2}, part_kind::antihermitian),
                uniform_settings(4, {X3(), Z3()}), part_kind::antihermitian, "MUB"};
    if (name == "c523") {
        auto p = from_prime_counts(5, 3, {w * w, -w * w, -w * w, -w * w, w * w, w * w}, part_kind::hermitian);
        return {name, p, uniform_settings(5, settings_from_flat_params(c523_params(), 2)),
                part_kind::hermitian, "Num."};
    }
    if (name == "c623")
        return {name, from_prime_counts(6, 3, {-w, 1, -1, w, -1, 1, -w}, part_kind::antihermitian),
                uniform_settings(6, {X3(), mos(3, 0.0)}), part_kind::antihermitian, "MOS"};
    if (name == "c233")
        return {name, c233_polynomial(),
                uniform_settings(2, {X3(), Z3(), weyl_heisenberg(3, 2, 2)}), part_kind::hermitian, "MUB"};
    if (name == "c433ghz")
        return {name, c433ghz_polynomial(),
                uniform_settings(4, settings_from_flat_params(c433ghz_params(), 3)),
                part_kind::hermitian, "Num."};
    if (name == "c433ame") {
        std::vector<Mat> acd = {X3(), weyl_heisenberg(3, 2, 2), Z3()};
        std::vector<Mat> b = {X3(), X3(), weyl_heisenberg(3, 2, 0)};
        return {name, c433ame_polynomial(), {acd, b, acd, acd}, part_kind::hermitian, "MUB and Num."};
    }
    if (name == "c433ame_raw") {
        std::vector<Mat> acd = {X3(), weyl_heisenberg(3, 2, 2), Z3()};
        std::vector<Mat> b = {X3(), X3(), weyl_heisenberg(3, 2, 0)};
        std::vector<Mat> dd = {X3(), omega(3) * Z3(), weyl_heisenberg(3, 2, 2)};
        return {name, from_coefficients(4, 3, 3, c433_raw_tensor(), part_kind::hermitian),
                {acd, b, acd, dd}, part_kind::hermitian, "MUB and Num."};
    }
    if (name.rfind("c22d:", 0) == 0) {
        const int d = std::stoi(name.substr(5));
        if (d < 3) throw contract_error("catalog: c22d requires d >= 3");
        return {name, cglmp_translation(d), translation_settings(d), part_kind::hermitian, "Fourier"};
    }
    throw contract_error("catalog: unknown name " + name);
}

// Grouped rewriting of the two-qutrit inequality with duplicate monomials arranged in
// coefficient runs: (1)(ab) - w^2(ab + a'b + ab') + w(a'b + ab' + a'b') + 2(a'b').
inline BellPolynomial rewritten_c223() {
    const cx w = omega(3);
    BellPolynomial p{2, 2, 3, part_kind::hermitian};
    auto add = [&](cx c, int sa, int sb) { p.terms.push_back({c, {{sa, 1}, {sb, 1}}}); };
    add(1, 0, 0);
    add(-w * w, 0, 0);
    add(-w * w, 1, 0);
    add(-w * w, 0, 1);
    add(w, 1, 0);
    add(w, 0, 1);
    add(w, 1, 1);
    add(2, 1, 1);
    return p;
}

} // namespace bellforge
