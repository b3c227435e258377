#pragma once

#include "catalog.hpp"
#include "probability.hpp"
#include "states.hpp"

#include <cstdio>

namespace bellforge {

inline constexpr const char* version_string = "0.1.0";

struct run_config {
    unsigned long long seed = 7;
    int budget = 600;
    int restarts = 20;
};

inline nlohmann::json environment_json(const run_config& cfg) {
    return {{"seed", cfg.seed},
            {"budget", cfg.budget},
            {"versions",
             {{"bellforge", version_string},
              {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                            "." + std::to_string(EIGEN_MINOR_VERSION)},
              {"compiler", __VERSION__}}}};
}

struct bound_report_t {
    std::string name;
    classical_summary classical;
    double quantum = 0;
    double bold_bound = 0;
    double ratio = 0;
    part_kind bold_part = part_kind::hermitian;
    std::string settings_label;
    std::string method; // eigen | optimized
    std::vector<reduction> purities;
    Vec optimal_state;
};

inline bound_report_t bound_report(const catalog_entry& e) {
    bound_report_t r;
    r.name = e.name;
    r.classical = classical_report(e.polynomial);
    auto q = quantum_value(e.polynomial, e.recommended);
    r.quantum = q.value;
    r.bold_part = e.bold_part;
    r.bold_bound = (e.bold_part == part_kind::hermitian) ? r.classical.hmax : r.classical.amax;
    r.ratio = r.quantum / r.bold_bound;
    r.settings_label = e.settings_label;
    r.method = "eigen";
    r.purities = reduction_purities(q.state, e.polynomial.n, e.polynomial.d);
    r.optimal_state = q.state;
    return r;
}

inline nlohmann::json state_json(const Vec& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
    return out;
}

inline nlohmann::json to_json_report(const bound_report_t& r) {
    nlohmann::json cl = {{"hmax", r.classical.hmax}, {"hmin", r.classical.hmin},
                         {"amax", r.classical.amax}, {"amin", r.classical.amin},
                         {"hmin_is_minus_two_max", r.classical.h_min_is_minus_two_max},
                         {"amin_is_minus_two_max", r.classical.a_min_is_minus_two_max},
                         {"h_sqrt3_ladder", r.classical.h_sqrt3_ladder},
                         {"a_sqrt3_ladder", r.classical.a_sqrt3_ladder}};
    nlohmann::json pur = nlohmann::json::array();
    for (const auto& p : r.purities) pur.push_back({{"parties", p.parties}, {"purity", p.purity}});
    return {{"name", r.name},
            {"classical", cl},
            {"quantum", r.quantum},
            {"bold_part", r.bold_part == part_kind::hermitian ? "H" : "A"},
            {"bold_bound", r.bold_bound},
            {"ratio", r.ratio},
            {"settings", r.settings_label},
            {"method", r.method},
            {"purity", pur},
            {"optimal_state", state_json(r.optimal_state)}};
}

struct repro_cell {
    std::string row;
    std::string col;
    double computed = 0;
    double expected = 0;
    double tolerance = 0;
    double deviation = 0;
    bool pass = false;
    std::string flag; // nonempty marks a documented known discrepancy
};

struct reproduction_document {
    std::string table;
    run_config cfg;
    std::vector<repro_cell> cells;
    std::vector<std::pair<std::string, std::string>> notes; // (label, text)
    bool pass = true;
};

namespace detail {

inline void push_cell(reproduction_document& doc, std::string row, std::string col,
                      double computed, double expected, double tol, std::string flag = "") {
    repro_cell c{std::move(row), std::move(col), computed, expected, tol,
                 std::abs(computed - expected), false, std::move(flag)};
    c.pass = c.deviation <= c.tolerance || !c.flag.empty();
    doc.pass = doc.pass && c.pass;
    doc.cells.push_back(std::move(c));
}

// Representative coefficient for "k primed settings" in a symmetric tensor; verifies the
// symmetry before trusting the representative.
inline cx prime_count_coefficient(const BellPolynomial& p, int count) {
    auto cmap = coefficient_map(p);
    std::optional<cx> common;
    for (const auto& [key, c] : cmap) {
        int primes = 0;
        for (const auto& f : key) primes += (f.setting == 1 && f.power == 1) ? 1 : 0;
        if (primes != count) continue;
        if (!common) common = c;
        else if (std::abs(c - *common) > tolerances::exact)
            throw contract_error("prime_count_coefficient: tensor not symmetric");
    }
    if (!common) return 0;
    return *common;
}

// Purity of the largest tracked reduction taken over the leading parties.
inline double leading_purity(const bound_report_t& rep) {
    int size_needed = 0;
    for (const auto& r : rep.purities)
        size_needed = std::max(size_needed, static_cast<int>(r.parties.size()));
    for (const auto& r : rep.purities) {
        if (static_cast<int>(r.parties.size()) != size_needed) continue;
        bool prefix = true;
        for (std::size_t k = 0; k < r.parties.size(); ++k)
            prefix = prefix && r.parties[k] == static_cast<int>(k);
        if (prefix) return r.purity;
    }
    return 0;
}

} // namespace detail

// Coefficient-schema check of the five symmetric qutrit families against the reference
// per-prime-count columns. The n=2 single-prime entry is a known sign discrepancy between
// the tabulated column and the expanded sum; the classical anti-hermitian maximum
// (sqrt(3) for the expanded sign) decides in favor of the expanded form, so that cell is
// flagged rather than failed.
inline reproduction_document reproduce_table1(const run_config& cfg) {
    reproduction_document doc{"table1", cfg, {}, {}, true};
    const cx w = omega(3);
    const std::vector<std::vector<cx>> tabulated = {
        {w, 1.0, w},
        {1.0, -w * w, w, 2.0},
        {2.0, 1.0, w, 1.0, 2.0},
        {w * w, -w * w, -w * w, -w * w, w * w, w * w},
        {-w, 1.0, -1.0, w, -1.0, 1.0, -w}};
    const std::vector<std::string> names = {"c223", "c333", "c423", "c523", "c623"};
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto entry = catalog(names[i]);
        for (std::size_t k = 0; k < tabulated[i].size(); ++k) {
            cx got = detail::prime_count_coefficient(entry.polynomial, static_cast<int>(k));
            const bool known_sign_cell = (i == 0 && k == 1);
            // complex cell: the stored pair is (|difference|, 0) so pass reads off deviation
            detail::push_cell(doc, "(" + std::to_string(k) + "')", names[i],
                              std::abs(got - tabulated[i][k]), 0.0, tolerances::exact,
                              known_sign_cell ? "sign follows the expanded sum; see notes" : "");
        }
    }
    // regression: which single-prime sign reproduces the reference classical bound sqrt(3)
    auto eq_sign = classical_report(catalog("c223").polynomial);
    auto flipped = classical_report(
        from_prime_counts(2, 3, {w, 1.0, w}, part_kind::antihermitian));
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "single-prime sign regression: expanded sign Amax=%.9f, tabulated sign Amax=%.9f, reference bound sqrt(3)=%.9f",
                  eq_sign.amax, flipped.amax, std::sqrt(3.0));
    doc.notes.emplace_back("n2-sign", buf);
    doc.pass = true;
    for (const auto& c : doc.cells) doc.pass = doc.pass && c.pass;
    return doc;
}

inline reproduction_document reproduce_table2(const run_config& cfg) {
    reproduction_document doc{"table2", cfg, {}, {}, true};
    const double s3 = std::sqrt(3.0);
    struct col {
        const char* name;
        double amax, amin, hmax, hmin, qm, ratio, purity;
        double qm_tol;
        const char* label;
    };
    const col cols[5] = {
        {"c223", s3, -2 * s3, 3, -3, 2.524, 1.457, 0.347, 1e-3, "MOS"},
        {"c333", 3 * s3, -3 * s3, 3, -6, 5.058, 1.686, 0.342, 1e-3, "MUB"},
        {"c423", 3 * s3, -6 * s3, 9, -9, 9.766, 1.879, 1.0 / 3.0, 1e-3, "MUB"},
        {"c523", 9 * s3, -9 * s3, 9, -18, 15.575, 1.731, 0.351, 1e-2, "Num."},
        {"c623", 9 * s3, -18 * s3, 27, -27, 32.817, 2.105, 0.334, 1e-2, "MOS"}};
    for (const auto& c : cols) {
        auto rep = bound_report(catalog(c.name));
        detail::push_cell(doc, "LR_A_max", c.name, rep.classical.amax, c.amax, tolerances::exact);
        detail::push_cell(doc, "LR_A_min", c.name, rep.classical.amin, c.amin, tolerances::exact);
        detail::push_cell(doc, "LR_H_max", c.name, rep.classical.hmax, c.hmax, tolerances::exact);
        detail::push_cell(doc, "LR_H_min", c.name, rep.classical.hmin, c.hmin, tolerances::exact);
        detail::push_cell(doc, "QM", c.name, rep.quantum, c.qm, c.qm_tol);
        detail::push_cell(doc, "R", c.name, rep.ratio, c.ratio, 1e-3);
        detail::push_cell(doc, "P", c.name, detail::leading_purity(rep), c.purity, 0.01);
        detail::push_cell(doc, "Settings", c.name, rep.settings_label == c.label ? 1.0 : 0.0, 1.0, 0.0);
    }
    return doc;
}

inline reproduction_document reproduce_table3(const run_config& cfg) {
    reproduction_document doc{"table3", cfg, {}, {}, true};
    const double s3 = std::sqrt(3.0);
    struct col {
        const char* name;
        double amax, amin, hmax, hmin, qm, ratio;
        double qm_tol;
        const char* label;
    };
    const col cols[3] = {
        {"c233", 3 * s3, -3 * s3, 4.5, -4.5, 5.117, 1.137, 1e-3, "MUB"},
        {"c433ghz", 9 * s3, -9 * s3, 13.5, -27, 26.025, 1.928, 1e-2, "Num."},
        {"c433ame", 9 * s3, -9 * s3, 13.5, -27, 25.372, 1.879, 1e-2, "MUB and Num."}};
    for (const auto& c : cols) {
        auto rep = bound_report(catalog(c.name));
        detail::push_cell(doc, "LR_A_max", c.name, rep.classical.amax, c.amax, tolerances::exact);
        detail::push_cell(doc, "LR_A_min", c.name, rep.classical.amin, c.amin, tolerances::exact);
        detail::push_cell(doc, "LR_H_max", c.name, rep.classical.hmax, c.hmax, tolerances::exact);
        detail::push_cell(doc, "LR_H_min", c.name, rep.classical.hmin, c.hmin, tolerances::exact);
        detail::push_cell(doc, "QM", c.name, rep.quantum, c.qm, c.qm_tol);
        detail::push_cell(doc, "R", c.name, rep.ratio, c.ratio, 1e-3);
        detail::push_cell(doc, "P", c.name, detail::leading_purity(rep), 1.0 / 3.0, 0.01);
        detail::push_cell(doc, "Settings", c.name, rep.settings_label == c.label ? 1.0 : 0.0, 1.0, 0.0);
    }
    return doc;
}

// d-outcome family page: classical ceiling 2 for d = 3,4,5; the d = 3 quantum value
// matches the two-party hermitian-settings figure; the violation ratio grows with d at
// the fixed Fourier-phase settings.
inline reproduction_document reproduce_appendixC(const run_config& cfg) {
    reproduction_document doc{"appendixC", cfg, {}, {}, true};
    double prev_ratio = 0;
    for (int d = 3; d <= 5; ++d) {
        auto entry = catalog("c22d:" + std::to_string(d));
        auto cls = classical_report(entry.polynomial);
        detail::push_cell(doc, "LR_H_max", "d=" + std::to_string(d), cls.hmax, 2.0, tolerances::exact);
        auto q = quantum_value(entry.polynomial, entry.recommended);
        if (d == 3)
            detail::push_cell(doc, "QM", "d=3", q.value, 2.9149, 1e-3);
        const double ratio = q.value / cls.hmax;
        if (d > 3)
            detail::push_cell(doc, "R_increases", "d=" + std::to_string(d),
                              ratio > prev_ratio ? 1.0 : 0.0, 1.0, 0.0);
        prev_ratio = ratio;
    }
    return doc;
}

inline reproduction_document reproduce(const std::string& table, const run_config& cfg) {
    if (table == "table1") return reproduce_table1(cfg);
    if (table == "table2") return reproduce_table2(cfg);
    if (table == "table3") return reproduce_table3(cfg);
    if (table == "appendixC") return reproduce_appendixC(cfg);
    throw contract_error("reproduce: unknown table " + table);
}

inline nlohmann::json to_json_document(const reproduction_document& doc) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : doc.cells) {
        nlohmann::json j = {{"row", c.row},       {"col", c.col},
                            {"computed", c.computed}, {"expected", c.expected},
                            {"tolerance", c.tolerance}, {"deviation", c.deviation},
                            {"pass", c.pass}};
        if (!c.flag.empty()) j["flag"] = c.flag;
        cells.push_back(std::move(j));
    }
    nlohmann::json notes = nlohmann::json::object();
    for (const auto& [k, v] : doc.notes) notes[k] = v;
    return {{"table", doc.table}, {"environment", environment_json(doc.cfg)},
            {"cells", cells}, {"notes", notes}, {"pass", doc.pass}};
}

namespace detail {

inline std::string sig6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace detail

inline std::string to_csv(const reproduction_document& doc) {
    std::string out = "table,row,col,computed,expected,deviation,tolerance,pass,flag\n";
    for (const auto& c : doc.cells) {
        out += doc.table + "," + c.row + "," + c.col + "," + detail::sig6(c.computed) + "," +
               detail::sig6(c.expected) + "," + detail::sig6(c.deviation) + "," +
               detail::sig6(c.tolerance) + "," + (c.pass ? "true" : "false") + "," + c.flag + "\n";
    }
    return out;
}

inline std::string to_markdown(const reproduction_document& doc) {
    std::string out = "# Reproduction: " + doc.table + "\n\n";
    out += "| row | col | computed | expected | deviation | pass |\n";
    out += "| --- | --- | --- | --- | --- | --- |\n";
    for (const auto& c : doc.cells) {
        out += "| " + c.row + " | " + c.col + " | " + detail::sig6(c.computed) + " | " +
               detail::sig6(c.expected) + " | " + detail::sig6(c.deviation) + " | " +
               (c.pass ? (c.flag.empty() ? "yes" : "flagged") : "NO") + " |\n";
    }
    for (const auto& [k, v] : doc.notes) out += "\n- " + k + ": " + v + "\n";
    out += "\nresult: " + std::string(doc.pass ? "pass" : "fail") + "\n";
    return out;
}

} // namespace bellforge
