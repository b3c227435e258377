#include <bellforge/bellforge.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace bf = bellforge;

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw bf::contract_error("cannot open output path " + out_path);
    f << text;
}

std::string witness_string(const bf::DeterministicStrategy& w) {
    std::string s;
    for (const auto& row : w) {
        s += "[";
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + std::to_string(row[i]);
        s += "]";
    }
    return s;
}

nlohmann::json witness_json(const bf::DeterministicStrategy& w) {
    return nlohmann::json(w);
}

int cmd_catalog(bool json, const std::string& out) {
    auto names = bf::catalog_names();
    if (json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& n : names) {
            if (n.find(":n") != std::string::npos || n.find(":d") != std::string::npos) {
                j.push_back({{"name", n}, {"parametric", true}});
                continue;
            }
            auto e = bf::catalog(n);
            j.push_back({{"name", n}, {"parties", e.polynomial.n}, {"settings", e.polynomial.s},
                         {"outcomes", e.polynomial.d},
                         {"part", e.polynomial.part == bf::part_kind::hermitian ? "H" : "A"},
                         {"terms", e.polynomial.terms.size()}, {"settings_label", e.settings_label}});
        }
        emit(j.dump(2), out);
        return 0;
    }
    std::string text;
    for (const auto& n : names) text += n + "\n";
    text += std::to_string(names.size()) + " registered inequalities\n";
    emit(text, out);
    return 0;
}

int cmd_classical(const std::string& ineq, long long guard, bool json, const std::string& out) {
    auto e = bf::catalog(ineq);
    auto rep = bf::classical_report(e.polynomial, guard);
    if (json) {
        nlohmann::json j = {{"name", ineq},
                            {"hmax", rep.hmax}, {"hmin", rep.hmin},
                            {"amax", rep.amax}, {"amin", rep.amin},
                            {"hmax_witness", witness_json(rep.hmax_witness)},
                            {"hmin_witness", witness_json(rep.hmin_witness)},
                            {"amax_witness", witness_json(rep.amax_witness)},
                            {"amin_witness", witness_json(rep.amin_witness)},
                            {"hmin_is_minus_two_max", rep.h_min_is_minus_two_max},
                            {"amin_is_minus_two_max", rep.a_min_is_minus_two_max},
                            {"h_sqrt3_ladder", rep.h_sqrt3_ladder},
                            {"a_sqrt3_ladder", rep.a_sqrt3_ladder},
                            {"strategies", rep.strategies}};
        emit(j.dump(2), out);
        return 0;
    }
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%s\nHmax %.9f  witness %s\nHmin %.9f\nAmax %.9f  witness %s\nAmin %.9f\n"
                  "strategies %lld\n",
                  ineq.c_str(), rep.hmax, witness_string(rep.hmax_witness).c_str(), rep.hmin,
                  rep.amax, witness_string(rep.amax_witness).c_str(), rep.amin, rep.strategies);
    emit(buf, out);
    return 0;
}

int cmd_quantum(const std::string& ineq, bool sweep, bool json, const std::string& out) {
    auto e = bf::catalog(ineq);
    auto rep = bf::bound_report(e);
    nlohmann::json j = bf::to_json_report(rep);
    std::string text;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s\nQM %.9f (method %s)\nbold LR %.9f (%s part)\nR %.9f\n",
                  ineq.c_str(), rep.quantum, rep.method.c_str(), rep.bold_bound,
                  rep.bold_part == bf::part_kind::hermitian ? "H" : "A", rep.ratio);
    text = buf;
    if (sweep && e.polynomial.d == 3) {
        auto sw = bf::gamma_sweep(e.polynomial, e.recommended, e.polynomial.n);
        std::snprintf(buf, sizeof(buf), "gamma* %.6f  sweep value %.9f\n", sw.gamma_star, sw.value);
        text += buf;
        j["gamma_star"] = sw.gamma_star;
        j["sweep_value"] = sw.value;
    }
    if (json) emit(j.dump(2), out);
    else emit(text, out);
    return 0;
}

int cmd_optimize(const std::string& ineq, int restarts, unsigned long long seed, int budget,
                 bool warm, bool json, const std::string& out) {
    auto e = bf::catalog(ineq);
    bf::optimize_config cfg;
    cfg.restarts = restarts;
    cfg.budget = budget;
    cfg.seed = seed;
    if (warm) {
        cfg.warm.assign(e.recommended.size(), {});
        for (std::size_t p = 0; p < e.recommended.size(); ++p)
            for (const auto& u : e.recommended[p])
                cfg.warm[p].push_back(bf::params_from_setting(u));
    }
    auto res = bf::optimize_settings(e.polynomial, e.polynomial.d, cfg);
    if (json) {
        nlohmann::json j = {{"name", ineq}, {"value", res.value}, {"converged", res.converged},
                            {"restarts", restarts}, {"seed", seed}, {"budget", budget}};
        emit(j.dump(2), out);
    } else {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s\noptimized value %.9f (%s)\n", ineq.c_str(), res.value,
                      res.converged ? "converged" : "non-converged");
        emit(buf, out);
    }
    return 0;
}

int cmd_prob(const std::string& expr_name, const std::string& state_spec, bool json,
             const std::string& out) {
    auto expr = bf::probability_catalog(expr_name);
    auto bases = bf::expression_bases(expr);
    bf::Vec psi = bf::named_state(state_spec);
    double value = bf::evaluate_expression(expr, psi, bases);
    if (json) {
        nlohmann::json j = {{"expr", expr_name}, {"state", state_spec},
                            {"value", value}, {"bound", expr.bound}};
        emit(j.dump(2), out);
    } else {
        char buf[192];
        std::snprintf(buf, sizeof(buf), "%s on %s: %.9f (classical bound %.6g)\n",
                      expr_name.c_str(), state_spec.c_str(), value, expr.bound);
        emit(buf, out);
    }
    return 0;
}

int cmd_reproduce(const std::string& table, const bf::run_config& cfg, bool json,
                  const std::string& out) {
    auto doc = bf::reproduce(table, cfg);
    if (json) emit(bf::to_json_document(doc).dump(2), out);
    else emit(bf::to_markdown(doc), out);
    return doc.pass ? 0 : 1;
}

int cmd_export(const std::string& table, const bf::run_config& cfg, const std::string& format,
               const std::string& out) {
    auto doc = bf::reproduce(table, cfg);
    std::string text;
    if (format == "csv") text = bf::to_csv(doc);
    else if (format == "json") text = bf::to_json_document(doc).dump(2);
    else if (format == "md") text = bf::to_markdown(doc);
    else throw bf::contract_error("export: unknown format " + format);
    emit(text, out);
    return doc.pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bellforge: Bell inequality bounds for qutrit systems"};
    app.require_subcommand(1);

    bool json = false;
    std::string out;
    app.add_flag("--json", json, "machine-readable output");
    app.add_option("--out", out, "write output to this path");

    auto* sc_catalog = app.add_subcommand("catalog", "list registered inequalities");

    std::string ineq;
    long long guard = bf::enumeration_guard_default;
    auto* sc_classical = app.add_subcommand("classical", "exact classical bounds by enumeration");
    sc_classical->add_option("--ineq", ineq, "inequality name")->required();
    sc_classical->add_option("--guard", guard, "strategy-count guard");

    bool sweep = false;
    auto* sc_quantum = app.add_subcommand("quantum", "quantum value at recommended settings");
    sc_quantum->add_option("--ineq", ineq, "inequality name")->required();
    sc_quantum->add_flag("--sweep", sweep, "also sweep the two-parameter state family");

    int restarts = 20, budget = 600;
    unsigned long long seed = 1;
    bool warm = false;
    auto* sc_optimize = app.add_subcommand("optimize", "derivative-free settings search");
    sc_optimize->add_option("--ineq", ineq, "inequality name")->required();
    sc_optimize->add_option("--restarts", restarts, "random restarts");
    sc_optimize->add_option("--seed", seed, "RNG seed");
    sc_optimize->add_option("--budget", budget, "iteration budget per restart");
    sc_optimize->add_flag("--warm", warm, "warm-start from the recommended settings");

    std::string expr_name, state_spec;
    auto* sc_prob = app.add_subcommand("prob", "evaluate a probability-language expression");
    sc_prob->add_option("--expr", expr_name, "expression name (cglmp:d, acin333)")->required();
    sc_prob->add_option("--state", state_spec, "state spec (ghz:n,d quasi:n,g ame43 bell+)")->required();

    std::string table;
    unsigned long long rseed = 7;
    int rbudget = 600;
    auto* sc_reproduce = app.add_subcommand("reproduce", "recompute a reference table");
    sc_reproduce->add_option("table", table, "table1|table2|table3|appendixC")->required();
    sc_reproduce->add_option("--seed", rseed, "RNG seed recorded in the document");
    sc_reproduce->add_option("--budget", rbudget, "optimizer budget recorded in the document");

    std::string format = "csv";
    auto* sc_export = app.add_subcommand("export", "write a reproduction document to disk");
    sc_export->add_option("table", table, "table1|table2|table3|appendixC")->required();
    sc_export->add_option("--format", format, "csv|json|md");
    sc_export->add_option("--seed", rseed, "RNG seed recorded in the document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    bf::run_config rcfg;
    rcfg.seed = rseed;
    rcfg.budget = rbudget;
    rcfg.restarts = restarts;

    try {
        if (sc_catalog->parsed()) return cmd_catalog(json, out);
        if (sc_classical->parsed()) return cmd_classical(ineq, guard, json, out);
        if (sc_quantum->parsed()) return cmd_quantum(ineq, sweep, json, out);
        if (sc_optimize->parsed()) return cmd_optimize(ineq, restarts, seed, budget, warm, json, out);
        if (sc_prob->parsed()) return cmd_prob(expr_name, state_spec, json, out);
        if (sc_reproduce->parsed()) return cmd_reproduce(table, rcfg, json, out);
        if (sc_export->parsed()) return cmd_export(table, rcfg, format, out);
    } catch (const bf::capacity_error& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return 3;
    } catch (const bf::contract_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
