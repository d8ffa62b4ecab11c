#include "qsk/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsk/canonical.hpp"
#include "qsk/cyclotomic.hpp"
#include "qsk/io.hpp"
#include "qsk/randomness.hpp"
#include "qsk/satwap.hpp"
#include "qsk/selftest.hpp"
#include "qsk/sos.hpp"

#ifndef QSK_VERSION_STRING
#define QSK_VERSION_STRING "0.0.0"
#endif

namespace qsk::cli {

using nlohmann::json;

VerifySelection VerifySelection::all() {
    VerifySelection s;
    s.bounds = s.sos = s.traces = s.blocks = s.cglmp = s.cyclotomic = s.randomness = s.extract = true;
    return s;
}

namespace {

json checks_to_json(const CheckList& list) {
    json out = json::array();
    for (const auto& c : list.checks()) {
        out.push_back({{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    }
    return out;
}

json log_to_json(const std::vector<StageLog>& log) {
    json out = json::array();
    for (const auto& s : log) {
        out.push_back({{"stage", s.stage}, {"ok", s.ok}, {"detail", s.detail}});
    }
    return out;
}

std::string format_fixed(double v, int digits = 6) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

std::string format_sci(double v) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(2) << v;
    return s.str();
}

void add_sos_checks(CheckList& checks, const Realization& r, double scale) {
    const SosResidual bob = sos_residual_bob(r);
    const SosResidual alice = sos_residual_alice(r);
    checks.add("sos: Bob-side operator identity", bob.operator_identity, 1e-8 * scale);
    checks.add("sos: Bob-side stabilizers", bob.max_stabilizer(), 1e-9 * scale);
    checks.add("sos: Alice-side operator identity", alice.operator_identity, 1e-8 * scale);
    checks.add("sos: Alice-side stabilizers", alice.max_stabilizer(), 1e-9 * scale);
    checks.append(check_c_relations(c_operators(r.B[0], r.B[1], r.d), 1e-9 * scale), "sos: ");
    checks.append(check_c_relations(cbar_operators(r.A[0], r.A[1], r.d), 1e-9 * scale), "sos: bar ");
}

void add_trace_checks(CheckList& checks, const Realization& r, double scale) {
    const int d = r.d;
    for (std::size_t y = 0; y < 2; ++y) {
        const TraceReport tr = check_trace_conditions(r.B[y], d, 1e-8 * scale);
        double worst = 0.0;
        for (const auto& [n, v] : tr.entries) {
            worst = std::max(worst, v);
        }
        std::string name = "traces: Tr(B" + std::to_string(y + 1) + "^n) = 0, proper divisors n";
        if (tr.witness) {
            name += " (fails at n=" + std::to_string(*tr.witness) + ")";
        }
        checks.add(name, worst, 1e-8 * scale);
    }
    checks.add("traces: B1^k B2^-k = w^-k B2^k B1^-k", check_commutation_relation(r.B[0], r.B[1], d), 1e-8 * scale);
    checks.append(check_intermediate_identities(r.B[0], r.B[1], d, 3, 1e-8 * scale), "traces: ");
}

void add_block_checks(CheckList& checks, const Realization& r, double scale) {
    const int d = r.d;
    checks.append(check_root_identities(d, 1e-8 * scale), "blocks: ");
    try {
        const ComplexMatrix u = extract_bob(r.B[0], r.B[1], d, 1e-7 * d * scale);
        const ComplexMatrix b2 = u * r.B[1] * u.adjoint();
        checks.append(check_fij_structure(b2, d, b2.rows() / d, 1e-9 * d * scale), "blocks: ");
    } catch (const ExtractionError& e) {
        checks.add_flag(std::string("blocks: Lemma-3 unitary (") + e.what() + ")", false);
    }
}

void add_cglmp_checks(CheckList& checks, int d, double scale) {
    checks.append(check_cglmp_relations(d, 1e-8 * scale), "cglmp: ");
    checks.append(check_alice_relations(d, 1e-8 * scale), "cglmp: ");
    checks.add("cglmp: CGLMP and canonical correlations agree",
               born_probabilities(cglmp_realization(d)).max_abs_difference(born_probabilities(ideal_realization(d))),
               1e-8 * scale);
}

void add_cyclotomic_checks(CheckList& checks, int d) {
    checks.add_flag("cyclotomic: prod Phi_{d/n} = 1 + x + ... + x^{d-1}", check_product_identity(d));
    const EqualCoefficientVerdict accept = lemma2_conclude(Rational(3) * geometric_polynomial(d), d);
    checks.add_flag("cyclotomic: equal coefficients accepted", accept.equal_coefficients && accept.constant == 3);
    const EqualCoefficientVerdict reject = lemma2_conclude(RationalPolynomial::from_integers({1, 2}), d);
    checks.add_flag("cyclotomic: unequal coefficients rejected", !reject.equal_coefficients);
}

}  // namespace

json verify_report(const Realization& r, const VerifySelection& selection, double tol_scale,
                   const std::string& source) {
    r.validate();
    const int d = r.d;
    json report;
    report["tool"] = "qsk";
    report["version"] = QSK_VERSION_STRING;
    report["source"] = source;
    report["d"] = d;
    report["dims"] = json::array({r.dim_a(), r.dim_b()});
    report["tol_scale"] = tol_scale;

    CheckList checks;
    const BellFunctional f = satwap_functional(d);
    const double value = satwap_value(r);
    report["bell_value"] = value;
    report["bounds"] = {{"classical", classical_bound(d)}, {"quantum", quantum_bound(d)}};

    if (selection.bounds) {
        checks.add("bounds: SATWAP value = 2(d-1)", std::abs(value - quantum_bound(d)), 1e-9 * tol_scale);
        checks.add("bounds: Bell operator Hermitian", [&] {
            const ComplexMatrix b = bell_operator(f, r);
            return frobenius_distance(b, b.adjoint());
        }(), 1e-9 * tol_scale);
        if (d <= kDefaultEnumerationCap) {
            const LocalBound lb = local_bound_bruteforce(probability_form(f));
            report["bounds"]["classical_bruteforce"] = lb.value;
            checks.add("bounds: brute-force local bound = closed form", std::abs(lb.value - classical_bound(d)),
                       1e-9 * tol_scale);
        }
        checks.add_flag("bounds: classical < quantum", classical_bound(d) < quantum_bound(d));
    }
    if (selection.sos) {
        add_sos_checks(checks, r, tol_scale);
    }
    if (selection.traces) {
        add_trace_checks(checks, r, tol_scale);
    }
    if (selection.blocks) {
        add_block_checks(checks, r, tol_scale);
    }
    if (selection.cglmp) {
        add_cglmp_checks(checks, d, tol_scale);
    }
    if (selection.cyclotomic) {
        add_cyclotomic_checks(checks, d);
    }

    ExtractionOptions options;
    options.tol_scale = tol_scale;
    if (selection.extract) {
        json ex;
        try {
            const ExtractionResult res = extract(r, options);
            ex["success"] = res.success();
            ex["fidelity"] = res.fidelity;
            ex["aux_dims"] = json::array({res.aux_a, res.aux_b});
            ex["log"] = log_to_json(res.log);
            checks.append(res.residuals, "extract: ");
        } catch (const ExtractionError& e) {
            ex["success"] = false;
            ex["failed_stage"] = e.stage();
            ex["error"] = e.what();
            ex["log"] = log_to_json(e.log());
            checks.add_flag("extract: stage " + e.stage(), false);
        }
        report["extraction"] = ex;
    }
    if (selection.randomness) {
        json rnd;
        try {
            for (int y = 0; y < 2; ++y) {
                const GuessingProbability g = ideal_guessing_probability(r, Side::B, y, options);
                double worst = 0.0;
                for (const double p : g.distribution) {
                    worst = std::max(worst, std::abs(p - 1.0 / d));
                }
                checks.add("randomness: Bob setting " + std::to_string(y + 1) + " outcomes uniform", worst,
                           1e-9 * tol_scale);
                rnd["guessing_probability"].push_back(g.value);
                rnd["distribution"].push_back(g.distribution);
            }
            rnd["certified_bits"] = certified_bits(d);
        } catch (const std::domain_error& e) {
            rnd["error"] = e.what();
            checks.add_flag("randomness: ideal point reached", false);
        }
        report["randomness"] = rnd;
    }

    report["checks"] = checks_to_json(checks);
    report["pass"] = checks.all_pass();
    return report;
}

namespace {

struct Common {
    std::string format = "table";
    double tol_scale = 1.0;
};

void add_common(CLI::App* cmd, Common& common) {
    cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"table", "json"}));
    cmd->add_option("--tol-scale", common.tol_scale, "Multiply every tolerance by this factor")
        ->check(CLI::PositiveNumber);
}

Realization load_or_build(int d, const std::string& file, std::string& source,
                          std::map<std::string, std::string>* metadata = nullptr) {
    if (!file.empty()) {
        source = file;
        RealizationFile f = read_realization(file);
        if (metadata != nullptr) {
            *metadata = f.metadata;
        }
        return f.realization;
    }
    if (d < 2) {
        throw InputError("either --d (>= 2) or --file is required");
    }
    source = "canonical d=" + std::to_string(d);
    return ideal_realization(d);
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        write_text(path, text);
    }
}

int cmd_bounds(std::ostream& out, int d_min, int d_max, int cap, const Common& common) {
    if (d_min < 2 || d_max < d_min) {
        throw InputError("bounds: need 2 <= --d-min <= --d-max");
    }
    json rows = json::array();
    bool ok = true;
    if (common.format == "table") {
        out << std::left << std::setw(4) << "d" << std::right << std::setw(14) << "beta_C" << std::setw(18)
            << "beta_C(enum)" << std::setw(8) << "beta_Q" << std::setw(12) << "ratio" << "\n";
    }
    for (int d = d_min; d <= d_max; ++d) {
        const double bc = classical_bound(d);
        const double bq = quantum_bound(d);
        json row = {{"d", d}, {"classical", bc}, {"quantum", bq}, {"ratio", bq / bc}};
        std::string enumerated = "n/a (d > cap)";
        if (d <= cap) {
            const double lb = local_bound_bruteforce(probability_form(satwap_functional(d)), cap).value;
            row["classical_bruteforce"] = lb;
            enumerated = format_fixed(lb);
            ok = ok && std::abs(lb - bc) <= 1e-9 * common.tol_scale;
        } else {
            row["classical_bruteforce"] = nullptr;
        }
        rows.push_back(row);
        if (common.format == "table") {
            out << std::left << std::setw(4) << d << std::right << std::setw(14) << format_fixed(bc) << std::setw(18)
                << enumerated << std::setw(8) << format_fixed(bq, 0) << std::setw(12) << format_fixed(bq / bc)
                << "\n";
        }
    }
    if (common.format == "json") {
        out << dump_canonical({{"tool", "qsk"}, {"version", QSK_VERSION_STRING}, {"rows", rows}, {"pass", ok}});
    }
    return ok ? kExitPass : kExitCheckFailure;
}

int cmd_verify(std::ostream& out, int d, const std::string& file, VerifySelection selection, const Common& common) {
    std::string source;
    std::map<std::string, std::string> metadata;
    const Realization r = load_or_build(d, file, source, &metadata);
    try {
        r.validate();
    } catch (const std::exception& e) {
        throw InputError(std::string("invalid realization: ") + e.what());
    }
    if (!selection.any()) {
        selection = VerifySelection::all();
    }
    json report = verify_report(r, selection, common.tol_scale, source);
    if (!metadata.empty()) {
        report["input_metadata"] = metadata;
    }
    if (common.format == "json") {
        out << dump_canonical(report);
    } else {
        out << "source      " << source << "\n";
        out << "d           " << r.d << "  dims " << r.dim_a() << " x " << r.dim_b() << "\n";
        out << "bell value  " << std::setprecision(12) << report["bell_value"].get<double>() << "  (beta_Q "
            << quantum_bound(r.d) << ", beta_C " << classical_bound(r.d) << ")\n";
        for (const auto& c : report["checks"]) {
            out << (c["pass"].get<bool>() ? "PASS  " : "FAIL  ") << std::left << std::setw(56)
                << c["name"].get<std::string>() << std::right << "  " << format_sci(c["residual"].get<double>())
                << " <= " << format_sci(c["tolerance"].get<double>()) << "\n";
        }
        if (report.contains("extraction")) {
            const json& ex = report["extraction"];
            if (ex.contains("fidelity")) {
                out << "fidelity    " << std::setprecision(15) << ex["fidelity"].get<double>() << "\n";
            }
            if (ex.contains("error")) {
                out << "extraction  " << ex["error"].get<std::string>() << "\n";
            }
        }
        out << (report["pass"].get<bool>() ? "overall PASS" : "overall FAIL") << "\n";
    }
    return report["pass"].get<bool>() ? kExitPass : kExitCheckFailure;
}

int cmd_simulate(std::ostream& out, int d, const std::string& file, std::uint64_t shots, std::uint64_t seed,
                 const std::string& out_path, const Common& common) {
    if (shots < 1) {
        throw InputError("simulate: --shots must be at least 1");
    }
    std::string source;
    const Realization r = load_or_build(d, file, source);
    const SampledStatistics stats = sample_statistics(r, shots, seed);
    const ProbabilityFunctional t = probability_form(satwap_functional(r.d));
    const Scenario s = stats.frequencies.scenario();

    // Plug-in variance of sum_{ab} t p_hat(a,b|x,y) per setting, summed.
    double estimate = 0.0;
    double variance = 0.0;
    for (int x = 0; x < s.m; ++x) {
        for (int y = 0; y < s.m; ++y) {
            double mean = 0.0;
            double second = 0.0;
            for (int a = 0; a < s.d; ++a) {
                for (int b = 0; b < s.d; ++b) {
                    const double p = stats.frequencies(x, y, a, b);
                    mean += t(x, y, a, b) * p;
                    second += t(x, y, a, b) * t(x, y, a, b) * p;
                }
            }
            estimate += mean;
            const auto n = stats.setting_counts[static_cast<std::size_t>(x * s.m + y)];
            if (n > 0) {
                variance += (second - mean * mean) / static_cast<double>(n);
            }
        }
    }
    const double se = std::sqrt(std::max(variance, 0.0));
    json report = {{"tool", "qsk"},
                   {"version", QSK_VERSION_STRING},
                   {"source", source},
                   {"d", r.d},
                   {"shots", shots},
                   {"seed", seed},
                   {"estimate", estimate},
                   {"standard_error", se},
                   {"quantum_bound", quantum_bound(r.d)},
                   {"classical_bound", classical_bound(r.d)}};
    if (!out_path.empty()) {
        json tensor = to_json(stats.frequencies);
        tensor["shots"] = shots;
        tensor["seed"] = seed;
        tensor["setting_counts"] = stats.setting_counts;
        write_text(out_path, dump_canonical(tensor));
        report["tensor_file"] = out_path;
    }
    if (common.format == "json") {
        out << dump_canonical(report);
    } else {
        out << "source          " << source << "\n";
        out << "shots           " << shots << "  seed " << seed << "\n";
        out << "estimate        " << std::setprecision(10) << estimate << "\n";
        out << "standard error  " << std::setprecision(4) << se << "\n";
        out << "beta_Q          " << quantum_bound(r.d) << "  beta_C " << std::setprecision(10)
            << classical_bound(r.d) << "\n";
    }
    return kExitPass;
}

int cmd_cyclotomic(std::ostream& out, int d, const Common& common) {
    if (d < 2) {
        throw InputError("cyclotomic: --d must be at least 2");
    }
    json polys = json::array();
    std::vector<int> divisors = proper_divisors(d);
    divisors.push_back(d);
    for (const int m : divisors) {
        const RationalPolynomial phi = cyclotomic_poly(m);
        json coeffs = json::array();
        for (const auto& c : phi.coefficients()) {
            coeffs.push_back(c.str());
        }
        polys.push_back({{"n", m}, {"coefficients", coeffs}, {"text", phi.to_string()}});
    }
    const bool product = check_product_identity(d);
    const RationalPolynomial equal = Rational(3) * geometric_polynomial(d);
    const RationalPolynomial unequal = RationalPolynomial::from_integers({1, 2});
    const EqualCoefficientVerdict va = lemma2_conclude(equal, d);
    const EqualCoefficientVerdict vr = lemma2_conclude(unequal, d);
    const bool ok = product && va.equal_coefficients && !vr.equal_coefficients;

    auto verdict_json = [](const RationalPolynomial& w, const EqualCoefficientVerdict& v) {
        json j = {{"w", w.to_string()}, {"equal_coefficients", v.equal_coefficients}};
        if (v.constant) {
            j["constant"] = v.constant->str();
        }
        if (v.failing_index) {
            j["failing_cyclotomic"] = *v.failing_index;
            j["remainder"] = v.remainder.to_string();
        }
        return j;
    };
    if (common.format == "json") {
        out << dump_canonical({{"tool", "qsk"},
                               {"version", QSK_VERSION_STRING},
                               {"d", d},
                               {"proper_divisors", proper_divisors(d)},
                               {"cyclotomic", polys},
                               {"product_identity", product},
                               {"equal_coefficient_demo", json::array({verdict_json(equal, va), verdict_json(unequal, vr)})},
                               {"pass", ok}});
    } else {
        for (const auto& p : polys) {
            out << "Phi_" << p["n"].get<int>() << "(x) = " << p["text"].get<std::string>() << "\n";
        }
        out << "prod_{n | d, n < d} Phi_{d/n} = 1 + x + ... + x^" << d - 1 << ": " << (product ? "true" : "false")
            << "\n";
        for (const auto& [w, v] : {std::pair{equal, va}, std::pair{unequal, vr}}) {
            out << "w = " << w.to_string() << ": ";
            if (v.equal_coefficients) {
                out << "equal coefficients, lambda = " << v.constant->str() << "\n";
            } else {
                out << "rejected, remainder " << v.remainder.to_string() << " modulo Phi_" << *v.failing_index
                    << "\n";
            }
        }
    }
    return ok ? kExitPass : kExitCheckFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verification toolkit for the SATWAP Bell functional and its self-test", "qsk"};
    app.set_version_flag("--version", QSK_VERSION_STRING);
    app.require_subcommand(1);

    Common common;

    int b_min = 2;
    int b_max = 8;
    int b_cap = kDefaultEnumerationCap;
    CLI::App* bounds = app.add_subcommand("bounds", "Classical and quantum bounds per d");
    bounds->add_option("--d-min", b_min, "Smallest d");
    bounds->add_option("--d-max", b_max, "Largest d");
    bounds->add_option("--cap", b_cap, "Largest d for brute-force enumeration");
    add_common(bounds, common);

    int v_d = 0;
    std::string v_file;
    VerifySelection sel;
    bool v_all = false;
    CLI::App* verify = app.add_subcommand("verify", "Run identity checks and the extraction on a realization");
    auto* v_d_opt = verify->add_option("--d", v_d, "Use the canonical realization of this d");
    verify->add_option("--file", v_file, "Realization JSON file")->excludes(v_d_opt);
    verify->add_flag("--all", v_all, "Every check group (default when none is selected)");
    verify->add_flag("--bounds", sel.bounds, "Bell value and bounds");
    verify->add_flag("--sos", sel.sos, "Sum-of-squares identities");
    verify->add_flag("--traces", sel.traces, "Trace and commutation identities");
    verify->add_flag("--blocks", sel.blocks, "Block structure of B2 after alignment");
    verify->add_flag("--cglmp", sel.cglmp, "CGLMP relations and W unitaries");
    verify->add_flag("--cyclotomic", sel.cyclotomic, "Exact cyclotomic checks for d");
    verify->add_flag("--randomness", sel.randomness, "Guessing probability at the extracted point");
    verify->add_flag("--extract", sel.extract, "Self-testing extraction");
    add_common(verify, common);

    int s_d = 0;
    std::string s_file;
    std::uint64_t s_shots = 100000;
    std::uint64_t s_seed = 1;
    std::string s_out;
    CLI::App* simulate = app.add_subcommand("simulate", "Finite-shot estimate of the SATWAP value");
    auto* s_d_opt = simulate->add_option("--d", s_d, "Canonical realization of this d");
    simulate->add_option("--file", s_file, "Realization JSON file")->excludes(s_d_opt);
    simulate->add_option("--shots", s_shots, "Number of rounds");
    simulate->add_option("--seed", s_seed, "Random seed");
    simulate->add_option("--out", s_out, "Write the empirical tensor to this file");
    add_common(simulate, common);

    int c_d = 12;
    CLI::App* cyclo = app.add_subcommand("cyclotomic", "Exact cyclotomic polynomials for the divisors of d");
    cyclo->add_option("--d", c_d, "d")->required();
    add_common(cyclo, common);

    int sc_d = 0;
    std::string sc_file;
    Eigen::Index sc_aux_a = 2;
    Eigen::Index sc_aux_b = 2;
    std::uint64_t sc_seed = 1;
    std::string sc_out;
    CLI::App* scr = app.add_subcommand("scramble", "Embed with aux systems and apply random local unitaries");
    auto* sc_d_opt = scr->add_option("--d", sc_d, "Canonical realization of this d");
    scr->add_option("--file", sc_file, "Realization JSON file")->excludes(sc_d_opt);
    scr->add_option("--aux-a", sc_aux_a, "Alice aux dimension")->check(CLI::PositiveNumber);
    scr->add_option("--aux-b", sc_aux_b, "Bob aux dimension")->check(CLI::PositiveNumber);
    scr->add_option("--seed", sc_seed, "Random seed");
    scr->add_option("--out", sc_out, "Output file (stdout if omitted)");

    int r_d = 3;
    std::string r_kind = "canonical";
    std::string r_out;
    CLI::App* real = app.add_subcommand("realization", "Write a reference realization as JSON");
    real->add_option("--d", r_d, "d")->required();
    real->add_option("--kind", r_kind, "Which realization")->check(CLI::IsMember({"canonical", "cglmp"}));
    real->add_option("--out", r_out, "Output file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitInputError;
    }

    try {
        if (*bounds) {
            return cmd_bounds(out, b_min, b_max, b_cap, common);
        }
        if (*verify) {
            return cmd_verify(out, v_d, v_file, v_all ? VerifySelection::all() : sel, common);
        }
        if (*simulate) {
            return cmd_simulate(out, s_d, s_file, s_shots, s_seed, s_out, common);
        }
        if (*cyclo) {
            return cmd_cyclotomic(out, c_d, common);
        }
        if (*scr) {
            std::string source;
            const Realization r = load_or_build(sc_d, sc_file, source);
            RealizationFile f{scramble(r, sc_aux_a, sc_aux_b, sc_seed), {}};
            f.metadata["source"] = source;
            f.metadata["aux_dims"] = std::to_string(sc_aux_a) + "x" + std::to_string(sc_aux_b);
            f.metadata["seed"] = std::to_string(sc_seed);
            emit(out, sc_out, dump_canonical(to_json(f)));
            return kExitPass;
        }
        if (*real) {
            RealizationFile f{r_kind == "cglmp" ? cglmp_realization(r_d) : ideal_realization(r_d), {}};
            f.metadata["kind"] = r_kind;
            emit(out, r_out, dump_canonical(to_json(f)));
            return kExitPass;
        }
    } catch (const InputError& e) {
        err << "qsk: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        err << "qsk: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ObservableError& e) {
        err << "qsk: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "qsk: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitInputError;
}

}  // namespace qsk::cli
