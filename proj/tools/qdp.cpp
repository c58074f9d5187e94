// qdp — verification CLI: runs the randomized inequality suites, evaluates
// Pick functions, and reproduces the squaring counterexample.
//
// Exit codes: 0 pass, 1 violation found, 2 usage or input error.
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdp/channels.hpp"
#include "qdp/errors.hpp"
#include "qdp/json_io.hpp"
#include "qdp/monotone.hpp"
#include "qdp/pick.hpp"
#include "qdp/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using qdp::Complex;

constexpr const char* kVersion = "1.0.0";
constexpr double kLn2 = 0.6931471805599453;

struct CommonOpts {
    std::uint64_t seed = 0;
    std::string output;  // empty = stdout
    std::string units = "nats";
    double tol_dpi = qdp::tol::dpi;
    double tol_supp = qdp::tol::supp;
    double tol_psd = qdp::tol::psd;
    bool serial = false;
    int threads = 0;
};

std::uint64_t seed_from_env() {
    const char* env = std::getenv("QDP_SEED");
    if (!env) return 0;
    try {
        return std::stoull(env);
    } catch (...) {
        throw qdp::Error(std::string("QDP_SEED is not an unsigned integer: ") + env);
    }
}

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "suite seed (default: QDP_SEED env var, else 0)");
    cmd->add_option("--output", c.output, "write the report here instead of stdout");
    cmd->add_option("--units", c.units, "nats|bits for entropic quantities (default nats)")
        ->check(CLI::IsMember({"nats", "bits"}));
    cmd->add_option("--tol-dpi", c.tol_dpi, "slack floor for the inequality suites");
    cmd->add_option("--tol-supp", c.tol_supp, "support cutoff for divergences");
    cmd->add_option("--tol-psd", c.tol_psd, "positivity slack");
    cmd->add_flag("--serial", c.serial, "run trials on the serial reference path");
    cmd->add_option("--threads", c.threads, "OpenMP thread cap (0 = library default)");
}

qdp::SuiteOptions suite_options(const CommonOpts& c) {
    qdp::SuiteOptions o;
    o.tol_dpi = c.tol_dpi;
    o.tol_supp = c.tol_supp;
    o.tol_psd = c.tol_psd;
    o.mode = c.serial ? qdp::ExecutionMode::serial : qdp::default_execution_mode();
#ifdef _OPENMP
    if (c.threads > 0) omp_set_num_threads(c.threads);
#endif
    return o;
}

// --units bits divides the entropic quantities by log 2; slacks that are
// eigenvalue or trace gaps are left alone. Never affects pass/fail.
void convert_units(qdp::VerificationReport& r, bool entropic, const CommonOpts& c) {
    r.config["units"] = c.units;
    if (c.units != "bits" || !entropic) return;
    r.max_violation /= kLn2;
    for (const char* key : {"max_route_error"}) {
        if (r.config.contains(key)) r.config[key] = r.config[key].get<double>() / kLn2;
    }
    if (r.worst_witness && r.worst_witness->contains("slack")) {
        (*r.worst_witness)["slack"] = (*r.worst_witness)["slack"].get<double>() / kLn2;
    }
}

int emit(const nlohmann::ordered_json& j, const CommonOpts& c, bool pass) {
    const std::string text = qdp::dump_json_17(j) + "\n";
    if (c.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(c.output, std::ios::binary);
        if (!out) throw qdp::Error("cannot open output file: " + c.output);
        out << text;
    }
    return pass ? 0 : 1;
}

int emit_report(qdp::VerificationReport r, bool entropic, const CommonOpts& c) {
    convert_units(r, entropic, c);
    return emit(qdp::report_to_json(r), c, r.pass);
}

qdp::RealFunction parse_function(const std::string& name) {
    if (name == "neg_inv") return qdp::fn_neg_inverse();
    if (name == "log") return qdp::fn_log();
    if (name.rfind("pow:", 0) == 0) {
        try {
            return qdp::fn_power(std::stod(name.substr(4)));
        } catch (const std::exception&) {
            throw qdp::Error("bad exponent in --function " + name);
        }
    }
    if (name.rfind("affine:", 0) == 0) {
        const std::string rest = name.substr(7);
        const std::size_t comma = rest.find(',');
        if (comma == std::string::npos) {
            throw qdp::Error("--function affine needs affine:<slope>,<offset>");
        }
        try {
            return qdp::fn_affine(std::stod(rest.substr(0, comma)),
                                  std::stod(rest.substr(comma + 1)));
        } catch (const std::exception&) {
            throw qdp::Error("bad parameters in --function " + name);
        }
    }
    throw qdp::Error("unknown --function \"" + name +
                     "\" (built-ins: pow:<mu>, neg_inv, affine:<slope>,<offset>, log; anything "
                     "else needs a Pick spec file via --spec)");
}

// Complex literal grammar: a+bi | a-bi | a | bi | i (signs and decimal or
// scientific notation allowed in both parts).
Complex parse_complex(const std::string& text) {
    const auto bad = [&]() -> Complex {
        throw qdp::Error("cannot parse complex number \"" + text +
                         "\" (expected forms: a, bi, a+bi, a-bi)");
    };
    if (text.empty()) return bad();
    const auto to_double = [&](const std::string& s) -> double {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            bad();
        }
        if (used != s.size()) bad();
        return v;
    };
    // Split at the last '+'/'-' that is not a leading sign or an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < text.size(); ++i) {
        if ((text[i] == '+' || text[i] == '-') && text[i - 1] != 'e' && text[i - 1] != 'E') {
            split = i;
        }
    }
    if (text.back() == 'i') {
        const std::string imag_part = text.substr(split == std::string::npos ? 0 : split);
        const std::string real_part = split == std::string::npos ? "" : text.substr(0, split);
        const double im = to_double(imag_part.substr(0, imag_part.size() - 1));
        const double re = real_part.empty() ? 0.0 : to_double(real_part);
        return {re, im};
    }
    return {to_double(text), 0.0};
}

qdp::PickFunctionSpec load_pick_spec(const std::string& name) {
    if (name == "sqrt") return qdp::sqrt_pick_spec();
    std::ifstream in(name);
    if (!in) throw qdp::Error("cannot open Pick spec file: " + name);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw qdp::Error("bad JSON in " + name + ": " + e.what());
    }
    return qdp::pick_spec_from_json(j);
}

qdp::VerificationReport verdict_to_report(const std::string& check,
                                          const qdp::MonotonicityVerdict& v, std::uint64_t seed,
                                          double tol_psd) {
    qdp::VerificationReport r;
    r.check_name = check;
    r.trials = v.trials;
    r.violations = v.violations;
    r.max_violation = v.max_violation;
    r.seed = seed;
    r.pass = v.violations == 0;
    r.config["function"] = v.function_label;
    r.config["dim"] = v.order;
    r.config["tol_psd"] = tol_psd;
    if (v.witness) {
        r.worst_witness = nlohmann::ordered_json{
            {"first", qdp::matrix_to_json(v.witness->first)},
            {"second", qdp::matrix_to_json(v.witness->second)}};
    }
    return r;
}

void print_matrix(const char* name, const qdp::ComplexMatrix& m) {
    std::printf("%s =\n", name);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::printf("  [");
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Complex v = m(i, j);
            if (v.imag() == 0.0) {
                std::printf("%s%g", j ? ", " : "", v.real());
            } else {
                std::printf("%s%g%+gi", j ? ", " : "", v.real(), v.imag());
            }
        }
        std::printf("]\n");
    }
}

int run_demo_counterexample() {
    using qdp::ComplexMatrix;
    const ComplexMatrix b = ComplexMatrix::from_rows({{3.0, 1.0}, {1.0, 3.0}});
    const ComplexMatrix c = ComplexMatrix::from_rows({{3.1, 0.0}, {0.0, 3.1}});
    const qdp::RealFunction square = qdp::fn_power(2.0);
    const ComplexMatrix b2 = qdp::matrix_function(square, b);
    const ComplexMatrix c2 = qdp::matrix_function(square, c);
    const qdp::OrderingReport ord = qdp::ordering_report(square, b, c);

    std::printf("Squaring is not operator monotone. The printed pair:\n\n");
    print_matrix("B", b);
    print_matrix("C", c);
    std::printf("\nSquares:\n\n");
    print_matrix("B^2", b2);
    print_matrix("C^2", c2);
    std::printf("\nRecomputed ordering facts:\n");
    std::printf("  min eig(C - B)     = %.10g  -> B <= C %s\n", ord.min_eig_diff,
                ord.premise_holds ? "holds" : "does NOT hold as printed");
    std::printf("  min eig(C^2 - B^2) = %.10g  -> B^2 <= C^2 %s\n", ord.min_eig_fdiff,
                ord.conclusion_holds ? "holds" : "fails: the squares are not ordered");
    return 0;
}

int run_info() {
    std::printf("qdp %s — finite-dimensional quantum information verification toolkit\n\n",
                kVersion);
    std::printf("subcommands:\n");
    std::printf("  verify-divergence   D(a(A1)||a(A2)) <= D(A1||A2) over random channels\n");
    std::printf("  verify-uhlmann      trace inequality of the monotonicity lemma on a t-grid\n");
    std::printf("  verify-dpi          I(A; D.W) <= I(A; W) plus the divergence proof route\n");
    std::printf("  verify-holevo       data processing specialized to random POVM measurements\n");
    std::printf("  verify-monotone     operator monotonicity of a scalar function\n");
    std::printf("  verify-concave      operator concavity f(a'xa) >= a'f(x)a for contractions\n");
    std::printf("  verify-jensen       operator Jensen inequality for k-term families\n");
    std::printf("  demo-counterexample squaring violates operator monotonicity\n");
    std::printf("  eval-pick           evaluate a Pick function from its representation data\n\n");
    std::printf("default tolerances:\n");
    std::printf("  tol_eig   %g   (eigensolver off-diagonal target)\n", qdp::tol::eig);
    std::printf("  tol_herm  %g   (Hermitian symmetry defect)\n", qdp::tol::herm);
    std::printf("  tol_psd   %g    (positivity slack)\n", qdp::tol::psd);
    std::printf("  tol_dom   %g   (domain boundary clamp)\n", qdp::tol::dom);
    std::printf("  tol_trace %g   (unit trace defect)\n", qdp::tol::trace);
    std::printf("  tol_supp  %g    (support cutoff)\n", qdp::tol::supp);
    std::printf("  tol_tp    %g   (trace preservation defect)\n", qdp::tol::tp);
    std::printf("  tol_dpi   %g    (inequality slack floor)\n", qdp::tol::dpi);
    std::printf("  quad_tol  %g    (quadrature error target)\n", qdp::tol::quad);
    std::printf("\nbuilt-in functions: pow:<mu>, neg_inv, affine:<slope>,<offset>, log\n");
    std::printf("built-in Pick specs: sqrt\n");
    std::printf("complex literals: a, bi, a+bi, a-bi (e.g. 4, i, 2+3i, -1.5e-3-2i)\n");
#ifdef _OPENMP
    std::printf("OpenMP: enabled, max %d threads\n", omp_get_max_threads());
#else
    std::printf("OpenMP: not compiled in (serial reference path only)\n");
#endif
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qdp — numerical verification of quantum data processing inequalities"};
    app.require_subcommand(1);

    std::uint64_t env_seed = 0;
    try {
        env_seed = seed_from_env();
    } catch (const std::exception& e) {
        std::cerr << "qdp: " << e.what() << "\n";
        return 2;
    }

    // verify-divergence
    CommonOpts div_c;
    div_c.seed = env_seed;
    std::vector<std::size_t> div_dims = {2, 3, 4};
    std::size_t div_trials = 1000;
    auto* cmd_div = app.add_subcommand("verify-divergence",
                                       "divergence monotonicity under random channels");
    cmd_div->add_option("--dims", div_dims, "candidate dimensions")->delimiter(',');
    cmd_div->add_option("--trials", div_trials, "number of random trials");
    add_common(cmd_div, div_c);

    // verify-uhlmann
    CommonOpts uhl_c;
    uhl_c.seed = env_seed;
    std::vector<std::size_t> uhl_dims = {2, 3};
    std::size_t uhl_trials = 300, uhl_grid = 11, uhl_x = 5;
    auto* cmd_uhl = app.add_subcommand("verify-uhlmann", "monotonicity-lemma trace inequality");
    cmd_uhl->add_option("--dims", uhl_dims, "candidate dimensions")->delimiter(',');
    cmd_uhl->add_option("--trials", uhl_trials, "number of random trials");
    cmd_uhl->add_option("--t-grid", uhl_grid, "points on the [0,1] exponent grid");
    cmd_uhl->add_option("--x-per-trial", uhl_x, "x samples per trial (first is the identity)");
    add_common(cmd_uhl, uhl_c);

    // verify-dpi
    CommonOpts dpi_c;
    dpi_c.seed = env_seed;
    std::vector<std::size_t> dpi_dims = {3, 3, 2};
    std::size_t dpi_trials = 500;
    auto* cmd_dpi = app.add_subcommand("verify-dpi", "quantum data processing inequality");
    cmd_dpi->add_option("--dims", dpi_dims, "d1,d2,d3 for A, W output, D output")
        ->delimiter(',')
        ->expected(1, 3);
    cmd_dpi->add_option("--trials", dpi_trials, "number of random trials");
    add_common(cmd_dpi, dpi_c);

    // verify-holevo
    CommonOpts hol_c;
    hol_c.seed = env_seed;
    std::vector<std::size_t> hol_dims = {3, 3};
    std::size_t hol_trials = 300, hol_povm = 3;
    auto* cmd_hol = app.add_subcommand("verify-holevo", "Holevo bound via random measurements");
    cmd_hol->add_option("--dims", hol_dims, "d1,d2 for A and the channel output")
        ->delimiter(',')
        ->expected(1, 2);
    cmd_hol->add_option("--povm-count", hol_povm, "POVM outcomes (>= 2)");
    cmd_hol->add_option("--trials", hol_trials, "number of random trials");
    add_common(cmd_hol, hol_c);

    // verify-monotone / verify-concave / verify-jensen
    struct FnCmd {
        CommonOpts common;
        std::string function;
        std::string spec_file;
        std::size_t dim = 2;
        std::size_t trials = 500;
        std::size_t k_terms = 3;
    };
    FnCmd mono, conc, jens;
    mono.common.seed = conc.common.seed = jens.common.seed = env_seed;
    auto add_fn_cmd = [&](const char* name, const char* desc, FnCmd& fc, bool with_k) {
        auto* cmd = app.add_subcommand(name, desc);
        cmd->add_option("--function", fc.function,
                        "built-in function (pow:<mu>, neg_inv, affine:<s>,<o>, log)");
        cmd->add_option("--spec", fc.spec_file,
                        "Pick spec JSON file (or 'sqrt'); used on its excluded interval");
        cmd->add_option("--dim", fc.dim, "matrix dimension");
        cmd->add_option("--trials", fc.trials, "number of random trials");
        if (with_k) cmd->add_option("--k", fc.k_terms, "terms in the Jensen family");
        add_common(cmd, fc.common);
        return cmd;
    };
    auto* cmd_mono =
        add_fn_cmd("verify-monotone", "operator monotonicity of a scalar function", mono, false);
    auto* cmd_conc =
        add_fn_cmd("verify-concave", "operator concavity under contractions", conc, false);
    auto* cmd_jens = add_fn_cmd("verify-jensen", "operator Jensen inequality", jens, true);

    // demo-counterexample, eval-pick, info
    auto* cmd_demo = app.add_subcommand("demo-counterexample",
                                        "print the squaring counterexample matrices and facts");
    CommonOpts pick_c;
    std::string pick_spec_name = "sqrt";
    std::string pick_z;
    double quad_tol = qdp::tol::quad;
    auto* cmd_pick = app.add_subcommand("eval-pick", "evaluate a Pick function at a point");
    cmd_pick->add_option("--spec", pick_spec_name, "'sqrt' or a Pick spec JSON file");
    cmd_pick->add_option("--z", pick_z, "evaluation point, e.g. 4, i, 2+3i")->required();
    cmd_pick->add_option("--quad-tol", quad_tol, "quadrature error target");
    cmd_pick->add_option("--output", pick_c.output, "write the result here instead of stdout");
    auto* cmd_info = app.add_subcommand("info", "print version, tolerances, and formats");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "qdp: " << e.what() << "\n";
        return 2;
    }

    try {
        if (cmd_div->parsed()) {
            return emit_report(qdp::check_divergence_monotonicity(div_dims, div_trials,
                                                                  div_c.seed,
                                                                  suite_options(div_c)),
                               true, div_c);
        }
        if (cmd_uhl->parsed()) {
            return emit_report(qdp::check_uhlmann_lemma(uhl_dims, uhl_grid, uhl_trials, uhl_x,
                                                        uhl_c.seed, suite_options(uhl_c)),
                               false, uhl_c);
        }
        if (cmd_dpi->parsed()) {
            if (dpi_dims.size() != 3) throw qdp::Error("verify-dpi needs --dims d1,d2,d3");
            return emit_report(qdp::check_dpi({dpi_dims[0], dpi_dims[1], dpi_dims[2]},
                                              dpi_trials, dpi_c.seed, suite_options(dpi_c)),
                               true, dpi_c);
        }
        if (cmd_hol->parsed()) {
            if (hol_dims.size() != 2) throw qdp::Error("verify-holevo needs --dims d1,d2");
            return emit_report(qdp::check_holevo({hol_dims[0], hol_dims[1]}, hol_povm,
                                                 hol_trials, hol_c.seed, suite_options(hol_c)),
                               true, hol_c);
        }
        auto resolve_function = [](const FnCmd& fc) -> qdp::RealFunction {
            if (!fc.spec_file.empty()) {
                return qdp::pick_real_function(load_pick_spec(fc.spec_file),
                                               fc.spec_file == "sqrt" ? "sqrt" : fc.spec_file);
            }
            if (fc.function.empty()) {
                throw qdp::Error("one of --function or --spec is required");
            }
            return parse_function(fc.function);
        };
        if (cmd_mono->parsed()) {
            const qdp::SuiteOptions o = suite_options(mono.common);
            const auto v = qdp::monotonicity_test(resolve_function(mono), mono.dim, mono.trials,
                                                  mono.common.seed, mono.common.tol_psd, {},
                                                  o.mode);
            return emit_report(verdict_to_report("monotone", v, mono.common.seed,
                                                 mono.common.tol_psd),
                               false, mono.common);
        }
        if (cmd_conc->parsed()) {
            const qdp::SuiteOptions o = suite_options(conc.common);
            const auto v = qdp::concavity_test(resolve_function(conc), conc.dim, conc.trials,
                                               conc.common.seed, conc.common.tol_psd, o.mode);
            return emit_report(verdict_to_report("concave", v, conc.common.seed,
                                                 conc.common.tol_psd),
                               false, conc.common);
        }
        if (cmd_jens->parsed()) {
            const qdp::SuiteOptions o = suite_options(jens.common);
            const auto v = qdp::jensen_test(resolve_function(jens), jens.dim, jens.k_terms,
                                            jens.trials, jens.common.seed, jens.common.tol_psd,
                                            o.mode);
            return emit_report(verdict_to_report("jensen", v, jens.common.seed,
                                                 jens.common.tol_psd),
                               false, jens.common);
        }
        if (cmd_demo->parsed()) return run_demo_counterexample();
        if (cmd_pick->parsed()) {
            const qdp::PickFunctionSpec spec = load_pick_spec(pick_spec_name);
            const Complex z = parse_complex(pick_z);
            const Complex value = qdp::evaluate_pick(spec, z, quad_tol);
            nlohmann::ordered_json j;
            j["z"] = nlohmann::ordered_json::array({z.real(), z.imag()});
            j["value"] = nlohmann::ordered_json::array({value.real(), value.imag()});
            return emit(j, pick_c, true);
        }
        if (cmd_info->parsed()) return run_info();
    } catch (const std::exception& e) {
        std::cerr << "qdp: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "qdp: no subcommand\n";
    return 2;
}
