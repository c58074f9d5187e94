#include "qdp/verify.hpp"

#include <algorithm>
#include <cmath>

#include "qdp/errors.hpp"
#include "qdp/json_io.hpp"
#include "qdp/sampling.hpp"

namespace qdp {

namespace {

constexpr double kJointMatchTol = tol::eig;  // two constructions of the same joint state

ComplexMatrix column_projector(const HermitianEigensystem& es, std::size_t k) {
    const std::size_t n = es.eigenvalues.size();
    ComplexMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            p(i, j) = es.eigenvectors(i, k) * std::conj(es.eigenvectors(j, k));
    return p;
}

std::size_t kraus_count_for(std::size_t dim_in, std::size_t dim_out, Rng& rng,
                            std::size_t extra_range = 3) {
    const std::size_t feasible = (dim_in + dim_out - 1) / dim_out;  // ceil(dim_in/dim_out)
    return feasible + rng.uniform_index(extra_range);
}

// Eigenvalue floor keeping the operator comfortably invertible.
ComplexMatrix floored_positive(const ComplexMatrix& m, double floor) {
    const HermitianEigensystem es = eigh(m);
    std::vector<double> values(es.eigenvalues.size());
    for (std::size_t k = 0; k < values.size(); ++k)
        values[k] = std::max(es.eigenvalues[k], floor);
    return apply_spectral(es, values);
}

double real_trace_checked(const ComplexMatrix& m, double& max_imag) {
    const Complex t = trace(m);
    max_imag = std::max(max_imag, std::abs(t.imag()));
    return t.real();
}

}  // namespace

JointState joint_state_with_basis(const DensityOperator& a, const KrausChannel& w,
                                  const HermitianEigensystem& basis) {
    if (w.dim_in() != a.dim()) {
        throw DimensionMismatchError("joint_state: channel dim_in " + std::to_string(w.dim_in()) +
                                     " != state dim " + std::to_string(a.dim()));
    }
    const std::size_t da = a.dim();
    const std::size_t db = w.dim_out();
    ComplexMatrix joint(da * db, da * db);
    for (std::size_t k = 0; k < da; ++k) {
        const double lambda = std::max(0.0, basis.eigenvalues[k]);
        if (lambda == 0.0) continue;
        const ComplexMatrix pk = column_projector(basis, k);
        joint = add(joint, scale(Complex(lambda, 0.0), kron(pk, w.apply(pk))));
    }
    JointState js{DensityOperator(symmetrize(joint)),
                  DensityOperator(symmetrize(partial_trace(joint, {da, db}, 1))),
                  DensityOperator(symmetrize(partial_trace(joint, {da, db}, 0))), basis};
    return js;
}

JointState joint_state(const DensityOperator& a, const KrausChannel& w) {
    return joint_state_with_basis(a, w, eigh(a.matrix()));
}

MutualInformation mutual_information(const DensityOperator& a, const KrausChannel& w,
                                     double tol_supp) {
    const JointState js = joint_state(a, w);
    const DensityOperator output(symmetrize(w.apply(a.matrix())));
    MutualInformation mi;
    mi.entropy_route =
        von_neumann_entropy(a) + von_neumann_entropy(output) - von_neumann_entropy(js.state);
    const DensityOperator product(
        symmetrize(kron(a.matrix(), output.matrix())));
    const DivergenceValue d = relative_entropy(js.state, product, tol_supp);
    mi.divergence_route = d.is_finite() ? d.nats() : std::numeric_limits<double>::infinity();
    return mi;
}

// ---------------------------------------------------------------------------
// Divergence monotonicity
// ---------------------------------------------------------------------------

namespace {

struct DivergenceTrialData {
    DensityOperator a1, a2;
    KrausChannel channel;
};

DivergenceTrialData divergence_trial_data(const std::vector<std::size_t>& dims,
                                          std::uint64_t seed, std::size_t index) {
    Rng rng = Rng::for_trial(seed, index);
    const std::size_t d_in = dims[rng.uniform_index(dims.size())];
    const std::size_t d_out = dims[rng.uniform_index(dims.size())];
    const std::size_t k = kraus_count_for(d_in, d_out, rng);
    DensityOperator a1 = random_density(d_in, rng);
    DensityOperator a2 = random_density(d_in, rng);
    KrausChannel ch = random_channel(d_in, d_out, k, rng);
    return {std::move(a1), std::move(a2), std::move(ch)};
}

}  // namespace

VerificationReport check_divergence_monotonicity(const std::vector<std::size_t>& dims,
                                                 std::size_t trials, std::uint64_t seed,
                                                 const SuiteOptions& opts) {
    if (dims.empty()) throw Error("check_divergence_monotonicity: dims must be nonempty");
    std::vector<double> slack(trials, 0.0);
    std::vector<std::uint8_t> infinite_pre(trials, 0);
    std::vector<std::uint8_t> anomaly(trials, 0);
    run_trials(trials, opts.mode, [&](std::size_t i) {
        const DivergenceTrialData t = divergence_trial_data(dims, seed, i);
        const DivergenceValue pre = relative_entropy(t.a1, t.a2, opts.tol_supp);
        if (!pre.is_finite()) {
            infinite_pre[i] = 1;  // vacuous pass
            return;
        }
        const DensityOperator b1(symmetrize(t.channel.apply(t.a1.matrix())));
        const DensityOperator b2(symmetrize(t.channel.apply(t.a2.matrix())));
        const DivergenceValue post = relative_entropy(b1, b2, opts.tol_supp);
        if (!post.is_finite()) {
            anomaly[i] = 1;  // finite divergence cannot become infinite under a channel
            slack[i] = -1.0;
            return;
        }
        slack[i] = pre.nats() - post.nats();
    });

    VerificationReport report;
    report.check_name = "divergence-monotonicity";
    report.trials = trials;
    report.seed = seed;
    std::size_t worst = trials;
    std::size_t infinite_count = 0;
    std::size_t anomalies = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        infinite_count += infinite_pre[i];
        anomalies += anomaly[i];
        if (slack[i] < -opts.tol_dpi || anomaly[i]) ++report.violations;
        if (slack[i] < 0.0 && -slack[i] > report.max_violation) {
            report.max_violation = -slack[i];
            worst = i;
        }
    }
    report.pass = report.violations == 0;
    report.config["dims"] = dims;
    report.config["tol_dpi"] = opts.tol_dpi;
    report.config["tol_supp"] = opts.tol_supp;
    report.config["infinite_divergence_trials"] = infinite_count;
    report.config["support_anomalies"] = anomalies;
    if (worst < trials) {
        const DivergenceTrialData t = divergence_trial_data(dims, seed, worst);
        report.worst_witness = nlohmann::ordered_json{{"trial", worst},
                                                      {"slack", slack[worst]},
                                                      {"a1", matrix_to_json(t.a1.matrix())},
                                                      {"a2", matrix_to_json(t.a2.matrix())},
                                                      {"channel", channel_to_json(t.channel)}};
    }
    return report;
}

// ---------------------------------------------------------------------------
// Uhlmann lemma
// ---------------------------------------------------------------------------

namespace {

struct UhlmannTrialData {
    KrausChannel channel;  // alpha_*: A2 -> A1; dual beta: A1 -> A2
    ComplexMatrix s2, t2;  // strictly positive on A2
    ComplexMatrix s1, t1;  // alpha_*(S2), alpha_*(T2), possibly PSD-inflated
    bool inflated = false;
    std::size_t resamples = 0;
};

constexpr double kPositivityFloor = 1e-6;

UhlmannTrialData uhlmann_trial_data(const std::vector<std::size_t>& dims, std::uint64_t seed,
                                    std::size_t index) {
    Rng rng = Rng::for_trial(seed, index);
    const std::size_t d1 = dims[rng.uniform_index(dims.size())];
    const std::size_t d2 = dims[rng.uniform_index(dims.size())];
    const std::size_t k_floor =
        std::max((d2 + d1 - 1) / d1, (d1 + d2 - 1) / d2);  // isometry + full-rank output
    std::size_t resamples = 0;
    for (;;) {
        const std::size_t k = k_floor + rng.uniform_index(2);
        KrausChannel ch = random_channel(d2, d1, k, rng);
        ComplexMatrix s2 = floored_positive(random_density(d2, rng).matrix(), kPositivityFloor);
        ComplexMatrix t2 = floored_positive(random_density(d2, rng).matrix(), kPositivityFloor);
        ComplexMatrix s1 = symmetrize(ch.apply(s2));
        ComplexMatrix t1 = symmetrize(ch.apply(t2));
        if (min_eigenvalue(t1) < kPositivityFloor) {
            ++resamples;  // T1 must stay invertible; resample the whole draw
            continue;
        }
        UhlmannTrialData data{std::move(ch), std::move(s2), std::move(t2),
                              std::move(s1),  std::move(t1), false, resamples};
        if (rng.uniform() < 0.5) {
            data.inflated = true;
            const double scale_s = 0.2 * rng.uniform();
            const double scale_t = 0.2 * rng.uniform();
            data.s1 = symmetrize(
                add(data.s1, scale(Complex(scale_s, 0.0), random_psd(d1, rng))));
            data.t1 = symmetrize(
                add(data.t1, scale(Complex(scale_t, 0.0), random_psd(d1, rng))));
        }
        return data;
    }
}

struct UhlmannTrialOutcome {
    double min_slack = 0.0;
    double max_edge_error = 0.0;
    double max_trace_imag = 0.0;
    std::uint8_t premise_anomaly = 0;
    std::uint8_t inflated = 0;
    std::size_t resamples = 0;
};

}  // namespace

VerificationReport check_uhlmann_lemma(const std::vector<std::size_t>& dims,
                                       std::size_t t_grid_size, std::size_t trials,
                                       std::size_t x_samples, std::uint64_t seed,
                                       const SuiteOptions& opts) {
    if (dims.empty()) throw Error("check_uhlmann_lemma: dims must be nonempty");
    if (t_grid_size < 2) throw Error("check_uhlmann_lemma: t grid needs at least 2 points");
    if (x_samples < 1) throw Error("check_uhlmann_lemma: need at least one x sample");

    std::vector<UhlmannTrialOutcome> outcomes(trials);
    run_trials(trials, opts.mode, [&](std::size_t i) {
        const UhlmannTrialData t = uhlmann_trial_data(dims, seed, i);
        Rng rng = Rng::for_trial(seed ^ 0x5fe1a3u, i);  // x draws, separate stream
        UhlmannTrialOutcome& out = outcomes[i];
        out.inflated = t.inflated ? 1 : 0;
        out.resamples = t.resamples;

        // Premise re-verification: alpha(S2) <= S1 and alpha(T2) <= T1.
        const double prem_s = min_eigenvalue(sub(t.s1, symmetrize(t.channel.apply(t.s2))));
        const double prem_t = min_eigenvalue(sub(t.t1, symmetrize(t.channel.apply(t.t2))));
        if (prem_s < -opts.tol_psd || prem_t < -opts.tol_psd) out.premise_anomaly = 1;

        const std::size_t d1 = t.channel.dim_out();
        std::vector<ComplexMatrix> xs;
        xs.push_back(identity(d1));
        for (std::size_t j = 1; j < x_samples; ++j)
            xs.push_back(random_complex_matrix(d1, d1, rng));
        std::vector<ComplexMatrix> beta_xs;
        beta_xs.reserve(xs.size());
        for (const ComplexMatrix& x : xs) beta_xs.push_back(t.channel.apply_dual(x));

        const HermitianEigensystem es1 = eigh(t.s1);
        const HermitianEigensystem es2 = eigh(t.s2);
        const HermitianEigensystem et1 = eigh(t.t1);
        const HermitianEigensystem et2 = eigh(t.t2);

        double min_slack = std::numeric_limits<double>::infinity();
        for (std::size_t g = 0; g < t_grid_size; ++g) {
            const double tt = static_cast<double>(g) / static_cast<double>(t_grid_size - 1);
            const ComplexMatrix s1t = hermitian_power(es1, tt);
            const ComplexMatrix s2t = hermitian_power(es2, tt);
            const ComplexMatrix t1t = hermitian_power(et1, 1.0 - tt);
            const ComplexMatrix t2t = hermitian_power(et2, 1.0 - tt);
            for (std::size_t j = 0; j < xs.size(); ++j) {
                const ComplexMatrix& x = xs[j];
                const ComplexMatrix& bx = beta_xs[j];
                const double lhs = real_trace_checked(
                    matmul(matmul(matmul(adjoint(bx), s2t), bx), t2t), out.max_trace_imag);
                const double rhs = real_trace_checked(
                    matmul(matmul(matmul(adjoint(x), s1t), x), t1t), out.max_trace_imag);
                const double slack = rhs - lhs;
                min_slack = std::min(min_slack, slack);
                if (!t.inflated && j == 0 && (g == 0 || g + 1 == t_grid_size)) {
                    out.max_edge_error = std::max(out.max_edge_error, std::abs(slack));
                }
            }
        }
        out.min_slack = min_slack;
    });

    VerificationReport report;
    report.check_name = "uhlmann-lemma";
    report.trials = trials;
    report.seed = seed;
    std::size_t worst = trials;
    double max_edge = 0.0;
    double max_imag = 0.0;
    std::size_t inflated_count = 0;
    std::size_t resamples = 0;
    std::size_t premise_anomalies = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        const UhlmannTrialOutcome& o = outcomes[i];
        inflated_count += o.inflated;
        resamples += o.resamples;
        premise_anomalies += o.premise_anomaly;
        max_edge = std::max(max_edge, o.max_edge_error);
        max_imag = std::max(max_imag, o.max_trace_imag);
        if (o.min_slack < -opts.tol_dpi || o.max_edge_error > opts.edge_tol ||
            o.premise_anomaly) {
            ++report.violations;
        }
        if (o.min_slack < 0.0 && -o.min_slack > report.max_violation) {
            report.max_violation = -o.min_slack;
            worst = i;
        }
    }
    report.pass = report.violations == 0;
    report.config["dims"] = dims;
    report.config["t_grid_size"] = t_grid_size;
    report.config["x_samples"] = x_samples;
    report.config["tol_dpi"] = opts.tol_dpi;
    report.config["edge_tol"] = opts.edge_tol;
    report.config["inflated_trials"] = inflated_count;
    report.config["singular_resamples"] = resamples;
    report.config["premise_anomalies"] = premise_anomalies;
    report.config["max_edge_error"] = max_edge;
    report.config["max_trace_imag"] = max_imag;
    if (worst < trials) {
        const UhlmannTrialData t = uhlmann_trial_data(dims, seed, worst);
        report.worst_witness =
            nlohmann::ordered_json{{"trial", worst},
                                   {"min_slack", outcomes[worst].min_slack},
                                   {"inflated", t.inflated},
                                   {"channel", channel_to_json(t.channel)},
                                   {"s2", matrix_to_json(t.s2)},
                                   {"t2", matrix_to_json(t.t2)}};
    }
    return report;
}

// ---------------------------------------------------------------------------
// Data processing and Holevo
// ---------------------------------------------------------------------------

namespace {

struct ProcessingTrialOutcome {
    double min_slack = 0.0;
    double max_route_error = 0.0;
    double joint_mismatch = 0.0;
    std::uint8_t route_violation = 0;
    std::uint8_t joint_violation = 0;
    std::uint8_t negative_mi = 0;
};

// Shared body: A on d1, W: d1 -> d2, processing D: d2 -> d3.
ProcessingTrialOutcome processing_trial(const DensityOperator& a, const KrausChannel& w,
                                        const KrausChannel& d, const SuiteOptions& opts) {
    ProcessingTrialOutcome out;
    const KrausChannel composed = compose(d, w);
    const MutualInformation mi_w = mutual_information(a, w, opts.tol_supp);
    const MutualInformation mi_dw = mutual_information(a, composed, opts.tol_supp);

    out.max_route_error = std::max(std::abs(mi_w.entropy_route - mi_w.divergence_route),
                                   std::abs(mi_dw.entropy_route - mi_dw.divergence_route));
    if (!(out.max_route_error <= opts.route_tol)) out.route_violation = 1;
    if (mi_w.entropy_route < -opts.tol_dpi || mi_dw.entropy_route < -opts.tol_dpi) {
        out.negative_mi = 1;
    }

    const double entropy_slack = mi_w.entropy_route - mi_dw.entropy_route;
    const double divergence_slack = mi_w.divergence_route - mi_dw.divergence_route;

    // Proof route: apply 1 ⊗ D to the joint state and to the marginal product.
    const JointState joint_w = joint_state(a, w);
    const JointState joint_dw = joint_state(a, composed);
    const KrausChannel extended = tensor_with_identity(d, a.dim());
    const ComplexMatrix processed_joint =
        symmetrize(extended.apply(joint_w.state.matrix()));
    out.joint_mismatch = max_abs_diff(processed_joint, joint_dw.state.matrix());
    if (!(out.joint_mismatch <= kJointMatchTol)) out.joint_violation = 1;
    const ComplexMatrix processed_product = symmetrize(extended.apply(
        kron(joint_w.marginal_a.matrix(), joint_w.marginal_b.matrix())));
    const DivergenceValue lhs = relative_entropy(DensityOperator(processed_joint),
                                                 DensityOperator(processed_product),
                                                 opts.tol_supp);
    const double proof_slack =
        lhs.is_finite() ? mi_w.divergence_route - lhs.nats()
                        : -std::numeric_limits<double>::infinity();

    out.min_slack = std::min({entropy_slack, divergence_slack, proof_slack});
    return out;
}

VerificationReport aggregate_processing(std::string name, std::size_t trials, std::uint64_t seed,
                                        const std::vector<ProcessingTrialOutcome>& outcomes,
                                        const SuiteOptions& opts) {
    VerificationReport report;
    report.check_name = std::move(name);
    report.trials = trials;
    report.seed = seed;
    double max_route = 0.0;
    double max_joint = 0.0;
    std::size_t route_violations = 0;
    std::size_t joint_violations = 0;
    std::size_t negative_mi = 0;
    std::size_t worst = trials;
    for (std::size_t i = 0; i < trials; ++i) {
        const ProcessingTrialOutcome& o = outcomes[i];
        max_route = std::max(max_route, o.max_route_error);
        max_joint = std::max(max_joint, o.joint_mismatch);
        route_violations += o.route_violation;
        joint_violations += o.joint_violation;
        negative_mi += o.negative_mi;
        if (o.min_slack < -opts.tol_dpi || o.route_violation || o.joint_violation ||
            o.negative_mi) {
            ++report.violations;
        }
        if (o.min_slack < 0.0 && -o.min_slack > report.max_violation) {
            report.max_violation = -o.min_slack;
            worst = i;
        }
    }
    report.pass = report.violations == 0;
    report.config["tol_dpi"] = opts.tol_dpi;
    report.config["route_tol"] = opts.route_tol;
    report.config["max_route_error"] = max_route;
    report.config["max_joint_mismatch"] = max_joint;
    report.config["route_violations"] = route_violations;
    report.config["joint_violations"] = joint_violations;
    report.config["negative_mutual_information"] = negative_mi;
    if (worst < trials) {
        report.worst_witness =
            nlohmann::ordered_json{{"trial", worst}, {"slack", -report.max_violation}};
    }
    return report;
}

}  // namespace

VerificationReport check_dpi(const std::array<std::size_t, 3>& dims, std::size_t trials,
                             std::uint64_t seed, const SuiteOptions& opts) {
    const std::size_t d1 = dims[0];
    const std::size_t d2 = dims[1];
    const std::size_t d3 = dims[2];
    std::vector<ProcessingTrialOutcome> outcomes(trials);
    run_trials(trials, opts.mode, [&](std::size_t i) {
        Rng rng = Rng::for_trial(seed, i);
        const DensityOperator a = random_density(d1, rng);
        const KrausChannel w = random_channel(d1, d2, kraus_count_for(d1, d2, rng), rng);
        const KrausChannel d = random_channel(d2, d3, kraus_count_for(d2, d3, rng), rng);
        outcomes[i] = processing_trial(a, w, d, opts);
    });
    VerificationReport report = aggregate_processing("dpi", trials, seed, outcomes, opts);
    report.config["dims"] = dims;
    return report;
}

VerificationReport check_holevo(const std::array<std::size_t, 2>& dims, std::size_t povm_count,
                                std::size_t trials, std::uint64_t seed,
                                const SuiteOptions& opts) {
    if (povm_count < 2) throw InvalidPovmError("check_holevo: need at least 2 POVM outcomes");
    const std::size_t d1 = dims[0];
    const std::size_t d2 = dims[1];
    std::vector<ProcessingTrialOutcome> outcomes(trials);
    run_trials(trials, opts.mode, [&](std::size_t i) {
        Rng rng = Rng::for_trial(seed, i);
        const DensityOperator a = random_density(d1, rng);
        const KrausChannel w = random_channel(d1, d2, kraus_count_for(d1, d2, rng), rng);
        // POVM: E_i = G^(-1/2) F_i G^(-1/2) with F_i random PSD, G = sum F_i.
        std::vector<ComplexMatrix> fs;
        ComplexMatrix g(d2, d2);
        for (std::size_t p = 0; p < povm_count; ++p) {
            fs.push_back(random_psd(d2, rng));
            g = add(g, fs.back());
        }
        const ComplexMatrix g_inv_sqrt = hermitian_power(eigh(symmetrize(g)), -0.5);
        std::vector<ComplexMatrix> povm;
        povm.reserve(povm_count);
        for (const ComplexMatrix& f : fs)
            povm.push_back(symmetrize(matmul(matmul(g_inv_sqrt, f), g_inv_sqrt)));
        const KrausChannel d = measurement_channel(povm);
        outcomes[i] = processing_trial(a, w, d, opts);
    });
    VerificationReport report = aggregate_processing("holevo", trials, seed, outcomes, opts);
    report.config["dims"] = dims;
    report.config["povm_count"] = povm_count;
    return report;
}

}  // namespace qdp
