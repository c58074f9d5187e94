// The inequality-verification engine: Uhlmann's lemma family, divergence
// monotonicity, the data-processing inequality, and the Holevo bound, each as
// a seeded randomized suite producing a VerificationReport. Suites
// parallelize over trials with per-trial derived seeds; aggregation is
// order-independent, so reports do not depend on the schedule.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qdp/channels.hpp"
#include "qdp/report.hpp"
#include "qdp/states.hpp"
#include "qdp/tolerances.hpp"
#include "qdp/trial_runner.hpp"

namespace qdp {

// Classical-quantum joint state sum_k lambda_k |a_k><a_k| ⊗ W(|a_k><a_k|)
// built from the eigenbasis of the input state (A factor outermost).
struct JointState {
    DensityOperator state;
    DensityOperator marginal_a;
    DensityOperator marginal_b;
    HermitianEigensystem basis;  // eigenbasis of the input used in construction
};

JointState joint_state(const DensityOperator& a, const KrausChannel& w);

// Same construction with a caller-provided eigenbasis of `a`; used to check
// that mutual information does not depend on the basis choice when the
// spectrum is degenerate.
JointState joint_state_with_basis(const DensityOperator& a, const KrausChannel& w,
                                  const HermitianEigensystem& basis);

// I(A;W) computed two ways that must agree: the entropy formula
// H(A) + H(B) - H(A,B) and the divergence formula D((A,B) || A ⊗ B).
struct MutualInformation {
    double entropy_route = 0.0;
    double divergence_route = 0.0;
};

MutualInformation mutual_information(const DensityOperator& a, const KrausChannel& w,
                                     double tol_supp = tol::supp);

struct SuiteOptions {
    double tol_dpi = tol::dpi;    // slack floor for the inequalities
    double tol_supp = tol::supp;  // support cutoff passed to divergences
    double tol_psd = tol::psd;    // premise re-verification slack
    double route_tol = 1e-8;      // entropy-route vs divergence-route agreement
    double edge_tol = 1e-9;       // t in {0,1} identities of the Uhlmann grid
    ExecutionMode mode = default_execution_mode();
};

// D(a(A1) || a(A2)) <= D(A1 || A2) over random channels and state pairs.
// Infinite D(A1||A2) passes vacuously and is counted in the config.
VerificationReport check_divergence_monotonicity(const std::vector<std::size_t>& dims,
                                                 std::size_t trials, std::uint64_t seed,
                                                 const SuiteOptions& opts = {});

// tr(b(x)† S2^t b(x) T2^(1-t)) <= tr(x† S1^t x T1^(1-t)) over a t-grid and
// random x, with premises built to hold exactly (S1 = a(S2), T1 = a(T2)) and
// optionally inflated by PSD additions. x = 1 covers the trace special case;
// t in {0,1} under the exact construction must reduce to equalities.
VerificationReport check_uhlmann_lemma(const std::vector<std::size_t>& dims,
                                       std::size_t t_grid_size, std::size_t trials,
                                       std::size_t x_samples, std::uint64_t seed,
                                       const SuiteOptions& opts = {});

// I(A; D∘W) <= I(A; W), with the proof route
// D((1⊗D)(A,B) || (1⊗D)(A⊗B)) <= D((A,B) || A⊗B) asserted alongside and
// (1⊗D)(A,B) checked against joint_state(A, D∘W).
VerificationReport check_dpi(const std::array<std::size_t, 3>& dims, std::size_t trials,
                             std::uint64_t seed, const SuiteOptions& opts = {});

// check_dpi specialized to measurement channels from random POVMs.
VerificationReport check_holevo(const std::array<std::size_t, 2>& dims, std::size_t povm_count,
                                std::size_t trials, std::uint64_t seed,
                                const SuiteOptions& opts = {});

}  // namespace qdp
