// Randomized certification of operator monotonicity, operator concavity, and
// Jensen's operator inequality.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "qdp/eigen.hpp"
#include "qdp/matrix.hpp"
#include "qdp/tolerances.hpp"
#include "qdp/trial_runner.hpp"

namespace qdp {

struct MonotonicityVerdict {
    std::string function_label;
    std::size_t order = 0;  // matrix dimension
    std::size_t trials = 0;
    std::size_t violations = 0;  // trials with slack < -tol_psd
    double max_violation = 0.0;  // |most negative slack|, 0 if none
    // Worst pair: (B, C) for monotonicity, (x, a) for concavity. Jensen
    // families are reproducible from (seed, trial index) instead.
    std::optional<std::pair<ComplexMatrix, ComplexMatrix>> witness;
};

using MatrixPair = std::pair<ComplexMatrix, ComplexMatrix>;

// Per trial: sample Hermitian B with spectrum in dom(f), PSD P scaled to keep
// B+P inside, C = B+P; record min-eig(f(C) - f(B)). Pairs in `injected` are
// evaluated ahead of the random trials and counted the same way.
MonotonicityVerdict monotonicity_test(const RealFunction& f, std::size_t dim, std::size_t trials,
                                      std::uint64_t seed, double tol_psd = tol::psd,
                                      std::span<const MatrixPair> injected = {},
                                      ExecutionMode mode = default_execution_mode());

// Per trial: sample PSD x and a contraction a (rectangular shapes included);
// record min-eig(f(a†xa) - a† f(x) a). Requires f >= 0 on [0, inf).
MonotonicityVerdict concavity_test(const RealFunction& f, std::size_t dim, std::size_t trials,
                                   std::uint64_t seed, double tol_psd = tol::psd,
                                   ExecutionMode mode = default_execution_mode());

// Per trial: sample k PSD x_i and k maps a_i with sum a_i†a_i <= 1; record
// min-eig(f(sum a_i†x_i a_i) - sum a_i† f(x_i) a_i).
MonotonicityVerdict jensen_test(const RealFunction& f, std::size_t dim, std::size_t k_terms,
                                std::size_t trials, std::uint64_t seed,
                                double tol_psd = tol::psd,
                                ExecutionMode mode = default_execution_mode());

// Ordering facts for one explicit pair: min-eig(C - B) and min-eig(f(C) - f(B)).
struct OrderingReport {
    double min_eig_diff = 0.0;    // of C - B
    double min_eig_fdiff = 0.0;   // of f(C) - f(B)
    bool premise_holds = false;   // B <= C within tol_psd
    bool conclusion_holds = false;
};
OrderingReport ordering_report(const RealFunction& f, const ComplexMatrix& b,
                               const ComplexMatrix& c, double tol_psd = tol::psd);

}  // namespace qdp
