// Physical maps in Kraus form with Choi and Stinespring views, composition,
// tensor extension, and the special constructors the inequality suites need.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qdp/matrix.hpp"
#include "qdp/report.hpp"
#include "qdp/rng.hpp"
#include "qdp/tolerances.hpp"
#include "qdp/trial_runner.hpp"

namespace qdp {

// Trace-preserving completely positive map given by a finite Kraus family of
// dim_out x dim_in operators. Trace preservation (sum K†K = 1 within tol_tp,
// Frobenius defect) is validated at construction; complete positivity is
// automatic in this form and cross-checked through the Choi matrix in tests.
class KrausChannel {
public:
    explicit KrausChannel(std::vector<ComplexMatrix> kraus_ops, double tol_tp = tol::tp);

    std::size_t dim_in() const { return dim_in_; }
    std::size_t dim_out() const { return dim_out_; }
    std::size_t kraus_count() const { return kraus_.size(); }
    const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

    // sum_i K_i a K_i†
    ComplexMatrix apply(const ComplexMatrix& a) const;

    // The dual map b -> sum_i K_i† b K_i (unital; satisfies the adjoint
    // identity tr(apply(a)·b) = tr(a·apply_dual(b))).
    ComplexMatrix apply_dual(const ComplexMatrix& b) const;

private:
    std::vector<ComplexMatrix> kraus_;
    std::size_t dim_in_;
    std::size_t dim_out_;
};

// Kraus family {D_j W_i}; applies as d after w.
KrausChannel compose(const KrausChannel& d, const KrausChannel& w);

// Kraus family {1_left ⊗ D_j}; acts as the identity on the first factor.
KrausChannel tensor_with_identity(const KrausChannel& d, std::size_t left_dim);

struct ChoiMatrix {
    ComplexMatrix matrix;  // side dim_out * dim_in, output factor outermost
    std::size_t dim_in = 0;
    std::size_t dim_out = 0;
};

// sum_ij apply(|i><j|) ⊗ |i><j|.
ChoiMatrix choi_matrix(const KrausChannel& ch);

bool is_completely_positive(const ChoiMatrix& c, double tol_psd = tol::psd);

// Kraus-family equality is Choi-matrix equality, never list equality.
bool channels_equal(const KrausChannel& a, const KrausChannel& b, double tolerance = 10 * tol::eig);

// Dilation of the unital dual map: V stacks the Kraus blocks so that
// V|v> = sum_i (K_i|v>) ⊗ |i>, V†V = 1, and V†(B ⊗ 1_env)V = apply_dual(B).
struct StinespringDilation {
    ComplexMatrix isometry;  // (dim_out * env_dim) x dim_in
    std::size_t dim_in = 0;
    std::size_t dim_out = 0;
    std::size_t env_dim = 0;

    ComplexMatrix representation(const ComplexMatrix& b) const;    // B ⊗ 1_env
    ComplexMatrix reconstruct_dual(const ComplexMatrix& b) const;  // V†(B ⊗ 1)V
};

StinespringDilation stinespring(const KrausChannel& ch);

// Randomized Schwarz-inequality check of the dual map:
// apply_dual(x†x) >= apply_dual(x)† apply_dual(x) for random x.
VerificationReport schwarz_check(const KrausChannel& ch, std::size_t trials, std::uint64_t seed,
                                 double tol_psd = tol::psd,
                                 ExecutionMode mode = default_execution_mode());

// A -> sum_i tr(E_i A)|i><i| into the diagonal algebra of dimension = number
// of POVM elements. Throws InvalidPOVM naming the failed condition.
KrausChannel measurement_channel(std::span<const ComplexMatrix> povm, double tol_psd = tol::psd,
                                 double tol_tp = tol::tp);

// Isometry-sliced Gaussian channel; trace preserving by construction.
// Requires dim_out * kraus_count >= dim_in.
KrausChannel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t kraus_count,
                            Rng& rng);

KrausChannel identity_channel(std::size_t dim);
KrausChannel completely_depolarizing(std::size_t dim_in, std::size_t dim_out);
// Embeds a classical noisy channel: column-stochastic matrix acting on the
// diagonal algebra, with decoherence of off-diagonal entries.
KrausChannel classical_channel(const ComplexMatrix& column_stochastic, double tol_tp = tol::tp);
KrausChannel unitary_channel(const ComplexMatrix& u, double tol_tp = tol::tp);

}  // namespace qdp
