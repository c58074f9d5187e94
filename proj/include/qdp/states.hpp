// Physical states: density operators, entropy, divergence with the support
// condition, and the derivative-limit cross-check for divergence.
#pragma once

#include <span>

#include "qdp/eigen.hpp"
#include "qdp/matrix.hpp"
#include "qdp/rng.hpp"
#include "qdp/tolerances.hpp"

namespace qdp {

// Positive semidefinite trace-one operator. Both invariants are validated at
// construction; the thrown message names the one that failed.
class DensityOperator {
public:
    explicit DensityOperator(ComplexMatrix m, double tol_psd = tol::psd,
                             double tol_trace = tol::trace);

    const ComplexMatrix& matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.rows(); }

private:
    ComplexMatrix matrix_;
};

// D(A||B), either a finite value in nats or infinite (support condition).
class DivergenceValue {
public:
    static DivergenceValue finite(double nats) { return DivergenceValue(true, nats); }
    static DivergenceValue infinite() { return DivergenceValue(false, 0.0); }

    bool is_finite() const { return finite_; }
    double nats() const;

private:
    DivergenceValue(bool finite, double nats) : finite_(finite), nats_(nats) {}
    bool finite_;
    double nats_;
};

// Projector onto the eigenspaces with eigenvalue > tol_supp.
ComplexMatrix support_projector(const DensityOperator& a, double tol_supp = tol::supp);

// -tr(a log a) in nats; eigenvalue-level 0·log 0 = 0.
double von_neumann_entropy(const DensityOperator& a);

// tr(a (log a - log b)) when supp a <= supp b, infinite otherwise. The support
// comparison is ||(1-P_b) a (1-P_b)||_op <= dim * tol_supp, with P_b the
// support projector of b; eigenvalues <= tol_supp are excluded from the logs.
DivergenceValue relative_entropy(const DensityOperator& a, const DensityOperator& b,
                                 double tol_supp = tol::supp);

// One-sided finite-difference estimate (g(1) - g(1-h))/h of the derivative of
// g(mu) = tr(a^mu b^(1-mu)) at mu = 1, which equals D(a||b) for invertible b.
// Throws SingularReference when b is not strictly positive.
double relative_entropy_via_limit(const DensityOperator& a, const DensityOperator& b, double h,
                                  double tol_supp = tol::supp);

// Richardson refinement 2*estimate(h/2) - estimate(h); error drops to O(h^2).
double relative_entropy_via_limit_richardson(const DensityOperator& a, const DensityOperator& b,
                                             double h, double tol_supp = tol::supp);

// G·G†/tr(G·G†) with G a dim x dim standard complex Gaussian matrix.
DensityOperator random_density(std::size_t dim, Rng& rng);

DensityOperator maximally_mixed(std::size_t dim);
DensityOperator pure_state(std::span<const Complex> amplitudes);
DensityOperator diagonal_state(std::span<const double> probabilities);

}  // namespace qdp
