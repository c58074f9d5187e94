// Hermitian eigendecomposition (cyclic complex Jacobi) and the spectral
// functional calculus built on it.
#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qdp/matrix.hpp"
#include "qdp/tolerances.hpp"

namespace qdp {

struct HermitianEigensystem {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

// Diagonalizes a Hermitian matrix by cyclic Jacobi rotations. The input must
// be Hermitian within tol_herm (it is symmetrized before iterating); the
// sweep loop stops once the off-diagonal Frobenius mass falls below
// tol_eig * max(1, ||a||_F), and throws NoConvergence after max_sweeps.
HermitianEigensystem eigh(const ComplexMatrix& a, double tol_eig = tol::eig,
                          double tol_herm = tol::herm, std::size_t max_sweeps = 100);

// U diag(values) U† for precomputed eigensystems.
ComplexMatrix apply_spectral(const HermitianEigensystem& es, const std::vector<double>& values);

// min eigenvalue of a Hermitian matrix (symmetry checked as in eigh).
double min_eigenvalue(const ComplexMatrix& a, double tol_herm = tol::herm);

// true iff min eigenvalue >= -tol_psd. Defines the operator order:
// a <= b  <=>  is_psd(b - a).
bool is_psd(const ComplexMatrix& a, double tol_psd = tol::psd, double tol_herm = tol::herm);

// Largest singular value, computed as sqrt(max eigenvalue of a†a).
double operator_norm(const ComplexMatrix& a);

// A scalar function together with its domain interval. Closedness of an
// endpoint controls whether boundary eigenvalues may be clamped onto it.
struct RealFunction {
    std::string label;
    std::function<double(double)> fn;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_closed = true;
    bool hi_closed = true;
};

// f(a) := U diag(f(eigenvalues)) U†. Eigenvalues outside dom(f) by more than
// tol_dom raise DomainViolation; closed-endpoint eigenvalues within tol_dom
// are clamped onto the boundary (an eigenvalue -1e-12 is admitted for f on
// [0, inf) and evaluated at 0). Open endpoints admit no clamping.
ComplexMatrix matrix_function(const RealFunction& f, const ComplexMatrix& a,
                              double tol_dom = tol::dom);

// a^t for Hermitian PSD a given its eigensystem. Eigenvalues <= zero_cutoff
// are treated as exact zeros: they map to 0 for t > 0 and raise
// SingularReference for t <= 0.
ComplexMatrix hermitian_power(const HermitianEigensystem& es, double t,
                              double zero_cutoff = tol::supp);

// ----- ready-made functions for the registry and the test suites -----

RealFunction fn_power(double mu);                 // x^mu on [0,inf) (mu>=0) or (0,inf) (mu<0)
RealFunction fn_neg_inverse();                    // -1/x on (0,inf)
RealFunction fn_affine(double slope, double offset);  // slope*x+offset on R
RealFunction fn_log();                            // log x on (0,inf)
RealFunction fn_identity();

}  // namespace qdp
