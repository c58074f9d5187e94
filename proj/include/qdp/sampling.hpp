// Random matrix constructors shared by the suites. All take an explicit Rng.
#pragma once

#include "qdp/eigen.hpp"
#include "qdp/matrix.hpp"
#include "qdp/rng.hpp"

namespace qdp {

// Independent standard complex Gaussian entries.
ComplexMatrix random_complex_matrix(std::size_t rows, std::size_t cols, Rng& rng);

// (G + G†)/2 with G Gaussian.
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);

// G·G† (PSD, full rank with probability 1).
ComplexMatrix random_psd(std::size_t dim, Rng& rng);

// Eigenvector matrix of a random Hermitian matrix.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

// Hermitian matrix with eigenvalues drawn uniformly from [lo, hi], conjugated
// by a random unitary.
ComplexMatrix random_hermitian_with_spectrum(std::size_t dim, double lo, double hi, Rng& rng);

}  // namespace qdp
