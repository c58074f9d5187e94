#include "qdp/sampling.hpp"

namespace qdp {

ComplexMatrix random_complex_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_gaussian();
    return m;
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
    return symmetrize(random_complex_matrix(dim, dim, rng));
}

ComplexMatrix random_psd(std::size_t dim, Rng& rng) {
    const ComplexMatrix g = random_complex_matrix(dim, dim, rng);
    return matmul(g, adjoint(g));
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
    return eigh(random_hermitian(dim, rng)).eigenvectors;
}

ComplexMatrix random_hermitian_with_spectrum(std::size_t dim, double lo, double hi, Rng& rng) {
    std::vector<double> spectrum(dim);
    for (double& v : spectrum) v = rng.uniform(lo, hi);
    const ComplexMatrix u = random_unitary(dim, rng);
    return matmul(matmul(u, embed_diagonal(spectrum)), adjoint(u));
}

}  // namespace qdp
