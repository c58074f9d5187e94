// Dense complex matrices, row-major, with the small set of operations the
// rest of the library is built on. Dimensions here are desk-scale (<= 16),
// so everything is a plain O(n^2)/O(n^3) loop.
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "qdp/errors.hpp"

namespace qdp {

using Complex = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}

    // Zero-initialized rows x cols.
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {}

    // Takes ownership of row-major entries; rejects size mismatch and
    // non-finite scalar components.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }

    std::span<const Complex> entries() const { return entries_; }

    // Throws if any scalar component is NaN or infinite.
    void require_finite() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

// ---------------------------------------------------------------------------
// Plumbing operations
// ---------------------------------------------------------------------------

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(Complex factor, const ComplexMatrix& a);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);

// tr(a† b)
Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);
double max_abs_entry(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// max |a - a†| entrywise; the Hermitian symmetry defect.
double hermiticity_defect(const ComplexMatrix& a);
ComplexMatrix symmetrize(const ComplexMatrix& a);  // (a + a†)/2

ComplexMatrix identity(std::size_t n);
ComplexMatrix zeros(std::size_t rows, std::size_t cols);
ComplexMatrix embed_diagonal(std::span<const double> diag);

// Kronecker product, first factor outermost: (a⊗b)[(i,k),(j,l)] = a[i,j] b[k,l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out factor `which` (0 or 1) of a square matrix on a bipartite space
// of side dims.first * dims.second.
ComplexMatrix partial_trace(const ComplexMatrix& a, std::pair<std::size_t, std::size_t> dims,
                            std::size_t which);

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) { return sub(a, b); }
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return matmul(a, b);
}
inline ComplexMatrix operator*(Complex factor, const ComplexMatrix& a) { return scale(factor, a); }
inline ComplexMatrix operator*(double factor, const ComplexMatrix& a) {
    return scale(Complex(factor, 0.0), a);
}

}  // namespace qdp
