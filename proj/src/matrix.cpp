#include "qdp/matrix.hpp"

#include <cmath>
#include <string>

namespace qdp {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatchError(std::string(op) + ": shapes " + std::to_string(a.rows()) +
                                     "x" + std::to_string(a.cols()) + " vs " +
                                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw DimensionMismatchError("ComplexMatrix: entry count " +
                                     std::to_string(entries_.size()) + " != " +
                                     std::to_string(rows_) + "*" + std::to_string(cols_));
    }
    require_finite();
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<Complex> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) {
            throw DimensionMismatchError("from_rows: ragged row lengths");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(r, c, std::move(entries));
}

void ComplexMatrix::require_finite() const {
    for (const Complex& v : entries_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw Error("ComplexMatrix: non-finite entry");
        }
    }
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "add");
    ComplexMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "sub");
    ComplexMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

ComplexMatrix scale(Complex factor, const ComplexMatrix& a) {
    ComplexMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = factor * a(i, j);
    return r;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatchError("matmul: inner dims " + std::to_string(a.cols()) + " vs " +
                                     std::to_string(b.rows()));
    }
    ComplexMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

Complex trace(const ComplexMatrix& a) {
    if (!a.is_square()) throw DimensionMismatchError("trace: matrix not square");
    Complex t(0.0, 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "frobenius_inner");
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::conj(a(i, j)) * b(i, j);
    return s;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const Complex& v : a.entries()) s += std::norm(v);
    return std::sqrt(s);
}

double max_abs_entry(const ComplexMatrix& a) {
    double m = 0.0;
    for (const Complex& v : a.entries()) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

double hermiticity_defect(const ComplexMatrix& a) {
    if (!a.is_square()) throw DimensionMismatchError("hermiticity_defect: matrix not square");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

ComplexMatrix symmetrize(const ComplexMatrix& a) {
    if (!a.is_square()) throw DimensionMismatchError("symmetrize: matrix not square");
    ComplexMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return r;
}

ComplexMatrix identity(std::size_t n) {
    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) r(i, i) = Complex(1.0, 0.0);
    return r;
}

ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix embed_diagonal(std::span<const double> diag) {
    ComplexMatrix r(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) r(i, i) = Complex(diag[i], 0.0);
    return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& a, std::pair<std::size_t, std::size_t> dims,
                            std::size_t which) {
    const std::size_t d0 = dims.first;
    const std::size_t d1 = dims.second;
    if (!a.is_square() || a.rows() != d0 * d1) {
        throw DimensionMismatchError("partial_trace: matrix side " + std::to_string(a.rows()) +
                                     " != " + std::to_string(d0) + "*" + std::to_string(d1));
    }
    if (which > 1) throw DimensionMismatchError("partial_trace: factor index must be 0 or 1");
    if (which == 1) {
        // Keep factor 0, sum over factor 1 diagonal.
        ComplexMatrix r(d0, d0);
        for (std::size_t i = 0; i < d0; ++i)
            for (std::size_t j = 0; j < d0; ++j)
                for (std::size_t k = 0; k < d1; ++k) r(i, j) += a(i * d1 + k, j * d1 + k);
        return r;
    }
    ComplexMatrix r(d1, d1);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d1; ++j)
            for (std::size_t k = 0; k < d0; ++k) r(i, j) += a(k * d1 + i, k * d1 + j);
    return r;
}

}  // namespace qdp
