#include "qdp/states.hpp"

#include <cmath>
#include <string>

#include "qdp/errors.hpp"
#include "qdp/sampling.hpp"

namespace qdp {

DensityOperator::DensityOperator(ComplexMatrix m, double tol_psd, double tol_trace)
    : matrix_(std::move(m)) {
    if (!matrix_.is_square() || matrix_.rows() == 0) {
        throw InvalidStateError("DensityOperator: matrix must be square and nonempty");
    }
    const double min_eig = min_eigenvalue(matrix_);
    if (min_eig < -tol_psd) {
        throw InvalidStateError("DensityOperator: positivity failed, min eigenvalue " +
                                std::to_string(min_eig));
    }
    const Complex tr = trace(matrix_);
    if (std::abs(tr - Complex(1.0, 0.0)) > tol_trace) {
        throw InvalidStateError("DensityOperator: unit trace failed, trace " +
                                std::to_string(tr.real()) + (tr.imag() < 0 ? "-" : "+") +
                                std::to_string(std::abs(tr.imag())) + "i");
    }
}

double DivergenceValue::nats() const {
    if (!finite_) throw Error("DivergenceValue: infinite divergence has no finite value");
    return nats_;
}

ComplexMatrix support_projector(const DensityOperator& a, double tol_supp) {
    const HermitianEigensystem es = eigh(a.matrix());
    std::vector<double> indicator(es.eigenvalues.size());
    for (std::size_t k = 0; k < es.eigenvalues.size(); ++k)
        indicator[k] = es.eigenvalues[k] > tol_supp ? 1.0 : 0.0;
    return apply_spectral(es, indicator);
}

double von_neumann_entropy(const DensityOperator& a) {
    const HermitianEigensystem es = eigh(a.matrix());
    double h = 0.0;
    for (double lambda : es.eigenvalues) {
        if (lambda > 0.0) h -= lambda * std::log(lambda);
    }
    return h;
}

DivergenceValue relative_entropy(const DensityOperator& a, const DensityOperator& b,
                                 double tol_supp) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatchError("relative_entropy: dims " + std::to_string(a.dim()) +
                                     " vs " + std::to_string(b.dim()));
    }
    const std::size_t n = a.dim();
    const HermitianEigensystem ea = eigh(a.matrix());
    const HermitianEigensystem eb = eigh(b.matrix());

    // Support condition: compress a onto the kernel of b and measure what is left.
    std::vector<double> kernel_indicator(n);
    for (std::size_t k = 0; k < n; ++k)
        kernel_indicator[k] = eb.eigenvalues[k] <= tol_supp ? 1.0 : 0.0;
    const ComplexMatrix q = apply_spectral(eb, kernel_indicator);
    const double leak = operator_norm(matmul(matmul(q, a.matrix()), q));
    if (leak > static_cast<double>(n) * tol_supp) return DivergenceValue::infinite();

    double tr_a_log_a = 0.0;
    for (double lambda : ea.eigenvalues) {
        if (lambda > tol_supp) tr_a_log_a += lambda * std::log(lambda);
    }
    double tr_a_log_b = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double mu = eb.eigenvalues[k];
        if (mu <= tol_supp) continue;
        // <b_k| a |b_k>
        Complex weight(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            Complex av(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) av += a.matrix()(i, j) * eb.eigenvectors(j, k);
            weight += std::conj(eb.eigenvectors(i, k)) * av;
        }
        tr_a_log_b += weight.real() * std::log(mu);
    }
    return DivergenceValue::finite(tr_a_log_a - tr_a_log_b);
}

namespace {

double cross_trace_power(const HermitianEigensystem& ea, const HermitianEigensystem& eb,
                         double mu, double tol_supp) {
    // tr(a^mu b^(1-mu)) from the two eigensystems.
    const ComplexMatrix am = hermitian_power(ea, mu, 0.0);
    const ComplexMatrix bm = hermitian_power(eb, 1.0 - mu, tol_supp);
    Complex t(0.0, 0.0);
    for (std::size_t i = 0; i < am.rows(); ++i)
        for (std::size_t j = 0; j < am.cols(); ++j) t += am(i, j) * bm(j, i);
    return t.real();
}

}  // namespace

double relative_entropy_via_limit(const DensityOperator& a, const DensityOperator& b, double h,
                                  double tol_supp) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatchError("relative_entropy_via_limit: dims mismatch");
    }
    if (h <= 0.0 || h >= 1.0) throw Error("relative_entropy_via_limit: step must be in (0,1)");
    const HermitianEigensystem ea = eigh(a.matrix());
    const HermitianEigensystem eb = eigh(b.matrix());
    if (eb.eigenvalues.front() <= tol_supp) {
        throw SingularReferenceError("relative_entropy_via_limit: reference state not strictly "
                                     "positive, min eigenvalue " +
                                     std::to_string(eb.eigenvalues.front()));
    }
    // g(1) = tr(a) = 1.
    return (1.0 - cross_trace_power(ea, eb, 1.0 - h, tol_supp)) / h;
}

double relative_entropy_via_limit_richardson(const DensityOperator& a, const DensityOperator& b,
                                             double h, double tol_supp) {
    const double coarse = relative_entropy_via_limit(a, b, h, tol_supp);
    const double fine = relative_entropy_via_limit(a, b, h / 2.0, tol_supp);
    return 2.0 * fine - coarse;
}

DensityOperator random_density(std::size_t dim, Rng& rng) {
    if (dim == 0) throw DimensionMismatchError("random_density: dim must be positive");
    ComplexMatrix gram = random_psd(dim, rng);
    const double tr = trace(gram).real();
    return DensityOperator(scale(Complex(1.0 / tr, 0.0), symmetrize(gram)));
}

DensityOperator maximally_mixed(std::size_t dim) {
    if (dim == 0) throw DimensionMismatchError("maximally_mixed: dim must be positive");
    return DensityOperator(scale(Complex(1.0 / static_cast<double>(dim), 0.0), identity(dim)));
}

DensityOperator pure_state(std::span<const Complex> amplitudes) {
    const std::size_t n = amplitudes.size();
    if (n == 0) throw DimensionMismatchError("pure_state: empty amplitude vector");
    double norm2 = 0.0;
    for (const Complex& v : amplitudes) norm2 += std::norm(v);
    if (norm2 <= 0.0) throw InvalidStateError("pure_state: zero vector");
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / norm2;
    return DensityOperator(std::move(m));
}

DensityOperator diagonal_state(std::span<const double> probabilities) {
    for (double p : probabilities) {
        if (p < -tol::psd) throw InvalidStateError("diagonal_state: negative probability");
    }
    return DensityOperator(embed_diagonal(probabilities));
}

}  // namespace qdp
