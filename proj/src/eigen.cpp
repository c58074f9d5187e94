#include "qdp/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qdp/errors.hpp"

namespace qdp {

namespace {

double offdiag_mass(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

HermitianEigensystem eigh(const ComplexMatrix& input, double tol_eig, double tol_herm,
                          std::size_t max_sweeps) {
    if (!input.is_square()) throw DimensionMismatchError("eigh: matrix not square");
    const double defect = hermiticity_defect(input);
    if (defect > tol_herm) {
        throw NotHermitianError("eigh: symmetry defect " + std::to_string(defect) +
                                " exceeds tolerance");
    }

    const std::size_t n = input.rows();
    ComplexMatrix a = symmetrize(input);
    ComplexMatrix v = identity(n);

    if (n <= 1) {
        HermitianEigensystem es;
        if (n == 1) es.eigenvalues.push_back(a(0, 0).real());
        es.eigenvectors = std::move(v);
        return es;
    }

    const double target = tol_eig * std::max(1.0, frobenius_norm(a));
    const double skip_below = target / (4.0 * static_cast<double>(n) * static_cast<double>(n));

    bool converged = offdiag_mass(a) <= target;
    for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double beta = std::abs(apq);
                if (beta <= skip_below) continue;

                // Phase-reduce the pivot to a real 2x2 problem, then apply
                // the classical symmetric rotation choosing the smaller angle.
                const Complex phase = apq / beta;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * beta);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Column transform G: G(p,p)=c, G(p,q)=s,
                // G(q,p)=-s*conj(phase), G(q,q)=c*conj(phase).
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex aip = a(i, p);
                    const Complex aiq = a(i, q);
                    a(i, p) = c * aip + gqp * aiq;
                    a(i, q) = s * aip + gqq * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex apj = a(p, j);
                    const Complex aqj = a(q, j);
                    a(p, j) = c * apj + std::conj(gqp) * aqj;
                    a(q, j) = s * apj + std::conj(gqq) * aqj;
                }
                a(p, q) = Complex(0.0, 0.0);
                a(q, p) = Complex(0.0, 0.0);
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);

                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vip = v(i, p);
                    const Complex viq = v(i, q);
                    v(i, p) = c * vip + gqp * viq;
                    v(i, q) = s * vip + gqq * viq;
                }
            }
        }
        converged = offdiag_mass(a) <= target;
    }
    if (!converged) {
        throw NoConvergenceError("eigh: off-diagonal mass " + std::to_string(offdiag_mass(a)) +
                                 " above target after " + std::to_string(max_sweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEigensystem es;
    es.eigenvalues.resize(n);
    es.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        es.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) es.eigenvectors(i, k) = v(i, order[k]);
    }
    return es;
}

ComplexMatrix apply_spectral(const HermitianEigensystem& es, const std::vector<double>& values) {
    const std::size_t n = es.eigenvalues.size();
    if (values.size() != n) throw DimensionMismatchError("apply_spectral: value count mismatch");
    const ComplexMatrix& u = es.eigenvectors;
    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Complex s(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) s += values[k] * u(i, k) * std::conj(u(j, k));
            r(i, j) = s;
            r(j, i) = std::conj(s);
        }
        r(i, i) = Complex(r(i, i).real(), 0.0);
    }
    return r;
}

double min_eigenvalue(const ComplexMatrix& a, double tol_herm) {
    const HermitianEigensystem es = eigh(a, tol::eig, tol_herm);
    return es.eigenvalues.empty() ? 0.0 : es.eigenvalues.front();
}

bool is_psd(const ComplexMatrix& a, double tol_psd, double tol_herm) {
    return min_eigenvalue(a, tol_herm) >= -tol_psd;
}

double operator_norm(const ComplexMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const ComplexMatrix gram = matmul(adjoint(a), a);
    const HermitianEigensystem es = eigh(gram);
    const double top = es.eigenvalues.back();
    return std::sqrt(std::max(0.0, top));
}

ComplexMatrix matrix_function(const RealFunction& f, const ComplexMatrix& a, double tol_dom) {
    const HermitianEigensystem es = eigh(a);
    std::vector<double> mapped(es.eigenvalues.size());
    for (std::size_t k = 0; k < es.eigenvalues.size(); ++k) {
        double lambda = es.eigenvalues[k];
        if (lambda < f.lo) {
            if (std::isfinite(f.lo) && f.lo_closed && lambda >= f.lo - tol_dom) {
                lambda = f.lo;
            } else {
                throw DomainViolationError("matrix_function(" + f.label + "): eigenvalue " +
                                           std::to_string(lambda) + " below domain");
            }
        } else if (lambda > f.hi) {
            if (std::isfinite(f.hi) && f.hi_closed && lambda <= f.hi + tol_dom) {
                lambda = f.hi;
            } else {
                throw DomainViolationError("matrix_function(" + f.label + "): eigenvalue " +
                                           std::to_string(lambda) + " above domain");
            }
        } else if (lambda == f.lo && !f.lo_closed) {
            throw DomainViolationError("matrix_function(" + f.label +
                                       "): eigenvalue at open lower endpoint");
        } else if (lambda == f.hi && !f.hi_closed) {
            throw DomainViolationError("matrix_function(" + f.label +
                                       "): eigenvalue at open upper endpoint");
        }
        const double value = f.fn(lambda);
        if (!std::isfinite(value)) {
            throw DomainViolationError("matrix_function(" + f.label + "): non-finite value at " +
                                       std::to_string(lambda));
        }
        mapped[k] = value;
    }
    return apply_spectral(es, mapped);
}

ComplexMatrix hermitian_power(const HermitianEigensystem& es, double t, double zero_cutoff) {
    const std::size_t n = es.eigenvalues.size();
    if (t == 0.0) return identity(n);  // x^0 == 1 on [0, inf)
    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = std::max(0.0, es.eigenvalues[k]);
        if (lambda <= zero_cutoff) {
            if (t > 0.0) {
                values[k] = 0.0;
                continue;
            }
            throw SingularReferenceError("hermitian_power: exponent " + std::to_string(t) +
                                         " of an operator with eigenvalue " +
                                         std::to_string(es.eigenvalues[k]));
        }
        values[k] = std::pow(lambda, t);
    }
    return apply_spectral(es, values);
}

RealFunction fn_power(double mu) {
    RealFunction f;
    f.label = "pow:" + std::to_string(mu);
    f.fn = [mu](double x) { return std::pow(x, mu); };
    f.lo = 0.0;
    f.lo_closed = mu >= 0.0;
    return f;
}

RealFunction fn_neg_inverse() {
    RealFunction f;
    f.label = "neg_inv";
    f.fn = [](double x) { return -1.0 / x; };
    f.lo = 0.0;
    f.lo_closed = false;
    return f;
}

RealFunction fn_affine(double slope, double offset) {
    RealFunction f;
    f.label = "affine:" + std::to_string(slope) + "," + std::to_string(offset);
    f.fn = [slope, offset](double x) { return slope * x + offset; };
    return f;
}

RealFunction fn_log() {
    RealFunction f;
    f.label = "log";
    f.fn = [](double x) { return std::log(x); };
    f.lo = 0.0;
    f.lo_closed = false;
    return f;
}

RealFunction fn_identity() {
    RealFunction f;
    f.label = "id";
    f.fn = [](double x) { return x; };
    return f;
}

}  // namespace qdp
