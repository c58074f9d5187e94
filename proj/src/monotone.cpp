#include "qdp/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qdp/errors.hpp"
#include "qdp/sampling.hpp"

namespace qdp {

namespace {

// Safe eigenvalue sampling window inside the domain interval: 1% margins on
// bounded intervals, a fixed 10-unit window for unbounded ones.
std::pair<double, double> sampling_window(const RealFunction& f) {
    const bool lo_finite = std::isfinite(f.lo);
    const bool hi_finite = std::isfinite(f.hi);
    if (lo_finite && hi_finite) {
        const double len = f.hi - f.lo;
        return {f.lo + 0.01 * len, f.hi - 0.01 * len};
    }
    if (lo_finite) return {f.lo + 0.1, f.lo + 10.1};
    if (hi_finite) return {f.hi - 10.1, f.hi - 0.1};
    return {-5.0, 5.0};
}

MonotonicityVerdict aggregate(std::string label, std::size_t dim,
                              const std::vector<double>& slack, double tol_psd,
                              const std::function<MatrixPair(std::size_t)>& witness_of) {
    MonotonicityVerdict v;
    v.function_label = std::move(label);
    v.order = dim;
    v.trials = slack.size();
    std::size_t worst = slack.size();
    for (std::size_t i = 0; i < slack.size(); ++i) {
        if (slack[i] < -tol_psd) ++v.violations;
        if (slack[i] < 0.0 && -slack[i] > v.max_violation) {
            v.max_violation = -slack[i];
            worst = i;
        }
    }
    if (worst < slack.size() && witness_of) v.witness = witness_of(worst);
    return v;
}

}  // namespace

MonotonicityVerdict monotonicity_test(const RealFunction& f, std::size_t dim, std::size_t trials,
                                      std::uint64_t seed, double tol_psd,
                                      std::span<const MatrixPair> injected, ExecutionMode mode) {
    const auto [lo, hi] = sampling_window(f);
    const std::size_t total = injected.size() + trials;

    auto make_pair = [&](std::size_t i) -> MatrixPair {
        if (i < injected.size()) return injected[i];
        Rng rng = Rng::for_trial(seed, i - injected.size());
        ComplexMatrix b = random_hermitian_with_spectrum(dim, lo, hi, rng);
        const double top = eigh(b).eigenvalues.back();
        const double headroom = std::max(0.0, hi - top);
        ComplexMatrix p = random_psd(dim, rng);
        const double pnorm = operator_norm(p);
        const double target = headroom * rng.uniform();
        if (pnorm > 0.0) p = scale(Complex(target / pnorm, 0.0), p);
        return {b, add(b, p)};
    };

    std::vector<double> slack(total, 0.0);
    run_trials(total, mode, [&](std::size_t i) {
        const auto [b, c] = make_pair(i);
        slack[i] = min_eigenvalue(sub(matrix_function(f, c), matrix_function(f, b)));
    });
    return aggregate(f.label, dim, slack, tol_psd, make_pair);
}

MonotonicityVerdict concavity_test(const RealFunction& f, std::size_t dim, std::size_t trials,
                                   std::uint64_t seed, double tol_psd, ExecutionMode mode) {
    // a†xa has spectrum anywhere in [0, ||x||], so f must cover [0, inf).
    if (f.lo > 0.0 || std::isfinite(f.hi)) {
        throw DomainViolationError("concavity_test: function must be defined on [0, inf)");
    }
    auto make_pair = [&](std::size_t i) -> MatrixPair {
        Rng rng = Rng::for_trial(seed, i);
        ComplexMatrix x = random_hermitian_with_spectrum(dim, 0.0, 10.0, rng);
        // Rectangular contractions included: a maps a space of dimension
        // dim-1, dim, or dim+1 into the x space.
        const std::size_t shapes[3] = {std::max<std::size_t>(1, dim - 1), dim, dim + 1};
        const std::size_t dim_from = shapes[i % 3];
        ComplexMatrix a = random_complex_matrix(dim, dim_from, rng);
        const double norm = operator_norm(a);
        const double r = 1.0 - rng.uniform();  // (0, 1]
        if (norm > 0.0) a = scale(Complex(r / norm, 0.0), a);
        return {x, a};
    };

    std::vector<double> slack(trials, 0.0);
    run_trials(trials, mode, [&](std::size_t i) {
        const auto [x, a] = make_pair(i);
        const ComplexMatrix compressed = matmul(matmul(adjoint(a), x), a);
        const ComplexMatrix lhs = matrix_function(f, symmetrize(compressed));
        const ComplexMatrix rhs = matmul(matmul(adjoint(a), matrix_function(f, x)), a);
        slack[i] = min_eigenvalue(sub(lhs, symmetrize(rhs)));
    });
    return aggregate(f.label, dim, slack, tol_psd, make_pair);
}

MonotonicityVerdict jensen_test(const RealFunction& f, std::size_t dim, std::size_t k_terms,
                                std::size_t trials, std::uint64_t seed, double tol_psd,
                                ExecutionMode mode) {
    if (k_terms == 0) throw Error("jensen_test: k_terms must be >= 1");
    std::vector<double> slack(trials, 0.0);
    run_trials(trials, mode, [&](std::size_t i) {
        Rng rng = Rng::for_trial(seed, i);
        std::vector<ComplexMatrix> xs, as;
        for (std::size_t k = 0; k < k_terms; ++k) {
            xs.push_back(random_hermitian_with_spectrum(dim, 0.0, 10.0, rng));
            as.push_back(random_complex_matrix(dim, dim, rng));
        }
        ComplexMatrix gram(dim, dim);
        for (const ComplexMatrix& a : as) gram = add(gram, matmul(adjoint(a), a));
        const double r = 1.0 - rng.uniform();
        const double c = r / std::sqrt(operator_norm(gram));
        for (ComplexMatrix& a : as) a = scale(Complex(c, 0.0), a);

        ComplexMatrix mix(dim, dim);
        ComplexMatrix rhs(dim, dim);
        for (std::size_t k = 0; k < k_terms; ++k) {
            mix = add(mix, matmul(matmul(adjoint(as[k]), xs[k]), as[k]));
            rhs = add(rhs, matmul(matmul(adjoint(as[k]), matrix_function(f, xs[k])), as[k]));
        }
        const ComplexMatrix lhs = matrix_function(f, symmetrize(mix));
        slack[i] = min_eigenvalue(sub(lhs, symmetrize(rhs)));
    });
    return aggregate(f.label, dim, slack, tol_psd, nullptr);
}

OrderingReport ordering_report(const RealFunction& f, const ComplexMatrix& b,
                               const ComplexMatrix& c, double tol_psd) {
    OrderingReport r;
    r.min_eig_diff = min_eigenvalue(sub(c, b));
    r.min_eig_fdiff = min_eigenvalue(sub(matrix_function(f, c), matrix_function(f, b)));
    r.premise_holds = r.min_eig_diff >= -tol_psd;
    r.conclusion_holds = r.min_eig_fdiff >= -tol_psd;
    return r;
}

}  // namespace qdp
