#include "qdp/channels.hpp"

#include <cmath>
#include <string>

#include "qdp/eigen.hpp"
#include "qdp/errors.hpp"
#include "qdp/sampling.hpp"

namespace qdp {

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus_ops, double tol_tp)
    : kraus_(std::move(kraus_ops)) {
    if (kraus_.empty()) throw InvalidChannelError("KrausChannel: empty Kraus family");
    dim_out_ = kraus_.front().rows();
    dim_in_ = kraus_.front().cols();
    if (dim_in_ == 0 || dim_out_ == 0) {
        throw InvalidChannelError("KrausChannel: zero-dimensional Kraus operator");
    }
    for (const ComplexMatrix& k : kraus_) {
        if (k.rows() != dim_out_ || k.cols() != dim_in_) {
            throw InvalidChannelError("KrausChannel: inconsistent Kraus shapes");
        }
    }
    ComplexMatrix sum(dim_in_, dim_in_);
    for (const ComplexMatrix& k : kraus_) sum = add(sum, matmul(adjoint(k), k));
    const double defect = frobenius_norm(sub(sum, identity(dim_in_)));
    if (defect > tol_tp) {
        throw InvalidChannelError("KrausChannel: trace preservation failed, Frobenius defect of "
                                  "sum K†K - 1 is " +
                                  std::to_string(defect));
    }
}

ComplexMatrix KrausChannel::apply(const ComplexMatrix& a) const {
    if (!a.is_square() || a.rows() != dim_in_) {
        throw DimensionMismatchError("KrausChannel::apply: input side " + std::to_string(a.rows()) +
                                     " != dim_in " + std::to_string(dim_in_));
    }
    ComplexMatrix out(dim_out_, dim_out_);
    for (const ComplexMatrix& k : kraus_) out = add(out, matmul(matmul(k, a), adjoint(k)));
    return out;
}

ComplexMatrix KrausChannel::apply_dual(const ComplexMatrix& b) const {
    if (!b.is_square() || b.rows() != dim_out_) {
        throw DimensionMismatchError("KrausChannel::apply_dual: input side " +
                                     std::to_string(b.rows()) + " != dim_out " +
                                     std::to_string(dim_out_));
    }
    ComplexMatrix out(dim_in_, dim_in_);
    for (const ComplexMatrix& k : kraus_) out = add(out, matmul(matmul(adjoint(k), b), k));
    return out;
}

KrausChannel compose(const KrausChannel& d, const KrausChannel& w) {
    if (w.dim_out() != d.dim_in()) {
        throw DimensionMismatchError("compose: inner dims " + std::to_string(w.dim_out()) +
                                     " vs " + std::to_string(d.dim_in()));
    }
    std::vector<ComplexMatrix> ops;
    ops.reserve(d.kraus_count() * w.kraus_count());
    for (const ComplexMatrix& dj : d.kraus())
        for (const ComplexMatrix& wi : w.kraus()) ops.push_back(matmul(dj, wi));
    return KrausChannel(std::move(ops));
}

KrausChannel tensor_with_identity(const KrausChannel& d, std::size_t left_dim) {
    if (left_dim == 0) throw DimensionMismatchError("tensor_with_identity: left_dim zero");
    const ComplexMatrix eye = identity(left_dim);
    std::vector<ComplexMatrix> ops;
    ops.reserve(d.kraus_count());
    for (const ComplexMatrix& k : d.kraus()) ops.push_back(kron(eye, k));
    return KrausChannel(std::move(ops));
}

ChoiMatrix choi_matrix(const KrausChannel& ch) {
    const std::size_t din = ch.dim_in();
    const std::size_t dout = ch.dim_out();
    ChoiMatrix c;
    c.dim_in = din;
    c.dim_out = dout;
    c.matrix = ComplexMatrix(dout * din, dout * din);
    for (std::size_t i = 0; i < din; ++i) {
        for (std::size_t j = 0; j < din; ++j) {
            ComplexMatrix unit(din, din);
            unit(i, j) = Complex(1.0, 0.0);
            const ComplexMatrix mapped = ch.apply(unit);
            // block (o,o') of the (i,j) matrix unit goes to ((o,i),(o',j))
            for (std::size_t o = 0; o < dout; ++o)
                for (std::size_t op = 0; op < dout; ++op)
                    c.matrix(o * din + i, op * din + j) = mapped(o, op);
        }
    }
    return c;
}

bool is_completely_positive(const ChoiMatrix& c, double tol_psd) {
    return is_psd(c.matrix, tol_psd);
}

bool channels_equal(const KrausChannel& a, const KrausChannel& b, double tolerance) {
    if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) return false;
    return max_abs_diff(choi_matrix(a).matrix, choi_matrix(b).matrix) <= tolerance;
}

ComplexMatrix StinespringDilation::representation(const ComplexMatrix& b) const {
    if (!b.is_square() || b.rows() != dim_out) {
        throw DimensionMismatchError("StinespringDilation::representation: input side mismatch");
    }
    return kron(b, identity(env_dim));
}

ComplexMatrix StinespringDilation::reconstruct_dual(const ComplexMatrix& b) const {
    return matmul(matmul(adjoint(isometry), representation(b)), isometry);
}

StinespringDilation stinespring(const KrausChannel& ch) {
    StinespringDilation d;
    d.dim_in = ch.dim_in();
    d.dim_out = ch.dim_out();
    d.env_dim = ch.kraus_count();
    d.isometry = ComplexMatrix(d.dim_out * d.env_dim, d.dim_in);
    // (K_e|v>)⊗|e> puts the output factor outermost: row o*env + e.
    for (std::size_t e = 0; e < d.env_dim; ++e) {
        const ComplexMatrix& k = ch.kraus()[e];
        for (std::size_t o = 0; o < d.dim_out; ++o)
            for (std::size_t c = 0; c < d.dim_in; ++c) d.isometry(o * d.env_dim + e, c) = k(o, c);
    }
    return d;
}

VerificationReport schwarz_check(const KrausChannel& ch, std::size_t trials, std::uint64_t seed,
                                 double tol_psd, ExecutionMode mode) {
    std::vector<double> slack(trials, 0.0);
    run_trials(trials, mode, [&](std::size_t i) {
        Rng rng = Rng::for_trial(seed, i);
        const ComplexMatrix x = random_complex_matrix(ch.dim_out(), ch.dim_out(), rng);
        const ComplexMatrix lhs = ch.apply_dual(matmul(adjoint(x), x));
        const ComplexMatrix bx = ch.apply_dual(x);
        const ComplexMatrix rhs = matmul(adjoint(bx), bx);
        slack[i] = min_eigenvalue(sub(lhs, rhs));
    });

    VerificationReport report;
    report.check_name = "schwarz";
    report.trials = trials;
    report.seed = seed;
    report.config["dim_in"] = ch.dim_in();
    report.config["dim_out"] = ch.dim_out();
    report.config["kraus_count"] = ch.kraus_count();
    report.config["tol_psd"] = tol_psd;
    std::size_t worst = trials;
    for (std::size_t i = 0; i < trials; ++i) {
        if (slack[i] < -tol_psd) ++report.violations;
        if (slack[i] < 0.0 && -slack[i] > report.max_violation) {
            report.max_violation = -slack[i];
            worst = i;
        }
    }
    report.pass = report.violations == 0;
    if (worst < trials && report.violations > 0) {
        report.worst_witness = nlohmann::ordered_json{{"trial", worst}};
    }
    return report;
}

KrausChannel measurement_channel(std::span<const ComplexMatrix> povm, double tol_psd,
                                 double tol_tp) {
    if (povm.empty()) throw InvalidPovmError("measurement_channel: empty POVM");
    const std::size_t dim = povm.front().rows();
    ComplexMatrix sum(dim, dim);
    for (std::size_t i = 0; i < povm.size(); ++i) {
        const ComplexMatrix& e = povm[i];
        if (!e.is_square() || e.rows() != dim) {
            throw InvalidPovmError("measurement_channel: element " + std::to_string(i) +
                                   " has inconsistent shape");
        }
        if (hermiticity_defect(e) > tol::herm) {
            throw InvalidPovmError("measurement_channel: element " + std::to_string(i) +
                                   " is not Hermitian");
        }
        const double min_eig = min_eigenvalue(e);
        if (min_eig < -tol_psd) {
            throw InvalidPovmError("measurement_channel: element " + std::to_string(i) +
                                   " is not positive semidefinite, min eigenvalue " +
                                   std::to_string(min_eig));
        }
        sum = add(sum, e);
    }
    const double defect = frobenius_norm(sub(sum, identity(dim)));
    if (defect > tol_tp) {
        throw InvalidPovmError(
            "measurement_channel: POVM elements do not sum to identity, Frobenius defect " +
            std::to_string(defect));
    }

    const std::size_t outcomes = povm.size();
    const RealFunction sqrt_fn = fn_power(0.5);
    std::vector<ComplexMatrix> ops;
    ops.reserve(outcomes * dim);
    for (std::size_t i = 0; i < outcomes; ++i) {
        const ComplexMatrix root = matrix_function(sqrt_fn, povm[i]);
        // K_{i,k} = |i><k| sqrt(E_i): row i of sqrt(E_i) placed as row i.
        for (std::size_t k = 0; k < dim; ++k) {
            ComplexMatrix op(outcomes, dim);
            for (std::size_t c = 0; c < dim; ++c) op(i, c) = root(k, c);
            ops.push_back(std::move(op));
        }
    }
    return KrausChannel(std::move(ops), tol_tp);
}

KrausChannel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t kraus_count,
                            Rng& rng) {
    if (kraus_count == 0) throw InfeasibleDimsError("random_channel: kraus_count must be >= 1");
    if (dim_out * kraus_count < dim_in) {
        throw InfeasibleDimsError("random_channel: dim_out*kraus_count " +
                                  std::to_string(dim_out * kraus_count) + " < dim_in " +
                                  std::to_string(dim_in));
    }
    const std::size_t rows = dim_out * kraus_count;
    ComplexMatrix v = random_complex_matrix(rows, dim_in, rng);
    // Modified Gram-Schmidt with one re-orthogonalization pass per column.
    for (std::size_t j = 0; j < dim_in; ++j) {
        for (int repeat = 0; repeat < 2; ++repeat) {
            for (std::size_t p = 0; p < j; ++p) {
                Complex proj(0.0, 0.0);
                for (std::size_t r = 0; r < rows; ++r) proj += std::conj(v(r, p)) * v(r, j);
                for (std::size_t r = 0; r < rows; ++r) v(r, j) -= proj * v(r, p);
            }
        }
        double norm2 = 0.0;
        for (std::size_t r = 0; r < rows; ++r) norm2 += std::norm(v(r, j));
        while (norm2 < 1e-12) {  // dependent draw; replace the column
            for (std::size_t r = 0; r < rows; ++r) v(r, j) = rng.complex_gaussian();
            for (std::size_t p = 0; p < j; ++p) {
                Complex proj(0.0, 0.0);
                for (std::size_t r = 0; r < rows; ++r) proj += std::conj(v(r, p)) * v(r, j);
                for (std::size_t r = 0; r < rows; ++r) v(r, j) -= proj * v(r, p);
            }
            norm2 = 0.0;
            for (std::size_t r = 0; r < rows; ++r) norm2 += std::norm(v(r, j));
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t r = 0; r < rows; ++r) v(r, j) *= inv;
    }

    std::vector<ComplexMatrix> ops(kraus_count, ComplexMatrix(dim_out, dim_in));
    for (std::size_t e = 0; e < kraus_count; ++e)
        for (std::size_t o = 0; o < dim_out; ++o)
            for (std::size_t c = 0; c < dim_in; ++c) ops[e](o, c) = v(e * dim_out + o, c);
    return KrausChannel(std::move(ops));
}

KrausChannel identity_channel(std::size_t dim) {
    return KrausChannel({identity(dim)});
}

KrausChannel completely_depolarizing(std::size_t dim_in, std::size_t dim_out) {
    if (dim_in == 0 || dim_out == 0) {
        throw DimensionMismatchError("completely_depolarizing: dims must be positive");
    }
    const double w = 1.0 / std::sqrt(static_cast<double>(dim_out));
    std::vector<ComplexMatrix> ops;
    ops.reserve(dim_in * dim_out);
    for (std::size_t i = 0; i < dim_out; ++i)
        for (std::size_t j = 0; j < dim_in; ++j) {
            ComplexMatrix k(dim_out, dim_in);
            k(i, j) = Complex(w, 0.0);
            ops.push_back(std::move(k));
        }
    return KrausChannel(std::move(ops));
}

KrausChannel classical_channel(const ComplexMatrix& column_stochastic, double tol_tp) {
    const std::size_t n_out = column_stochastic.rows();
    const std::size_t n_in = column_stochastic.cols();
    if (n_out == 0 || n_in == 0) throw InvalidChannelError("classical_channel: empty matrix");
    for (std::size_t j = 0; j < n_in; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < n_out; ++i) {
            const Complex t = column_stochastic(i, j);
            if (std::abs(t.imag()) > tol_tp || t.real() < -tol_tp) {
                throw InvalidChannelError("classical_channel: entries must be real nonnegative");
            }
            col += t.real();
        }
        if (std::abs(col - 1.0) > tol_tp) {
            throw InvalidChannelError("classical_channel: column " + std::to_string(j) +
                                      " sums to " + std::to_string(col));
        }
    }
    std::vector<ComplexMatrix> ops;
    ops.reserve(n_out * n_in);
    for (std::size_t i = 0; i < n_out; ++i)
        for (std::size_t j = 0; j < n_in; ++j) {
            const double t = std::max(0.0, column_stochastic(i, j).real());
            if (t == 0.0) continue;
            ComplexMatrix k(n_out, n_in);
            k(i, j) = Complex(std::sqrt(t), 0.0);
            ops.push_back(std::move(k));
        }
    if (ops.empty()) throw InvalidChannelError("classical_channel: zero matrix");
    return KrausChannel(std::move(ops), tol_tp);
}

KrausChannel unitary_channel(const ComplexMatrix& u, double tol_tp) {
    if (!u.is_square()) throw InvalidChannelError("unitary_channel: matrix not square");
    const double defect = frobenius_norm(sub(matmul(adjoint(u), u), identity(u.rows())));
    if (defect > tol_tp) {
        throw InvalidChannelError("unitary_channel: not unitary, defect " +
                                  std::to_string(defect));
    }
    return KrausChannel({u}, tol_tp);
}

}  // namespace qdp
