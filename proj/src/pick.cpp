#include "qdp/pick.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "qdp/errors.hpp"

namespace qdp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (symmetric half listed).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    Complex value;
    double error;
};

template <typename Fn>
Segment gk15(double a, double b, const Fn& f) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Complex kronrod(0.0, 0.0);
    Complex gauss(0.0, 0.0);
    for (int j = 0; j < 8; ++j) {
        Complex pair_sum;
        if (j == 7) {
            pair_sum = f(center);
        } else {
            pair_sum = f(center - half * kXgk[j]) + f(center + half * kXgk[j]);
        }
        kronrod += kWgk[j] * pair_sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair_sum;
    }
    Segment s;
    s.a = a;
    s.b = b;
    s.value = half * kronrod;
    s.error = std::abs(half * (kronrod - gauss));
    return s;
}

// Adaptive bisection over an initial partition until the summed error
// estimate reaches tol.
template <typename Fn>
Complex adaptive_gk(std::vector<std::pair<double, double>> seeds, const Fn& f, double tol,
                    std::size_t max_segments) {
    auto worse = [](const Segment& x, const Segment& y) { return x.error < y.error; };
    std::priority_queue<Segment, std::vector<Segment>, decltype(worse)> heap(worse);
    Complex total(0.0, 0.0);
    double total_error = 0.0;
    for (const auto& [a, b] : seeds) {
        Segment s = gk15(a, b, f);
        total += s.value;
        total_error += s.error;
        heap.push(s);
    }
    std::size_t segments = seeds.size();
    while (total_error > tol) {
        if (segments >= max_segments || heap.empty()) {
            throw QuadratureFailureError("adaptive quadrature: error " +
                                         std::to_string(total_error) + " above target " +
                                         std::to_string(tol) + " after " +
                                         std::to_string(segments) + " segments");
        }
        Segment worst = heap.top();
        heap.pop();
        total -= worst.value;
        total_error -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        for (const Segment& s : {gk15(worst.a, mid, f), gk15(mid, worst.b, f)}) {
            total += s.value;
            total_error += s.error;
            heap.push(s);
        }
        ++segments;
    }
    return total;
}

// 1/(x-z) - x/(x^2+1), the representation kernel.
Complex kernel(double x, Complex z) {
    return 1.0 / (Complex(x, 0.0) - z) - x / (x * x + 1.0);
}

std::vector<std::pair<double, double>> geometric_ladder(double from, double to) {
    std::vector<std::pair<double, double>> seeds;
    double a = from;
    double b = std::max(1.0, 2.0 * from);
    while (b < to) {
        seeds.emplace_back(a, b);
        a = b;
        b *= 2.0;
    }
    seeds.emplace_back(a, to);
    return seeds;
}

Complex integrate_sqrt_density(Complex z, double quad_tol) {
    // Substitute x = -u^2: the integrand becomes
    //   g(u) = (2 u^2 / pi) (u^2/(u^4+1) - 1/(u^2+z)),
    // smooth on [0, inf) with |g| <= 4(|z|+1)/(pi u^2) for large u.
    const double az = std::abs(z);
    const double tail_cut = 40.0 * (az + 1.0) / (kPi * quad_tol);
    const double u_max = std::max({4.0, 3.0 * std::sqrt(az), tail_cut});
    auto g = [z](double u) {
        const double u2 = u * u;
        return (2.0 * u2 / kPi) *
               (Complex(u2 / (u2 * u2 + 1.0), 0.0) - 1.0 / (Complex(u2, 0.0) + z));
    };
    std::vector<std::pair<double, double>> seeds = {{0.0, 1.0}};
    for (const auto& s : geometric_ladder(1.0, u_max)) seeds.push_back(s);
    return adaptive_gk(seeds, g, quad_tol, 4000);
}

Complex integrate_table_density(const PickDensity& d, Complex z, double quad_tol) {
    const auto& xs = d.table_xs();
    auto f = [&](double x) { return kernel(x, z) * d(x); };
    std::vector<std::pair<double, double>> seeds;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) seeds.emplace_back(xs[i], xs[i + 1]);
    return adaptive_gk(seeds, f, quad_tol, 4000);
}

Complex integrate_custom_density(const PickDensity& d, Complex z, double quad_tol) {
    auto f = [&](double x) { return kernel(x, z) * d(x); };
    const double az = std::abs(z);
    const double body = std::max(8.0, 4.0 * az);
    const double lo0 = std::max(d.lo(), -body);
    const double hi0 = std::min(d.hi(), body);
    std::vector<std::pair<double, double>> seeds = {{lo0, hi0}};
    // Extend unbounded tails by doubling until a whole doubled block
    // contributes less than quad_tol/20.
    const double block_cut = quad_tol / 20.0;
    for (int side = 0; side < 2; ++side) {
        const bool lower = side == 0;
        if (lower ? d.lo() > -kInf : d.hi() < kInf) continue;
        double edge = lower ? lo0 : hi0;
        for (int k = 0; k < 48; ++k) {
            const double next = 2.0 * std::abs(edge) * (lower ? -1.0 : 1.0);
            const Segment s = lower ? gk15(next, edge, f) : gk15(edge, next, f);
            seeds.emplace_back(std::min(edge, next), std::max(edge, next));
            edge = next;
            if (std::abs(s.value) + s.error < block_cut) break;
            if (k == 47) {
                throw QuadratureFailureError(
                    "custom density: unbounded tail did not decay under truncation doubling");
            }
        }
    }
    return adaptive_gk(seeds, f, quad_tol, 4000);
}

Complex integrate_density(const PickDensity& d, Complex z, double quad_tol) {
    switch (d.kind()) {
        case PickDensity::Kind::sqrt_neg_over_pi:
            return integrate_sqrt_density(z, quad_tol);
        case PickDensity::Kind::table:
            return integrate_table_density(d, z, quad_tol);
        case PickDensity::Kind::custom:
            return integrate_custom_density(d, z, quad_tol);
    }
    throw Error("integrate_density: unreachable");
}

// integral of w/(x^2+1) over [a, b] with a fixed, non-adaptive refinement;
// this feeds a convergence check, not a precision result.
double proxy_mass(const PickDensity& d, double a, double b) {
    auto f = [&](double x) { return Complex(d(x) / (x * x + 1.0), 0.0); };
    double mass = 0.0;
    const int pieces = 8;
    for (int i = 0; i < pieces; ++i) {
        const double lo = a + (b - a) * i / pieces;
        const double hi = a + (b - a) * (i + 1) / pieces;
        mass += gk15(lo, hi, f).value.real();
    }
    return mass;
}

void check_integrability_proxy(const PickDensity& d) {
    double total = 0.0;
    const double body = 8.0;
    total += proxy_mass(d, std::max(d.lo(), -body), std::min(d.hi(), body));
    if (!std::isfinite(total)) {
        throw InvalidPickSpecError("pick spec: density w/(x^2+1) is non-finite near the origin");
    }
    for (int side = 0; side < 2; ++side) {
        const bool lower = side == 0;
        if (lower ? d.lo() > -kInf : d.hi() < kInf) continue;
        double edge = lower ? -body : body;
        bool converged = false;
        for (int k = 0; k < 45 && !converged; ++k) {
            const double next = 2.0 * edge;
            const double inc =
                lower ? proxy_mass(d, next, edge) : proxy_mass(d, edge, next);
            total += inc;
            if (!std::isfinite(total)) break;
            converged = std::abs(inc) < 1e-4 * std::max(1.0, std::abs(total));
            edge = next;
        }
        if (!converged || !std::isfinite(total)) {
            throw InvalidPickSpecError(
                "pick spec: integrability proxy integral of w/(x^2+1) does not converge on the "
                "truncated support");
        }
    }
}

}  // namespace

PickDensity PickDensity::sqrt_neg_over_pi() {
    PickDensity d;
    d.kind_ = Kind::sqrt_neg_over_pi;
    d.lo_ = -kInf;
    d.hi_ = 0.0;
    return d;
}

PickDensity PickDensity::table(std::vector<double> xs, std::vector<double> ws) {
    if (xs.size() < 2 || xs.size() != ws.size()) {
        throw InvalidPickSpecError("pick density table: need matching xs/ws with >= 2 nodes");
    }
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (!(xs[i] < xs[i + 1])) {
            throw InvalidPickSpecError("pick density table: xs must be strictly increasing");
        }
    }
    for (double w : ws) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw InvalidPickSpecError("pick density table: weights must be finite and >= 0");
        }
    }
    PickDensity d;
    d.kind_ = Kind::table;
    d.lo_ = xs.front();
    d.hi_ = xs.back();
    d.xs_ = std::move(xs);
    d.ws_ = std::move(ws);
    return d;
}

PickDensity PickDensity::custom(double lo, double hi, std::function<double(double)> w) {
    if (!(lo < hi)) throw InvalidPickSpecError("pick density: empty support interval");
    PickDensity d;
    d.kind_ = Kind::custom;
    d.lo_ = lo;
    d.hi_ = hi;
    d.w_ = std::move(w);
    return d;
}

double PickDensity::operator()(double x) const {
    if (x < lo_ || x > hi_) return 0.0;
    switch (kind_) {
        case Kind::sqrt_neg_over_pi:
            return std::sqrt(-x) / kPi;
        case Kind::table: {
            const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
            if (it == xs_.begin()) return ws_.front();
            if (it == xs_.end()) return ws_.back();
            const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
            const double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
            return ws_[i - 1] + t * (ws_[i] - ws_[i - 1]);
        }
        case Kind::custom:
            return w_(x);
    }
    return 0.0;
}

PickFunctionSpec make_pick_spec(PickFunctionSpec spec) {
    if (!(spec.alpha >= 0.0) || !std::isfinite(spec.alpha)) {
        throw InvalidPickSpecError("pick spec: alpha must be finite and >= 0");
    }
    if (!std::isfinite(spec.beta)) throw InvalidPickSpecError("pick spec: beta must be finite");
    for (const PickAtom& atom : spec.atoms) {
        if (!(atom.gamma > 0.0) || !std::isfinite(atom.gamma) || !std::isfinite(atom.delta)) {
            throw InvalidPickSpecError("pick spec: atoms need finite delta and gamma > 0");
        }
    }
    if (spec.excluded) {
        const auto [a, b] = *spec.excluded;
        if (!(a < b)) throw InvalidPickSpecError("pick spec: excluded interval is empty");
        for (const PickAtom& atom : spec.atoms) {
            if (atom.delta > a && atom.delta < b) {
                throw InvalidPickSpecError("pick spec: atom at " + std::to_string(atom.delta) +
                                           " lies inside the excluded interval");
            }
        }
        if (spec.density && spec.density->hi() > a && spec.density->lo() < b) {
            throw InvalidPickSpecError(
                "pick spec: density support intersects the excluded interval");
        }
    }
    if (spec.density) check_integrability_proxy(*spec.density);
    return spec;
}

PickFunctionSpec sqrt_pick_spec() {
    PickFunctionSpec spec;
    spec.alpha = 0.0;
    spec.beta = 1.0 / std::sqrt(2.0);
    spec.density = PickDensity::sqrt_neg_over_pi();
    spec.excluded = std::make_pair(0.0, kInf);
    return make_pick_spec(std::move(spec));
}

Complex evaluate_pick(const PickFunctionSpec& spec, Complex z, double quad_tol) {
    for (const PickAtom& atom : spec.atoms) {
        if (std::abs(z - Complex(atom.delta, 0.0)) <=
            1e-13 * std::max(1.0, std::abs(atom.delta))) {
            throw PoleEvaluationError("evaluate_pick: z collides with the atom at " +
                                      std::to_string(atom.delta));
        }
    }
    if (z.imag() == 0.0) {
        const bool inside = spec.excluded && z.real() > spec.excluded->first &&
                            z.real() < spec.excluded->second;
        if (!inside) {
            throw PoleEvaluationError(
                "evaluate_pick: real evaluation point must lie in the excluded interval");
        }
    }
    Complex value = spec.alpha * z + spec.beta;
    for (const PickAtom& atom : spec.atoms) value += atom.gamma / (Complex(atom.delta, 0.0) - z);
    if (spec.density) value += integrate_density(*spec.density, z, quad_tol);
    return value;
}

RealFunction pick_real_function(const PickFunctionSpec& spec, const std::string& label,
                                double quad_tol) {
    if (!spec.excluded) {
        throw InvalidPickSpecError(
            "pick_real_function: spec has no excluded interval to restrict to");
    }
    RealFunction f;
    f.label = label;
    f.lo = spec.excluded->first;
    f.hi = spec.excluded->second;
    f.lo_closed = false;
    f.hi_closed = false;
    f.fn = [spec, quad_tol](double x) {
        return evaluate_pick(spec, Complex(x, 0.0), quad_tol).real();
    };
    return f;
}

}  // namespace qdp
