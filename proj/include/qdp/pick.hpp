// Pick functions given by the (alpha, beta, mu) integral-representation data:
// phi(z) = alpha z + beta + sum_i gamma_i/(delta_i - z)
//                  + integral (1/(x-z) - x/(x^2+1)) w(x) dx.
// The measure splits into point atoms and an absolutely continuous part.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdp/eigen.hpp"
#include "qdp/matrix.hpp"
#include "qdp/tolerances.hpp"

namespace qdp {

struct PickAtom {
    double delta = 0.0;  // location
    double gamma = 0.0;  // weight, > 0
};

// Absolutely continuous part of the measure: a pointwise density w >= 0 on a
// support interval, possibly unbounded below/above.
class PickDensity {
public:
    enum class Kind { sqrt_neg_over_pi, table, custom };

    // w(x) = sqrt(-x)/pi on (-inf, 0].
    static PickDensity sqrt_neg_over_pi();
    // piecewise-linear interpolation of (xs, ws) on [xs.front(), xs.back()].
    static PickDensity table(std::vector<double> xs, std::vector<double> ws);
    static PickDensity custom(double lo, double hi, std::function<double(double)> w);

    Kind kind() const { return kind_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::vector<double>& table_xs() const { return xs_; }
    const std::vector<double>& table_ws() const { return ws_; }

    double operator()(double x) const;  // w(x); 0 outside the support

private:
    PickDensity() = default;
    Kind kind_ = Kind::custom;
    double lo_ = 0.0;
    double hi_ = 0.0;
    std::vector<double> xs_, ws_;
    std::function<double(double)> w_;
};

struct PickFunctionSpec {
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<PickAtom> atoms;
    std::optional<PickDensity> density;
    // Open interval (a, b) on which the measure vanishes; second may be +inf.
    // Real evaluation points must lie here.
    std::optional<std::pair<double, double>> excluded;
};

// Validating constructor path. Checks alpha >= 0, gamma > 0, disjointness of
// the excluded interval from atoms and density support, and the integrability
// proxy (integral of w/(x^2+1) must converge on a doubled truncation ladder).
// Throws InvalidPickSpec.
PickFunctionSpec make_pick_spec(PickFunctionSpec spec);

// The representation of sqrt(z): alpha = 0, beta = 1/sqrt(2), density
// sqrt(-x)/pi on (-inf, 0], excluded interval (0, inf).
PickFunctionSpec sqrt_pick_spec();

// Evaluate at z. Throws PoleEvaluation when z collides with an atom or the
// support (real z must lie inside the excluded interval), QuadratureFailure
// when adaptive refinement cannot reach quad_tol.
Complex evaluate_pick(const PickFunctionSpec& spec, Complex z, double quad_tol = tol::quad);

// Restriction to the excluded interval as a real function (for the
// monotonicity suites). Requires an excluded interval.
RealFunction pick_real_function(const PickFunctionSpec& spec, const std::string& label,
                                double quad_tol = tol::quad);

}  // namespace qdp
