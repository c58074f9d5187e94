// Default numerical tolerances. Each knob is documented where it is consumed.
#pragma once

namespace qdp::tol {

inline constexpr double eig = 1e-12;    // off-diagonal Frobenius mass target of eigh
inline constexpr double herm = 1e-10;   // max-entry Hermitian symmetry defect
inline constexpr double psd = 1e-9;     // min-eigenvalue slack for positivity
inline constexpr double dom = 1e-10;    // eigenvalue slack at closed domain endpoints
inline constexpr double trace = 1e-10;  // unit-trace defect of a state
inline constexpr double supp = 1e-9;    // eigenvalue cutoff separating support from kernel
inline constexpr double tp = 1e-10;     // trace-preservation defect of a channel
inline constexpr double dpi = 1e-8;     // slack floor for the inequality suites
inline constexpr double quad = 1e-6;    // absolute quadrature error target

}  // namespace qdp::tol
