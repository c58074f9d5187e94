// JSON forms of the library's types.
//
//   matrix  {"rows": n, "cols": m, "data": [[re, im], ...]}   (row-major)
//   channel {"dim_in": n, "dim_out": m, "kraus": [<matrix>, ...]}
//   pick    {"alpha": a, "beta": b, "atoms": [{"delta": d, "gamma": g}],
//            "density": {"kind": ..., "lo": ..., "hi": ..., ...} | null,
//            "excluded": [a, b] | null}
//   report  {"check": s, "trials": n, "violations": k, "max_violation": x,
//            "seed": s, "config": {...}, "pass": b, "worst_witness": {...}|null}
//
// Parsers reject wrong lengths, wrong types, and non-finite values. Output
// goes through dump_json_17, which fixes key order (insertion order) and
// prints every float with 17 significant digits so that identical reports
// serialize byte-identically.
#pragma once

#include <string>

#include <json.hpp>

#include "qdp/channels.hpp"
#include "qdp/matrix.hpp"
#include "qdp/pick.hpp"
#include "qdp/report.hpp"
#include "qdp/states.hpp"

namespace qdp {

nlohmann::ordered_json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

// Validates both state invariants; the error names the one that failed.
DensityOperator density_from_json(const nlohmann::json& j, double tol_psd = tol::psd,
                                  double tol_trace = tol::trace);

nlohmann::ordered_json channel_to_json(const KrausChannel& ch);
// Re-validates trace preservation; the error reports the Frobenius defect of
// sum K†K - 1.
KrausChannel channel_from_json(const nlohmann::json& j, double tol_tp = tol::tp);

PickFunctionSpec pick_spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json pick_spec_to_json(const PickFunctionSpec& spec);

nlohmann::ordered_json report_to_json(const VerificationReport& r);

std::string format_double_17(double v);
std::string dump_json_17(const nlohmann::ordered_json& j, int indent = 2);

}  // namespace qdp
