#include "qdp/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "qdp/errors.hpp"

namespace qdp {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

double finite_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw JsonFormatError(where + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw JsonFormatError(where + ": non-finite value");
    return v;
}

std::size_t positive_integer(const json& j, const std::string& where) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) {
        throw JsonFormatError(where + ": expected a positive integer");
    }
    const long long v = j.get<long long>();
    if (v <= 0) throw JsonFormatError(where + ": expected a positive integer");
    return static_cast<std::size_t>(v);
}

const json& required(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) {
        throw JsonFormatError(where + ": missing field \"" + key + "\"");
    }
    return j.at(key);
}

// Accepts a number or the strings "inf"/"+inf"/"-inf" (ASCII or U+2212 minus).
double number_or_infinity(const json& j, const std::string& where) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf" || s == "−inf") return -std::numeric_limits<double>::infinity();
        throw JsonFormatError(where + ": unrecognized bound \"" + s + "\"");
    }
    return finite_number(j, where);
}

}  // namespace

ordered_json matrix_to_json(const ComplexMatrix& m) {
    ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    ordered_json data = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t c = 0; c < m.cols(); ++c)
            data.push_back(ordered_json::array({m(i, c).real(), m(i, c).imag()}));
    j["data"] = std::move(data);
    return j;
}

ComplexMatrix matrix_from_json(const json& j) {
    const std::size_t rows = positive_integer(required(j, "rows", "matrix"), "matrix.rows");
    const std::size_t cols = positive_integer(required(j, "cols", "matrix"), "matrix.cols");
    const json& data = required(j, "data", "matrix");
    if (!data.is_array() || data.size() != rows * cols) {
        throw JsonFormatError("matrix.data: expected " + std::to_string(rows * cols) +
                              " entries, got " +
                              std::to_string(data.is_array() ? data.size() : 0));
    }
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const json& e : data) {
        if (!e.is_array() || e.size() != 2) {
            throw JsonFormatError("matrix.data: each entry must be a [re, im] pair");
        }
        entries.emplace_back(finite_number(e[0], "matrix.data[..][0]"),
                             finite_number(e[1], "matrix.data[..][1]"));
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

DensityOperator density_from_json(const json& j, double tol_psd, double tol_trace) {
    return DensityOperator(matrix_from_json(j), tol_psd, tol_trace);
}

ordered_json channel_to_json(const KrausChannel& ch) {
    ordered_json j;
    j["dim_in"] = ch.dim_in();
    j["dim_out"] = ch.dim_out();
    ordered_json kraus = ordered_json::array();
    for (const ComplexMatrix& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
    j["kraus"] = std::move(kraus);
    return j;
}

KrausChannel channel_from_json(const json& j, double tol_tp) {
    const std::size_t dim_in = positive_integer(required(j, "dim_in", "channel"), "channel.dim_in");
    const std::size_t dim_out =
        positive_integer(required(j, "dim_out", "channel"), "channel.dim_out");
    const json& kraus = required(j, "kraus", "channel");
    if (!kraus.is_array() || kraus.empty()) {
        throw JsonFormatError("channel.kraus: expected a nonempty array");
    }
    std::vector<ComplexMatrix> ops;
    ops.reserve(kraus.size());
    for (const json& k : kraus) {
        ComplexMatrix m = matrix_from_json(k);
        if (m.rows() != dim_out || m.cols() != dim_in) {
            throw JsonFormatError("channel.kraus: operator shape " + std::to_string(m.rows()) +
                                  "x" + std::to_string(m.cols()) + " does not match dims");
        }
        ops.push_back(std::move(m));
    }
    try {
        return KrausChannel(std::move(ops), tol_tp);
    } catch (const InvalidChannelError& e) {
        throw JsonFormatError(std::string("channel: ") + e.what());
    }
}

PickFunctionSpec pick_spec_from_json(const json& j) {
    PickFunctionSpec spec;
    spec.alpha = finite_number(required(j, "alpha", "pick"), "pick.alpha");
    spec.beta = finite_number(required(j, "beta", "pick"), "pick.beta");
    if (j.contains("atoms") && !j.at("atoms").is_null()) {
        const json& atoms = j.at("atoms");
        if (!atoms.is_array()) throw JsonFormatError("pick.atoms: expected an array");
        for (const json& a : atoms) {
            PickAtom atom;
            atom.delta = finite_number(required(a, "delta", "pick.atoms[..]"), "pick.atoms.delta");
            atom.gamma = finite_number(required(a, "gamma", "pick.atoms[..]"), "pick.atoms.gamma");
            spec.atoms.push_back(atom);
        }
    }
    if (j.contains("density") && !j.at("density").is_null()) {
        const json& d = j.at("density");
        const json& kind = required(d, "kind", "pick.density");
        if (!kind.is_string()) throw JsonFormatError("pick.density.kind: expected a string");
        const std::string k = kind.get<std::string>();
        if (k == "sqrt_neg_over_pi") {
            if (d.contains("lo") &&
                number_or_infinity(d.at("lo"), "pick.density.lo") !=
                    -std::numeric_limits<double>::infinity()) {
                throw JsonFormatError("pick.density: sqrt_neg_over_pi requires lo = -inf");
            }
            if (d.contains("hi") && number_or_infinity(d.at("hi"), "pick.density.hi") != 0.0) {
                throw JsonFormatError("pick.density: sqrt_neg_over_pi requires hi = 0");
            }
            spec.density = PickDensity::sqrt_neg_over_pi();
        } else if (k == "table") {
            const json& xs = required(d, "xs", "pick.density");
            const json& ws = required(d, "ws", "pick.density");
            if (!xs.is_array() || !ws.is_array()) {
                throw JsonFormatError("pick.density: xs and ws must be arrays");
            }
            std::vector<double> xv, wv;
            for (const json& x : xs) xv.push_back(finite_number(x, "pick.density.xs[..]"));
            for (const json& w : ws) wv.push_back(finite_number(w, "pick.density.ws[..]"));
            try {
                spec.density = PickDensity::table(std::move(xv), std::move(wv));
            } catch (const InvalidPickSpecError& e) {
                throw JsonFormatError(std::string("pick.density: ") + e.what());
            }
        } else {
            throw JsonFormatError("pick.density.kind: unknown kind \"" + k + "\"");
        }
    }
    if (j.contains("excluded") && !j.at("excluded").is_null()) {
        const json& e = j.at("excluded");
        if (!e.is_array() || e.size() != 2) {
            throw JsonFormatError("pick.excluded: expected [a, b]");
        }
        spec.excluded = std::make_pair(number_or_infinity(e[0], "pick.excluded[0]"),
                                       number_or_infinity(e[1], "pick.excluded[1]"));
    }
    try {
        return make_pick_spec(std::move(spec));
    } catch (const InvalidPickSpecError& e) {
        throw JsonFormatError(std::string("pick: ") + e.what());
    }
}

ordered_json pick_spec_to_json(const PickFunctionSpec& spec) {
    ordered_json j;
    j["alpha"] = spec.alpha;
    j["beta"] = spec.beta;
    ordered_json atoms = ordered_json::array();
    for (const PickAtom& a : spec.atoms) {
        atoms.push_back(ordered_json{{"delta", a.delta}, {"gamma", a.gamma}});
    }
    j["atoms"] = std::move(atoms);
    if (spec.density) {
        ordered_json d;
        switch (spec.density->kind()) {
            case PickDensity::Kind::sqrt_neg_over_pi:
                d["kind"] = "sqrt_neg_over_pi";
                d["lo"] = "-inf";
                d["hi"] = 0.0;
                break;
            case PickDensity::Kind::table:
                d["kind"] = "table";
                d["xs"] = spec.density->table_xs();
                d["ws"] = spec.density->table_ws();
                break;
            case PickDensity::Kind::custom:
                throw Error("pick_spec_to_json: custom densities have no JSON form");
        }
        j["density"] = std::move(d);
    } else {
        j["density"] = nullptr;
    }
    if (spec.excluded) {
        ordered_json e = ordered_json::array();
        const auto put = [&](double v) {
            if (std::isinf(v)) {
                e.push_back(v > 0 ? "inf" : "-inf");
            } else {
                e.push_back(v);
            }
        };
        put(spec.excluded->first);
        put(spec.excluded->second);
        j["excluded"] = std::move(e);
    } else {
        j["excluded"] = nullptr;
    }
    return j;
}

ordered_json report_to_json(const VerificationReport& r) {
    ordered_json j;
    j["check"] = r.check_name;
    j["trials"] = r.trials;
    j["violations"] = r.violations;
    j["max_violation"] = r.max_violation;
    j["seed"] = r.seed;
    j["config"] = r.config;
    j["pass"] = r.pass;
    j["worst_witness"] = r.worst_witness ? *r.worst_witness : ordered_json(nullptr);
    return j;
}

std::string format_double_17(double v) {
    if (!std::isfinite(v)) throw Error("format_double_17: non-finite value");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void dump_rec(const ordered_json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string closing_pad(static_cast<std::size_t>(indent) * depth, ' ');
    switch (j.type()) {
        case ordered_json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                out += ordered_json(it.key()).dump();  // escaped key
                out += ": ";
                dump_rec(it.value(), out, indent, depth + 1);
            }
            out += "\n" + closing_pad + "}";
            return;
        }
        case ordered_json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line; arrays holding containers
            // get one element per line.
            bool nested = false;
            for (const auto& e : j) nested = nested || e.is_structured();
            out += "[";
            bool first = true;
            for (const auto& e : j) {
                if (!first) out += nested ? ",\n" + pad : ", ";
                if (first && nested) out += "\n" + pad;
                first = false;
                dump_rec(e, out, indent, depth + 1);
            }
            if (nested) out += "\n" + closing_pad;
            out += "]";
            return;
        }
        case ordered_json::value_t::number_float:
            out += format_double_17(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_json_17(const ordered_json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    return out;
}

}  // namespace qdp
