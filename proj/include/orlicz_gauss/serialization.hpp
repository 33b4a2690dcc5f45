#ifndef ORLICZ_GAUSS_SERIALIZATION_HPP
#define ORLICZ_GAUSS_SERIALIZATION_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "orlicz_gauss/function.hpp"
#include "orlicz_gauss/quadrature.hpp"
#include "orlicz_gauss/suite.hpp"

namespace orlicz_gauss {

// ---------------------------------------------------------------------------
// Deterministic JSON output. Doubles are printed with 17 significant digits
// (%.17g) so serialized values round-trip exactly and identical configs yield
// byte-identical files. Non-finite values appear as the strings "inf"/"-inf"/
// "nan". Object keys keep insertion order.
// ---------------------------------------------------------------------------
class JValue {
public:
    using Object = std::vector<std::pair<std::string, JValue>>;
    using Array = std::vector<JValue>;

    JValue() : node_(nullptr) {}
    JValue(bool b) : node_(b) {}
    JValue(double d) : node_(d) {}
    JValue(int i) : node_(static_cast<long long>(i)) {}
    JValue(unsigned u) : node_(static_cast<long long>(u)) {}
    JValue(long long i) : node_(i) {}
    JValue(std::size_t u) : node_(static_cast<long long>(u)) {}
    JValue(const char* s) : node_(std::string(s)) {}
    JValue(std::string s) : node_(std::move(s)) {}
    JValue(Array a) : node_(std::move(a)) {}
    JValue(Object o) : node_(std::move(o)) {}

    static JValue object() { return JValue(Object{}); }
    static JValue array() { return JValue(Array{}); }

    JValue& set(const std::string& key, JValue v) {
        std::get<Object>(node_).emplace_back(key, std::move(v));
        return *this;
    }
    JValue& push(JValue v) {
        std::get<Array>(node_).push_back(std::move(v));
        return *this;
    }

    static std::string format_double(double d) {
        if (std::isnan(d)) return "\"nan\"";
        if (std::isinf(d)) return d > 0 ? "\"inf\"" : "\"-inf\"";
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", d);
        return buf;
    }

    void dump(std::string& out) const {
        if (std::holds_alternative<std::nullptr_t>(node_)) {
            out += "null";
        } else if (const bool* b = std::get_if<bool>(&node_)) {
            out += *b ? "true" : "false";
        } else if (const long long* i = std::get_if<long long>(&node_)) {
            out += std::to_string(*i);
        } else if (const double* d = std::get_if<double>(&node_)) {
            out += format_double(*d);
        } else if (const std::string* s = std::get_if<std::string>(&node_)) {
            out += quote(*s);
        } else if (const Array* a = std::get_if<Array>(&node_)) {
            out += '[';
            for (std::size_t k = 0; k < a->size(); ++k) {
                if (k) out += ',';
                (*a)[k].dump(out);
            }
            out += ']';
        } else {
            const Object& o = std::get<Object>(node_);
            out += '{';
            for (std::size_t k = 0; k < o.size(); ++k) {
                if (k) out += ',';
                out += quote(o[k].first);
                out += ':';
                o[k].second.dump(out);
            }
            out += '}';
        }
    }
    std::string dump() const {
        std::string s;
        dump(s);
        return s;
    }

private:
    static std::string quote(const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out += buf;
                    } else {
                        out += c;
                    }
            }
        }
        out += '"';
        return out;
    }
    std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object>
        node_;
};

// ---------------------------------------------------------------------------
// Input parsing (nlohmann). Errors carry the offending field name.
// ---------------------------------------------------------------------------
using nlohmann::json;

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline const json& require(const json& j, const char* field, const char* ctx) {
    auto it = j.find(field);
    if (it == j.end())
        throw ParseError(std::string(ctx) + ": missing field '" + field + "'");
    return *it;
}

inline std::vector<double> double_list(const json& j, const char* field,
                                       const char* ctx) {
    if (!j.is_array())
        throw ParseError(std::string(ctx) + ": field '" + field +
                         "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number())
            throw ParseError(std::string(ctx) + ": field '" + field +
                             "' must contain numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace detail

/// {"kind":"hermite","dim":n,"terms":[{"alpha":[..],"c":..}]} or
/// {"kind":"builtin","name":"...","dim":n,"params":{...}}.
inline FunctionHandle parse_function(const json& j) {
    const std::string kind = detail::require(j, "kind", "function").get<std::string>();
    if (kind == "hermite") {
        const std::size_t dim = detail::require(j, "dim", "function").get<std::size_t>();
        HermiteExpansion e(dim);
        for (const auto& term : detail::require(j, "terms", "function")) {
            const auto alpha =
                detail::double_list(detail::require(term, "alpha", "term"), "alpha", "term");
            std::vector<unsigned> entries;
            for (double a : alpha) {
                if (a < 0 || a != std::floor(a))
                    throw ParseError("term: field 'alpha' must hold non-negative integers");
                entries.push_back(static_cast<unsigned>(a));
            }
            if (entries.size() != dim)
                throw ParseError("term: field 'alpha' length differs from 'dim'");
            e.add(MultiIndex(entries),
                  detail::require(term, "c", "term").get<double>());
        }
        return FunctionHandle(std::move(e));
    }
    if (kind == "builtin") {
        const std::string name =
            detail::require(j, "name", "function").get<std::string>();
        const std::size_t dim = detail::require(j, "dim", "function").get<std::size_t>();
        const json params = j.value("params", json::object());
        if (name == "constant")
            return FunctionHandle(builtins::constant(
                dim, detail::require(params, "value", "params").get<double>()));
        if (name == "coordinate")
            return FunctionHandle(builtins::coordinate(
                dim, detail::require(params, "axis", "params").get<std::size_t>()));
        if (name == "linear") {
            auto theta = detail::double_list(
                detail::require(params, "theta", "params"), "theta", "params");
            if (theta.size() != dim)
                throw ParseError("params: field 'theta' length differs from 'dim'");
            return FunctionHandle(builtins::linear(std::move(theta),
                                                   params.value("shift", 0.0)));
        }
        if (name == "linear_sum")
            return FunctionHandle(builtins::linear_sum(dim, params.value("scale", 1.0)));
        if (name == "exp_linear" || name == "exp_linear_centered") {
            auto theta = detail::double_list(
                detail::require(params, "theta", "params"), "theta", "params");
            if (theta.size() != dim)
                throw ParseError("params: field 'theta' length differs from 'dim'");
            const bool centered =
                name == "exp_linear_centered" || params.value("centered", false);
            return FunctionHandle(builtins::exp_linear(std::move(theta), centered));
        }
        if (name == "gaussian_tilt_density") {
            auto theta = detail::double_list(
                detail::require(params, "theta", "params"), "theta", "params");
            if (theta.size() != dim)
                throw ParseError("params: field 'theta' length differs from 'dim'");
            return FunctionHandle(builtins::gaussian_tilt_density(std::move(theta)));
        }
        if (name == "sin_sum") {
            std::vector<builtins::SinTerm> terms;
            for (const auto& t : detail::require(params, "terms", "params")) {
                terms.push_back({detail::require(t, "amp", "sin term").get<double>(),
                                 detail::require(t, "freq", "sin term").get<double>(),
                                 detail::require(t, "axis", "sin term").get<std::size_t>()});
            }
            return FunctionHandle(builtins::sin_sum(dim, std::move(terms)));
        }
        throw ParseError("function: unknown builtin name '" + name + "'");
    }
    throw ParseError("function: field 'kind' must be 'hermite' or 'builtin'");
}

inline FunctionHandle load_function(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open function file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("malformed JSON in '" + path + "': " + e.what());
    }
    return parse_function(j);
}

inline JValue function_to_jvalue(const FunctionHandle& f) {
    JValue out = JValue::object();
    if (f.is_hermite()) {
        out.set("kind", "hermite");
        out.set("dim", f.dim());
        JValue terms = JValue::array();
        for (const auto& [alpha, c] : f.hermite().terms()) {
            JValue term = JValue::object();
            JValue idx = JValue::array();
            for (unsigned e : alpha.entries()) idx.push(e);
            term.set("alpha", std::move(idx));
            term.set("c", c);
            terms.push(std::move(term));
        }
        out.set("terms", std::move(terms));
    } else {
        out.set("kind", "builtin");
        out.set("name", f.builtin().name());
        out.set("dim", f.dim());
    }
    return out;
}

/// Quadrature spec: {"mode":"gh","order":m} | {"mode":"mc","samples":N,"seed":s}
/// or the CLI strings "gh:m" / "mc:N:s".
struct QuadratureSpec {
    enum class Mode { GaussHermite, MonteCarlo };
    Mode mode = Mode::GaussHermite;
    unsigned order = 64;
    std::size_t samples = 100000;
    std::uint64_t seed = 0;

    GaussQuadrature realize(std::size_t dim) const {
        if (mode == Mode::GaussHermite)
            return GaussQuadrature::gauss_hermite(dim, order);
        return GaussQuadrature::monte_carlo(dim, samples, seed);
    }

    static QuadratureSpec parse_string(const std::string& s) {
        QuadratureSpec spec;
        try {
            if (s.rfind("gh:", 0) == 0) {
                spec.mode = Mode::GaussHermite;
                spec.order = static_cast<unsigned>(std::stoul(s.substr(3)));
                return spec;
            }
            if (s.rfind("mc:", 0) == 0) {
                spec.mode = Mode::MonteCarlo;
                const std::string rest = s.substr(3);
                const auto colon = rest.find(':');
                spec.samples = std::stoull(rest.substr(0, colon));
                spec.seed = colon == std::string::npos
                                ? 0
                                : std::stoull(rest.substr(colon + 1));
                return spec;
            }
        } catch (const std::exception&) {
            throw ParseError("quad: cannot parse '" + s + "'");
        }
        throw ParseError("quad: expected 'gh:<order>' or 'mc:<samples>[:<seed>]'");
    }

    static QuadratureSpec parse_json(const json& j) {
        QuadratureSpec spec;
        const std::string mode = detail::require(j, "mode", "quad").get<std::string>();
        if (mode == "gh") {
            spec.mode = Mode::GaussHermite;
            spec.order = detail::require(j, "order", "quad").get<unsigned>();
        } else if (mode == "mc") {
            spec.mode = Mode::MonteCarlo;
            spec.samples = detail::require(j, "samples", "quad").get<std::size_t>();
            spec.seed = j.value("seed", 0ull);
        } else {
            throw ParseError("quad: field 'mode' must be 'gh' or 'mc'");
        }
        return spec;
    }

    JValue to_jvalue() const {
        JValue out = JValue::object();
        if (mode == Mode::GaussHermite) {
            out.set("mode", "gh");
            out.set("order", order);
        } else {
            out.set("mode", "mc");
            out.set("samples", samples);
            out.set("seed", static_cast<long long>(seed));
        }
        return out;
    }

    std::string to_string() const {
        if (mode == Mode::GaussHermite) return "gh:" + std::to_string(order);
        return "mc:" + std::to_string(samples) + ":" + std::to_string(seed);
    }
};

/// Catalog file: {"entries":[{"id":..,"role":"function"|"density",
/// "function":{...}}]}.
inline Catalog parse_catalog(const json& j) {
    Catalog cat;
    for (const auto& e : detail::require(j, "entries", "catalog")) {
        const std::string id = detail::require(e, "id", "entry").get<std::string>();
        const std::string role = e.value("role", std::string("function"));
        if (role != "function" && role != "density")
            throw ParseError("entry '" + id + "': field 'role' must be 'function' or 'density'");
        cat.emplace_back(id, parse_function(detail::require(e, "function", "entry")),
                         role == "density");
    }
    return cat;
}

inline Catalog load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open catalog file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("malformed JSON in '" + path + "': " + e.what());
    }
    return parse_catalog(j);
}

/// {"points":[[..],[..]]} or a bare array of points.
inline std::vector<std::vector<double>> load_points(const std::string& path,
                                                    std::size_t dim) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open points file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("malformed JSON in '" + path + "': " + e.what());
    }
    const json& arr = j.is_object() ? detail::require(j, "points", "points") : j;
    if (!arr.is_array()) throw ParseError("points: expected an array of points");
    std::vector<std::vector<double>> out;
    for (const auto& p : arr) {
        auto pt = detail::double_list(p, "points", "points");
        if (pt.size() != dim)
            throw ParseError("points: a point has the wrong dimension");
        out.push_back(std::move(pt));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Report serialization.
// ---------------------------------------------------------------------------

inline const char* status_name(ReportRow::Status s) {
    switch (s) {
        case ReportRow::Status::Ok: return "ok";
        case ReportRow::Status::Vacuous: return "vacuous";
        case ReportRow::Status::Error: return "error";
    }
    return "?";
}

inline JValue row_to_jvalue(const ReportRow& row) {
    JValue out = JValue::object();
    out.set("name", row.name);
    out.set("function_id", row.function_id);
    out.set("phi_name", row.phi_name);
    out.set("lhs", row.lhs);
    out.set("rhs", row.rhs);
    out.set("margin", row.margin);
    out.set("holds", row.holds);
    out.set("status", status_name(row.status));
    if (!row.message.empty()) out.set("message", row.message);
    JValue params = JValue::object();
    for (const auto& [k, v] : row.params) params.set(k, v);
    out.set("params", std::move(params));
    return out;
}

inline JValue report_to_jvalue(const InequalityReport& report) {
    JValue out = JValue::object();
    JValue summary = JValue::object();
    summary.set("total", report.total());
    summary.set("holds", report.holds_count());
    summary.set("vacuous", report.vacuous_count());
    summary.set("failed", report.failed_count());
    summary.set("errors", report.error_count());
    out.set("summary", std::move(summary));
    JValue rows = JValue::array();
    for (const auto& r : report.rows) rows.push(row_to_jvalue(r));
    out.set("rows", std::move(rows));
    return out;
}

/// CSV rows with the same fields as the JSON rows (params JSON-encoded in the
/// last column).
inline std::string report_to_csv(const InequalityReport& report) {
    std::string out = "name,function_id,phi_name,lhs,rhs,margin,holds,status,params\n";
    auto csv_quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += "\"\"";
            else q += c;
        }
        q += "\"";
        return q;
    };
    auto num = [](double d) {
        std::string s = JValue::format_double(d);
        if (!s.empty() && s.front() == '"') s = s.substr(1, s.size() - 2);
        return s;
    };
    for (const auto& r : report.rows) {
        JValue params = JValue::object();
        for (const auto& [k, v] : r.params) params.set(k, v);
        out += csv_quote(r.name) + "," + csv_quote(r.function_id) + "," +
               csv_quote(r.phi_name) + "," + num(r.lhs) + "," + num(r.rhs) + "," +
               num(r.margin) + "," + (r.holds ? "true" : "false") + "," +
               status_name(r.status) + "," + csv_quote(params.dump()) + "\n";
    }
    return out;
}

inline JValue norm_result_to_jvalue(const NormResult& r) {
    JValue out = JValue::object();
    out.set("value", r.value);
    out.set("modular_at_value", r.modular_at_value);
    out.set("iterations", r.iterations);
    JValue bracket = JValue::array();
    bracket.push(r.bracket_lo);
    bracket.push(r.bracket_hi);
    out.set("bracket", std::move(bracket));
    out.set("diverged", r.diverged);
    return out;
}

}  // namespace orlicz_gauss

#endif  // ORLICZ_GAUSS_SERIALIZATION_HPP
