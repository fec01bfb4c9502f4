#pragma once

// Machine-readable surface specifications.
//
//   {
//     "family": "sphere_b",
//     "curves": [{"family_id": "Ex7_1", "params": {"a": 1, "p": 3, "q": 1, "r": 2}}],
//     "domain": {"x": [0.1, 1.1], "y": [0.1, 1.1]},
//     "grid": {"nx": 21, "ny": 21},
//     "tolerances": {"minimality": 1e-6}
//   }
//
// A curve is either an example family ({"family_id", "params", "variant"}) or
// a built-in test curve ({"builtin": name}). Pair families count as two curves.

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "../curve_families.hpp"
#include "../errors.hpp"
#include "../grid.hpp"
#include "../surfaces.hpp"

namespace lms::harness {

using nlohmann::json;

struct Tolerances {
    double algebraic = kDefaultCausalTol;  ///< premises, quadric membership
    double conditions = 1e-7;              ///< side conditions of the pair families
    double metric = 1e-7;                  ///< null form, closed form, frame, tangency
    double minimality = 1e-6;
    double h_consistency = 1e-9;
    double curvature = 1e-3;
    double gauss = 2e-3;
    double xi = 1e-5;
    double fd = 1e-6;
    double convergence = 4.0;  ///< required improvement when the FD step halves
    double umbilic = 1e-4;     ///< |H + L| on the de Sitter control

    std::map<std::string, double*> fields() {
        return {{"algebraic", &algebraic},   {"conditions", &conditions}, {"metric", &metric},
                {"minimality", &minimality}, {"h_consistency", &h_consistency},
                {"curvature", &curvature},   {"gauss", &gauss},           {"xi", &xi},
                {"fd", &fd},                 {"convergence", &convergence}, {"umbilic", &umbilic}};
    }
};

/// Defaults, with the algebraic tier taken from LMS_DEFAULT_TOL when set.
inline Tolerances default_tolerances() {
    Tolerances t;
    if (const char* env = std::getenv("LMS_DEFAULT_TOL"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(env, &end);
        if (errno != 0 || end == env || *end != '\0' || !std::isfinite(v) || v <= 0.0) {
            throw InvalidInput("LMS_DEFAULT_TOL must be a positive number, got '" + std::string(env) + "'");
        }
        t.algebraic = v;
    }
    return t;
}

struct BuiltinCurve {
    std::string name;
};

using CurveDescriptor = std::variant<ParamFamily, BuiltinCurve>;

inline int curve_count(const CurveDescriptor& d) {
    if (const auto* f = std::get_if<ParamFamily>(&d)) return family_is_pair(f->id) ? 2 : 1;
    return 1;
}

struct FamilyInfo {
    SurfaceFamily family;
    int arity;
    Rect domain;
    const char* summary;
};

inline const std::vector<FamilyInfo>& family_table() {
    static const std::vector<FamilyInfo> table{
        {SurfaceFamily::Translation, 2, kFlatDomain, "z(x) + w(y) for null curves z, w in a flat space"},
        {SurfaceFamily::SphereB, 1, kSphereDomain, "z(x)/(x+y) - z'(x)/2 in a unit pseudo-sphere"},
        {SurfaceFamily::SphereC, 2, kSphereDomain, "(z(x)+w(y))/(x+y) - (z'(x)+w'(y))/2 in a unit pseudo-sphere"},
        {SurfaceFamily::HypII, 1, kHyperbolicDomain,
         "z(x) tanh((x+y)/sqrt2) - z'(x)/sqrt2 in a unit pseudo-hyperbolic space"},
        {SurfaceFamily::HypIII, 2, kHyperbolicDomain,
         "(z(x)+w(y)) tanh((x+y)/sqrt2) - (z'(x)+w'(y))/sqrt2 in a unit pseudo-hyperbolic space"},
        {SurfaceFamily::DeSitterControl, 0, kDeSitterDomain,
         "unit de Sitter surface in flat E^3_1 (non-minimal control)"},
    };
    return table;
}

inline const FamilyInfo& family_info(SurfaceFamily f) {
    for (const auto& info : family_table()) {
        if (info.family == f) return info;
    }
    throw InvalidInput(std::string("no harness support for surface family '") + to_string(f) + "'");
}

inline SurfaceFamily parse_surface_family(const std::string& name) {
    for (const auto& info : family_table()) {
        if (name == to_string(info.family)) return info.family;
    }
    throw InvalidInput("unknown surface family '" + name + "'");
}

struct SurfaceSpec {
    SurfaceFamily family = SurfaceFamily::SphereB;
    std::vector<CurveDescriptor> curves;
    Rect domain = kSphereDomain;
    int nx = 21;
    int ny = 21;
    Tolerances tolerances;

    Grid grid() const { return Grid{domain, nx, ny}; }
};

namespace detail {

inline const json& require_key(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw InvalidInput(where + ": missing \"" + key + "\"");
    return *it;
}

inline double number(const json& j, const std::string& where) {
    if (!j.is_number()) throw InvalidInput(where + ": expected a number");
    return j.get<double>();
}

inline Interval interval(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw InvalidInput(where + ": expected [lo, hi]");
    Interval iv{number(j[0], where), number(j[1], where)};
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi)) {
        throw InvalidInput(where + ": need finite lo < hi");
    }
    return iv;
}

inline void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw InvalidInput(where + ": unknown key \"" + it.key() + "\"");
    }
}

}  // namespace detail

inline CurveDescriptor parse_curve(const json& j) {
    if (!j.is_object()) throw InvalidInput("curve: expected an object");
    if (j.contains("builtin")) {
        detail::reject_unknown(j, {"builtin"}, "curve");
        const auto& name = j["builtin"];
        if (!name.is_string()) throw InvalidInput("curve: \"builtin\" must be a string");
        builtin_curve(name.get<std::string>());  // validates the name
        return BuiltinCurve{name.get<std::string>()};
    }
    detail::reject_unknown(j, {"family_id", "params", "variant"}, "curve");
    const auto& id = detail::require_key(j, "family_id", "curve");
    if (!id.is_string()) throw InvalidInput("curve: \"family_id\" must be a string");
    ParamFamily f{parse_family_id(id.get<std::string>()), {}, CurveVariant::Corrected};
    const auto& params = detail::require_key(j, "params", "curve");
    if (!params.is_object()) throw InvalidInput("curve: \"params\" must be an object");
    for (auto it = params.begin(); it != params.end(); ++it) {
        f.params[it.key()] = detail::number(it.value(), "curve param " + it.key());
    }
    if (j.contains("variant")) {
        if (!j["variant"].is_string()) throw InvalidInput("curve: \"variant\" must be a string");
        f.variant = parse_variant(j["variant"].get<std::string>());
    }
    return f;
}

inline json curve_to_json(const CurveDescriptor& d) {
    if (const auto* b = std::get_if<BuiltinCurve>(&d)) return json{{"builtin", b->name}};
    const auto& f = std::get<ParamFamily>(d);
    json params = json::object();
    for (const auto& [k, v] : f.params) params[k] = v;
    return json{{"family_id", to_string(f.id)}, {"params", params}, {"variant", to_string(f.variant)}};
}

/// Parses and validates a spec; fills defaults for domain, grid and tolerances.
inline SurfaceSpec parse_spec(const json& j) {
    if (!j.is_object()) throw InvalidInput("spec: expected a JSON object");
    detail::reject_unknown(j, {"family", "curves", "domain", "grid", "tolerances"}, "spec");
    const auto& fam = detail::require_key(j, "family", "spec");
    if (!fam.is_string()) throw InvalidInput("spec: \"family\" must be a string");

    SurfaceSpec s;
    s.family = parse_surface_family(fam.get<std::string>());
    const FamilyInfo& info = family_info(s.family);
    s.domain = info.domain;
    s.tolerances = default_tolerances();

    if (j.contains("curves")) {
        if (!j["curves"].is_array()) throw InvalidInput("spec: \"curves\" must be an array");
        for (const auto& c : j["curves"]) s.curves.push_back(parse_curve(c));
    }
    int count = 0;
    for (const auto& c : s.curves) count += curve_count(c);
    if (count != info.arity) {
        throw InvalidInput(std::string("spec: family ") + to_string(s.family) + " takes " +
                           std::to_string(info.arity) + " curve(s), got " + std::to_string(count));
    }

    if (j.contains("domain")) {
        const auto& d = j["domain"];
        if (!d.is_object()) throw InvalidInput("spec: \"domain\" must be an object");
        detail::reject_unknown(d, {"x", "y"}, "domain");
        if (d.contains("x")) s.domain.x = detail::interval(d["x"], "domain.x");
        if (d.contains("y")) s.domain.y = detail::interval(d["y"], "domain.y");
    }
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (!g.is_object()) throw InvalidInput("spec: \"grid\" must be an object");
        detail::reject_unknown(g, {"nx", "ny"}, "grid");
        for (const auto& [key, slot] : {std::pair{"nx", &s.nx}, std::pair{"ny", &s.ny}}) {
            if (!g.contains(key)) continue;
            if (!g[key].is_number_integer() || g[key].get<long long>() < 2 || g[key].get<long long>() > 10000) {
                throw InvalidInput(std::string("grid.") + key + " must be an integer in [2, 10000]");
            }
            *slot = g[key].get<int>();
        }
    }
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (!t.is_object()) throw InvalidInput("spec: \"tolerances\" must be an object");
        auto fields = s.tolerances.fields();
        for (auto it = t.begin(); it != t.end(); ++it) {
            auto f = fields.find(it.key());
            if (f == fields.end()) throw InvalidInput("tolerances: unknown tier \"" + it.key() + "\"");
            const double v = detail::number(it.value(), "tolerances." + it.key());
            if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("tolerances." + it.key() + " must be positive");
            *f->second = v;
        }
    }
    return s;
}

/// The resolved spec, defaults included.
inline json spec_to_json(const SurfaceSpec& s) {
    json curves = json::array();
    for (const auto& c : s.curves) curves.push_back(curve_to_json(c));
    json tol = json::object();
    Tolerances t = s.tolerances;
    for (const auto& [k, v] : t.fields()) tol[k] = *v;
    return json{{"family", to_string(s.family)},
                {"curves", curves},
                {"domain", {{"x", {s.domain.x.lo, s.domain.x.hi}}, {"y", {s.domain.y.lo, s.domain.y.hi}}}},
                {"grid", {{"nx", s.nx}, {"ny", s.ny}}},
                {"tolerances", tol}};
}

/// Expands descriptors into curves, splitting pairs. Throws ConstraintViolation
/// for invalid family parameters.
inline std::vector<Curve> build_curves(const SurfaceSpec& s) {
    std::vector<Curve> out;
    for (const auto& d : s.curves) {
        if (const auto* b = std::get_if<BuiltinCurve>(&d)) {
            out.push_back(builtin_curve(b->name));
            continue;
        }
        auto ex = make_example(std::get<ParamFamily>(d));
        out.push_back(ex.z);
        if (ex.w) out.push_back(*ex.w);
    }
    return out;
}

}  // namespace lms::harness
