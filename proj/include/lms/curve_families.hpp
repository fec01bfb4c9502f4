#pragma once

// Factories for the explicit example curves of the sphere and hyperbolic
// constructions, plus a few named test curves.
//
// Parameters are validated by evaluating every radicand and denominator of
// the closed forms directly. The parameter ordering chains that accompany
// each family are reported separately as advisory metadata; for Ex7_2 the
// chain forces the radicand 315p^2+1024q^2-3024r^2-1280 negative.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "curves.hpp"
#include "errors.hpp"
#include "pea.hpp"

namespace lms {

enum class FamilyId { Ex7_1, Ex7_2, Ex8_1, Ex8_2 };

/// Two readings of the Ex8_1 and Ex8_2 coordinates. Corrected: Ex8_1's fifth
/// coordinate is a*sinh(x) and Ex8_2's last two w-coordinates use s and r.
/// Literal: a*sinh(px), and cosh(qy), cosh(py); these coincide with Corrected
/// when p = 1 (Ex8_1) or p = r, q = s (Ex8_2).
enum class CurveVariant { Corrected, Literal };

inline const char* to_string(FamilyId id) {
    switch (id) {
        case FamilyId::Ex7_1: return "Ex7_1";
        case FamilyId::Ex7_2: return "Ex7_2";
        case FamilyId::Ex8_1: return "Ex8_1";
        case FamilyId::Ex8_2: return "Ex8_2";
    }
    return "?";
}

inline const char* to_string(CurveVariant v) {
    return v == CurveVariant::Corrected ? "corrected" : "literal";
}

inline FamilyId parse_family_id(std::string_view s) {
    if (s == "Ex7_1") return FamilyId::Ex7_1;
    if (s == "Ex7_2") return FamilyId::Ex7_2;
    if (s == "Ex8_1") return FamilyId::Ex8_1;
    if (s == "Ex8_2") return FamilyId::Ex8_2;
    throw InvalidInput("unknown curve family '" + std::string(s) + "'");
}

inline CurveVariant parse_variant(std::string_view s) {
    if (s == "corrected") return CurveVariant::Corrected;
    if (s == "literal") return CurveVariant::Literal;
    throw InvalidInput("unknown curve variant '" + std::string(s) + "'");
}

inline std::vector<std::string> family_param_names(FamilyId id) {
    switch (id) {
        case FamilyId::Ex7_1: return {"a", "p", "q", "r"};
        case FamilyId::Ex7_2: return {"p", "q", "r"};
        case FamilyId::Ex8_1: return {"a", "b", "p", "q"};
        case FamilyId::Ex8_2: return {"a", "b", "p", "q", "r", "s"};
    }
    return {};
}

inline bool family_is_pair(FamilyId id) { return id == FamilyId::Ex7_2 || id == FamilyId::Ex8_2; }

/// Signature of the flat space the family's curves live in.
inline Signature family_signature(FamilyId id) {
    switch (id) {
        case FamilyId::Ex7_1: return {7, 3};
        case FamilyId::Ex7_2: return {14, 6};
        case FamilyId::Ex8_1: return {8, 4};
        case FamilyId::Ex8_2: return {14, 8};
    }
    return {1, 0};
}

/// Sphere families for section-7 curves, hyperbolic for section-8 ones.
inline Ambient family_ambient(FamilyId id) {
    const bool sphere = id == FamilyId::Ex7_1 || id == FamilyId::Ex7_2;
    return Ambient::from_embedding(sphere ? AmbientKind::Sphere : AmbientKind::Hyperbolic,
                                   family_signature(id));
}

struct ParamFamily {
    FamilyId id = FamilyId::Ex7_1;
    std::map<std::string, double> params;
    CurveVariant variant = CurveVariant::Corrected;

    double operator[](const std::string& name) const {
        auto it = params.find(name);
        if (it == params.end()) {
            throw InvalidInput(std::string(to_string(id)) + ": missing parameter '" + name + "'");
        }
        return it->second;
    }
};

enum class ConstraintKind {
    Radicand,         ///< argument of a square root in the numerator, >= 0
    PositiveRadicand  ///< square root in a denominator, > 0
};

struct ConstraintValue {
    std::string label;
    double value;
    ConstraintKind kind;

    bool holds() const noexcept {
        return kind == ConstraintKind::Radicand ? value >= 0.0 : value > 0.0;
    }
};

struct OrderingConstraint {
    std::string label;
    bool holds;
};

namespace detail {

inline void require_params(const ParamFamily& f) {
    for (const auto& name : family_param_names(f.id)) {
        const double v = f[name];
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw InvalidInput(std::string(to_string(f.id)) + ": parameter '" + name +
                               "' must be positive and finite, got " + std::to_string(v));
        }
    }
    for (const auto& [name, _] : f.params) {
        bool known = false;
        for (const auto& n : family_param_names(f.id)) known = known || n == name;
        if (!known) {
            throw InvalidInput(std::string(to_string(f.id)) + ": unknown parameter '" + name + "'");
        }
    }
}

inline double sq(double v) { return v * v; }

}  // namespace detail

/// Every radicand and square-rooted denominator of the family's closed form.
inline std::vector<ConstraintValue> family_constraints(const ParamFamily& f) {
    using detail::sq;
    detail::require_params(f);
    using K = ConstraintKind;
    switch (f.id) {
        case FamilyId::Ex7_1: {
            const double a = f["a"], p = f["p"], q = f["q"], r = f["r"];
            return {
                {"r^2-q^2", sq(r) - sq(q), K::PositiveRadicand},
                {"4r^2+a^2p^2(p^2-r^2)", 4 * sq(r) + sq(a) * sq(p) * (sq(p) - sq(r)), K::Radicand},
                {"4q^2+a^2p^2(p^2-q^2)", 4 * sq(q) + sq(a) * sq(p) * (sq(p) - sq(q)), K::Radicand},
                {"4(q^2+r^2)+a^2(p^2-r^2)(p^2-q^2)",
                 4 * (sq(q) + sq(r)) + sq(a) * (sq(p) - sq(r)) * (sq(p) - sq(q)), K::Radicand},
            };
        }
        case FamilyId::Ex7_2: {
            const double p = f["p"], q = f["q"], r = f["r"];
            return {
                {"256q^2+369r^2", 256 * sq(q) + 369 * sq(r), K::Radicand},
                {"16q^2+609r^2", 16 * sq(q) + 609 * sq(r), K::Radicand},
                {"320+225p^2+756r^2-256q^2", 320 + 225 * sq(p) + 756 * sq(r) - 256 * sq(q), K::Radicand},
                {"315p^2+1024q^2-3024r^2-1280", 315 * sq(p) + 1024 * sq(q) - 3024 * sq(r) - 1280,
                 K::Radicand},
                {"320+756r^2-35p^2-256q^2", 320 + 756 * sq(r) - 35 * sq(p) - 256 * sq(q), K::Radicand},
            };
        }
        case FamilyId::Ex8_1: {
            const double a = f["a"], b = f["b"], p = f["p"], q = f["q"];
            return {
                {"q^2-p^2", sq(q) - sq(p), K::PositiveRadicand},
                {"q^2(2+a^2)-(4+a^2)", sq(q) * (2 + sq(a)) - (4 + sq(a)), K::Radicand},
                {"4+a^2-p^2(2+a^2)", 4 + sq(a) - sq(p) * (2 + sq(a)), K::Radicand},
                {"b^2p^2q^2-a^2(q^2-1)(1-p^2)-2(p^2+q^2-2)",
                 sq(b) * sq(p) * sq(q) - sq(a) * (sq(q) - 1) * (1 - sq(p)) - 2 * (sq(p) + sq(q) - 2),
                 K::Radicand},
            };
        }
        case FamilyId::Ex8_2: {
            const double a = f["a"], b = f["b"], p = f["p"], q = f["q"], r = f["r"], s = f["s"];
            return {
                {"(p^2-1)(q^2-1)", (sq(p) - 1) * (sq(q) - 1), K::PositiveRadicand},
                {"(q^2-p^2)(q^2-1)", (sq(q) - sq(p)) * (sq(q) - 1), K::PositiveRadicand},
                {"(q^2-p^2)(p^2-1)", (sq(q) - sq(p)) * (sq(p) - 1), K::PositiveRadicand},
                {"p^2+q^2-b^2p^2q^2-2", sq(p) + sq(q) - sq(b) * sq(p) * sq(q) - 2, K::Radicand},
                {"1-p^2(1-b^2)", 1 - sq(p) * (1 - sq(b)), K::Radicand},
                {"q^2(1-b^2)-1", sq(q) * (1 - sq(b)) - 1, K::Radicand},
                {"(r^2-1)(s^2-1)", (sq(r) - 1) * (sq(s) - 1), K::PositiveRadicand},
                {"(s^2-r^2)(s^2-1)", (sq(s) - sq(r)) * (sq(s) - 1), K::PositiveRadicand},
                {"(s^2-r^2)(r^2-1)", (sq(s) - sq(r)) * (sq(r) - 1), K::PositiveRadicand},
                {"r^2+s^2-a^2r^2s^2-2", sq(r) + sq(s) - sq(a) * sq(r) * sq(s) - 2, K::Radicand},
                {"1-r^2(1-a^2)", 1 - sq(r) * (1 - sq(a)), K::Radicand},
                {"s^2(1-a^2)-1", sq(s) * (1 - sq(a)) - 1, K::Radicand},
            };
        }
    }
    return {};
}

/// The parameter ordering chain stated for each family. Advisory only.
inline std::vector<OrderingConstraint> ordering_constraints(const ParamFamily& f) {
    using detail::sq;
    detail::require_params(f);
    switch (f.id) {
        case FamilyId::Ex7_1: {
            const double p = f["p"], q = f["q"], r = f["r"];
            return {{"p>r", p > r}, {"r>q", r > q}, {"q>0", q > 0}};
        }
        case FamilyId::Ex7_2: {
            const double p = f["p"], q = f["q"], r = f["r"];
            const double mid = 80 + 189 * sq(r) - 64 * sq(q);
            return {{"(315/4)p^2>80+189r^2-64q^2", 315.0 / 4.0 * sq(p) > mid},
                    {"80+189r^2-64q^2>35p^2", mid > 35 * sq(p)}};
        }
        case FamilyId::Ex8_1: {
            const double a = f["a"], b = f["b"], p = f["p"], q = f["q"];
            const double m = (4 + sq(a)) / (2 + sq(a));
            const double bound =
                (sq(a) * (sq(q) - 1) * (1 - sq(p)) + 2 * (sq(p) + sq(q) - 2)) / (sq(p) * sq(q));
            return {{"p^2<(4+a^2)/(2+a^2)", sq(p) < m},
                    {"(4+a^2)/(2+a^2)<q^2", m < sq(q)},
                    {"b^2>(a^2(q^2-1)(1-p^2)+2(p^2+q^2-2))/(p^2q^2)", sq(b) > bound}};
        }
        case FamilyId::Ex8_2: {
            const double a = f["a"], b = f["b"], p = f["p"], q = f["q"], r = f["r"], s = f["s"];
            return {{"a<1", a < 1},
                    {"b<1", b < 1},
                    {"p>1", p > 1},
                    {"q>1", q > 1},
                    {"r>1", r > 1},
                    {"s>1", s > 1},
                    {"p^2<1/(1-b^2)", sq(p) < 1 / (1 - sq(b))},
                    {"1/(1-b^2)<q^2", 1 / (1 - sq(b)) < sq(q)},
                    {"r^2<1/(1-a^2)", sq(r) < 1 / (1 - sq(a))},
                    {"1/(1-a^2)<s^2", 1 / (1 - sq(a)) < sq(s)},
                    {"b^2<(p^2+q^2-2)/(p^2q^2)", sq(b) < (sq(p) + sq(q) - 2) / (sq(p) * sq(q))},
                    {"a^2<(r^2+s^2-2)/(r^2s^2)", sq(a) < (sq(r) + sq(s) - 2) / (sq(r) * sq(s))}};
        }
    }
    return {};
}

inline bool ordering_holds(const ParamFamily& f) {
    for (const auto& c : ordering_constraints(f)) {
        if (!c.holds) return false;
    }
    return true;
}

/// Throws ConstraintViolation naming the first radicand that fails.
inline void validate_family(const ParamFamily& f) {
    for (const auto& c : family_constraints(f)) {
        if (!c.holds()) throw ConstraintViolation(c.label, c.value);
    }
}

struct ExampleCurves {
    Curve z;
    std::optional<Curve> w;
};

/// Builds the family's curve (or pair) with exact derivatives on the default domain [-2,2].
inline ExampleCurves make_example(const ParamFamily& f) {
    using detail::sq;
    validate_family(f);
    const Signature sig = family_signature(f.id);
    const std::vector<Term> none;
    auto C = [](double c, double w) { return Component{cosh_term(c, w)}; };
    auto S = [](double c, double w) { return Component{sinh_term(c, w)}; };
    auto K = [](double c) { return Component{constant_term(c)}; };
    const std::string tag = to_string(f.id);

    switch (f.id) {
        case FamilyId::Ex7_1: {
            const double a = f["a"], p = f["p"], q = f["q"], r = f["r"];
            const double d = std::sqrt(sq(r) - sq(q));
            const double A = std::sqrt(4 * sq(r) + sq(a) * sq(p) * (sq(p) - sq(r))) / (q * d);
            const double B = std::sqrt(4 * sq(q) + sq(a) * sq(p) * (sq(p) - sq(q))) / (r * d);
            const double c =
                std::sqrt(4 * (sq(q) + sq(r)) + sq(a) * (sq(p) - sq(r)) * (sq(p) - sq(q))) / (q * r);
            return {closed_form_curve(sig,
                                      {C(a, p), C(A, q), S(B, r), S(a, p), S(A, q), C(B, r), K(c)},
                                      kDefaultCurveDomain, tag + ".z"),
                    std::nullopt};
        }
        case FamilyId::Ex7_2: {
            const double p = f["p"], q = f["q"], r = f["r"];
            const double rt15 = std::sqrt(15.0);
            const double al = std::sqrt(256 * sq(q) + 369 * sq(r)) / (4 * rt15);
            const double be = std::sqrt(16 * sq(q) + 609 * sq(r)) / (4 * rt15);
            const double ga = std::sqrt(320 + 225 * sq(p) + 756 * sq(r) - 256 * sq(q)) / (8 * rt15);
            const double de = std::sqrt(315 * sq(p) + 1024 * sq(q) - 3024 * sq(r) - 1280) / (4 * rt15);
            const double ep = std::sqrt(320 + 756 * sq(r) - 35 * sq(p) - 256 * sq(q)) / 8;
            Curve z = closed_form_curve(sig,
                                        {C(al, 2), S(be, 4), C(r, 5), none, none, none, S(al, 2),
                                         C(be, 4), S(r, 5), none, none, none, K(q), none},
                                        kDefaultCurveDomain, tag + ".z");
            Curve w = closed_form_curve(sig,
                                        {none, none, none, C(p, 1.5), S(ga, 2), S(de, 1), none,
                                         none, none, S(p, 1.5), C(ga, 2), C(de, 1), none, K(ep)},
                                        kDefaultCurveDomain, tag + ".w");
            return {std::move(z), std::move(w)};
        }
        case FamilyId::Ex8_1: {
            const double a = f["a"], b = f["b"], p = f["p"], q = f["q"];
            const double d = std::sqrt(sq(q) - sq(p));
            const double P = std::sqrt(sq(q) * (2 + sq(a)) - (4 + sq(a))) / (p * d);
            const double Q = std::sqrt(4 + sq(a) - sq(p) * (2 + sq(a))) / (q * d);
            const double R = std::sqrt(sq(b) * sq(p) * sq(q) - sq(a) * (sq(q) - 1) * (1 - sq(p)) -
                                       2 * (sq(p) + sq(q) - 2)) /
                             (p * q);
            const double fifth_rate = f.variant == CurveVariant::Corrected ? 1.0 : p;
            return {closed_form_curve(sig,
                                      {K(b), C(a, 1), S(P, p), S(Q, q), S(a, fifth_rate), C(P, p),
                                       C(Q, q), K(R)},
                                      kDefaultCurveDomain, tag + ".z"),
                    std::nullopt};
        }
        case FamilyId::Ex8_2: {
            const double a = f["a"], b = f["b"], p = f["p"], q = f["q"], r = f["r"], s = f["s"];
            const double A = std::sqrt(sq(p) + sq(q) - sq(b) * sq(p) * sq(q) - 2) /
                             std::sqrt((sq(p) - 1) * (sq(q) - 1));
            const double B = std::sqrt(1 - sq(p) * (1 - sq(b))) / std::sqrt((sq(q) - sq(p)) * (sq(q) - 1));
            const double Cc = std::sqrt(sq(q) * (1 - sq(b)) - 1) / std::sqrt((sq(q) - sq(p)) * (sq(p) - 1));
            const double A2 = std::sqrt(sq(r) + sq(s) - sq(a) * sq(r) * sq(s) - 2) /
                              std::sqrt((sq(r) - 1) * (sq(s) - 1));
            const double B2 = std::sqrt(1 - sq(r) * (1 - sq(a))) / std::sqrt((sq(s) - sq(r)) * (sq(s) - 1));
            const double C2 = std::sqrt(sq(s) * (1 - sq(a)) - 1) / std::sqrt((sq(s) - sq(r)) * (sq(r) - 1));
            const bool corrected = f.variant == CurveVariant::Corrected;
            const double last1 = corrected ? s : q;
            const double last2 = corrected ? r : p;
            Curve z = closed_form_curve(sig,
                                        {K(b), C(A, 1), S(B, q), S(Cc, p), none, none, none, none,
                                         S(A, 1), C(B, q), C(Cc, p), none, none, none},
                                        kDefaultCurveDomain, tag + ".z");
            Curve w = closed_form_curve(sig,
                                        {none, none, none, none, K(a), C(A2, 1), S(B2, s), S(C2, r),
                                         none, none, none, S(A2, 1), C(B2, last1), C(C2, last2)},
                                        kDefaultCurveDomain, tag + ".w");
            return {std::move(z), std::move(w)};
        }
    }
    throw InvalidInput("make_example: unknown family");
}

// ---------------------------------------------------------------------------
// Named test curves

/// (1+t^2, 2t, 1-t^2) in E^3_1: on the light cone, speed 2, <z'',z''>=0, z'''=0.
inline Curve quadratic_null_cone_curve(double scale = 1.0, bool reflected = false) {
    const double sgn = reflected ? -1.0 : 1.0;
    return closed_form_curve(
        Signature(3, 1),
        {{constant_term(scale), poly_term(scale, 2)},
         {poly_term(2.0 * scale * sgn, 1)},
         {constant_term(scale), poly_term(-scale, 2)}},
        kDefaultCurveDomain, "quadratic_null_cone");
}

/// (1, sinh(sqrt2 t), cosh(sqrt2 t)) in E^3_2: satisfies the hyperbolic
/// case-(ii) equalities with z''' = 2z' identically.
inline Curve sqrt2_hyperbolic_curve() {
    const double r2 = std::sqrt(2.0);
    return closed_form_curve(Signature(3, 2),
                             {{constant_term(1.0)}, {sinh_term(1.0, r2)}, {cosh_term(1.0, r2)}},
                             kDefaultCurveDomain, "sqrt2_hyperbolic");
}

/// Named curves addressable from surface spec files.
inline std::vector<std::string> builtin_curve_names() {
    return {"null_line_plus",         "null_line_minus",       "quadratic_null_cone",
            "half_quadratic_null_cone", "half_quadratic_null_cone_reflected",
            "hyperbolic_null_a",      "hyperbolic_null_b",     "sqrt2_hyperbolic"};
}

inline Curve builtin_curve(std::string_view name) {
    const Signature e21(2, 1);
    const Signature e42(4, 2);
    const std::vector<Term> none;
    if (name == "null_line_plus") {
        return closed_form_curve(e21, {{poly_term(1, 1)}, {poly_term(1, 1)}}, kDefaultCurveDomain,
                                 "null_line_plus");
    }
    if (name == "null_line_minus") {
        return closed_form_curve(e21, {{poly_term(1, 1)}, {poly_term(-1, 1)}}, kDefaultCurveDomain,
                                 "null_line_minus");
    }
    if (name == "quadratic_null_cone") return quadratic_null_cone_curve();
    if (name == "half_quadratic_null_cone") return quadratic_null_cone_curve(0.5);
    if (name == "half_quadratic_null_cone_reflected") return quadratic_null_cone_curve(0.5, true);
    if (name == "hyperbolic_null_a") {
        // (cosh t, t, sinh t, 0)
        return closed_form_curve(e42, {{cosh_term(1, 1)}, {poly_term(1, 1)}, {sinh_term(1, 1)}, none},
                                 kDefaultCurveDomain, "hyperbolic_null_a");
    }
    if (name == "hyperbolic_null_b") {
        // (cosh t, -t, 0, sinh t)
        return closed_form_curve(e42, {{cosh_term(1, 1)}, {poly_term(-1, 1)}, none, {sinh_term(1, 1)}},
                                 kDefaultCurveDomain, "hyperbolic_null_b");
    }
    if (name == "sqrt2_hyperbolic") return sqrt2_hyperbolic_curve();
    throw InvalidInput("unknown builtin curve '" + std::string(name) + "'");
}

}  // namespace lms
