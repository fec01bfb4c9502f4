#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>

#include "lms/curve_families.hpp"
#include "lms/curves.hpp"
#include "lms/null_curves.hpp"
#include "support.hpp"

using namespace lms;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ParamFamily ex71() { return {FamilyId::Ex7_1, {{"a", 1}, {"p", 3}, {"q", 1}, {"r", 2}}, CurveVariant::Corrected}; }
ParamFamily ex72() { return {FamilyId::Ex7_2, {{"p", 3}, {"q", 1.5}, {"r", 1}}, CurveVariant::Corrected}; }
ParamFamily ex81(double p = 1.0, CurveVariant v = CurveVariant::Corrected) {
    return {FamilyId::Ex8_1, {{"a", 1}, {"b", 1.1}, {"p", p}, {"q", 1.5}}, v};
}
ParamFamily ex82() {
    const double h = 1.0 / std::numbers::sqrt2;
    return {FamilyId::Ex8_2, {{"a", h}, {"b", h}, {"p", 1.1}, {"q", 1.5}, {"r", 1.1}, {"s", 1.5}},
            CurveVariant::Corrected};
}

// The Ex7_1 curve written out directly from its displayed formula.
std::vector<double> ex71_formula(double a, double p, double q, double r, double x) {
    const double d = std::sqrt(r * r - q * q);
    const double A = std::sqrt(4 * r * r + a * a * p * p * (p * p - r * r)) / (q * d);
    const double B = std::sqrt(4 * q * q + a * a * p * p * (p * p - q * q)) / (r * d);
    const double C = std::sqrt(4 * (q * q + r * r) + a * a * (p * p - r * r) * (p * p - q * q)) / (q * r);
    return {a * std::cosh(p * x), A * std::cosh(q * x), B * std::sinh(r * x), a * std::sinh(p * x),
            A * std::sinh(q * x), B * std::cosh(r * x), C};
}

// Ex8_1 with the fifth coordinate a sinh(x).
std::vector<double> ex81_formula(double a, double b, double p, double q, double x) {
    const double d = std::sqrt(q * q - p * p);
    const double P = std::sqrt(q * q * (2 + a * a) - (4 + a * a)) / (p * d);
    const double Q = std::sqrt(4 + a * a - p * p * (2 + a * a)) / (q * d);
    const double R = std::sqrt(b * b * p * p * q * q - a * a * (q * q - 1) * (1 - p * p) - 2 * (p * p + q * q - 2)) /
                     (p * q);
    return {b, a * std::cosh(x), P * std::sinh(p * x), Q * std::sinh(q * x), a * std::sinh(x),
            P * std::cosh(p * x), Q * std::cosh(q * x), R};
}

}  // namespace

TEST_CASE("eval of simple closed-form curves", "[curves]") {
    const Signature e21(2, 1);
    const Curve constant = closed_form_curve(e21, {{constant_term(1)}, {constant_term(1)}});
    CHECK(eval(constant, 0.3, 1) == PseudoVector(e21, {0, 0}));

    const Curve hyper = closed_form_curve(e21, {{sinh_term(1, 1)}, {cosh_term(1, 1)}});
    const auto d2 = eval(hyper, 0.0, 2);
    CHECK_THAT(d2[0], WithinAbs(0.0, 1e-15));
    CHECK_THAT(d2[1], WithinAbs(1.0, 1e-15));

    CHECK_THROWS_AS(eval(hyper, 0.0, 4), InvalidInput);
    CHECK_THROWS_AS(eval(hyper, 0.0, -1), InvalidInput);
    CHECK_THROWS_AS(eval(hyper, 2.5, 0), InvalidInput);
}

TEST_CASE("closed-form term derivatives match a finite-difference oracle", "[curves]") {
    const Signature sig(6, 0);
    const Curve c = closed_form_curve(sig, {{poly_term(0.5, 3)}, {cosh_term(2, 1.3)}, {sinh_term(-1, 0.7)},
                                            {cos_term(1.5, 2.0)}, {sin_term(0.3, 1.1)}, {constant_term(4)}});
    for (double t : {-1.5, -0.2, 0.0, 0.9, 1.7}) {
        for (int k = 1; k <= 3; ++k) {
            const auto fd = oracle::derivative([&](double s) { return oracle::comps(c(s, k - 1)); }, t, 1e-3);
            CHECK(oracle::max_abs_diff(fd, oracle::comps(eval(c, t, k))) < 1e-9);
        }
    }
}

TEST_CASE("Ex7_1 matches its displayed formula", "[curves][families]") {
    const Curve z = make_example(ex71()).z;
    CHECK(z.signature() == Signature(7, 3));
    for (double x : {-1.9, -0.7, 0.0, 0.4, 1.3, 2.0}) {
        const auto want = ex71_formula(1, 3, 1, 2, x);
        CHECK(oracle::max_abs_diff(oracle::comps(eval(z, x, 0)), want) <= 1e-13 * oracle::max_abs(want));
    }
    // Third derivative against an oracle built from the closed form only.
    const auto third = oracle::derivative(
        [&](double s) {
            return oracle::derivative([&](double u) { return oracle::derivative([&](double v) { return ex71_formula(1, 3, 1, 2, v); }, u, 1e-2); },
                                      s, 1e-2);
        },
        0.4, 1e-2);
    const auto exact = oracle::comps(eval(z, 0.4, 3));
    CHECK(oracle::max_abs_diff(third, exact) / oracle::max_abs(exact) < 1e-6);
}

TEST_CASE("Ex8_1 corrected matches its formula with the paired fifth coordinate", "[curves][families]") {
    const Curve z = make_example(ex81()).z;
    CHECK(z.signature() == Signature(8, 4));
    for (double x : {-1.5, 0.0, 0.8}) {
        const auto want = ex81_formula(1, 1.1, 1, 1.5, x);
        CHECK(oracle::max_abs_diff(oracle::comps(eval(z, x, 0)), want) < 1e-13 * oracle::max_abs(want));
    }
}

TEST_CASE("fd_derivative_check examples", "[curves]") {
    const Signature e21(2, 1);
    const Curve quad = closed_form_curve(e21, {{poly_term(1, 2), constant_term(1)}, {poly_term(-3, 2), poly_term(2, 1)}});
    CHECK(fd_derivative_check(quad, 0.3, 1, 1e-3) < 1e-10);

    CHECK(fd_derivative_check(make_example(ex82()).z, 0.2, 2, 1e-4) < 1e-6);
    CHECK(fd_derivative_check(make_example(ex71()).z, 0.4, 3, 1e-3) < 1e-5);
    CHECK(fd_derivative_check(make_example(ex71()).z, 0.4, 3, 1e-4) < 1e-6);

    CHECK_THROWS_AS(fd_derivative_check(quad, 0.3, 1, 0.0), InvalidInput);
    CHECK_THROWS_AS(fd_derivative_check(quad, 0.3, 1, -1e-3), InvalidInput);
    CHECK_THROWS_AS(fd_derivative_check(quad, 0.3, 0, 1e-3), InvalidInput);
    CHECK_THROWS_AS(fd_derivative_check(quad, 0.3, 4, 1e-3), InvalidInput);
}

TEST_CASE("derivative_inner examples", "[curves]") {
    const Curve z71 = make_example(ex71()).z;
    const Curve z81 = make_example(ex81()).z;
    for (double t : linspace(-2, 2, 9)) {
        CHECK_THAT(derivative_inner(z71, 1, z71, 1, t, t), WithinAbs(4.0, 1e-9));
        CHECK_THAT(derivative_inner(z81, 1, z81, 1, t, t), WithinAbs(-2.0, 1e-9));
        CHECK_THAT(derivative_inner(z81, 0, z81, 2, t, t), WithinAbs(2.0, 1e-9));
    }
    const Curve constant = closed_form_curve(Signature(7, 3), std::vector<Component>(7, Component{constant_term(2)}));
    for (int k = 1; k <= 3; ++k) CHECK(derivative_inner(constant, k, z71, 2, 0.1, 0.5) == 0.0);
    CHECK_THROWS_AS(derivative_inner(z71, 1, z81, 1, 0, 0), InvalidInput);
}

TEST_CASE("null_check examples", "[curves]") {
    const Curve diag = closed_form_curve(Signature(2, 1), {{poly_term(1, 1)}, {poly_term(1, 1)}});
    auto r = null_check(diag, 41, 1e-9);
    CHECK(r.pass);
    CHECK(r.value == 0.0);
    CHECK(r.id == "null");

    const Curve helix = closed_form_curve(Signature(3, 1), {{poly_term(1, 1)}, {sin_term(1, 1)}, {cos_term(1, 1)}});
    r = null_check(helix, 41, 1e-9);
    CHECK(r.pass);
    CHECK(r.value < 1e-12);

    const Curve hyper = closed_form_curve(Signature(2, 1), {{sinh_term(1, 1)}, {cosh_term(1, 1)}});
    r = null_check(hyper, 41, 1e-9);
    CHECK_FALSE(r.pass);
    CHECK_THAT(r.value, WithinAbs(1.0, 1e-12));
}

TEST_CASE("example factories produce the declared signatures", "[curves][families]") {
    const auto e71 = make_example(ex71());
    CHECK_FALSE(e71.w.has_value());
    const auto e72 = make_example(ex72());
    REQUIRE(e72.w.has_value());
    CHECK(e72.z.signature() == Signature(14, 6));
    CHECK(e72.w->signature() == Signature(14, 6));
    const auto e82 = make_example(ex82());
    REQUIRE(e82.w.has_value());
    CHECK(e82.z.signature() == Signature(14, 8));
    CHECK(family_signature(FamilyId::Ex8_1) == Signature(8, 4));
}

TEST_CASE("Ex7_1 light cone and acceleration at sampled points", "[curves][families]") {
    const Curve z = make_example(ex71()).z;
    CHECK(std::abs(light_cone_residual(eval(z, 0.7, 0))) < 1e-9);
    for (double t : linspace(-1, 1, 11)) CHECK(std::abs(derivative_inner(z, 2, z, 2, t, t)) < 1e-9);
}

TEST_CASE("parameter validation", "[curves][families]") {
    auto bad = ex71();
    bad.params["a"] = 0.0;
    CHECK_THROWS_AS(make_example(bad), InvalidInput);
    bad.params["a"] = -1.0;
    CHECK_THROWS_AS(make_example(bad), InvalidInput);
    auto missing = ex71();
    missing.params.erase("r");
    CHECK_THROWS_AS(make_example(missing), InvalidInput);
    auto extra = ex71();
    extra.params["s"] = 1.0;
    CHECK_THROWS_AS(make_example(extra), InvalidInput);

    auto swapped = ex71();  // r < q makes r^2 - q^2 negative
    swapped.params["q"] = 2;
    swapped.params["r"] = 1;
    try {
        make_example(swapped);
        FAIL("expected a constraint violation");
    } catch (const ConstraintViolation& e) {
        CHECK(e.constraint() == "r^2-q^2");
        CHECK(e.value() < 0);
    }
    CHECK_NOTHROW(make_example(ex82()));
}

TEST_CASE("Ex7_2 ordering chain forces a negative radicand", "[curves][families]") {
    Rng rng(72);
    int chain = 0;
    int attempts = 0;
    while (chain < 10000 && attempts < 10000000) {
        ++attempts;
        ParamFamily f{FamilyId::Ex7_2, {{"p", rng.uniform(0.01, 5)}, {"q", rng.uniform(0.01, 5)}, {"r", rng.uniform(0.01, 5)}},
                      CurveVariant::Corrected};
        if (!ordering_holds(f)) continue;
        ++chain;
        const double p = f["p"], q = f["q"], r = f["r"];
        const double radicand = 315 * p * p + 1024 * q * q - 3024 * r * r - 1280;
        // Bound implied by the chain: radicand < -245 p^2.
        CHECK(radicand < -245 * p * p + 1e-9);
        try {
            make_example(f);
            FAIL("chain parameters produced a real curve");
        } catch (const ConstraintViolation& e) {
            bool names_it = false;
            for (const auto& c : family_constraints(f)) names_it = names_it || (!c.holds() && c.label == e.constraint());
            CHECK(names_it);
        }
    }
    CHECK(chain == 10000);

    // Radicand-valid parameters violate the ordering chain.
    CHECK_FALSE(ordering_holds(ex72()));
    for (const auto& c : family_constraints(ex72())) CHECK(c.holds());
}

TEST_CASE("Ex7_2 structural relations", "[curves][families]") {
    const auto e = make_example(ex72());
    const Curve& z = e.z;
    const Curve& w = *e.w;
    // Speeds as displayed next to the pair: (64q^2-189r^2)/20 and (80+189r^2-64q^2)/20.
    const double q = 1.5, r = 1.0;
    for (double t : linspace(-2, 2, 41)) {
        const double scale = std::max(1.0, eval(z, t, 3).max_norm() * eval(z, t, 0).max_norm());
        CHECK(std::abs(derivative_inner(z, 0, w, 0, t, t)) < 1e-9 * scale);
        CHECK(std::abs(derivative_inner(z, 0, z, 3, t, t)) < 1e-12 * scale);
        CHECK(std::abs(derivative_inner(z, 1, z, 3, t, t)) < 1e-12 * scale);
        CHECK(std::abs(derivative_inner(z, 2, z, 2, t, t)) < 1e-12 * scale);
        CHECK(std::abs(derivative_inner(w, 0, w, 3, t, t)) < 1e-9);
        CHECK(std::abs(derivative_inner(w, 1, w, 3, t, t)) < 1e-9);
        CHECK(std::abs(derivative_inner(w, 2, w, 2, t, t)) < 1e-9);
        CHECK(std::abs(light_cone_residual(eval(z, t, 0))) < 1e-12 * scale);
        CHECK(std::abs(light_cone_residual(eval(w, t, 0))) < 1e-9);
        CHECK(std::abs(derivative_inner(z, 1, z, 1, t, t) - (64 * q * q - 189 * r * r) / 20) < 1e-12 * scale);
        CHECK_THAT(derivative_inner(w, 1, w, 1, t, t), WithinAbs((80 + 189 * r * r - 64 * q * q) / 20, 1e-9));
    }
}

TEST_CASE("family premises hold on the whole curve domain", "[curves][families]") {
    const Curve z71 = make_example(ex71()).z;
    const Curve z81 = make_example(ex81()).z;
    for (double t : linspace(-2, 2, kDefaultCurveSamples)) {
        CHECK(std::abs(derivative_inner(z71, 0, z71, 0, t, t)) < 1e-9);
        CHECK(std::abs(derivative_inner(z71, 1, z71, 1, t, t) - 4) < 1e-9);
        CHECK(std::abs(derivative_inner(z71, 2, z71, 2, t, t)) < 1e-9);
        CHECK(eval(z71, t, 3).max_norm() > 0);

        CHECK(std::abs(derivative_inner(z81, 0, z81, 0, t, t)) < 1e-9);
        CHECK(std::abs(derivative_inner(z81, 1, z81, 1, t, t) + 2) < 1e-9);
        CHECK(std::abs(derivative_inner(z81, 2, z81, 2, t, t) - 4) < 1e-9);
        CHECK((eval(z81, t, 3) - 2.0 * eval(z81, t, 1)).max_norm() > 0);
    }
}

TEST_CASE("coordinate variants: corrected passes, literal does not", "[curves][families][variants]") {
    // At p = 1 both Ex8_1 variants coincide; away from it only the corrected one is null.
    const Curve same_c = make_example(ex81(1.0)).z;
    const Curve same_l = make_example(ex81(1.0, CurveVariant::Literal)).z;
    CHECK(oracle::max_abs_diff(oracle::comps(eval(same_c, 0.6, 0)), oracle::comps(eval(same_l, 0.6, 0))) == 0.0);

    const Curve corrected = make_example(ex81(1.2)).z;
    const Curve literal = make_example(ex81(1.2, CurveVariant::Literal)).z;
    double worst_c = 0, worst_l = 0;
    for (double t : linspace(-2, 2, 41)) {
        worst_c = std::max(worst_c, std::abs(light_cone_residual(eval(corrected, t, 0))));
        worst_l = std::max(worst_l, std::abs(light_cone_residual(eval(literal, t, 0))));
    }
    CHECK(worst_c < 1e-9);
    CHECK(worst_l > 1e-2);
}

TEST_CASE("factory curves agree with finite differences at random points", "[curves][property]") {
    std::vector<Curve> curves;
    for (const auto& f : {ex71(), ex72(), ex81(), ex82()}) {
        auto e = make_example(f);
        curves.push_back(e.z);
        if (e.w) curves.push_back(*e.w);
    }
    for (const auto& name : builtin_curve_names()) curves.push_back(builtin_curve(name));
    Rng rng(314159);
    for (const auto& c : curves) {
        INFO(c.name());
        for (int i = 0; i < 20; ++i) {
            const double t = rng.uniform(c.domain().lo + 0.01, c.domain().hi - 0.01);
            for (int k = 1; k <= 3; ++k) CHECK(fd_derivative_check(c, t, k, 1e-3) < 1e-6);
        }
    }
}

TEST_CASE("reflected parameter keeps exact derivatives", "[curves]") {
    const Curve z = make_example(ex71()).z;
    const Curve r = reflect_parameter(z);
    CHECK(r.domain().lo == -2.0);
    for (double t : {-1.2, 0.3, 1.9}) {
        for (int k = 0; k <= 3; ++k) {
            const double sign = k % 2 ? -1.0 : 1.0;
            CHECK(oracle::max_abs_diff(oracle::comps(eval(r, t, k)), oracle::comps(sign * eval(z, -t, k))) == 0.0);
        }
        CHECK(fd_derivative_check(r, t > 1.5 ? 1.5 : t, 1, 1e-3) < 1e-6);
    }
}

TEST_CASE("random null curve generators", "[curves][property]") {
    Rng rng(4242);
    for (int k : {1, 2, 3}) {
        for (auto fam : {NullFamily::Helical, NullFamily::Hyperbolic}) {
            for (int i = 0; i < 5; ++i) {
                const Curve c = random_null_curve(k, fam, rng);
                CHECK(c.signature() == Signature(2 * k, k));
                CHECK(null_check(c, 41, 1e-9).pass);
                CHECK(fd_derivative_check(c, 0.5, 2, 1e-3) < 1e-6);
            }
        }
    }
    for (int i = 0; i < 5; ++i) {
        const auto [z, w] = constant_pairing_null_pair(rng);
        CHECK(null_check(z, 41, 1e-9).pass);
        CHECK(null_check(w, 41, 1e-9).pass);
        const double c0 = derivative_inner(z, 1, w, 1, 0, 0);
        CHECK(c0 < 0);
        for (double x : {-1.0, 0.3, 1.7}) {
            for (double y : {-1.9, 0.0, 0.8}) CHECK_THAT(derivative_inner(z, 1, w, 1, x, y), WithinAbs(c0, 1e-12));
        }
    }
}

TEST_CASE("rng is reproducible", "[random]") {
    Rng a(5), b(5), c(6);
    for (int i = 0; i < 100; ++i) {
        const double x = a.unit();
        CHECK(x == b.unit());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
    CHECK(a.unit() != c.unit());
}
