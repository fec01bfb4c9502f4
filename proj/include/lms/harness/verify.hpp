#pragma once

// The full check pipeline for one spec: curve premises or side conditions,
// construction, quadric membership, metric form, frame, minimality,
// curvature, the Gauss equation, the xi formula and FD soundness.
// Check failures become failing reports; only malformed input throws.

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "../diffgeo.hpp"
#include "../errors.hpp"
#include "../report.hpp"
#include "../surfaces.hpp"
#include "spec.hpp"

namespace lms::harness {

struct VerificationReport {
    SurfaceSpec spec;
    std::string ambient;
    bool y_reflected = false;
    bool totally_geodesic_boundary = false;
    std::vector<ConditionReport> checks;
    bool pass = false;
    /// Wall-clock milliseconds per phase. Not part of the deterministic output.
    std::map<std::string, double> timings_ms;
};

namespace detail {

/// Everything verify needs at one grid point, computed once.
struct PointSample {
    double quadric = 0.0;
    double metric_null = 0.0;
    double metric_form = 0.0;
    double frame = 0.0;
    double tangency = 0.0;
    double minimality = 0.0;
    double h_consistency = 0.0;
    double curvature = 0.0;
    double gauss = 0.0;
    double xi = 0.0;
    double umbilic = 0.0;
    double discrepancy = 0.0;
};

inline bool is_sphere_family(SurfaceFamily f) {
    return f == SurfaceFamily::SphereB || f == SurfaceFamily::SphereC || f == SurfaceFamily::DeSitterControl;
}

inline bool is_hyperbolic_family(SurfaceFamily f) {
    return f == SurfaceFamily::HypII || f == SurfaceFamily::HypIII;
}

/// g_xy in the closed form the classification predicts, if any.
inline std::optional<double> expected_g_xy(SurfaceFamily f, double x, double y) {
    if (is_sphere_family(f)) return -2.0 / ((x + y) * (x + y));
    if (is_hyperbolic_family(f)) {
        const double c = std::cosh((x + y) / std::numbers::sqrt2);
        return -1.0 / (c * c);
    }
    return std::nullopt;
}

inline std::optional<double> expected_curvature(SurfaceFamily f) {
    if (is_sphere_family(f)) return 1.0;
    if (is_hyperbolic_family(f)) return -1.0;
    return std::nullopt;
}

/// h(e1,e1) as the one-curve families predict it.
inline std::optional<PseudoVector> expected_xi(const SurfaceMap& s, double x, double y) {
    if (s.family == SurfaceFamily::SphereB) {
        const double S = x + y;
        return eval(s.curves[0], x, 3) * (-S * S / 4.0);
    }
    if (s.family == SurfaceFamily::HypII) {
        constexpr double r2 = std::numbers::sqrt2;
        const double c = std::cosh((x + y) / r2);
        return (r2 * eval(s.curves[0], x, 1) - eval(s.curves[0], x, 3) / r2) * (c * c);
    }
    return std::nullopt;
}

inline PointSample sample_point(const SurfaceMap& s, double x, double y) {
    PointSample p;
    const auto pr = partials(s, x, y, {}, true);
    const SurfacePartials& d = pr.values;
    const FundamentalForms f = second_fundamental_form(s, x, y);
    const double c = s.ambient().curvature();

    if (s.ambient().kind() != AmbientKind::Flat) {
        p.quadric = std::abs(quadric_residual(d.L, s.ambient()));
        p.tangency = std::max(std::abs(inner(d.L, d.Lx)), std::abs(inner(d.L, d.Ly)));
    }
    p.metric_null = f.metric.offdiag_residual();
    if (auto g = expected_g_xy(s.family, x, y)) p.metric_form = std::abs(f.metric.g_xy - *g);
    p.frame = std::abs(inner(f.frame.e1, f.frame.e2) + 1.0);
    p.minimality = f.H.max_norm();
    p.h_consistency = (f.H + f.h12).max_norm();
    if (auto k = expected_curvature(s.family)) p.curvature = std::abs(f.K - *k);
    p.gauss = std::abs(gauss_equation_residual(f, c));
    if (auto xi = expected_xi(s, x, y)) p.xi = (f.h11 - *xi).max_norm() / std::max(1.0, xi->max_norm());
    if (s.family == SurfaceFamily::DeSitterControl) p.umbilic = (f.H + d.L).max_norm();
    p.discrepancy = pr.discrepancy.value_or(0.0);
    return p;
}

inline ConditionReport failure_report(std::string id, const std::string& message) {
    return make_report(std::move(id), std::numeric_limits<double>::quiet_NaN(), 0.0, Comparison::AtMost, "",
                       {}, message);
}


}  // namespace detail

/// Runs every applicable check. Throws only for malformed input (unknown
/// family, arity mismatch, invalid family parameters).
inline VerificationReport verify(const SurfaceSpec& spec) {
    using clock = std::chrono::steady_clock;
    auto ms_since = [](clock::time_point t0) {
        return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    };
    const auto t_start = clock::now();

    VerificationReport rep;
    rep.spec = spec;
    const Tolerances& tol = spec.tolerances;
    const Grid grid = spec.grid();
    const FamilyInfo& info = family_info(spec.family);

    const std::vector<Curve> curves = build_curves(spec);
    if (static_cast<int>(curves.size()) != info.arity) {
        throw InvalidInput(std::string("verify: family ") + to_string(spec.family) + " takes " +
                           std::to_string(info.arity) + " curve(s), got " + std::to_string(curves.size()));
    }
    for (std::size_t i = 1; i < curves.size(); ++i) {
        require_same(curves[0].signature(), curves[i].signature(), "verify");
    }

    auto& checks = rep.checks;
    auto add = [&](std::vector<ConditionReport> rs) {
        for (auto& r : rs) checks.push_back(std::move(r));
    };

    // Premises and side conditions. Curves are sampled over the ranges the
    // surface actually uses.
    std::optional<SurfaceMap> surface;
    const auto t_build = clock::now();
    try {
        switch (spec.family) {
            case SurfaceFamily::Translation: {
                const Rect pad = padded(spec.domain);
                checks.push_back(null_check(curves[0], pad.x, kDefaultCurveSamples, tol.algebraic));
                checks.back().id = "null-z";
                // The y-range may be mirrored by the constructor; sample the union.
                const Interval wy{std::min(pad.y.lo, -pad.y.hi), std::max(pad.y.hi, -pad.y.lo)};
                const Interval wr{std::max(wy.lo, curves[1].domain().lo), std::min(wy.hi, curves[1].domain().hi)};
                checks.push_back(null_check(curves[1], wr, kDefaultCurveSamples, tol.algebraic));
                checks.back().id = "null-w";
                if (all_pass(checks)) {
                    surface = translation_surface(curves[0], curves[1], spec.domain, kDefaultCurveSamples,
                                                  tol.algebraic);
                }
                break;
            }
            case SurfaceFamily::SphereB:
            case SurfaceFamily::HypII: {
                const Interval iv = padded(spec.domain).x;
                lms::detail::require_curve_covers(curves[0], iv, "z");
                auto premises = spec.family == SurfaceFamily::SphereB
                                    ? check_case_b_premises(curves[0], iv, kDefaultCurveSamples, tol.algebraic)
                                    : check_case_ii_premises(curves[0], iv, kDefaultCurveSamples, tol.algebraic);
                bool equalities_hold = true;
                for (const auto& r : premises) {
                    if (!r.pass && r.comparison == Comparison::AtMost) equalities_hold = false;
                }
                add(std::move(premises));
                if (equalities_hold) {
                    surface = spec.family == SurfaceFamily::SphereB
                                  ? sphere_case_b(curves[0], spec.domain, kDefaultCurveSamples, tol.algebraic)
                                  : hyperbolic_case_ii(curves[0], spec.domain, kDefaultCurveSamples, tol.algebraic);
                }
                break;
            }
            case SurfaceFamily::SphereC:
                add(check_case_c_conditions(curves[0], curves[1], grid, tol.conditions));
                surface = sphere_case_c(curves[0], curves[1], spec.domain);
                break;
            case SurfaceFamily::HypIII:
                add(check_case_iii_conditions(curves[0], curves[1], grid, tol.conditions));
                surface = hyperbolic_case_iii(curves[0], curves[1], spec.domain);
                break;
            case SurfaceFamily::DeSitterControl:
                surface = de_sitter_control(spec.domain);
                break;
            case SurfaceFamily::Custom:
                throw InvalidInput("verify: custom surfaces have no spec form");
        }
    } catch (const InvalidInput&) {
        throw;
    } catch (const Error& e) {
        checks.push_back(detail::failure_report("construction", e.what()));
    }
    rep.timings_ms["build"] = ms_since(t_build);

    if (!surface) {
        if (checks.empty() || all_pass(checks)) {
            checks.push_back(detail::failure_report("construction", "surface not constructed"));
        }
        rep.pass = false;
        rep.timings_ms["total"] = ms_since(t_start);
        return rep;
    }
    const SurfaceMap& s = *surface;
    rep.ambient = s.ambient().to_string();
    rep.y_reflected = s.y_reflected;
    rep.totally_geodesic_boundary = s.totally_geodesic_boundary;
    // The constructor may have mirrored the y-range.
    const Grid sgrid{s.domain(), spec.nx, spec.ny};

    const auto t_checks = clock::now();
    std::vector<detail::PointSample> samples;
    try {
        samples = grid_map(sgrid, [&](double x, double y) { return detail::sample_point(s, x, y); });
    } catch (const InvalidInput&) {
        throw;
    } catch (const Error& e) {
        checks.push_back(detail::failure_report("geometry", e.what()));
        rep.pass = false;
        rep.timings_ms["total"] = ms_since(t_start);
        return rep;
    }

    auto grid_report = [&](const char* id, double detail::PointSample::*field, double t, std::string note = {}) {
        std::vector<double> values;
        values.reserve(samples.size());
        for (const auto& p : samples) values.push_back(p.*field);
        const GridMax m = grid_argmax(sgrid, values);
        checks.push_back(make_report(id, m.value, t, Comparison::AtMost, sgrid.describe(), {m.x, m.y},
                                     std::move(note)));
    };

    const bool quadric = s.ambient().kind() != AmbientKind::Flat;
    if (quadric) grid_report("quadric", &detail::PointSample::quadric, tol.algebraic, "|<L,L> - 1/c|");
    grid_report("metric-null", &detail::PointSample::metric_null, tol.metric, "max(|g_xx|, |g_yy|)");
    if (detail::expected_g_xy(s.family, 0.0, 1.0)) {
        grid_report("metric-form", &detail::PointSample::metric_form, tol.metric,
                    detail::is_sphere_family(s.family) ? "|g_xy + 2/(x+y)^2|" : "|g_xy + sech^2((x+y)/sqrt2)|");
    }
    grid_report("frame", &detail::PointSample::frame, tol.metric, "|<e1,e2> + 1|");
    if (quadric) grid_report("tangency", &detail::PointSample::tangency, tol.metric, "max(|<L,L_x>|, |<L,L_y>|)");
    grid_report("minimality", &detail::PointSample::minimality, tol.minimality, "|H|_inf");
    grid_report("h-consistency", &detail::PointSample::h_consistency, tol.h_consistency, "|H + h12|_inf");
    if (auto k = detail::expected_curvature(s.family)) {
        grid_report("curvature", &detail::PointSample::curvature, tol.curvature,
                    "|K - (" + std::to_string(static_cast<int>(*k)) + ")|");
    }
    grid_report("gauss", &detail::PointSample::gauss, tol.gauss, "|K - c + <h11,h22> - <h12,h12>|");
    if (s.family == SurfaceFamily::SphereB || s.family == SurfaceFamily::HypII) {
        grid_report("xi", &detail::PointSample::xi, tol.xi, "relative |h11 - xi_predicted|_inf");
    }
    if (s.family == SurfaceFamily::DeSitterControl) {
        grid_report("umbilic", &detail::PointSample::umbilic, tol.umbilic, "|H + L|_inf");
    }
    if (s.family == SurfaceFamily::Translation) {
        // L_xy vanishes identically; estimate it without the analytic partials.
        const SurfaceMap fd = s.without_partials();
        const GridMax m = grid_max(sgrid, [&](double x, double y) {
            const auto p = partials(fd, x, y).values;
            return p.Lxy.max_norm() / std::max(1.0, p.L.max_norm());
        });
        checks.push_back(make_report("lxy-zero", m.value, tol.metric, Comparison::AtMost, sgrid.describe(),
                                     {m.x, m.y}, "FD |L_xy|_inf / max(1, |L|_inf)"));
    }
    grid_report("fd-partials", &detail::PointSample::discrepancy, tol.fd, "analytic vs FD, relative");
    const ConvergenceResult cv = fd_convergence(s, sgrid);
    checks.push_back(make_report("fd-convergence", cv.ratio(), tol.convergence, Comparison::Exceeds,
                                 sgrid.describe(), {},
                                 "discrepancy ratio for FD step " + std::to_string(kConvergenceStep) + " -> " +
                                     std::to_string(kConvergenceStep / 2)));
    rep.timings_ms["checks"] = ms_since(t_checks);

    rep.pass = all_pass(checks);
    rep.timings_ms["total"] = ms_since(t_start);
    return rep;
}

}  // namespace lms::harness
