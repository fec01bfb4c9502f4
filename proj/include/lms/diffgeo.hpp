#pragma once

// Differential geometry of a Lorentz surface in conformal null coordinates,
// g = -E^2 (dx dy + dy dx), evaluated pointwise from the surface map.
//
// Gaussian curvature comes from the E-field alone,
//     K = (2 E E_xy - 2 E_x E_y) / E^4,
// never from the ambient, so the Gauss-equation residual is an independent
// cross-check of the extrinsic data.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"
#include "pea.hpp"
#include "report.hpp"
#include "surfaces.hpp"

namespace lms {

struct FdOptions {
    double first_step = 1e-5;
    double second_step = 1e-4;
    /// Step for differentiating the E-field; 0 picks 1e-4 with analytic
    /// partials and 1e-3 without.
    double curvature_step = 0.0;
    bool richardson = true;
};

/// Pivot threshold for the tangential projection.
inline constexpr double kPivotThreshold = 1e-10;

struct PartialsResult {
    SurfacePartials values;
    bool analytic = false;
    /// Max over L_x..L_yy of |fd - analytic|_inf / max(1, |analytic|_inf);
    /// set when both routes were evaluated.
    std::optional<double> discrepancy;
};

struct MetricData {
    double g_xx = 0.0;
    double g_xy = 0.0;
    double g_yy = 0.0;
    double E = 0.0;

    double offdiag_residual() const noexcept { return std::max(std::abs(g_xx), std::abs(g_yy)); }
};

struct FrameData {
    PseudoVector e1;
    PseudoVector e2;
    double gamma_x = 0.0;   ///< 2 E_x / E:  nabla_{d_x} d_x = gamma_x d_x
    double gamma_y = 0.0;   ///< 2 E_y / E:  nabla_{d_y} d_y = gamma_y d_y
    double omega_e1 = 0.0;  ///< E_x / E^2
    double omega_e2 = 0.0;  ///< -E_y / E^2
};

struct FundamentalForms {
    MetricData metric;
    FrameData frame;
    /// Second fundamental form on coordinate fields.
    PseudoVector h_xx, h_xy, h_yy;
    /// ... and on the null frame e1 = L_x/E, e2 = L_y/E.
    PseudoVector h11, h12, h22;
    /// Half the metric trace of h.
    PseudoVector H;
    double K = 0.0;
};

namespace detail {

inline double scaled(double step, double at) { return step * std::max(1.0, std::abs(at)); }

/// Validates that a stencil of half-width `reach` around (x,y) stays inside the
/// padded domain and at least 2*reach from the singular locus.
inline void require_stencil(const SurfaceMap& s, double x, double y, double reach) {
    const Rect pad = padded(s.domain());
    if (!pad.contains(x, y, -2.0 * reach)) {
        throw InvalidInput("point (" + std::to_string(x) + ", " + std::to_string(y) +
                           ") too close to the domain boundary for step " + std::to_string(reach));
    }
    if (!(s.singular_distance(x, y) > 2.0 * reach)) {
        throw InvalidInput("point (" + std::to_string(x) + ", " + std::to_string(y) +
                           ") too close to the singular locus");
    }
}

template <typename F>
auto second_central(F&& f, double t, double h) {
    return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

template <typename F>
auto mixed_central(F&& f, double x, double y, double h, double k) {
    return (f(x + h, y + k) - f(x + h, y - k) - f(x - h, y + k) + f(x - h, y - k)) / (4.0 * h * k);
}

template <typename Scheme>
auto maybe_richardson(Scheme&& scheme, double h, bool richardson) {
    if (!richardson) return scheme(h);
    auto coarse = scheme(h);
    auto fine = scheme(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

inline SurfacePartials fd_partials(const SurfaceMap& s, double x, double y, const FdOptions& o) {
    auto L = [&](double px, double py) { return s.position(px, py); };
    const double h1x = scaled(o.first_step, x), h1y = scaled(o.first_step, y);
    const double h2x = scaled(o.second_step, x), h2y = scaled(o.second_step, y);
    auto Lx = maybe_richardson(
        [&](double h) { return (L(x + h, y) - L(x - h, y)) / (2.0 * h); }, h1x, o.richardson);
    auto Ly = maybe_richardson(
        [&](double h) { return (L(x, y + h) - L(x, y - h)) / (2.0 * h); }, h1y, o.richardson);
    auto Lxx = maybe_richardson(
        [&](double h) { return second_central([&](double t) { return L(t, y); }, x, h); }, h2x, o.richardson);
    auto Lyy = maybe_richardson(
        [&](double h) { return second_central([&](double t) { return L(x, t); }, y, h); }, h2y, o.richardson);
    auto Lxy = maybe_richardson(
        [&](double h) { return mixed_central(L, x, y, h, h * h2y / h2x); }, h2x, o.richardson);
    return {L(x, y), std::move(Lx), std::move(Ly), std::move(Lxx), std::move(Lxy), std::move(Lyy)};
}

inline double partials_discrepancy(const SurfacePartials& a, const SurfacePartials& f) {
    const std::array<std::pair<const PseudoVector*, const PseudoVector*>, 5> pairs{{
        {&a.Lx, &f.Lx}, {&a.Ly, &f.Ly}, {&a.Lxx, &f.Lxx}, {&a.Lxy, &f.Lxy}, {&a.Lyy, &f.Lyy}}};
    double worst = 0.0;
    for (const auto& [an, fd] : pairs) {
        worst = std::max(worst, (*fd - *an).max_norm() / std::max(1.0, an->max_norm()));
    }
    return worst;
}

inline double stencil_reach(double x, double y, const FdOptions& o) {
    return std::max(o.first_step, o.second_step) * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace detail

/// L and its partials up to second order. Analytic when the surface provides
/// them (optionally cross-checked against finite differences), otherwise
/// central differences with one Richardson level.
inline PartialsResult partials(const SurfaceMap& s, double x, double y, const FdOptions& o = {},
                               bool cross_check = false) {
    detail::require_stencil(s, x, y, detail::stencil_reach(x, y, o));
    if (!s.has_analytic_partials()) return {detail::fd_partials(s, x, y, o), false, std::nullopt};
    PartialsResult r{s.analytic_partials(x, y), true, std::nullopt};
    if (cross_check) r.discrepancy = detail::partials_discrepancy(r.values, detail::fd_partials(s, x, y, o));
    return r;
}

inline MetricData metric_from(const PseudoVector& Lx, const PseudoVector& Ly, double x, double y) {
    MetricData m;
    m.g_xx = inner(Lx, Lx);
    m.g_xy = inner(Lx, Ly);
    m.g_yy = inner(Ly, Ly);
    if (!(m.g_xy < 0.0)) {
        throw DegenerateMetric("induced metric at (" + std::to_string(x) + ", " + std::to_string(y) +
                               ") has g_xy = " + std::to_string(m.g_xy) +
                               " >= 0; not conformal null coordinates of a Lorentz surface");
    }
    m.E = std::sqrt(-m.g_xy);
    return m;
}

inline MetricData induced_metric(const SurfaceMap& s, double x, double y, const FdOptions& o = {}) {
    const auto p = partials(s, x, y, o).values;
    return metric_from(p.Lx, p.Ly, x, y);
}

/// E and its first and mixed derivatives by central differences of the E-field.
struct ConformalJet {
    double E = 0.0;
    double E_x = 0.0;
    double E_y = 0.0;
    double E_xy = 0.0;
};

inline ConformalJet conformal_jet(const SurfaceMap& s, double x, double y, const FdOptions& o = {}) {
    const double base = o.curvature_step > 0.0 ? o.curvature_step : (s.has_analytic_partials() ? 1e-4 : 1e-3);
    const double hx = detail::scaled(base, x);
    const double hy = detail::scaled(base, y);
    detail::require_stencil(s, x, y, std::max(hx, hy) + detail::stencil_reach(x, y, o));
    auto E = [&](double px, double py) {
        const auto p = partials(s, px, py, o).values;
        return metric_from(p.Lx, p.Ly, px, py).E;
    };
    ConformalJet j;
    j.E = E(x, y);
    j.E_x = detail::maybe_richardson([&](double h) { return (E(x + h, y) - E(x - h, y)) / (2.0 * h); }, hx,
                                     o.richardson);
    j.E_y = detail::maybe_richardson([&](double h) { return (E(x, y + h) - E(x, y - h)) / (2.0 * h); }, hy,
                                     o.richardson);
    j.E_xy = detail::maybe_richardson([&](double h) { return detail::mixed_central(E, x, y, h, h * hy / hx); },
                                      hx, o.richardson);
    return j;
}

inline double curvature_from(const ConformalJet& j) {
    const double E2 = j.E * j.E;
    return (2.0 * j.E * j.E_xy - 2.0 * j.E_x * j.E_y) / (E2 * E2);
}

inline double gauss_curvature(const SurfaceMap& s, double x, double y, const FdOptions& o = {}) {
    return curvature_from(conformal_jet(s, x, y, o));
}

inline FrameData frame_from(const SurfacePartials& p, const ConformalJet& j) {
    const double E2 = j.E * j.E;
    return {p.Lx / j.E,          p.Ly / j.E,          2.0 * j.E_x / j.E,
            2.0 * j.E_y / j.E,   j.E_x / E2,          -j.E_y / E2};
}

inline FrameData connection_data(const SurfaceMap& s, double x, double y, const FdOptions& o = {}) {
    return frame_from(partials(s, x, y, o).values, conformal_jet(s, x, y, o));
}

/// Solves G a = b for a small dense symmetric (indefinite) system by
/// elimination with partial pivoting.
template <std::size_t N>
std::array<double, N> solve_gram(std::array<std::array<double, N>, N> G, std::array<double, N> b) {
    double scale = 1.0;
    for (const auto& row : G) {
        for (double v : row) scale = std::max(scale, std::abs(v));
    }
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < N; ++r) {
            if (std::abs(G[r][col]) > std::abs(G[piv][col])) piv = r;
        }
        if (std::abs(G[piv][col]) < kPivotThreshold * scale) {
            throw SingularGram("tangential projection: Gram matrix is singular (pivot " +
                               std::to_string(G[piv][col]) + ")");
        }
        std::swap(G[piv], G[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < N; ++r) {
            const double f = G[r][col] / G[col][col];
            for (std::size_t c = col; c < N; ++c) G[r][c] -= f * G[col][c];
            b[r] -= f * b[col];
        }
    }
    std::array<double, N> a{};
    for (std::size_t i = N; i-- > 0;) {
        double acc = b[i];
        for (std::size_t c = i + 1; c < N; ++c) acc -= G[i][c] * a[c];
        a[i] = acc / G[i][i];
    }
    return a;
}

namespace detail {

/// Component of v normal to span(basis).
template <std::size_t N>
PseudoVector normal_part(const PseudoVector& v, const std::array<const PseudoVector*, N>& basis) {
    std::array<std::array<double, N>, N> G{};
    std::array<double, N> rhs{};
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) G[i][j] = inner(*basis[i], *basis[j]);
        rhs[i] = inner(v, *basis[i]);
    }
    const auto a = solve_gram(G, rhs);
    PseudoVector out = v;
    for (std::size_t i = 0; i < N; ++i) out -= a[i] * *basis[i];
    return out;
}

inline PseudoVector normal_part(const SurfaceMap& s, const SurfacePartials& p, const PseudoVector& v) {
    if (s.ambient().kind() == AmbientKind::Flat) {
        return normal_part<2>(v, {&p.Lx, &p.Ly});
    }
    // In a quadric the position vector is normal to the quadric itself.
    return normal_part<3>(v, {&p.Lx, &p.Ly, &p.L});
}

}  // namespace detail

/// h(d_i, d_j) = normal part of L_ij (inside the quadric for curved ambients),
/// frame values by bilinearity, H = (1/2) trace_g h, K from the E-field.
inline FundamentalForms second_fundamental_form(const SurfaceMap& s, double x, double y,
                                                const FdOptions& o = {}) {
    const SurfacePartials p = partials(s, x, y, o).values;
    const ConformalJet j = conformal_jet(s, x, y, o);
    FundamentalForms f{metric_from(p.Lx, p.Ly, x, y),
                       frame_from(p, j),
                       detail::normal_part(s, p, p.Lxx),
                       detail::normal_part(s, p, p.Lxy),
                       detail::normal_part(s, p, p.Lyy),
                       PseudoVector(s.signature()),
                       PseudoVector(s.signature()),
                       PseudoVector(s.signature()),
                       PseudoVector(s.signature()),
                       curvature_from(j)};
    const double E2 = f.metric.E * f.metric.E;
    f.h11 = f.h_xx / E2;
    f.h12 = f.h_xy / E2;
    f.h22 = f.h_yy / E2;
    const auto& m = f.metric;
    const double det = m.g_xx * m.g_yy - m.g_xy * m.g_xy;
    f.H = (m.g_yy * f.h_xx - 2.0 * m.g_xy * f.h_xy + m.g_xx * f.h_yy) * (0.5 / det);
    return f;
}

/// K - c + <h11,h22> - <h12,h12>: the Gauss equation on the null frame.
inline double gauss_equation_residual(const FundamentalForms& f, double c) {
    return f.K - c + inner(f.h11, f.h22) - inner(f.h12, f.h12);
}

inline double gauss_equation_residual(const SurfaceMap& s, double x, double y, const FdOptions& o = {}) {
    return gauss_equation_residual(second_fundamental_form(s, x, y, o), s.ambient().curvature());
}

inline constexpr double kMinimalityTol = 1e-6;

/// max over the grid of |H|_inf.
inline ConditionReport minimality_residual(const SurfaceMap& s, const Grid& grid, const FdOptions& o = {},
                                           double tol = kMinimalityTol) {
    auto m = grid_max(grid, [&](double x, double y) { return second_fundamental_form(s, x, y, o).H.max_norm(); });
    return make_report("minimality", m.value, tol, Comparison::AtMost, grid.describe(), {m.x, m.y});
}

inline Grid default_grid(const SurfaceMap& s) { return Grid{s.domain(), 21, 21}; }

/// Max analytic-vs-FD partials discrepancy over the grid.
inline ConditionReport partials_discrepancy_report(const SurfaceMap& s, const Grid& grid, const FdOptions& o = {},
                                                   double tol = 1e-6) {
    if (!s.has_analytic_partials()) throw InvalidInput("partials_discrepancy_report: no analytic partials");
    auto m = grid_max(grid, [&](double x, double y) { return *partials(s, x, y, o, true).discrepancy; });
    return make_report("fd-partials", m.value, tol, Comparison::AtMost, grid.describe(), {m.x, m.y});
}

/// Coarse step for the halving check. Large enough that truncation, not
/// roundoff, dominates the Richardson estimate at both steps.
inline constexpr double kConvergenceStep = 0.04;

struct ConvergenceResult {
    double coarse = 0.0;
    double fine = 0.0;
    double ratio() const { return fine > 0.0 ? coarse / fine : std::numeric_limits<double>::infinity(); }
};

/// Grid-max partials discrepancy at step h and h/2 (first and second steps
/// both set to h). The grid is pulled inward where the coarse stencil would
/// leave the padded domain.
inline ConvergenceResult fd_convergence(const SurfaceMap& s, const Grid& grid, double h = kConvergenceStep,
                                        bool richardson = true) {
    const Rect& r = grid.rect;
    const double big = std::max({1.0, std::abs(r.x.lo), std::abs(r.x.hi), std::abs(r.y.lo), std::abs(r.y.hi)});
    const double inset = std::max(0.0, 2.0 * h * big - kDomainPad) * 1.01;
    Grid g = grid;
    g.rect = {{r.x.lo + inset, r.x.hi - inset}, {r.y.lo + inset, r.y.hi - inset}};
    FdOptions coarse{h, h, 0.0, richardson};
    FdOptions fine{0.5 * h, 0.5 * h, 0.0, richardson};
    return {partials_discrepancy_report(s, g, coarse).value, partials_discrepancy_report(s, g, fine).value};
}

}  // namespace lms
