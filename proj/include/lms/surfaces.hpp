#pragma once

// Constructors for the classified minimal Lorentz surface families and
// checkers for their premises and side conditions.
//
//   translation   L = z(x) + w(y)                                   in E^m_s
//   sphere_b      L = z/(x+y) - z'/2                                in S^m_s(1)
//   sphere_c      L = (z+w)/(x+y) - (z'+w')/2                       in S^m_s(1)
//   hyp_ii        L = z tanh((x+y)/sqrt2) - z'/sqrt2                in H^m_s(-1)
//   hyp_iii       L = (z+w) tanh((x+y)/sqrt2) - (z'+w')/sqrt2       in H^m_s(-1)
//
// Positions live in the flat embedding space of the ambient. Every
// constructor attaches closed-form partials up to second order.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "curve_families.hpp"
#include "curves.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "pea.hpp"
#include "report.hpp"

namespace lms {

/// The position map must stay regular this far outside its domain rectangle,
/// so finite-difference stencils centred on boundary grid points are valid.
inline constexpr double kDomainPad = 0.02;

inline constexpr Rect kSphereDomain{{0.1, 1.1}, {0.1, 1.1}};
inline constexpr Rect kHyperbolicDomain{{-1.0, 1.0}, {-1.0, 1.0}};
inline constexpr Rect kFlatDomain{{-1.0, 1.0}, {-1.0, 1.0}};
inline constexpr Rect kDeSitterDomain{{0.9, 1.1}, {0.9, 1.1}};

struct SurfacePartials {
    PseudoVector L;
    PseudoVector Lx;
    PseudoVector Ly;
    PseudoVector Lxx;
    PseudoVector Lxy;
    PseudoVector Lyy;
};

enum class SurfaceFamily { Translation, SphereB, SphereC, HypII, HypIII, DeSitterControl, Custom };

inline const char* to_string(SurfaceFamily f) {
    switch (f) {
        case SurfaceFamily::Translation: return "translation";
        case SurfaceFamily::SphereB: return "sphere_b";
        case SurfaceFamily::SphereC: return "sphere_c";
        case SurfaceFamily::HypII: return "hyp_ii";
        case SurfaceFamily::HypIII: return "hyp_iii";
        case SurfaceFamily::DeSitterControl: return "de_sitter_control";
        case SurfaceFamily::Custom: return "custom";
    }
    return "?";
}

using PositionFn = std::function<PseudoVector(double x, double y)>;
using PartialsFn = std::function<SurfacePartials(double x, double y)>;
/// Distance from (x,y) to the map's singular locus; +inf when there is none.
using SingularDistanceFn = std::function<double(double x, double y)>;

class SurfaceMap {
public:
    SurfaceMap(Ambient ambient, Rect domain, PositionFn position,
               std::optional<PartialsFn> partials = std::nullopt, SingularDistanceFn singular = {})
        : ambient_(ambient), domain_(domain), position_(std::move(position)),
          partials_(std::move(partials)), singular_(std::move(singular)) {
        if (!(domain_.x.lo < domain_.x.hi) || !(domain_.y.lo < domain_.y.hi)) {
            throw InvalidInput("SurfaceMap: empty domain");
        }
    }

    const Ambient& ambient() const noexcept { return ambient_; }
    const Rect& domain() const noexcept { return domain_; }
    const Signature& signature() const noexcept { return ambient_.embedding_signature(); }

    PseudoVector position(double x, double y) const {
        PseudoVector p = position_(x, y);
        require_same(p.signature(), signature(), "SurfaceMap::position");
        return p;
    }

    bool has_analytic_partials() const noexcept { return partials_.has_value(); }

    SurfacePartials analytic_partials(double x, double y) const {
        if (!partials_) throw InvalidInput("SurfaceMap: no analytic partials attached");
        return (*partials_)(x, y);
    }

    double singular_distance(double x, double y) const {
        return singular_ ? singular_(x, y) : std::numeric_limits<double>::infinity();
    }

    /// Same map with the analytic partials dropped, forcing finite differences.
    SurfaceMap without_partials() const {
        SurfaceMap s = *this;
        s.partials_.reset();
        return s;
    }

    /// Same map with a different sampling rectangle.
    SurfaceMap with_domain(Rect d) const {
        SurfaceMap s = *this;
        s.domain_ = d;
        return s;
    }

    // Metadata
    SurfaceFamily family = SurfaceFamily::Custom;
    /// Curves the map was built from (z, then w when present).
    std::vector<Curve> curves;
    /// The nondegeneracy premise failed: the surface is the totally geodesic
    /// boundary case of the classification.
    bool totally_geodesic_boundary = false;
    /// translation_surface replaced w(y) by w(-y) to orient g_xy < 0.
    bool y_reflected = false;

private:
    Ambient ambient_;
    Rect domain_;
    PositionFn position_;
    std::optional<PartialsFn> partials_;
    SingularDistanceFn singular_;
};

inline Rect padded(const Rect& r, double pad = kDomainPad) {
    return {{r.x.lo - pad, r.x.hi + pad}, {r.y.lo - pad, r.y.hi + pad}};
}

namespace detail {

/// Derivatives 0..3 of a curve at t, checked against its domain.
struct Jet {
    PseudoVector d0, d1, d2, d3;
};

inline Jet jet(const Curve& c, double t) {
    return {eval(c, t, 0), eval(c, t, 1), eval(c, t, 2), eval(c, t, 3)};
}

inline void require_curve_covers(const Curve& c, const Interval& iv, const char* which) {
    if (!c.domain().contains(iv.lo, 1e-12) || !c.domain().contains(iv.hi, 1e-12)) {
        throw InvalidInput(std::string("curve ") + which + " domain " + describe_interval(c.domain()) +
                           " does not cover " + describe_interval(iv));
    }
}

/// Rejects rectangles whose padded closure meets the line x+y = 0.
inline void require_off_antidiagonal(const Rect& domain) {
    const Rect p = padded(domain);
    const double lo = p.x.lo + p.y.lo;
    const double hi = p.x.hi + p.y.hi;
    if (!(lo > 0.0 || hi < 0.0)) {
        throw InvalidInput("domain " + describe_interval(domain.x) + "x" + describe_interval(domain.y) +
                           " touches the singular line x+y=0");
    }
}

inline double antidiagonal_distance(double x, double y) { return std::abs(x + y) / std::numbers::sqrt2; }

inline SurfacePartials sphere_partials(const Jet& z, const Jet& w, double x, double y) {
    const double S = x + y;
    const double S2 = S * S;
    const double S3 = S2 * S;
    const PseudoVector sum = z.d0 + w.d0;
    return {sum / S - (z.d1 + w.d1) * 0.5,
            z.d1 / S - sum / S2 - z.d2 * 0.5,
            w.d1 / S - sum / S2 - w.d2 * 0.5,
            z.d2 / S - z.d1 * (2.0 / S2) + sum * (2.0 / S3) - z.d3 * 0.5,
            sum * (2.0 / S3) - (z.d1 + w.d1) / S2,
            w.d2 / S - w.d1 * (2.0 / S2) + sum * (2.0 / S3) - w.d3 * 0.5};
}

inline SurfacePartials hyperbolic_partials(const Jet& z, const Jet& w, double x, double y) {
    constexpr double r2 = std::numbers::sqrt2;
    const double u = (x + y) / r2;
    const double T = std::tanh(u);
    const double ch = std::cosh(u);
    const double sech2 = 1.0 / (ch * ch);
    const PseudoVector sum = z.d0 + w.d0;
    const PseudoVector dsum = z.d1 + w.d1;
    return {sum * T - dsum / r2,
            z.d1 * T + sum * (sech2 / r2) - z.d2 / r2,
            w.d1 * T + sum * (sech2 / r2) - w.d2 / r2,
            z.d2 * T + z.d1 * (r2 * sech2) - sum * (sech2 * T) - z.d3 / r2,
            dsum * (sech2 / r2) - sum * (sech2 * T),
            w.d2 * T + w.d1 * (r2 * sech2) - sum * (sech2 * T) - w.d3 / r2};
}

enum class QuadricForm { Sphere, Hyperbolic };

inline SurfaceMap quadric_surface(QuadricForm form, const Curve& z, const Curve& w, const Rect& domain) {
    require_same(z.signature(), w.signature(), "surface constructor");
    const Rect pad = padded(domain);
    require_curve_covers(z, pad.x, "z");
    require_curve_covers(w, pad.y, "w");
    const Ambient ambient = Ambient::from_embedding(
        form == QuadricForm::Sphere ? AmbientKind::Sphere : AmbientKind::Hyperbolic, z.signature());

    PositionFn position;
    PartialsFn partials;
    SingularDistanceFn singular;
    if (form == QuadricForm::Sphere) {
        require_off_antidiagonal(domain);
        position = [z, w](double x, double y) {
            const double S = x + y;
            return (eval(z, x, 0) + eval(w, y, 0)) / S - (eval(z, x, 1) + eval(w, y, 1)) * 0.5;
        };
        partials = [z, w](double x, double y) { return sphere_partials(jet(z, x), jet(w, y), x, y); };
        singular = antidiagonal_distance;
    } else {
        position = [z, w](double x, double y) {
            const double T = std::tanh((x + y) / std::numbers::sqrt2);
            return (eval(z, x, 0) + eval(w, y, 0)) * T -
                   (eval(z, x, 1) + eval(w, y, 1)) / std::numbers::sqrt2;
        };
        partials = [z, w](double x, double y) { return hyperbolic_partials(jet(z, x), jet(w, y), x, y); };
    }
    return SurfaceMap(ambient, domain, std::move(position), std::move(partials), std::move(singular));
}

template <typename F>
ConditionReport curve_residual_report(std::string id, const Interval& iv, int samples,
                                      double tol, F&& residual) {
    auto [worst, at] = sample_max(iv, samples, residual);
    return make_report(std::move(id), worst, tol, Comparison::AtMost, describe_samples(iv, samples), {at});
}

/// min over samples of |v(t)|_inf, reported as "exceeds tol".
template <typename F>
ConditionReport curve_nonvanishing_report(std::string id, const Interval& iv, int samples, double tol,
                                          F&& vec) {
    double least = std::numeric_limits<double>::infinity();
    double at = iv.lo;
    for (double t : linspace(iv.lo, iv.hi, samples)) {
        const double n = vec(t).max_norm();
        if (n < least || std::isnan(n)) {
            least = n;
            at = t;
        }
    }
    return make_report(std::move(id), least, tol, Comparison::Exceeds, describe_samples(iv, samples), {at});
}

inline void split_premises(const std::vector<ConditionReport>& reports, const char* ctor,
                           bool& nondegenerate) {
    std::vector<std::string> failed;
    nondegenerate = true;
    for (const auto& r : reports) {
        if (r.pass) continue;
        if (r.comparison == Comparison::Exceeds) {
            nondegenerate = false;
        } else {
            failed.push_back(r.id);
        }
    }
    if (!failed.empty()) {
        std::string msg = std::string(ctor) + ": premise failure:";
        for (const auto& r : reports) {
            if (!r.pass && r.comparison == Comparison::AtMost) {
                msg += " " + r.id + " (residual " + std::to_string(r.value) + " at t=" +
                       std::to_string(r.worst_at.empty() ? 0.0 : r.worst_at[0]) + ")";
            }
        }
        throw PremiseFailure(msg, std::move(failed));
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Premise and side-condition checkers

/// <z,z> = 0, <z',z'> = 4, <z'',z''> = 0 and z''' != 0 (sphere case b).
inline std::vector<ConditionReport> check_case_b_premises(const Curve& z, const Interval& iv,
                                                          int samples = kDefaultCurveSamples,
                                                          double tol = kDefaultCausalTol) {
    using detail::curve_residual_report;
    return {
        curve_residual_report("lightcone-z", iv, samples, tol,
                              [&](double t) { return std::abs(derivative_inner(z, 0, z, 0, t, t)); }),
        curve_residual_report("speed-z", iv, samples, tol,
                              [&](double t) { return std::abs(derivative_inner(z, 1, z, 1, t, t) - 4.0); }),
        curve_residual_report("accel-z", iv, samples, tol,
                              [&](double t) { return std::abs(derivative_inner(z, 2, z, 2, t, t)); }),
        detail::curve_nonvanishing_report("nondegenerate-z", iv, samples, tol,
                                          [&](double t) { return eval(z, t, 3); }),
    };
}

inline std::vector<ConditionReport> check_case_b_premises(const Curve& z, int samples = kDefaultCurveSamples,
                                                          double tol = kDefaultCausalTol) {
    return check_case_b_premises(z, z.domain(), samples, tol);
}

/// <z,z> = 0, <z',z'> = -2, <z'',z''> = 4 and z''' != 2z' (hyperbolic case ii).
inline std::vector<ConditionReport> check_case_ii_premises(const Curve& z, const Interval& iv,
                                                           int samples = kDefaultCurveSamples,
                                                           double tol = kDefaultCausalTol) {
    using detail::curve_residual_report;
    return {
        curve_residual_report("lightcone-z", iv, samples, tol,
                              [&](double t) { return std::abs(derivative_inner(z, 0, z, 0, t, t)); }),
        curve_residual_report("speed-z", iv, samples, tol,
                              [&](double t) { return std::abs(derivative_inner(z, 1, z, 1, t, t) + 2.0); }),
        curve_residual_report("accel-z", iv, samples, tol,
                              [&](double t) { return std::abs(derivative_inner(z, 2, z, 2, t, t) - 4.0); }),
        detail::curve_nonvanishing_report("nondegenerate-z", iv, samples, tol,
                                          [&](double t) { return eval(z, t, 3) - 2.0 * eval(z, t, 1); }),
    };
}

inline std::vector<ConditionReport> check_case_ii_premises(const Curve& z, int samples = kDefaultCurveSamples,
                                                           double tol = kDefaultCausalTol) {
    return check_case_ii_premises(z, z.domain(), samples, tol);
}

/// (c.1) <L,L> = 1, (c.2) 2<z+w,z'''> = (x+y)<z'+w',z'''>, (c.3) same with w'''.
inline std::vector<ConditionReport> check_case_c_conditions(const Curve& z, const Curve& w, const Grid& grid,
                                                            double tol = kDefaultCausalTol) {
    require_same(z.signature(), w.signature(), "check_case_c_conditions");
    detail::require_off_antidiagonal(grid.rect);
    auto terms = [&](double x, double y) {
        const auto zj = detail::jet(z, x);
        const auto wj = detail::jet(w, y);
        const double S = x + y;
        const PseudoVector sum = zj.d0 + wj.d0;
        const PseudoVector dsum = zj.d1 + wj.d1;
        const PseudoVector L = sum / S - dsum * 0.5;
        return std::array<double, 3>{
            std::abs(inner(L, L) - 1.0),
            std::abs(2.0 * inner(sum, zj.d3) - S * inner(dsum, zj.d3)),
            std::abs(2.0 * inner(sum, wj.d3) - S * inner(dsum, wj.d3)),
        };
    };
    std::vector<ConditionReport> out;
    const char* ids[] = {"c.1", "c.2", "c.3"};
    for (int k = 0; k < 3; ++k) {
        auto m = grid_max(grid, [&](double x, double y) { return terms(x, y)[static_cast<std::size_t>(k)]; });
        out.push_back(make_report(ids[k], m.value, tol, Comparison::AtMost, grid.describe(), {m.x, m.y}));
    }
    return out;
}

/// (iii.1) <L,L> = -1,
/// (iii.2) sqrt2 <z+w, 2z'-z'''> tanh((x+y)/sqrt2) = <z'+w', 2z'-z'''>, (iii.3) same with w.
inline std::vector<ConditionReport> check_case_iii_conditions(const Curve& z, const Curve& w, const Grid& grid,
                                                              double tol = kDefaultCausalTol) {
    require_same(z.signature(), w.signature(), "check_case_iii_conditions");
    constexpr double r2 = std::numbers::sqrt2;
    auto terms = [&](double x, double y) {
        const auto zj = detail::jet(z, x);
        const auto wj = detail::jet(w, y);
        const double T = std::tanh((x + y) / r2);
        const PseudoVector sum = zj.d0 + wj.d0;
        const PseudoVector dsum = zj.d1 + wj.d1;
        const PseudoVector L = sum * T - dsum / r2;
        const PseudoVector A = 2.0 * zj.d1 - zj.d3;
        const PseudoVector B = 2.0 * wj.d1 - wj.d3;
        return std::array<double, 3>{
            std::abs(inner(L, L) + 1.0),
            std::abs(r2 * inner(sum, A) * T - inner(dsum, A)),
            std::abs(r2 * inner(sum, B) * T - inner(dsum, B)),
        };
    };
    std::vector<ConditionReport> out;
    const char* ids[] = {"iii.1", "iii.2", "iii.3"};
    for (int k = 0; k < 3; ++k) {
        auto m = grid_max(grid, [&](double x, double y) { return terms(x, y)[static_cast<std::size_t>(k)]; });
        out.push_back(make_report(ids[k], m.value, tol, Comparison::AtMost, grid.describe(), {m.x, m.y}));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Constructors

/// L(x,y) = z(x) + w(y) for null curves z, w with <z',w'> != 0 on the domain.
/// If <z',w'> > 0 throughout, w is replaced by w(-y) (and the y-range mirrored)
/// so the induced metric reads -E^2 (dx dy + dy dx).
inline SurfaceMap translation_surface(const Curve& z, const Curve& w, Rect domain = kFlatDomain,
                                      int samples = kDefaultCurveSamples, double tol = kDefaultCausalTol) {
    require_same(z.signature(), w.signature(), "translation_surface");
    const Rect pad = padded(domain);
    detail::require_curve_covers(z, pad.x, "z");
    detail::require_curve_covers(w, pad.y, "w");

    for (const auto& [curve, iv, name] :
         {std::tuple{&z, pad.x, "z"}, std::tuple{&w, pad.y, "w"}}) {
        const auto r = null_check(*curve, iv, samples, tol);
        if (!r.pass) {
            throw PremiseFailure("translation_surface: curve " + std::string(name) +
                                     " is not null (max |<c',c'>| = " + std::to_string(r.value) + ")",
                                 {std::string("null-") + name});
        }
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double x : linspace(pad.x.lo, pad.x.hi, samples)) {
        const PseudoVector zx = eval(z, x, 1);
        for (double y : linspace(pad.y.lo, pad.y.hi, samples)) {
            const double v = inner(zx, eval(w, y, 1));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(hi < -tol || lo > tol)) {
        throw DegenerateMetric("translation_surface: <z',w'> vanishes on the domain (range [" +
                               std::to_string(lo) + ", " + std::to_string(hi) + "])");
    }

    Curve wc = w;
    bool reflected = false;
    if (lo > tol) {
        wc = reflect_parameter(w);
        domain.y = {-domain.y.hi, -domain.y.lo};
        reflected = true;
    }

    PositionFn position = [z, wc](double x, double y) { return eval(z, x, 0) + eval(wc, y, 0); };
    PartialsFn partials = [z, wc](double x, double y) {
        const PseudoVector zero(z.signature());
        return SurfacePartials{eval(z, x, 0) + eval(wc, y, 0), eval(z, x, 1), eval(wc, y, 1),
                               eval(z, x, 2), zero, eval(wc, y, 2)};
    };
    SurfaceMap s(Ambient::flat(z.signature()), domain, std::move(position), std::move(partials));
    s.family = SurfaceFamily::Translation;
    s.curves = {z, wc};
    s.y_reflected = reflected;
    return s;
}

inline SurfaceMap sphere_case_b(const Curve& z, Rect domain = kSphereDomain,
                                int samples = kDefaultCurveSamples, double tol = kDefaultCausalTol) {
    bool nondegenerate = true;
    detail::split_premises(check_case_b_premises(z, padded(domain).x, samples, tol), "sphere_case_b",
                           nondegenerate);
    const Curve w = zero_curve(z.signature(), z.domain());
    SurfaceMap s = detail::quadric_surface(detail::QuadricForm::Sphere, z, w, domain);
    s.family = SurfaceFamily::SphereB;
    s.curves = {z};
    s.totally_geodesic_boundary = !nondegenerate;
    return s;
}

inline SurfaceMap sphere_case_c(const Curve& z, const Curve& w, Rect domain = kSphereDomain) {
    SurfaceMap s = detail::quadric_surface(detail::QuadricForm::Sphere, z, w, domain);
    s.family = SurfaceFamily::SphereC;
    s.curves = {z, w};
    return s;
}

inline SurfaceMap hyperbolic_case_ii(const Curve& z, Rect domain = kHyperbolicDomain,
                                     int samples = kDefaultCurveSamples, double tol = kDefaultCausalTol) {
    if (z.signature().index() < 1) {
        throw InvalidInput("hyperbolic_case_ii: curve must live in a space of index >= 1");
    }
    bool nondegenerate = true;
    detail::split_premises(check_case_ii_premises(z, padded(domain).x, samples, tol), "hyperbolic_case_ii",
                           nondegenerate);
    const Curve w = zero_curve(z.signature(), z.domain());
    SurfaceMap s = detail::quadric_surface(detail::QuadricForm::Hyperbolic, z, w, domain);
    s.family = SurfaceFamily::HypII;
    s.curves = {z};
    s.totally_geodesic_boundary = !nondegenerate;
    return s;
}

inline SurfaceMap hyperbolic_case_iii(const Curve& z, const Curve& w, Rect domain = kHyperbolicDomain) {
    if (z.signature().index() < 1) {
        throw InvalidInput("hyperbolic_case_iii: curves must live in a space of index >= 1");
    }
    SurfaceMap s = detail::quadric_surface(detail::QuadricForm::Hyperbolic, z, w, domain);
    s.family = SurfaceFamily::HypIII;
    s.curves = {z, w};
    return s;
}

/// The surface viewed in its flat embedding space, dropping the quadric.
inline SurfaceMap as_flat(const SurfaceMap& s) {
    SurfaceMap f(Ambient::flat(s.signature()), s.domain(),
                   [s](double x, double y) { return s.position(x, y); },
                   s.has_analytic_partials()
                       ? std::optional<PartialsFn>([s](double x, double y) { return s.analytic_partials(x, y); })
                       : std::nullopt,
                   [s](double x, double y) { return s.singular_distance(x, y); });
    f.family = s.family;
    f.curves = s.curves;
    f.totally_geodesic_boundary = s.totally_geodesic_boundary;
    f.y_reflected = s.y_reflected;
    return f;
}

/// Unit de Sitter surface S^2_1(1) in E^3_1 in null coordinates, declared in
/// the flat ambient. Totally umbilical there with H = -L; a negative control
/// for minimality.
inline SurfaceMap de_sitter_control(Rect domain = kDeSitterDomain) {
    SurfaceMap s = as_flat(sphere_case_b(quadratic_null_cone_curve(), domain));
    s.family = SurfaceFamily::DeSitterControl;
    return s;
}

}  // namespace lms
