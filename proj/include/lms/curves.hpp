#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"
#include "pea.hpp"
#include "report.hpp"

namespace lms {

inline constexpr int kMaxCurveOrder = 3;
inline constexpr int kDefaultCurveSamples = 41;
inline constexpr Interval kDefaultCurveDomain{-2.0, 2.0};

/// Components of the order-th derivative at t. Must be stateless.
using CurveFn = std::function<std::vector<double>(double t, int order)>;

/// Vector-valued map of one parameter with exact derivatives up to order 3.
class Curve {
public:
    Curve(Signature sig, CurveFn fn, Interval domain = kDefaultCurveDomain, std::string name = {})
        : sig_(sig), fn_(std::make_shared<const CurveFn>(std::move(fn))), domain_(domain),
          name_(std::move(name)) {
        if (!(domain_.lo <= domain_.hi)) throw InvalidInput("Curve: empty domain");
    }

    const Signature& signature() const noexcept { return sig_; }
    const Interval& domain() const noexcept { return domain_; }
    const std::string& name() const noexcept { return name_; }

    Curve with_domain(Interval d) const {
        Curve c = *this;
        c.domain_ = d;
        return c;
    }

    /// Unchecked evaluation; see eval() for the validated entry point.
    PseudoVector operator()(double t, int order = 0) const {
        return PseudoVector(sig_, (*fn_)(t, order));
    }

private:
    Signature sig_;
    std::shared_ptr<const CurveFn> fn_;
    Interval domain_;
    std::string name_;
};

inline PseudoVector eval(const Curve& curve, double t, int order) {
    if (order < 0 || order > kMaxCurveOrder) {
        throw InvalidInput("eval: derivative order " + std::to_string(order) + " outside [0,3]");
    }
    if (!curve.domain().contains(t, 1e-12)) {
        throw InvalidInput("eval: t=" + std::to_string(t) + " outside curve domain " +
                           describe_interval(curve.domain()));
    }
    return curve(t, order);
}

// ---------------------------------------------------------------------------
// Closed-form curves: every component is a sum of terms whose derivatives of
// any order are known exactly.

enum class TermKind { Poly, Cosh, Sinh, Cos, Sin };

struct Term {
    TermKind kind = TermKind::Poly;
    double coeff = 0.0;
    /// Frequency for the transcendental kinds, power for Poly.
    double rate = 0.0;

    double derivative(double t, int order) const {
        switch (kind) {
            case TermKind::Poly: {
                const int n = static_cast<int>(rate);
                if (order > n) return 0.0;
                double f = coeff;
                for (int i = 0; i < order; ++i) f *= n - i;
                return f * std::pow(t, n - order);
            }
            case TermKind::Cosh:
            case TermKind::Sinh: {
                const double w = rate;
                const bool even = (order % 2 == 0);
                const bool use_cosh = (kind == TermKind::Cosh) == even;
                return coeff * std::pow(w, order) * (use_cosh ? std::cosh(w * t) : std::sinh(w * t));
            }
            case TermKind::Cos:
            case TermKind::Sin: {
                // d^k cos = cos(wt + k pi/2) w^k, d^k sin = sin(wt + k pi/2) w^k
                const double w = rate;
                const int phase = (order + (kind == TermKind::Sin ? 1 : 0)) % 4;
                const double c = std::cos(w * t);
                const double s = std::sin(w * t);
                const double v = phase == 0 ? c : phase == 1 ? -s : phase == 2 ? -c : s;
                return coeff * std::pow(w, order) * v;
            }
        }
        return 0.0;
    }
};

inline Term constant_term(double c) { return {TermKind::Poly, c, 0.0}; }
inline Term poly_term(double c, int power) { return {TermKind::Poly, c, static_cast<double>(power)}; }
inline Term cosh_term(double c, double w) { return {TermKind::Cosh, c, w}; }
inline Term sinh_term(double c, double w) { return {TermKind::Sinh, c, w}; }
inline Term cos_term(double c, double w) { return {TermKind::Cos, c, w}; }
inline Term sin_term(double c, double w) { return {TermKind::Sin, c, w}; }

using Component = std::vector<Term>;

inline Curve closed_form_curve(Signature sig, std::vector<Component> components,
                               Interval domain = kDefaultCurveDomain, std::string name = {}) {
    if (components.size() != static_cast<std::size_t>(sig.dim())) {
        throw InvalidInput("closed_form_curve: " + std::to_string(components.size()) +
                           " components for " + sig.to_string());
    }
    auto fn = [comps = std::move(components)](double t, int order) {
        std::vector<double> out(comps.size(), 0.0);
        for (std::size_t i = 0; i < comps.size(); ++i) {
            for (const Term& term : comps[i]) out[i] += term.derivative(t, order);
        }
        return out;
    };
    return Curve(sig, std::move(fn), domain, std::move(name));
}

inline Curve zero_curve(Signature sig, Interval domain = kDefaultCurveDomain) {
    return closed_form_curve(sig, std::vector<Component>(static_cast<std::size_t>(sig.dim())),
                             domain, "zero");
}

/// Pointwise sum of two curves on the intersection of their domains.
inline Curve add_curves(const Curve& a, const Curve& b) {
    require_same(a.signature(), b.signature(), "add_curves");
    Interval d{std::max(a.domain().lo, b.domain().lo), std::min(a.domain().hi, b.domain().hi)};
    return Curve(
        a.signature(),
        [a, b](double t, int order) {
            auto v = a(t, order) + b(t, order);
            return std::vector<double>(v.components().begin(), v.components().end());
        },
        d, a.name() + "+" + b.name());
}

/// t -> c(-t), keeping derivatives exact.
inline Curve reflect_parameter(const Curve& c) {
    return Curve(
        c.signature(),
        [c](double t, int order) {
            auto v = c(-t, order);
            if (order % 2 == 1) v *= -1.0;
            return std::vector<double>(v.components().begin(), v.components().end());
        },
        Interval{-c.domain().hi, -c.domain().lo}, c.name() + "(-t)");
}

// ---------------------------------------------------------------------------
// Finite-difference cross-checks

/// Central difference of g with one Richardson level: O(h^4).
template <typename G>
auto richardson_central(G&& g, double t, double h) {
    auto central = [&](double step) { return (g(t + step) - g(t - step)) / (2.0 * step); };
    auto coarse = central(h);
    auto fine = central(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

/// Max-norm discrepancy between the exact order-th derivative and a
/// Richardson central difference of the (order-1)-th, relative to
/// max(1, |exact|_inf).
inline double fd_derivative_check(const Curve& curve, double t, int order, double step) {
    if (order < 1 || order > kMaxCurveOrder) {
        throw InvalidInput("fd_derivative_check: order must be in [1,3]");
    }
    if (!(step > 0.0)) throw InvalidInput("fd_derivative_check: step must be positive");
    const PseudoVector exact = eval(curve, t, order);
    const PseudoVector fd =
        richardson_central([&](double s) { return eval(curve, s, order - 1); }, t, step);
    return (fd - exact).max_norm() / std::max(1.0, exact.max_norm());
}

inline double derivative_inner(const Curve& c1, int k1, const Curve& c2, int k2, double t1,
                               double t2) {
    require_same(c1.signature(), c2.signature(), "derivative_inner");
    return inner(eval(c1, t1, k1), eval(c2, t2, k2));
}

/// Max of |f(t)| over `samples` evenly spaced points, with its location.
template <typename F>
std::pair<double, double> sample_max(const Interval& iv, int samples, F&& f) {
    double worst = -std::numeric_limits<double>::infinity();
    double at = iv.lo;
    for (double t : linspace(iv.lo, iv.hi, samples)) {
        const double v = f(t);
        if (std::isnan(v)) return {v, t};
        if (v > worst) {
            worst = v;
            at = t;
        }
    }
    return {worst, at};
}

inline std::string describe_samples(const Interval& iv, int samples) {
    return std::to_string(samples) + " samples on " + describe_interval(iv);
}

/// |<z',z'>| maximized over `samples` evenly spaced points of iv.
inline ConditionReport null_check(const Curve& curve, const Interval& iv, int samples, double tol) {
    if (samples < 2) throw InvalidInput("null_check: need at least 2 samples");
    auto [worst, at] = sample_max(iv, samples, [&](double t) {
        return std::abs(derivative_inner(curve, 1, curve, 1, t, t));
    });
    return make_report("null", worst, tol, Comparison::AtMost, describe_samples(iv, samples), {at});
}

inline ConditionReport null_check(const Curve& curve, int samples = kDefaultCurveSamples,
                                  double tol = kDefaultCausalTol) {
    return null_check(curve, curve.domain(), samples, tol);
}

}  // namespace lms
