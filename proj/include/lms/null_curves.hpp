#pragma once

// Random null curves in E^{2k}_k built from closed-form trig/hyperbolic terms.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "curves.hpp"
#include "random.hpp"

namespace lms {

enum class NullFamily { Helical, Hyperbolic };

inline const char* to_string(NullFamily f) {
    return f == NullFamily::Helical ? "helical" : "hyperbolic";
}

namespace detail {

/// Component with derivative rho*cos(w t + phase).
inline Component integrated_cos(double rho, double w, double phase) {
    // integral of rho cos(wt+phi) = (rho/w) sin(wt+phi)
    const double c = rho / w;
    return {sin_term(c * std::cos(phase), w), cos_term(c * std::sin(phase), w)};
}

/// Component with derivative rho*sin(w t + phase).
inline Component integrated_sin(double rho, double w, double phase) {
    const double c = rho / w;
    return {cos_term(-c * std::cos(phase), w), sin_term(c * std::sin(phase), w)};
}

/// Fills `slots` (size n) with curve components whose velocities rotate in
/// coordinate pairs, plus a linear slot when n is odd. Returns the squared
/// Euclidean norm of the velocity block, which is constant in t.
inline double rotating_block(std::vector<Component>& slots, std::size_t begin, std::size_t n, Rng& rng,
                             double scale, double wmin, double wmax) {
    double norm2 = 0.0;
    std::size_t i = 0;
    for (; i + 1 < n; i += 2) {
        const double rho = scale * rng.uniform(0.5, 1.5);
        const double w = rng.uniform(wmin, wmax) * (rng.coin() ? 1.0 : -1.0);
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        slots[begin + i] = integrated_cos(rho, w, phase);
        slots[begin + i + 1] = integrated_sin(rho, w, phase);
        norm2 += rho * rho;
    }
    if (i < n) {
        const double rate = scale * rng.uniform(0.3, 1.2) * (rng.coin() ? 1.0 : -1.0);
        slots[begin + i] = {poly_term(rate, 1)};
        norm2 += rate * rate;
    }
    return norm2;
}

inline void scale_component(Component& c, double s) {
    for (Term& t : c) t.coeff *= s;
}

}  // namespace detail

/// Random null curve in E^{2k}_k (k >= 1). Helical: the timelike and spacelike
/// velocity blocks rotate with equal Euclidean norms. Hyperbolic: the first
/// timelike/spacelike pair carries (rho/w)(sinh, cosh) and the remaining slots
/// are linear with rates balancing the norm.
inline Curve random_null_curve(int k, NullFamily family, Rng& rng, double wmin = 0.2,
                               double wmax = 0.8, Interval domain = kDefaultCurveDomain) {
    if (k < 1) throw InvalidInput("random_null_curve: k must be >= 1");
    const Signature sig(2 * k, k);
    const auto kk = static_cast<std::size_t>(k);
    std::vector<Component> comps(2 * kk);
    if (family == NullFamily::Helical) {
        const double nt = detail::rotating_block(comps, 0, kk, rng, 1.0, wmin, wmax);
        const double ns = detail::rotating_block(comps, kk, kk, rng, 1.0, wmin, wmax);
        const double fix = std::sqrt(nt / ns);
        for (std::size_t i = kk; i < 2 * kk; ++i) detail::scale_component(comps[i], fix);
    } else {
        const double rho = rng.uniform(0.5, 1.5);
        const double w = rng.uniform(wmin, wmax);
        const double shift = rng.uniform(-0.5, 0.5);
        // d/dt (rho/w) sinh(w(t+s)) = rho cosh(w(t+s)); expand the shift.
        const double c = rho / w;
        comps[0] = {sinh_term(c * std::cosh(w * shift), w), cosh_term(c * std::sinh(w * shift), w)};
        comps[kk] = {cosh_term(c * std::cosh(w * shift), w), sinh_term(c * std::sinh(w * shift), w)};
        // Velocity so far: -rho^2 from the hyperbolic pair. Linear rates for
        // the other slots must satisfy sum(space^2) - sum(time^2) = rho^2.
        double time2 = 0.0;
        for (std::size_t i = 1; i < kk; ++i) {
            const double b = rng.uniform(-1.0, 1.0);
            comps[i] = {poly_term(b, 1)};
            time2 += b * b;
        }
        double space2 = 0.0;
        for (std::size_t i = kk + 1; i + 1 < 2 * kk; ++i) {
            const double b = rng.uniform(-1.0, 1.0);
            comps[i] = {poly_term(b, 1)};
            space2 += b * b;
        }
        const double need = rho * rho + time2 - space2;
        if (k == 1 || need <= 0.0) {
            // E^2_1 cannot host this shape; fall back to the helical family.
            return random_null_curve(k, NullFamily::Helical, rng, wmin, wmax, domain);
        }
        comps[2 * kk - 1] = {poly_term(std::sqrt(need) * (rng.coin() ? 1.0 : -1.0), 1)};
    }
    return closed_form_curve(sig, std::move(comps), domain,
                             std::string("random_") + to_string(family));
}

/// Null pair in E^6_3 with constant <z',w'> = -rho*sigma*lambda:
///   z' = rho (1, 0, 0, cos(wx+phi), sin(wx+phi), 0)
///   w' = sigma (lambda, cos(vy+psi), sin(vy+psi), 0, 0, sqrt(1+lambda^2))
/// Both curves are non-straight, so the flat surface is not a plane.
inline std::pair<Curve, Curve> constant_pairing_null_pair(Rng& rng,
                                                          Interval domain = kDefaultCurveDomain) {
    const Signature sig(6, 3);
    const double rho = rng.uniform(0.5, 1.5);
    const double sigma = rng.uniform(0.5, 1.5);
    const double lambda = rng.uniform(0.3, 1.5);
    const double w = rng.uniform(0.3, 1.0);
    const double v = rng.uniform(0.3, 1.0);
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double psi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const Component none;
    Curve z = closed_form_curve(sig,
                                {{poly_term(rho, 1)}, none, none, detail::integrated_cos(rho, w, phi),
                                 detail::integrated_sin(rho, w, phi), none},
                                domain, "constant_pairing_z");
    Curve wc = closed_form_curve(sig,
                                 {{poly_term(sigma * lambda, 1)}, detail::integrated_cos(sigma, v, psi),
                                  detail::integrated_sin(sigma, v, psi), none, none,
                                  {poly_term(sigma * std::sqrt(1 + lambda * lambda), 1)}},
                                 domain, "constant_pairing_w");
    return {std::move(z), std::move(wc)};
}

}  // namespace lms
