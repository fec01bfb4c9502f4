#pragma once

// Oracles and helpers shared by the unit tests. Nothing here calls into the
// library's numerics, so agreement with it is an independent check.

#include <cmath>
#include <functional>
#include <vector>

#include "lms/pea.hpp"
#include "lms/random.hpp"

namespace oracle {

/// Inner product written from scratch: timelike coordinates first.
inline double inner(const std::vector<double>& u, const std::vector<double>& v, int index) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += (static_cast<int>(i) < index ? -1.0 : 1.0) * u[i] * v[i];
    return acc;
}

inline std::vector<double> comps(const lms::PseudoVector& v) { return {v.components().begin(), v.components().end()}; }

using VecFn = std::function<std::vector<double>(double)>;

/// Richardson-extrapolated central difference of a vector function.
inline std::vector<double> derivative(const VecFn& f, double t, double h) {
    auto central = [&](double s) {
        auto a = f(t + s), b = f(t - s);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = (a[i] - b[i]) / (2.0 * s);
        return a;
    };
    auto c = central(h), fine = central(h / 2.0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (4.0 * fine[i] - c[i]) / 3.0;
    return c;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

inline lms::PseudoVector random_vector(lms::Rng& rng, lms::Signature sig, double scale = 1.0) {
    std::vector<double> c(static_cast<std::size_t>(sig.dim()));
    for (auto& v : c) v = rng.uniform(-scale, scale);
    return {sig, c};
}

}  // namespace oracle
