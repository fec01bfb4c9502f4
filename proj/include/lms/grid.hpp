#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <thread>
#include <vector>

#include "errors.hpp"

namespace lms {

struct Interval {
    double lo = -2.0;
    double hi = 2.0;

    bool contains(double t, double slack = 0.0) const noexcept {
        return t >= lo - slack && t <= hi + slack;
    }
    double length() const noexcept { return hi - lo; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct Rect {
    Interval x{-1.0, 1.0};
    Interval y{-1.0, 1.0};

    bool contains(double px, double py, double slack = 0.0) const noexcept {
        return x.contains(px, slack) && y.contains(py, slack);
    }

    friend bool operator==(const Rect&, const Rect&) = default;
};

/// n evenly spaced points including both ends.
inline std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw InvalidInput("linspace: need at least one point");
    std::vector<double> out(static_cast<std::size_t>(n));
    if (n == 1) {
        out[0] = 0.5 * (lo + hi);
        return out;
    }
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    out.back() = hi;
    return out;
}

inline std::string describe_interval(const Interval& iv) {
    std::ostringstream os;
    os << '[' << iv.lo << ',' << iv.hi << ']';
    return os.str();
}

struct Grid {
    Rect rect;
    int nx = 21;
    int ny = 21;

    std::vector<double> xs() const { return linspace(rect.x.lo, rect.x.hi, nx); }
    std::vector<double> ys() const { return linspace(rect.y.lo, rect.y.hi, ny); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }

    std::string describe() const {
        return std::to_string(nx) + "x" + std::to_string(ny) + " on " +
               describe_interval(rect.x) + "x" + describe_interval(rect.y);
    }
};

/// f at every grid point, row-major (index j*nx + i). Rows are evaluated
/// concurrently; the first exception in row order is rethrown.
template <typename F>
auto grid_map(const Grid& grid, F&& f) -> std::vector<std::invoke_result_t<F&, double, double>> {
    using T = std::invoke_result_t<F&, double, double>;
    const auto xs = grid.xs();
    const auto ys = grid.ys();
    const std::size_t nrows = ys.size();
    std::vector<std::optional<T>> slots(grid.size());
    std::vector<std::exception_ptr> errors(nrows);

    auto run_row = [&](std::size_t j) {
        try {
            for (std::size_t i = 0; i < xs.size(); ++i) slots[j * xs.size() + i].emplace(f(xs[i], ys[j]));
        } catch (...) {
            errors[j] = std::current_exception();
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(hw, nrows);
    if (workers <= 1) {
        for (std::size_t j = 0; j < nrows; ++j) run_row(j);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t j = w; j < nrows; j += workers) run_row(j);
            });
        }
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    std::vector<T> out;
    out.reserve(slots.size());
    for (auto& v : slots) out.push_back(std::move(*v));
    return out;
}

/// Largest value of f over the grid and where it occurs. Ties resolve to the
/// first point in row-major order so the result does not depend on scheduling.
struct GridMax {
    double value = 0.0;
    double x = std::numeric_limits<double>::quiet_NaN();
    double y = std::numeric_limits<double>::quiet_NaN();
};

/// Reduces values laid out as by grid_map.
inline GridMax grid_argmax(const Grid& grid, const std::vector<double>& values) {
    const auto xs = grid.xs();
    const auto ys = grid.ys();
    GridMax best;
    best.value = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ys.size(); ++j) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double v = values[j * xs.size() + i];
            // NaN counts as worst.
            if (std::isnan(v) || v > best.value) {
                best = {v, xs[i], ys[j]};
                if (std::isnan(v)) return best;
            }
        }
    }
    return best;
}

template <typename F>
GridMax grid_max(const Grid& grid, F&& f) {
    return grid_argmax(grid, grid_map(grid, [&](double x, double y) -> double { return f(x, y); }));
}

}  // namespace lms
