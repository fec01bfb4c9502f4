#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace lms {

/// How a report's value is judged against its tolerance.
enum class Comparison {
    AtMost,   ///< residual: pass iff value <= tolerance
    Exceeds,  ///< nondegeneracy: pass iff value > tolerance
};

inline const char* to_string(Comparison c) { return c == Comparison::AtMost ? "<=" : ">"; }

struct ConditionReport {
    std::string id;
    double value = 0.0;
    double tolerance = 0.0;
    Comparison comparison = Comparison::AtMost;
    bool pass = false;
    std::string grid;
    /// Sample point where the value was attained (1 coordinate for curves, 2 for surfaces).
    std::vector<double> worst_at;
    std::string note;
};

inline bool judge(double value, double tol, Comparison cmp) {
    if (std::isnan(value)) return false;
    return cmp == Comparison::AtMost ? value <= tol : value > tol;
}

inline ConditionReport make_report(std::string id, double value, double tol, Comparison cmp,
                                   std::string grid, std::vector<double> worst_at = {},
                                   std::string note = {}) {
    ConditionReport r;
    r.id = std::move(id);
    r.value = value;
    r.tolerance = tol;
    r.comparison = cmp;
    r.pass = judge(value, tol, cmp);
    r.grid = std::move(grid);
    r.worst_at = std::move(worst_at);
    r.note = std::move(note);
    return r;
}

inline bool all_pass(const std::vector<ConditionReport>& reports) {
    for (const auto& r : reports) {
        if (!r.pass) return false;
    }
    return true;
}

inline const ConditionReport* find_report(const std::vector<ConditionReport>& reports,
                                          const std::string& id) {
    for (const auto& r : reports) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

}  // namespace lms
