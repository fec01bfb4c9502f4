#pragma once

// Parameter sweeps over the example families: draw parameters uniformly from
// a box, keep the draws the family accepts, verify each surface.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "../curve_families.hpp"
#include "../errors.hpp"
#include "../random.hpp"
#include "spec.hpp"
#include "verify.hpp"

namespace lms::harness {

enum class SamplerMode {
    Box,    ///< uniform in the box, filtered by the family's radicands
    Chain,  ///< uniform in the box, kept only when the stated ordering chain holds
};

inline const char* to_string(SamplerMode m) { return m == SamplerMode::Box ? "box" : "chain"; }

inline SamplerMode parse_sampler_mode(const std::string& s) {
    if (s == "box") return SamplerMode::Box;
    if (s == "chain") return SamplerMode::Chain;
    throw InvalidInput("unknown sampler '" + s + "' (expected box or chain)");
}

struct SamplerConfig {
    FamilyId family = FamilyId::Ex7_1;
    SamplerMode mode = SamplerMode::Box;
    /// One interval per parameter, in family_param_names order.
    std::vector<std::pair<std::string, Interval>> box;
    /// Draw p, r, q from one interval and sort so that p > r > q.
    bool sorted_pqr = false;
    /// Also require the stated ordering chain in box mode.
    bool filter_ordering = false;
    /// Grid per verified surface.
    int nx = 21;
    int ny = 21;
};

namespace detail {

inline std::vector<std::pair<std::string, Interval>> around(const std::vector<std::pair<std::string, double>>& c,
                                                            double frac) {
    std::vector<std::pair<std::string, Interval>> out;
    for (const auto& [k, v] : c) out.push_back({k, Interval{v * (1.0 - frac), v * (1.0 + frac)}});
    return out;
}

}  // namespace detail

/// The default sampler for a family.
///   Ex7_1: a in [0.5,2], p > r > q by sorted draws from [0.5,3].
///   Ex7_2: p in [2,4], q in [1,2], r in [0.5,1.5] (box); [0,5]^3 (chain).
///   Ex8_1: +-10% around (a,b,p,q) = (1, 1.1, 1, 1.5).
///   Ex8_2: +-10% around a = b = 1/sqrt2, p = r = 1.1, q = s = 1.5, with the
///          ordering conditions enforced.
inline SamplerConfig default_sampler(FamilyId id, SamplerMode mode = SamplerMode::Box) {
    SamplerConfig c;
    c.family = id;
    c.mode = mode;
    switch (id) {
        case FamilyId::Ex7_1:
            c.box = {{"a", {0.5, 2.0}}, {"p", {0.5, 3.0}}, {"q", {0.5, 3.0}}, {"r", {0.5, 3.0}}};
            c.sorted_pqr = true;
            break;
        case FamilyId::Ex7_2:
            if (mode == SamplerMode::Chain) {
                c.box = {{"p", {0.0, 5.0}}, {"q", {0.0, 5.0}}, {"r", {0.0, 5.0}}};
            } else {
                c.box = {{"p", {2.0, 4.0}}, {"q", {1.0, 2.0}}, {"r", {0.5, 1.5}}};
            }
            break;
        case FamilyId::Ex8_1:
            c.box = detail::around({{"a", 1.0}, {"b", 1.1}, {"p", 1.0}, {"q", 1.5}}, 0.1);
            break;
        case FamilyId::Ex8_2: {
            const double h = 1.0 / std::numbers::sqrt2;
            c.box = detail::around({{"a", h}, {"b", h}, {"p", 1.1}, {"q", 1.5}, {"r", 1.1}, {"s", 1.5}}, 0.1);
            c.filter_ordering = true;
            break;
        }
    }
    return c;
}

inline SurfaceFamily surface_family_for(FamilyId id) {
    switch (id) {
        case FamilyId::Ex7_1: return SurfaceFamily::SphereB;
        case FamilyId::Ex7_2: return SurfaceFamily::SphereC;
        case FamilyId::Ex8_1: return SurfaceFamily::HypII;
        case FamilyId::Ex8_2: return SurfaceFamily::HypIII;
    }
    return SurfaceFamily::Custom;
}

struct SweepRun {
    ParamFamily params;
    bool pass = false;
    std::vector<std::string> failed;
};

struct SweepSummary {
    FamilyId family = FamilyId::Ex7_1;
    SamplerMode mode = SamplerMode::Box;
    std::uint64_t seed = 0;
    int requested = 0;
    /// Draws taken from the box.
    int draws = 0;
    /// Chain mode: draws satisfying the ordering chain (the sweep's unit).
    int chain_satisfied = 0;
    int valid = 0;
    int pass = 0;
    int fail = 0;
    /// Worst value per check id over all verified surfaces.
    std::map<std::string, double> worst;
    std::vector<SweepRun> runs;
    std::string note;
};

inline ParamFamily draw_params(const SamplerConfig& c, Rng& rng) {
    ParamFamily f{c.family, {}, CurveVariant::Corrected};
    for (const auto& [k, iv] : c.box) f.params[k] = rng.uniform(iv.lo, iv.hi);
    if (c.sorted_pqr) {
        std::array<double, 3> v{f.params.at("p"), f.params.at("q"), f.params.at("r")};
        std::sort(v.begin(), v.end());
        f.params["q"] = v[0];
        f.params["r"] = v[1];
        f.params["p"] = v[2];
    }
    return f;
}

inline bool radicands_hold(const ParamFamily& f) {
    try {
        validate_family(f);
        return true;
    } catch (const ConstraintViolation&) {
        return false;
    } catch (const InvalidInput&) {
        return false;  // e.g. a zero parameter drawn at the box edge
    }
}

/// Box mode: n draws. Chain mode: draws until n satisfy the ordering chain
/// (capped at 1000 n draws). Every radicand-valid draw is verified.
inline SweepSummary sweep(const SamplerConfig& config, int n, std::uint64_t seed) {
    if (n < 1) throw InvalidInput("sweep: n must be >= 1");
    if (config.box.empty()) throw InvalidInput("sweep: empty parameter box");
    SweepSummary out;
    out.family = config.family;
    out.mode = config.mode;
    out.seed = seed;
    out.requested = n;
    Rng rng(seed);

    const long long cap = config.mode == SamplerMode::Chain ? 1000LL * n : n;
    int units = 0;
    while (units < n && out.draws < cap) {
        const ParamFamily f = draw_params(config, rng);
        ++out.draws;
        if (config.mode == SamplerMode::Chain) {
            bool chain = false;
            try {
                chain = ordering_holds(f);
            } catch (const InvalidInput&) {
                chain = false;
            }
            if (!chain) continue;
            ++out.chain_satisfied;
        }
        ++units;
        if (!radicands_hold(f)) continue;
        if (config.filter_ordering && !ordering_holds(f)) continue;
        ++out.valid;

        SurfaceSpec spec;
        spec.family = surface_family_for(f.id);
        spec.curves = {f};
        spec.domain = family_info(spec.family).domain;
        spec.nx = config.nx;
        spec.ny = config.ny;
        spec.tolerances = default_tolerances();
        const VerificationReport rep = verify(spec);

        SweepRun run{f, rep.pass, {}};
        for (const auto& c : rep.checks) {
            if (!c.pass) run.failed.push_back(c.id);
            if (c.comparison == Comparison::AtMost) {
                auto [it, inserted] = out.worst.try_emplace(c.id, c.value);
                if (!inserted && (std::isnan(c.value) || c.value > it->second)) it->second = c.value;
            }
        }
        (rep.pass ? out.pass : out.fail) += 1;
        out.runs.push_back(std::move(run));
    }
    if (units < n) {
        out.note = "draw cap reached after " + std::to_string(out.draws) + " draws";
    }
    if (out.valid == 0) {
        out.note += std::string(out.note.empty() ? "" : "; ") + "no valid parameter sets";
    }
    return out;
}

inline json to_json(const SweepSummary& s) {
    json worst = json::object();
    for (const auto& [k, v] : s.worst) worst[k] = json(json::number_float_t(v));
    json runs = json::array();
    for (const auto& r : s.runs) {
        json params = json::object();
        for (const auto& [k, v] : r.params.params) params[k] = json(json::number_float_t(v));
        runs.push_back(json{{"params", params}, {"pass", r.pass}, {"failed", r.failed}});
    }
    return json{{"family", to_string(s.family)},
                {"sampler", to_string(s.mode)},
                {"seed", s.seed},
                {"requested", s.requested},
                {"draws", s.draws},
                {"chain_satisfied", s.chain_satisfied},
                {"valid", s.valid},
                {"pass", s.pass},
                {"fail", s.fail},
                {"worst", worst},
                {"runs", runs},
                {"note", s.note}};
}

}  // namespace lms::harness
