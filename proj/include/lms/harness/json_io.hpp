#pragma once

// Report serialization. Doubles are written with 17 significant digits in
// scientific notation so values survive a write/read cycle bit for bit;
// non-finite values become null.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "../errors.hpp"
#include "../report.hpp"
#include "spec.hpp"
#include "verify.hpp"

namespace lms::harness {

inline std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace detail {

inline void write_indent(std::string& out, int depth) { out.append(static_cast<std::size_t>(depth) * 2, ' '); }

inline void write_json(std::string& out, const json& j, int depth) {
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                write_indent(out, depth + 1);
                out += json(it.key()).dump();
                out += ": ";
                write_json(out, it.value(), depth + 1);
            }
            out += "\n";
            write_indent(out, depth);
            out += "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            bool scalars = true;
            for (const auto& v : j) scalars = scalars && !v.is_structured();
            if (scalars) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ", ";
                    write_json(out, j[i], depth + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                write_indent(out, depth + 1);
                write_json(out, j[i], depth + 1);
            }
            out += "\n";
            write_indent(out, depth);
            out += "]";
            return;
        }
        case json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

inline double number_or_nan(const json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (!j.is_number()) throw InvalidInput("report: expected a number or null");
    return j.get<double>();
}

}  // namespace detail

/// Pretty-printed JSON with full-precision doubles and sorted keys.
inline std::string dump(const json& j) {
    std::string out;
    detail::write_json(out, j, 0);
    out += "\n";
    return out;
}

inline json to_json(const ConditionReport& r) {
    json at = json::array();
    for (double v : r.worst_at) at.push_back(v);
    // Stored as float even when integral so the writer keeps one format.
    return json{{"id", r.id},
                {"value", json(json::number_float_t(r.value))},
                {"tolerance", json(json::number_float_t(r.tolerance))},
                {"comparison", to_string(r.comparison)},
                {"pass", r.pass},
                {"grid", r.grid},
                {"worst_at", at},
                {"note", r.note}};
}

inline ConditionReport condition_from_json(const json& j) {
    if (!j.is_object()) throw InvalidInput("report: check must be an object");
    ConditionReport r;
    r.id = j.at("id").get<std::string>();
    r.value = detail::number_or_nan(j.at("value"));
    r.tolerance = detail::number_or_nan(j.at("tolerance"));
    const auto cmp = j.at("comparison").get<std::string>();
    if (cmp == "<=") {
        r.comparison = Comparison::AtMost;
    } else if (cmp == ">") {
        r.comparison = Comparison::Exceeds;
    } else {
        throw InvalidInput("report: unknown comparison '" + cmp + "'");
    }
    r.pass = j.at("pass").get<bool>();
    r.grid = j.at("grid").get<std::string>();
    for (const auto& v : j.at("worst_at")) r.worst_at.push_back(detail::number_or_nan(v));
    r.note = j.at("note").get<std::string>();
    return r;
}

/// Report as JSON; timings are included only on request since they vary
/// between runs.
inline json to_json(const VerificationReport& r, bool with_timings = false) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    json j{{"spec", spec_to_json(r.spec)},
           {"ambient", r.ambient},
           {"y_reflected", r.y_reflected},
           {"totally_geodesic_boundary", r.totally_geodesic_boundary},
           {"checks", checks},
           {"pass", r.pass}};
    if (with_timings) {
        json t = json::object();
        for (const auto& [k, v] : r.timings_ms) t[k] = json(json::number_float_t(v));
        j["timings_ms"] = t;
    }
    return j;
}

inline VerificationReport report_from_json(const json& j) {
    try {
        VerificationReport r;
        r.spec = parse_spec(j.at("spec"));
        r.ambient = j.at("ambient").get<std::string>();
        r.y_reflected = j.at("y_reflected").get<bool>();
        r.totally_geodesic_boundary = j.at("totally_geodesic_boundary").get<bool>();
        for (const auto& c : j.at("checks")) r.checks.push_back(condition_from_json(c));
        r.pass = j.at("pass").get<bool>();
        if (j.contains("timings_ms")) {
            for (auto it = j["timings_ms"].begin(); it != j["timings_ms"].end(); ++it) {
                r.timings_ms[it.key()] = detail::number_or_nan(it.value());
            }
        }
        return r;
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("report: ") + e.what());
    }
}

inline json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(what + ": malformed JSON: " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

inline SurfaceSpec load_spec(const std::string& path) {
    const json j = parse_json_text(read_file(path), path);
    try {
        return parse_spec(j);
    } catch (const json::exception& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

}  // namespace lms::harness
