#pragma once

// Grid samples of a surface for external plotting: CSV with every coordinate,
// or an OBJ quad mesh of the first three coordinates.

#include <cstdio>
#include <string>
#include <vector>

#include "../diffgeo.hpp"
#include "../errors.hpp"
#include "json_io.hpp"
#include "spec.hpp"
#include "verify.hpp"

namespace lms::harness {

enum class ExportFormat { Csv, Obj };

inline ExportFormat parse_export_format(const std::string& s) {
    if (s == "csv") return ExportFormat::Csv;
    if (s == "obj") return ExportFormat::Obj;
    throw InvalidInput("unknown export format '" + s + "' (expected csv or obj)");
}

/// Builds the spec's surface without running the checks.
inline SurfaceMap build_surface(const SurfaceSpec& spec) {
    const std::vector<Curve> c = build_curves(spec);
    switch (spec.family) {
        case SurfaceFamily::Translation: return translation_surface(c.at(0), c.at(1), spec.domain);
        case SurfaceFamily::SphereB: return sphere_case_b(c.at(0), spec.domain);
        case SurfaceFamily::SphereC: return sphere_case_c(c.at(0), c.at(1), spec.domain);
        case SurfaceFamily::HypII: return hyperbolic_case_ii(c.at(0), spec.domain);
        case SurfaceFamily::HypIII: return hyperbolic_case_iii(c.at(0), c.at(1), spec.domain);
        case SurfaceFamily::DeSitterControl: return de_sitter_control(spec.domain);
        case SurfaceFamily::Custom: break;
    }
    throw InvalidInput("export: unsupported family");
}

struct SampleRow {
    double x = 0.0;
    double y = 0.0;
    std::vector<double> L;
    double residual = 0.0;  ///< |H|_inf
};

inline std::vector<SampleRow> sample_surface(const SurfaceMap& s, int nx, int ny) {
    const Grid grid{s.domain(), nx, ny};
    const auto xs = grid.xs();
    const auto ys = grid.ys();
    auto vals = grid_map(grid, [&](double x, double y) {
        const auto p = s.position(x, y);
        return SampleRow{x, y, std::vector<double>(p.components().begin(), p.components().end()),
                         second_fundamental_form(s, x, y).H.max_norm()};
    });
    return vals;
}

inline std::string to_csv(const std::vector<SampleRow>& rows) {
    std::string out = "x,y";
    const std::size_t k = rows.empty() ? 0 : rows.front().L.size();
    for (std::size_t i = 1; i <= k; ++i) out += ",L_" + std::to_string(i);
    out += ",residual\n";
    for (const auto& r : rows) {
        out += format_double(r.x) + "," + format_double(r.y);
        for (double v : r.L) out += "," + format_double(v);
        out += "," + format_double(r.residual) + "\n";
    }
    return out;
}

/// Quad mesh over the grid; vertices are the first three coordinates of L
/// (zero-padded), the residual rides along as the u texture coordinate.
inline std::string to_obj(const std::vector<SampleRow>& rows, int nx, int ny) {
    std::string out = "# grid " + std::to_string(nx) + "x" + std::to_string(ny) +
                      ", vertices are (L_1, L_2, L_3), vt u is |H|_inf\n";
    for (const auto& r : rows) {
        out += "v";
        for (std::size_t i = 0; i < 3; ++i) out += " " + format_double(i < r.L.size() ? r.L[i] : 0.0);
        out += "\n";
    }
    for (const auto& r : rows) out += "vt " + format_double(r.residual) + " 0\n";
    auto idx = [nx](int i, int j) { return std::to_string(j * nx + i + 1); };
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            const std::string a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1), d = idx(i, j + 1);
            out += "f " + a + "/" + a + " " + b + "/" + b + " " + c + "/" + c + " " + d + "/" + d + "\n";
        }
    }
    return out;
}

inline std::string export_text(const SurfaceSpec& spec, ExportFormat format) {
    const SurfaceMap s = build_surface(spec);
    const auto rows = sample_surface(s, spec.nx, spec.ny);
    return format == ExportFormat::Csv ? to_csv(rows) : to_obj(rows, spec.nx, spec.ny);
}

inline void export_samples(const SurfaceSpec& spec, const std::string& path, ExportFormat format) {
    write_file(path, export_text(spec, format));
}

}  // namespace lms::harness
