// Command-line front end. Exit codes: 0 pass, 1 check failure, 2 invalid input.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lms/harness/harness.hpp"

namespace {

using namespace lms;
using namespace lms::harness;

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kInvalidInput = 2;

void print_checks(const VerificationReport& r) {
    for (const auto& c : r.checks) {
        std::printf("%s  %-16s %s %s %s%s%s\n", c.pass ? "PASS" : "FAIL", c.id.c_str(),
                    format_double(c.value).c_str(), to_string(c.comparison), format_double(c.tolerance).c_str(),
                    c.note.empty() ? "" : "  # ", c.note.c_str());
    }
    std::printf("%s %s%s\n", r.pass ? "PASS" : "FAIL", to_string(r.spec.family),
                r.ambient.empty() ? "" : (" in " + r.ambient).c_str());
}

int run_verify(const std::string& spec_path, const std::string& json_out, bool timings) {
    const SurfaceSpec spec = load_spec(spec_path);
    const VerificationReport r = verify(spec);
    print_checks(r);
    if (!json_out.empty()) write_file(json_out, dump(to_json(r, timings)));
    return r.pass ? kPass : kCheckFailure;
}

int run_sweep(const std::string& family, const std::string& sampler, int n, std::uint64_t seed, int grid,
              const std::string& json_out, bool runs) {
    SamplerConfig cfg = default_sampler(parse_family_id(family), parse_sampler_mode(sampler));
    cfg.nx = cfg.ny = grid;
    const SweepSummary s = sweep(cfg, n, seed);
    json j = to_json(s);
    if (!runs) j.erase("runs");
    std::cout << dump(j);
    if (!json_out.empty()) write_file(json_out, dump(to_json(s)));
    return s.fail == 0 ? kPass : kCheckFailure;
}

int run_export(const std::string& spec_path, const std::string& format, const std::string& out) {
    const ExportFormat f = parse_export_format(format);
    export_samples(load_spec(spec_path), out, f);
    return kPass;
}

int run_list() {
    std::printf("surface families:\n");
    for (const auto& info : family_table()) {
        std::printf("  %-18s curves=%d  domain=%s  %s\n", to_string(info.family), info.arity,
                    Grid{info.domain, 21, 21}.describe().substr(9).c_str(), info.summary);
    }
    std::printf("example curve families:\n");
    for (FamilyId id : {FamilyId::Ex7_1, FamilyId::Ex7_2, FamilyId::Ex8_1, FamilyId::Ex8_2}) {
        std::string params;
        for (const auto& p : family_param_names(id)) params += (params.empty() ? "" : ",") + p;
        std::printf("  %-6s %s (%s)  %s in %s\n", to_string(id), family_is_pair(id) ? "pair  " : "single", params.c_str(),
                    family_signature(id).to_string().c_str(), to_string(surface_family_for(id)));
    }
    std::printf("builtin curves:\n");
    for (const auto& name : builtin_curve_names()) {
        std::printf("  %-36s %s\n", name.c_str(), builtin_curve(name).signature().to_string().c_str());
    }
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimal Lorentz surface construction and verification"};
    app.require_subcommand(1);

    std::string spec_path, json_out, family, sampler = "box", format, out;
    bool timings = false, runs = false;
    int n = 1, grid = 21;
    std::uint64_t seed = 1;

    auto* verify_cmd = app.add_subcommand("verify", "Run every check on a surface spec");
    verify_cmd->add_option("--spec", spec_path, "Spec JSON file")->required();
    verify_cmd->add_option("--json-out", json_out, "Write the report JSON here");
    verify_cmd->add_flag("--timings", timings, "Include phase timings in the report JSON");

    auto* sweep_cmd = app.add_subcommand("sweep", "Verify surfaces over sampled family parameters");
    sweep_cmd->add_option("--family", family, "Ex7_1, Ex7_2, Ex8_1 or Ex8_2")->required();
    sweep_cmd->add_option("--n", n, "Number of draws (chain sampler: chain-satisfying draws)")->required();
    sweep_cmd->add_option("--seed", seed, "RNG seed")->required();
    sweep_cmd->add_option("--sampler", sampler, "box or chain");
    sweep_cmd->add_option("--grid", grid, "Grid points per axis")->check(CLI::Range(2, 1000));
    sweep_cmd->add_option("--json-out", json_out, "Write the summary with per-run results here");
    sweep_cmd->add_flag("--runs", runs, "Print per-run results");

    auto* export_cmd = app.add_subcommand("export", "Write grid samples for plotting");
    export_cmd->add_option("--spec", spec_path, "Spec JSON file")->required();
    export_cmd->add_option("--format", format, "csv or obj")->required();
    export_cmd->add_option("--out", out, "Output file")->required();

    app.add_subcommand("list-families", "List surface families, example families and builtin curves");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidInput;
    }

    try {
        if (verify_cmd->parsed()) return run_verify(spec_path, json_out, timings);
        if (sweep_cmd->parsed()) return run_sweep(family, sampler, n, seed, grid, json_out, runs);
        if (export_cmd->parsed()) return run_export(spec_path, format, out);
        return run_list();
    } catch (const lms::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInvalidInput;
    }
}
