// gyrostat CLI: scenario configuration, execution, and emission of
// machine-readable trajectories and reports.
//
// Exit codes: 0 success (all tolerances pass where checked), 1 tolerance
// failure in compare/drift, 2 configuration or usage error, 3 integration
// abort (non-finite state).
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gyrostat/gyrostat.hpp"

namespace {

using namespace gyrostat;

constexpr const char* kVersion = "gyrostat 0.1.0";

struct CommonArgs {
    std::string config_path;
    std::string out_dir;     // empty = take from config
    long long stride = 0;    // 0 = take from config
};

LoadedConfig load(const CommonArgs& a) {
    LoadedConfig cfg = load_config(a.config_path);
    if (!a.out_dir.empty()) cfg.output.dir = a.out_dir;
    if (a.stride > 0) cfg.output.stride = a.stride;
    return cfg;
}

std::filesystem::path ensure_out_dir(const std::string& dir) {
    std::filesystem::path p(dir);
    std::error_code ec;
    std::filesystem::create_directories(p, ec);
    if (ec) throw ConfigError("output.dir", "cannot create '" + dir + "': " + ec.message());
    return p;
}

void write_report(const std::filesystem::path& dir, const std::string& scenario,
                  const nlohmann::json& j) {
    const auto path = dir / report_filename(scenario);
    std::ofstream out(path);
    out << j.dump(2) << "\n";
    if (!out) throw ConfigError("output.dir", "cannot write " + path.string());
}

void print_conservation_table(const std::vector<ConservationDrift>& drifts) {
    std::printf("  %-14s %13s %13s %13s %13s\n", "formulation", "rotor_mom", "energy_rel",
                "spatial_mom", "|m|_drift");
    for (const ConservationDrift& d : drifts)
        std::printf("  %-14s %13.3e %13.3e %13.3e %13.3e\n",
                    std::string(formulation_name(d.f)).c_str(), d.rotor_momentum, d.energy_rel,
                    d.spatial_momentum, d.body_momentum_norm);
}

int cmd_simulate(const CommonArgs& args) {
    const LoadedConfig cfg = load(args);
    const auto dir = ensure_out_dir(cfg.output.dir);
    const ScenarioResult res = run_scenario(cfg.scenario);

    nlohmann::json files = nlohmann::json::object();
    for (const Trajectory& tr : res.trajectories) {
        const std::string fname = csv_filename(cfg.scenario.name, tr.formulation);
        std::ofstream out(dir / fname);
        write_trajectory_csv(out, tr, cfg.output.stride);
        if (!out) throw ConfigError("output.dir", "cannot write " + (dir / fname).string());
        files[std::string(formulation_name(tr.formulation))] = fname;
    }

    nlohmann::json rep{{"scenario", cfg.scenario.name},
                       {"mode", "simulate"},
                       {"step", to_json(cfg.scenario.step)},
                       {"samples", res.trajectories.front().samples.size()},
                       {"files", files},
                       {"conservation", nlohmann::json::array()},
                       {"pass", true}};
    for (const ConservationDrift& d : res.report.drifts)
        rep["conservation"].push_back(to_json(d, cfg.scenario.tol));
    write_report(dir, cfg.scenario.name, rep);

    std::printf("simulate %s: %zu formulations, %zu samples each, dt=%g, t_end=%g\n",
                cfg.scenario.name.c_str(), res.trajectories.size(),
                res.trajectories.front().samples.size(), cfg.scenario.step.dt,
                cfg.scenario.step.t_end);
    print_conservation_table(res.report.drifts);
    std::printf("  wrote %zu CSV files and %s in %s\n", res.trajectories.size(),
                report_filename(cfg.scenario.name).c_str(), dir.string().c_str());
    return 0;
}

int cmd_compare(const CommonArgs& args) {
    const LoadedConfig cfg = load(args);
    if (cfg.scenario.formulations.size() < 2)
        throw ConfigError("formulations", "compare requires at least two formulations");
    const auto dir = ensure_out_dir(cfg.output.dir);
    const ScenarioResult res = run_scenario(cfg.scenario);
    const EquivalenceReport& rep = res.report;

    std::printf("compare %s: pairwise deviations over t in [0, %g], dt=%g\n",
                cfg.scenario.name.c_str(), cfg.scenario.step.t_end, cfg.scenario.step.dt);
    std::printf("  %-14s %-14s %13s %13s %13s\n", "a", "b", "Omega_dev", "rotor_dev",
                "attitude_dev");
    for (const PairDeviation& p : rep.pairs)
        std::printf("  %-14s %-14s %13.3e %13.3e %13.3e\n",
                    std::string(formulation_name(p.a)).c_str(),
                    std::string(formulation_name(p.b)).c_str(), p.omega_dev, p.rotor_rate_dev,
                    p.attitude_dev);
    std::printf("conservation drift (max vs t=0):\n");
    print_conservation_table(rep.drifts);
    std::printf("verdict: equivalence %s, conservation %s\n",
                rep.equivalence_pass ? "PASS" : "FAIL",
                rep.conservation_pass ? "PASS" : "FAIL");

    nlohmann::json j{{"scenario", cfg.scenario.name},
                     {"mode", "compare"},
                     {"step", to_json(cfg.scenario.step)},
                     {"pairs", nlohmann::json::array()},
                     {"conservation", nlohmann::json::array()},
                     {"pass", rep.pass}};
    for (const PairDeviation& p : rep.pairs) j["pairs"].push_back(to_json(p, cfg.scenario.tol));
    for (const ConservationDrift& d : rep.drifts)
        j["conservation"].push_back(to_json(d, cfg.scenario.tol));
    write_report(dir, cfg.scenario.name, j);
    return rep.pass ? 0 : 1;
}

int cmd_drift(const CommonArgs& args) {
    const LoadedConfig cfg = load(args);
    if (cfg.scenario.step.step_count() < 4)
        throw ConfigError("step.t_end", "drift check needs at least 4 steps (5 samples)");
    const auto dir = ensure_out_dir(cfg.output.dir);

    std::vector<DriftIdentityResult> results;
    for (FormulationId f : cfg.scenario.formulations) {
        const Trajectory tr = integrate(f, cfg.scenario.inertia, cfg.scenario.initial,
                                        cfg.scenario.step);
        if (auto r = drift_identity_check(tr)) results.push_back(*r);
    }

    std::printf("drift %s: analytic vs 4th-order centered FD, dt=%g, t_end=%g\n",
                cfg.scenario.name.c_str(), cfg.scenario.step.dt, cfg.scenario.step.t_end);
    bool pass = true;
    for (const DriftIdentityResult& r : results) {
        pass = pass && r.max_mismatch <= cfg.scenario.tol.drift_identity;
        if (r.conserved)
            std::printf("  %-14s %-12s conserved; analytic drift identically 0; |FD| <= %.3e\n",
                        std::string(formulation_name(r.f)).c_str(), r.current.c_str(),
                        r.max_mismatch);
        else
            std::printf("  %-14s %-12s max |analytic - FD| = %.3e (tolerance %.1e)\n",
                        std::string(formulation_name(r.f)).c_str(), r.current.c_str(),
                        r.max_mismatch, cfg.scenario.tol.drift_identity);
    }
    if (results.empty())
        std::printf("  no drifting currents among the selected formulations\n");
    std::printf("verdict: %s\n", pass ? "PASS" : "FAIL");

    nlohmann::json j{{"scenario", cfg.scenario.name},
                     {"mode", "drift"},
                     {"step", to_json(cfg.scenario.step)},
                     {"drift_identities", nlohmann::json::array()},
                     {"pass", pass}};
    for (const DriftIdentityResult& r : results)
        j["drift_identities"].push_back(to_json(r, cfg.scenario.tol));
    write_report(dir, cfg.scenario.name, j);
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"free rigid body with three rotors: four equivalent reduced formulations,\n"
                 "equivalence/conservation harness, and Noether-drift checks"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(0, 1);

    CommonArgs sim_args, cmp_args, drf_args;
    CLI::App* sim = app.add_subcommand("simulate", "integrate and write per-formulation CSV");
    sim->add_option("config", sim_args.config_path, "JSON scenario config")->required();
    sim->add_option("--out", sim_args.out_dir, "output directory (overrides config)");
    sim->add_option("--stride", sim_args.stride, "CSV row stride (overrides config)")
        ->check(CLI::PositiveNumber);
    CLI::App* cmp = app.add_subcommand("compare", "pairwise equivalence + conservation report");
    cmp->add_option("config", cmp_args.config_path, "JSON scenario config")->required();
    cmp->add_option("--out", cmp_args.out_dir, "output directory (overrides config)");
    CLI::App* drf = app.add_subcommand("drift", "Noether drift-identity report");
    drf->add_option("config", drf_args.config_path, "JSON scenario config")->required();
    drf->add_option("--out", drf_args.out_dir, "output directory (overrides config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;   // usage problems are configuration errors
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_args);
        if (cmp->parsed()) return cmd_compare(cmp_args);
        if (drf->parsed()) return cmd_drift(drf_args);
        std::cout << app.help();
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const IntegrationAbort& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
