#pragma once
#include <cctype>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gyrostat/harness.hpp"

namespace gyrostat {

/// Configuration problem with the offending field spelled out ("step.dt",
/// "inertia.K", "formulations[2]", ...). The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string field_, const std::string& msg)
        : std::runtime_error("config error at '" + field_ + "': " + msg),
          field(std::move(field_)) {}
};

/// Output controls; CLI flags override the file values.
struct OutputSpec {
    std::string dir = ".";
    long long stride = 1;   ///< CSV row subsampling (diagnostics still run every step)
};

struct LoadedConfig {
    Scenario scenario;
    OutputSpec output;
};

namespace cfg_detail {

using nlohmann::json;

inline double number_at(const json& j, const std::string& field) {
    if (!j.is_number()) throw ConfigError(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
    return v;
}

inline Vec3 vec3_at(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 3) throw ConfigError(field, "expected an array of 3 numbers");
    return {number_at(j[0], field + "[0]"), number_at(j[1], field + "[1]"),
            number_at(j[2], field + "[2]")};
}

/// A 3x3 matrix given either as 3 diagonal entries or as 3 rows of 3.
inline Mat3 mat3_at(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(field, "expected [d1,d2,d3] or [[..],[..],[..]]");
    if (j[0].is_number()) return Mat3::diagonal(vec3_at(j, field));
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
        const Vec3 row = vec3_at(j[i], field + "[" + std::to_string(i) + "]");
        m.m[i][0] = row.x;
        m.m[i][1] = row.y;
        m.m[i][2] = row.z;
    }
    return m;
}

inline Rotation rotation_at(const json& j, const std::string& field) {
    try {
        if (j.is_object()) {
            for (const auto& [key, val] : j.items())
                if (key != "axis" && key != "angle")
                    throw ConfigError(field + "." + key, "unknown key (expected axis, angle)");
            if (!j.contains("axis")) throw ConfigError(field + ".axis", "missing required field");
            if (!j.contains("angle")) throw ConfigError(field + ".angle", "missing required field");
            const Vec3 axis = vec3_at(j["axis"], field + ".axis");
            const double angle = number_at(j["angle"], field + ".angle");
            const double n = norm(axis);
            if (n == 0.0 && angle != 0.0)
                throw ConfigError(field + ".axis", "zero axis with nonzero angle");
            return n == 0.0 ? Rotation::identity() : so3_exp((angle / n) * axis);
        }
        return Rotation::from_matrix(mat3_at(j, field));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(field, e.what());
    }
}

inline void reject_unknown_keys(const json& j, const std::string& scope,
                                std::initializer_list<const char*> known) {
    for (const auto& [key, val] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ConfigError(scope.empty() ? key : scope + "." + key, "unknown key");
    }
}

}  // namespace cfg_detail

/// Build a Scenario + OutputSpec from a parsed JSON document; throws
/// ConfigError naming the offending field on any problem.
inline LoadedConfig parse_config(const nlohmann::json& j) {
    using namespace cfg_detail;
    if (!j.is_object()) throw ConfigError("<root>", "expected a JSON object");
    reject_unknown_keys(j, "", {"scenario", "inertia", "initial", "step", "formulations",
                                "tolerances", "output"});

    // scenario name (used in output filenames)
    std::string name = "scenario";
    if (j.contains("scenario")) {
        if (!j["scenario"].is_string()) throw ConfigError("scenario", "expected a string");
        name = j["scenario"].get<std::string>();
        if (name.empty()) throw ConfigError("scenario", "must be non-empty");
        for (char c : name)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
                throw ConfigError("scenario", "only [A-Za-z0-9_-] allowed (used in filenames)");
    }

    // inertia
    if (!j.contains("inertia")) throw ConfigError("inertia", "missing required field");
    const auto& ji = j["inertia"];
    if (!ji.is_object()) throw ConfigError("inertia", "expected an object with I and K");
    reject_unknown_keys(ji, "inertia", {"I", "K"});
    if (!ji.contains("I")) throw ConfigError("inertia.I", "missing required field");
    if (!ji.contains("K")) throw ConfigError("inertia.K", "missing required field");
    const Mat3 I = mat3_at(ji["I"], "inertia.I");
    const Mat3 K = mat3_at(ji["K"], "inertia.K");
    // Validate each tensor separately so the diagnostic names the right one.
    try {
        InertiaModel probe(I, Mat3::identity());
    } catch (const std::invalid_argument& e) {
        throw ConfigError("inertia.I", e.what());
    }
    try {
        InertiaModel probe(Mat3::identity(), K);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("inertia.K", e.what());
    }
    std::optional<InertiaModel> inertia;
    inertia.emplace(I, K);

    // initial state
    if (!j.contains("initial")) throw ConfigError("initial", "missing required field");
    const auto& js = j["initial"];
    if (!js.is_object()) throw ConfigError("initial", "expected an object");
    reject_unknown_keys(js, "initial", {"R", "theta", "Omega", "Omega_r"});
    FullState initial;
    if (js.contains("R")) initial.R = rotation_at(js["R"], "initial.R");
    if (js.contains("theta")) initial.theta = vec3_at(js["theta"], "initial.theta");
    if (!js.contains("Omega")) throw ConfigError("initial.Omega", "missing required field");
    if (!js.contains("Omega_r")) throw ConfigError("initial.Omega_r", "missing required field");
    initial.Omega = vec3_at(js["Omega"], "initial.Omega");
    initial.Omega_r = vec3_at(js["Omega_r"], "initial.Omega_r");

    // step
    if (!j.contains("step")) throw ConfigError("step", "missing required field");
    const auto& jt = j["step"];
    if (!jt.is_object()) throw ConfigError("step", "expected an object");
    reject_unknown_keys(jt, "step", {"dt", "t_end", "method"});
    if (!jt.contains("dt")) throw ConfigError("step.dt", "missing required field");
    if (!jt.contains("t_end")) throw ConfigError("step.t_end", "missing required field");
    StepSpec step;
    step.dt = number_at(jt["dt"], "step.dt");
    step.t_end = number_at(jt["t_end"], "step.t_end");
    if (jt.contains("method")) {
        if (!jt["method"].is_string()) throw ConfigError("step.method", "expected a string");
        const auto parsed = parse_method(jt["method"].get<std::string>());
        if (!parsed) throw ConfigError("step.method", "expected \"rk4\" or \"euler\"");
        step.method = *parsed;
    }
    if (!(step.dt > 0.0)) throw ConfigError("step.dt", "must be > 0");
    if (!(step.t_end >= 0.0)) throw ConfigError("step.t_end", "must be >= 0");
    if (step.t_end / step.dt > 1e8) throw ConfigError("step", "t_end/dt exceeds 1e8 steps");

    // formulations
    if (!j.contains("formulations")) throw ConfigError("formulations", "missing required field");
    const auto& jf = j["formulations"];
    if (!jf.is_array() || jf.empty())
        throw ConfigError("formulations", "expected a non-empty array of formulation names");
    std::vector<FormulationId> formulations;
    for (std::size_t i = 0; i < jf.size(); ++i) {
        const std::string fld = "formulations[" + std::to_string(i) + "]";
        if (!jf[i].is_string()) throw ConfigError(fld, "expected a string");
        const auto f = parse_formulation(jf[i].get<std::string>());
        if (!f)
            throw ConfigError(fld, "unknown formulation (expected ep, stage_s, stage_o_mc, "
                                   "stage_o_mech or full)");
        formulations.push_back(*f);
    }

    // tolerances (all optional, defaults from Tolerances)
    Tolerances tol;
    if (j.contains("tolerances")) {
        const auto& jl = j["tolerances"];
        if (!jl.is_object()) throw ConfigError("tolerances", "expected an object");
        reject_unknown_keys(jl, "tolerances",
                            {"omega_dev", "rotor_rate_dev", "attitude_dev",
                             "rotor_momentum_drift", "energy_rel_drift",
                             "spatial_momentum_drift", "body_momentum_norm_drift",
                             "drift_identity"});
        auto set = [&](const char* key, double& target) {
            if (!jl.contains(key)) return;
            target = number_at(jl[key], std::string("tolerances.") + key);
            if (target < 0.0)
                throw ConfigError(std::string("tolerances.") + key, "must be >= 0");
        };
        set("omega_dev", tol.omega_dev);
        set("rotor_rate_dev", tol.rotor_rate_dev);
        set("attitude_dev", tol.attitude_dev);
        set("rotor_momentum_drift", tol.rotor_momentum_drift);
        set("energy_rel_drift", tol.energy_rel_drift);
        set("spatial_momentum_drift", tol.spatial_momentum_drift);
        set("body_momentum_norm_drift", tol.body_momentum_norm_drift);
        set("drift_identity", tol.drift_identity);
    }

    // output (optional)
    OutputSpec out;
    if (j.contains("output")) {
        const auto& jo = j["output"];
        if (!jo.is_object()) throw ConfigError("output", "expected an object");
        reject_unknown_keys(jo, "output", {"dir", "stride"});
        if (jo.contains("dir")) {
            if (!jo["dir"].is_string()) throw ConfigError("output.dir", "expected a string");
            out.dir = jo["dir"].get<std::string>();
        }
        if (jo.contains("stride")) {
            if (!jo["stride"].is_number_integer())
                throw ConfigError("output.stride", "expected an integer");
            out.stride = jo["stride"].get<long long>();
            if (out.stride < 1) throw ConfigError("output.stride", "must be >= 1");
        }
    }

    return {Scenario{name, *inertia, initial, step, std::move(formulations), tol}, out};
}

/// Read and parse a config file.
inline LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path, std::string("invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

}  // namespace gyrostat
