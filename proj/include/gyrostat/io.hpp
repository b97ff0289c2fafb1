#pragma once
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gyrostat/harness.hpp"

namespace gyrostat {

/// 17 significant digits: round-trip exact for IEEE double.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_filename(const std::string& scenario, FormulationId f) {
    return scenario + "." + std::string(formulation_name(f)) + ".csv";
}

inline std::string report_filename(const std::string& scenario) {
    return scenario + ".report.json";
}

/// Write one trajectory as CSV. Columns: t, the formulation-native state,
/// attitude as axis-angle plus its orthogonality residual, energy, the three
/// shared currents, the formulation's extra currents, and running drift
/// residuals against the t = 0 sample. `stride` subsamples rows (the final
/// row is always emitted); diagnostics were computed every step regardless.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr, long long stride = 1) {
    if (stride < 1) stride = 1;
    os << "t";
    for (const std::string& l : tr.native_labels) os << "," << l;
    os << ",R_axis_x,R_axis_y,R_axis_z,R_angle,R_ortho_residual";
    os << ",energy,J_rotor_x,J_rotor_y,J_rotor_z,m_body_x,m_body_y,m_body_z"
          ",J_spatial_x,J_spatial_y,J_spatial_z";
    const DiagnosticSample& d0 = tr.samples.front().diag;
    for (const LabeledVec& lv : d0.extra)
        os << "," << lv.label << "_x," << lv.label << "_y," << lv.label << "_z";
    os << ",res_rotor_momentum,res_energy_rel,res_spatial_momentum,res_body_momentum_norm\n";

    const double e_den = std::max(std::abs(d0.energy), 1e-30);
    const double m0 = norm(d0.body_momentum);
    auto put = [&os](double v) { os << "," << fmt17(v); };
    auto put3 = [&](Vec3 v) { put(v.x); put(v.y); put(v.z); };
    const std::size_t last = tr.samples.size() - 1;
    std::size_t k = 0;
    while (true) {
        const TrajectorySample& s = tr.samples[k];
        os << fmt17(s.t);
        for (std::size_t i = 0; i < tr.native_dim; ++i) put(s.native[i]);
        const AxisAngle aa = to_axis_angle(s.R);
        put3(aa.axis);
        put(aa.angle);
        put(s.R.orthogonality_residual());
        put(s.diag.energy);
        put3(s.diag.rotor_momentum);
        put3(s.diag.body_momentum);
        put3(s.diag.spatial_momentum);
        for (const LabeledVec& lv : s.diag.extra) put3(lv.value);
        put(max_abs(s.diag.rotor_momentum - d0.rotor_momentum));
        put(std::abs(s.diag.energy - d0.energy) / e_den);
        put(max_abs(s.diag.spatial_momentum - d0.spatial_momentum));
        put(std::abs(norm(s.diag.body_momentum) - m0));
        os << "\n";
        if (k == last) break;
        k = std::min(last, k + static_cast<std::size_t>(stride));
    }
}

inline nlohmann::json to_json(const StepSpec& s) {
    return {{"dt", s.dt}, {"t_end", s.t_end}, {"method", std::string(method_name(s.method))}};
}

inline nlohmann::json to_json(const ConservationDrift& d, const Tolerances& tol) {
    return {{"formulation", std::string(formulation_name(d.f))},
            {"rotor_momentum_drift", d.rotor_momentum},
            {"energy_rel_drift", d.energy_rel},
            {"spatial_momentum_drift", d.spatial_momentum},
            {"body_momentum_norm_drift", d.body_momentum_norm},
            {"pass", d.rotor_momentum <= tol.rotor_momentum_drift &&
                         d.energy_rel <= tol.energy_rel_drift &&
                         d.spatial_momentum <= tol.spatial_momentum_drift &&
                         d.body_momentum_norm <= tol.body_momentum_norm_drift}};
}

inline nlohmann::json to_json(const PairDeviation& p, const Tolerances& tol) {
    return {{"a", std::string(formulation_name(p.a))},
            {"b", std::string(formulation_name(p.b))},
            {"omega_dev", p.omega_dev},
            {"rotor_rate_dev", p.rotor_rate_dev},
            {"attitude_dev", p.attitude_dev},
            {"pass", p.omega_dev <= tol.omega_dev && p.rotor_rate_dev <= tol.rotor_rate_dev &&
                         p.attitude_dev <= tol.attitude_dev}};
}

inline nlohmann::json to_json(const DriftIdentityResult& r, const Tolerances& tol) {
    return {{"formulation", std::string(formulation_name(r.f))},
            {"current", r.current},
            {"conserved", r.conserved},
            {"max_mismatch", r.max_mismatch},
            {"pass", r.max_mismatch <= tol.drift_identity}};
}

}  // namespace gyrostat
