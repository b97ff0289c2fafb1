#pragma once
#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gyrostat/algebra.hpp"
#include "gyrostat/conserved.hpp"
#include "gyrostat/dynamics.hpp"
#include "gyrostat/formulations.hpp"
#include "gyrostat/integrators.hpp"

namespace gyrostat {

/// Named thresholds used by the equivalence and conservation verdicts.
/// Zero is legal and means "demand exactness" (always fails on round-off).
struct Tolerances {
    double omega_dev = 1e-9;                 ///< pairwise max |Omega_a - Omega_b|
    double rotor_rate_dev = 1e-9;            ///< pairwise max rotor-velocity deviation
    double attitude_dev = 1e-8;              ///< pairwise geodesic distance [rad]
    double rotor_momentum_drift = 1e-12;     ///< componentwise vs t = 0
    double energy_rel_drift = 1e-10;         ///< relative vs t = 0
    double spatial_momentum_drift = 1e-9;    ///< componentwise vs t = 0
    double body_momentum_norm_drift = 1e-12; ///< | ||m|| - ||m_0|| |
    double drift_identity = 1e-7;            ///< max |analytic - FD| for drifting currents

    void validate() const {
        for (double v : {omega_dev, rotor_rate_dev, attitude_dev, rotor_momentum_drift,
                         energy_rel_drift, spatial_momentum_drift, body_momentum_norm_drift,
                         drift_identity})
            if (!(std::isfinite(v) && v >= 0.0))
                throw std::invalid_argument("Tolerances: thresholds must be finite and >= 0");
    }
};

/// A multi-formulation run from one shared initial condition.
struct Scenario {
    std::string name = "scenario";
    InertiaModel inertia;
    FullState initial;
    StepSpec step;
    std::vector<FormulationId> formulations;
    Tolerances tol;

    void validate() const {
        if (formulations.empty())
            throw std::invalid_argument("Scenario: at least one formulation must be selected");
        step.validate();
        tol.validate();
        Rotation::from_matrix(initial.R.m);   // re-check the attitude invariant
    }
};

struct PairDeviation {
    FormulationId a = FormulationId::ep;
    FormulationId b = FormulationId::ep;
    double omega_dev = 0.0;
    double rotor_rate_dev = 0.0;
    double attitude_dev = 0.0;   ///< geodesic distance on SO(3) [rad]
};

struct ConservationDrift {
    FormulationId f = FormulationId::ep;
    double rotor_momentum = 0.0;
    double energy_rel = 0.0;
    double spatial_momentum = 0.0;
    double body_momentum_norm = 0.0;
};

struct EquivalenceReport {
    std::vector<PairDeviation> pairs;
    std::vector<ConservationDrift> drifts;
    bool equivalence_pass = false;
    bool conservation_pass = false;
    bool pass = false;   ///< never true while any conservation drift exceeds tolerance
};

struct ScenarioResult {
    EquivalenceReport report;
    std::vector<Trajectory> trajectories;   ///< in scenario formulation order
};

/// Conservation drifts of one trajectory, measured against its t = 0 sample.
inline ConservationDrift conservation_drift(const Trajectory& tr) {
    ConservationDrift d;
    d.f = tr.formulation;
    const DiagnosticSample& d0 = tr.samples.front().diag;
    const double m0 = norm(d0.body_momentum);
    const double e_den = std::max(std::abs(d0.energy), 1e-30);
    for (const TrajectorySample& s : tr.samples) {
        d.rotor_momentum = std::max(d.rotor_momentum,
                                    max_abs(s.diag.rotor_momentum - d0.rotor_momentum));
        d.energy_rel = std::max(d.energy_rel, std::abs(s.diag.energy - d0.energy) / e_den);
        d.spatial_momentum = std::max(d.spatial_momentum,
                                      max_abs(s.diag.spatial_momentum - d0.spatial_momentum));
        d.body_momentum_norm =
            std::max(d.body_momentum_norm, std::abs(norm(s.diag.body_momentum) - m0));
    }
    return d;
}

/// Pairwise deviation between two trajectories of the same scenario, measured
/// on the common observables at every sample.
inline PairDeviation pair_deviation(const Trajectory& a, const Trajectory& b) {
    PairDeviation p;
    p.a = a.formulation;
    p.b = b.formulation;
    const std::size_t n = std::min(a.samples.size(), b.samples.size());
    for (std::size_t k = 0; k < n; ++k) {
        const TrajectorySample& sa = a.samples[k];
        const TrajectorySample& sb = b.samples[k];
        p.omega_dev = std::max(p.omega_dev, max_abs(sa.Omega - sb.Omega));
        p.rotor_rate_dev = std::max(p.rotor_rate_dev, max_abs(sa.rotor_rate - sb.rotor_rate));
        p.attitude_dev = std::max(p.attitude_dev, geodesic_distance(sa.R, sb.R));
    }
    return p;
}

/// Integrate every selected formulation from the shared initial state,
/// compare all pairs on the common observables, evaluate conservation
/// drifts, and render verdicts.
inline ScenarioResult run_scenario(const Scenario& s) {
    s.validate();
    ScenarioResult res;
    res.trajectories.reserve(s.formulations.size());
    for (FormulationId f : s.formulations)
        res.trajectories.push_back(integrate(f, s.inertia, s.initial, s.step));

    EquivalenceReport& rep = res.report;
    rep.equivalence_pass = true;
    for (std::size_t i = 0; i < res.trajectories.size(); ++i)
        for (std::size_t j = i + 1; j < res.trajectories.size(); ++j) {
            PairDeviation p = pair_deviation(res.trajectories[i], res.trajectories[j]);
            rep.equivalence_pass = rep.equivalence_pass && p.omega_dev <= s.tol.omega_dev &&
                                   p.rotor_rate_dev <= s.tol.rotor_rate_dev &&
                                   p.attitude_dev <= s.tol.attitude_dev;
            rep.pairs.push_back(p);
        }
    rep.conservation_pass = true;
    for (const Trajectory& tr : res.trajectories) {
        ConservationDrift d = conservation_drift(tr);
        rep.conservation_pass = rep.conservation_pass &&
                                d.rotor_momentum <= s.tol.rotor_momentum_drift &&
                                d.energy_rel <= s.tol.energy_rel_drift &&
                                d.spatial_momentum <= s.tol.spatial_momentum_drift &&
                                d.body_momentum_norm <= s.tol.body_momentum_norm_drift;
        rep.drifts.push_back(d);
    }
    rep.pass = rep.equivalence_pass && rep.conservation_pass;
    return res;
}

/// Verdict of checking one current's analytic drift against a 4th-order
/// centered finite difference of its sampled series along a trajectory.
struct DriftIdentityResult {
    FormulationId f = FormulationId::ep;
    std::string current;
    bool conserved = false;   ///< analytic drift identically zero (MC case)
    double max_mismatch = 0.0;///< max |analytic - FD|; max |FD| when conserved
};

namespace detail {

inline const Vec3* extra_by_label(const DiagnosticSample& d, std::string_view label) {
    for (const LabeledVec& lv : d.extra)
        if (lv.label == label) return &lv.value;
    return nullptr;
}

/// (-J[k+2] + 8 J[k+1] - 8 J[k-1] + J[k-2]) / (12h) vs the analytic drift,
/// maximized over the interior samples.
inline double drift_mismatch(const Trajectory& tr, std::string_view current,
                             std::string_view analytic) {
    const auto& s = tr.samples;
    const double h = s[1].t - s[0].t;
    double worst = 0.0;
    for (std::size_t k = 2; k + 2 < s.size(); ++k) {
        const Vec3 Jm2 = *extra_by_label(s[k - 2].diag, current);
        const Vec3 Jm1 = *extra_by_label(s[k - 1].diag, current);
        const Vec3 Jp1 = *extra_by_label(s[k + 1].diag, current);
        const Vec3 Jp2 = *extra_by_label(s[k + 2].diag, current);
        const Vec3 fd = (1.0 / (12.0 * h)) * (-Jp2 + 8.0 * Jp1 - 8.0 * Jm1 + Jm2);
        const Vec3 ana = analytic.empty() ? Vec3{} : *extra_by_label(s[k].diag, analytic);
        worst = std::max(worst, max_abs(fd - ana));
    }
    return worst;
}

}  // namespace detail

/// Drift-identity check for the formulation's non-conserved current; empty
/// for formulations whose second current is conserved trivially (EP, full).
/// Needs at least 5 samples for the interior stencil.
inline std::optional<DriftIdentityResult> drift_identity_check(const Trajectory& tr) {
    if (tr.samples.size() < 5)
        throw std::invalid_argument("drift_identity_check: need at least 5 samples");
    switch (tr.formulation) {
        case FormulationId::stage_s:
            return DriftIdentityResult{tr.formulation, "J2_spatial", false,
                                       detail::drift_mismatch(tr, "J2_spatial", "J2_drift")};
        case FormulationId::stage_o_mech:
            return DriftIdentityResult{tr.formulation, "J2_mech", false,
                                       detail::drift_mismatch(tr, "J2_mech", "J2_mech_drift")};
        case FormulationId::stage_o_mc:
            return DriftIdentityResult{tr.formulation, "J2_mc", true,
                                       detail::drift_mismatch(tr, "J2_mc", "")};
        default:
            return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Brute-force variational oracle.
//
// Independent of every reduced equation above: it only uses the unreduced
// Lagrangian and a configuration-space arc (R_k, theta_k). If the reduced
// equations are right, a reconstructed solution makes the discrete action
// stationary under compactly supported variations, with residuals O(h^2).

/// A sampled configuration-space path with uniform spacing h.
struct ConfigArc {
    std::vector<Rotation> R;
    std::vector<Vec3> theta;
    double h = 0.0;
};

/// Integrate the unreduced system and keep only the configuration variables.
inline ConfigArc reconstruct_arc(const InertiaModel& m, const FullState& initial, double h,
                                 long long n) {
    StepSpec spec{h, h * static_cast<double>(n), Method::rk4};
    using T = FormulationTraits<FormulationId::full>;
    Trajectory tr = integrate_t<T>(m, initial, initial.R, spec);
    ConfigArc arc;
    arc.h = h;
    arc.R.reserve(tr.samples.size());
    arc.theta.reserve(tr.samples.size());
    for (const TrajectorySample& s : tr.samples) {
        arc.R.push_back(s.R);
        arc.theta.push_back({s.native[0], s.native[1], s.native[2]});
    }
    return arc;
}

namespace detail {

/// Discrete action of lagrangian_full over the interior of a (possibly
/// varied) arc: velocities by central differences, Omega_k read off the skew
/// part of R_k^T (R_{k+1} - R_{k-1}) / (2h).
inline double discrete_action(const InertiaModel& m, const std::vector<Rotation>& R,
                              const std::vector<Vec3>& theta, double h) {
    const std::size_t n = R.size() - 1;
    double total = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const Mat3 diff = (1.0 / (2.0 * h)) * (R[k + 1].m - R[k - 1].m);
        const Vec3 Omega_k = vee_skew_part(transpose(R[k].m) * diff);
        const Vec3 theta_dot_k = (theta[k + 1] - theta[k - 1]) / (2.0 * h);
        total += h * lagrangian_full(m, {Rotation::identity(), theta[k], Omega_k, theta_dot_k});
    }
    return total;
}

}  // namespace detail

/// Directional derivative of the discrete action under a bump variation of
/// size eps along `dir`: rotational legs perturb R_k -> R_k exp(eps b_k dir),
/// rotor legs perturb theta_k -> theta_k + eps b_k dir, with the bump profile
/// b_k = sin^2(pi k/n) vanishing at both endpoints. Zero (to O(h^2) + FD
/// error) exactly when the arc solves the Euler-Lagrange equations.
inline double discrete_action_residual(const InertiaModel& m, const ConfigArc& arc, Vec3 dir,
                                       bool rotational, double eps = 1e-4) {
    const std::size_t n = arc.R.size() - 1;
    auto action_at = [&](double e) {
        std::vector<Rotation> R = arc.R;
        std::vector<Vec3> theta = arc.theta;
        for (std::size_t k = 0; k <= n; ++k) {
            const double s = std::sin(pi * static_cast<double>(k) / static_cast<double>(n));
            const double b = s * s;
            if (rotational)
                R[k] = R[k] * so3_exp((e * b) * dir);
            else
                theta[k] += (e * b) * dir;
        }
        return detail::discrete_action(m, R, theta, arc.h);
    };
    return (action_at(eps) - action_at(-eps)) / (2.0 * eps);
}

/// All six directional residuals: rotational x/y/z then rotor x/y/z.
inline std::array<double, 6> el_residuals(const InertiaModel& m, const ConfigArc& arc,
                                          double eps = 1e-4) {
    const Vec3 basis[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    std::array<double, 6> r{};
    for (int i = 0; i < 3; ++i) r[i] = discrete_action_residual(m, arc, basis[i], true, eps);
    for (int i = 0; i < 3; ++i) r[3 + i] = discrete_action_residual(m, arc, basis[i], false, eps);
    return r;
}

/// The oracle: reconstruct a short arc from `initial` and report the six
/// Euler-Lagrange residuals. Residuals shrink at 2nd order in h on genuine
/// solutions and stay large on perturbed non-solutions.
inline std::array<double, 6> oracle_check_euler_lagrange(const InertiaModel& m,
                                                         const FullState& initial,
                                                         double h = 1e-3, double T = 1.0) {
    return el_residuals(m, reconstruct_arc(m, initial, h, std::llround(T / h)));
}

/// Negative control: smoothly deform an arc so it is no longer a solution
/// while keeping its endpoints.
inline ConfigArc perturb_arc(const ConfigArc& arc, double amplitude) {
    ConfigArc out = arc;
    const std::size_t n = arc.R.size() - 1;
    const Vec3 dir_R{0.3, -0.5, 0.8};
    const Vec3 dir_theta{0.4, 0.2, -0.7};
    for (std::size_t k = 0; k <= n; ++k) {
        const double s = std::sin(2.0 * pi * static_cast<double>(k) / static_cast<double>(n));
        const double p = amplitude * s * s;
        out.R[k] = out.R[k] * so3_exp(p * dir_R);
        out.theta[k] += p * dir_theta;
    }
    return out;
}

}  // namespace gyrostat
