#pragma once
#include <string>
#include <vector>

#include "gyrostat/algebra.hpp"
#include "gyrostat/formulations.hpp"

namespace gyrostat {

/// A named current carried alongside the fixed diagnostic fields; labels are
/// per-formulation (e.g. "J2_spatial", "J2_mech_drift").
struct LabeledVec {
    std::string label;
    Vec3 value;
};

/// Per-sample diagnostics recorded along every trajectory.
struct DiagnosticSample {
    double t = 0.0;
    double energy = 0.0;              ///< the formulation's reduced Lagrangian
    Vec3 rotor_momentum;              ///< K(Omega + Omega_r), conserved
    Vec3 body_momentum;               ///< (I+K)Omega + K Omega_r, body frame
    Vec3 spatial_momentum;            ///< R * body_momentum, conserved
    std::vector<LabeledVec> extra;    ///< formulation-specific currents
};

/// J1 of the stage-S reduction: K(Omega + Omega_r), the momentum of the
/// rotors. Conserved (the vertical equation is K eta' = 0).
inline Vec3 rotor_momentum(const InertiaModel& m, Vec3 Omega, Vec3 Omega_r) {
    return m.apply_K(Omega + Omega_r);
}

/// Body-frame total momentum m = (I+K)Omega + K Omega_r. Not conserved as a
/// vector (m' = m x Omega) but its norm is, since <m x Omega, m> = 0.
inline Vec3 body_momentum(const InertiaModel& m, Vec3 Omega, Vec3 Omega_r) {
    return m.apply_IK(Omega) + m.apply_K(Omega_r);
}

/// J2 of the stage-S reduction: the spatial angular momentum R(I Omega) the
/// body would have without rotors. Drifts; see drift_J2.
inline Vec3 body_angular_momentum_rigid(const InertiaModel& m, const Rotation& R, Vec3 Omega) {
    return R * m.apply_I(Omega);
}

/// J1 of the SO(3)-first reductions: the total spatial momentum
/// R((I+K)Omega + K Omega_r). Conserved.
inline Vec3 total_spatial_momentum(const InertiaModel& m, const Rotation& R, Vec3 Omega,
                                   Vec3 Omega_r) {
    return R * body_momentum(m, Omega, Omega_r);
}

/// J2 under the Maurer-Cartan connection: K(theta_dot + Omega). Conserved;
/// coincides with rotor_momentum under Omega_r = theta_dot.
inline Vec3 current_mc(const InertiaModel& m, Vec3 theta_dot, Vec3 Omega) {
    return m.apply_K(theta_dot + Omega);
}

/// J2 under the mechanical connection: K(I+K)^-1 I theta_dot. Not conserved;
/// see drift_mech.
inline Vec3 current_mech(const InertiaModel& m, Vec3 theta_dot) {
    return m.apply_K(m.solve_IK(m.apply_I(theta_dot)));
}

/// Generic Noether evolution equation: along a solution,
/// d/dt <J, b> = -<dl_dv, omega_term + generator_term>, where omega_term is
/// the connection curvature evaluated on (velocity, generator of b) and
/// generator_term is the vertical part of the generator. Flat connection +
/// horizontal action give 0 (the Maurer-Cartan case).
inline double noether_drift_general(Vec3 dl_dv, Vec3 omega_term, Vec3 generator_term) {
    return -dot(dl_dv, omega_term + generator_term);
}

/// Analytic drift of J2 (stage-S): d/dt <J2, b> = -<K eta, (R^-1 b) x Omega>
/// for every spatial b, i.e. the drift vector is R((K eta) x Omega).
/// Sign and ordering were frozen against the finite-difference oracle.
inline Vec3 drift_J2(const InertiaModel& m, const StageSState& s) {
    return s.R * cross(m.apply_K(s.eta), s.Omega);
}

/// Analytic drift of J2_mech: <D, a> = <(I+K)^-1 K a, Omega x ((I+K)xi)>,
/// i.e. D = K(I+K)^-1 (Omega x ((I+K)xi)) on the commuting fixture family.
/// Frozen against the finite-difference oracle.
inline Vec3 drift_mech(const InertiaModel& m, const StageOMechState& s) {
    const Vec3 Omega = s.xi - m.solve_IK(m.apply_K(s.theta_dot));
    return m.apply_K(m.solve_IK(cross(Omega, m.apply_IK(s.xi))));
}

// Energy per formulation, each from its own reduced Lagrangian (pure kinetic
// energy), so cross-formulation agreement is itself a test.

inline double energy(const InertiaModel& m, const FullState& s) { return lagrangian_full(m, s); }
inline double energy(const InertiaModel& m, const EPState& s) { return lagrangian_ep(m, s); }
inline double energy(const InertiaModel& m, const StageSState& s) {
    return lagrangian_stage_s(m, s);
}
inline double energy(const InertiaModel& m, const StageOMCState& s) {
    return lagrangian_stage_o_mc(m, s);
}
inline double energy(const InertiaModel& m, const StageOMechState& s) {
    return lagrangian_stage_o_mech(m, s);
}

}  // namespace gyrostat
