#pragma once
#include <optional>
#include <string_view>

#include "gyrostat/algebra.hpp"

namespace gyrostat {

/// The four reduced formulations plus the unreduced system.
///
///   ep           direct Euler-Poincare reduction, state (Omega, Omega_r)
///   stage_s      rotor group quotiented first, state (R; Omega, eta)
///   stage_o_mc   SO(3) first, Maurer-Cartan connection, state (theta, theta_dot, Omega)
///   stage_o_mech SO(3) first, mechanical connection, state (theta, theta_dot, xi)
///   full         unreduced (R, theta, Omega, Omega_r), used for reconstruction
enum class FormulationId { ep, stage_s, stage_o_mc, stage_o_mech, full };

inline constexpr FormulationId all_reduced_formulations[4] = {
    FormulationId::ep, FormulationId::stage_s, FormulationId::stage_o_mc,
    FormulationId::stage_o_mech};

inline std::string_view formulation_name(FormulationId f) {
    switch (f) {
        case FormulationId::ep: return "ep";
        case FormulationId::stage_s: return "stage_s";
        case FormulationId::stage_o_mc: return "stage_o_mc";
        case FormulationId::stage_o_mech: return "stage_o_mech";
        case FormulationId::full: return "full";
    }
    return "?";
}

inline std::optional<FormulationId> parse_formulation(std::string_view s) {
    for (FormulationId f : {FormulationId::ep, FormulationId::stage_s, FormulationId::stage_o_mc,
                            FormulationId::stage_o_mech, FormulationId::full})
        if (s == formulation_name(f)) return f;
    return std::nullopt;
}

/// Unreduced state on T(SO(3) x S^1 x S^1 x S^1), body-frame velocities:
/// Omega = vee(R^-1 Rdot), Omega_r = theta_dot.
struct FullState {
    Rotation R;
    Vec3 theta;
    Vec3 Omega;
    Vec3 Omega_r;
};

/// Euler-Poincare reduced state.
struct EPState {
    Vec3 Omega;
    Vec3 Omega_r;
};

/// First stage = rotor group. eta = Omega + Omega_r is the total angular
/// velocity; R survives the quotient.
struct StageSState {
    Rotation R;
    Vec3 Omega;
    Vec3 eta;
};

/// First stage = SO(3) with the Maurer-Cartan connection; (theta, theta_dot)
/// survive, Omega = vee(R^-1 Rdot) is the trivialized fiber velocity.
struct StageOMCState {
    Vec3 theta;
    Vec3 theta_dot;
    Vec3 Omega;
};

/// First stage = SO(3) with the mechanical connection; the locked velocity
/// xi = Omega + (I+K)^-1 K theta_dot decouples the Lagrangian, and (I+K)xi
/// is the total body angular momentum.
struct StageOMechState {
    Vec3 theta;
    Vec3 theta_dot;
    Vec3 xi;
};

/// L = 1/2 <Omega, I Omega> + 1/2 <Omega + Omega_r, K (Omega + Omega_r)>.
/// Independent of R and theta; that invariance is what every reduction uses.
inline double lagrangian_full(const InertiaModel& m, const FullState& s) {
    const Vec3 eta = s.Omega + s.Omega_r;
    return 0.5 * dot(s.Omega, m.apply_I(s.Omega)) + 0.5 * dot(eta, m.apply_K(eta));
}

/// l(Omega, Omega_r) = 1/2 <Omega,(I+K)Omega> + 1/2 <Omega_r, K Omega_r>
///                   + <Omega, K Omega_r>.
inline double lagrangian_ep(const InertiaModel& m, const EPState& s) {
    return 0.5 * dot(s.Omega, m.apply_IK(s.Omega)) +
           0.5 * dot(s.Omega_r, m.apply_K(s.Omega_r)) + dot(s.Omega, m.apply_K(s.Omega_r));
}

/// l_1S(R, Omega, eta) = 1/2 <Omega, I Omega> + 1/2 <eta, K eta>.
inline double lagrangian_stage_s(const InertiaModel& m, const StageSState& s) {
    return 0.5 * dot(s.Omega, m.apply_I(s.Omega)) + 0.5 * dot(s.eta, m.apply_K(s.eta));
}

/// l_1O(theta, theta_dot, Omega) under the Maurer-Cartan connection:
/// 1/2 <Omega,(I+K)Omega> + 1/2 <theta_dot, K theta_dot> + <Omega, K theta_dot>.
/// Cross-term coefficient 1, forced by equality with L under Omega_r = theta_dot.
inline double lagrangian_stage_o_mc(const InertiaModel& m, const StageOMCState& s) {
    return 0.5 * dot(s.Omega, m.apply_IK(s.Omega)) +
           0.5 * dot(s.theta_dot, m.apply_K(s.theta_dot)) +
           dot(s.Omega, m.apply_K(s.theta_dot));
}

/// Decoupled form under the mechanical connection:
/// 1/2 <xi,(I+K)xi> + 1/2 <K theta_dot, (I+K)^-1 I theta_dot>.
inline double lagrangian_stage_o_mech(const InertiaModel& m, const StageOMechState& s) {
    return 0.5 * dot(s.xi, m.apply_IK(s.xi)) +
           0.5 * dot(m.apply_K(s.theta_dot), m.solve_IK(m.apply_I(s.theta_dot)));
}

// Coordinate maps out of the unreduced state. Velocity-level only: theta and
// R are carried where the formulation retains them and dropped otherwise.

inline EPState ep_from_full(const FullState& s) { return {s.Omega, s.Omega_r}; }

inline StageSState stage_s_from_full(const FullState& s) {
    return {s.R, s.Omega, s.Omega + s.Omega_r};
}

inline StageOMCState stage_o_mc_from_full(const FullState& s) {
    return {s.theta, s.Omega_r, s.Omega};
}

inline StageOMechState stage_o_mech_from_full(const InertiaModel& m, const FullState& s) {
    return {s.theta, s.Omega_r, s.Omega + m.solve_IK(m.apply_K(s.Omega_r))};
}

}  // namespace gyrostat
