#pragma once
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gyrostat/algebra.hpp"
#include "gyrostat/conserved.hpp"
#include "gyrostat/dynamics.hpp"
#include "gyrostat/formulations.hpp"

namespace gyrostat {

enum class Method { rk4, euler };

inline std::string_view method_name(Method m) {
    return m == Method::rk4 ? "rk4" : "euler";
}

inline std::optional<Method> parse_method(std::string_view s) {
    if (s == "rk4") return Method::rk4;
    if (s == "euler") return Method::euler;
    return std::nullopt;
}

/// Fixed-step integration request. t_end/dt is capped at 1e8 steps as a
/// runaway guard.
struct StepSpec {
    double dt = 1e-3;       ///< step size [s], > 0
    double t_end = 1.0;     ///< integration horizon [s], >= 0
    Method method = Method::rk4;

    void validate() const {
        if (!(std::isfinite(dt) && dt > 0.0))
            throw std::invalid_argument("StepSpec: dt must be finite and > 0");
        if (!(std::isfinite(t_end) && t_end >= 0.0))
            throw std::invalid_argument("StepSpec: t_end must be finite and >= 0");
        if (t_end / dt > 1e8)
            throw std::invalid_argument("StepSpec: t_end/dt exceeds 1e8 steps");
    }

    long long step_count() const { return std::llround(t_end / dt); }
};

/// Thrown when a trajectory leaves the finite domain; carries the time of
/// the offending step.
struct IntegrationAbort : std::runtime_error {
    double t;
    std::string formulation;
    IntegrationAbort(double t_, std::string form, const std::string& msg)
        : std::runtime_error("integration aborted at t = " + std::to_string(t_) + " (" +
                             form + "): " + msg),
          t(t_),
          formulation(std::move(form)) {}
};

/// One classical RK4 (or explicit Euler) step of y' = rhs(y) on a flat
/// vector. Rejects non-finite intermediate stages.
template <std::size_t N, class RHS>
std::array<double, N> step_vector(RHS&& rhs, const std::array<double, N>& y, double dt,
                                  Method method = Method::rk4) {
    auto finite = [](const std::array<double, N>& v) {
        for (double c : v)
            if (!std::isfinite(c)) return false;
        return true;
    };
    auto axpy = [](const std::array<double, N>& a, double s, const std::array<double, N>& b) {
        std::array<double, N> r;
        for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + s * b[i];
        return r;
    };
    if (method == Method::euler) {
        const auto k1 = rhs(y);
        if (!finite(k1)) throw std::domain_error("step_vector: non-finite stage derivative");
        return axpy(y, dt, k1);
    }
    const auto k1 = rhs(y);
    const auto k2 = rhs(axpy(y, 0.5 * dt, k1));
    const auto k3 = rhs(axpy(y, 0.5 * dt, k2));
    const auto k4 = rhs(axpy(y, dt, k3));
    if (!finite(k1) || !finite(k2) || !finite(k3) || !finite(k4))
        throw std::domain_error("step_vector: non-finite stage derivative");
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

/// Truncated inverse right-trivialized differential of exp for the body
/// equation sigma' = dexpinv_{-sigma}(Omega); the series enters with a PLUS
/// sign here. Degree 2 suffices for a 4th-order scheme.
inline Vec3 dexpinv_body(Vec3 u, Vec3 v) {
    return v + 0.5 * cross(u, v) + (1.0 / 12.0) * cross(u, cross(u, v));
}

/// 4-stage Runge-Kutta-Munthe-Kaas update of Rdot = R hat(Omega), driven by
/// the body velocities at the four RK4 stage states. Stays in SO(3) without
/// projection; exact (to round-off) for constant Omega.
inline Rotation step_attitude(const Rotation& R, const std::array<Vec3, 4>& omega_stages,
                              double dt) {
    const Vec3 k1 = omega_stages[0];
    const Vec3 k2 = dexpinv_body(0.5 * dt * k1, omega_stages[1]);
    const Vec3 k3 = dexpinv_body(0.5 * dt * k2, omega_stages[2]);
    const Vec3 k4 = dexpinv_body(dt * k3, omega_stages[3]);
    return R * so3_exp((dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

/// 1-stage (Lie-Euler) variant used with Method::euler.
inline Rotation step_attitude_euler(const Rotation& R, Vec3 omega, double dt) {
    return R * so3_exp(dt * omega);
}

/// One row of a trajectory: formulation-native flat state plus the common
/// observables every formulation is mapped back to, and the conserved-module
/// diagnostics.
struct TrajectorySample {
    double t = 0.0;
    Rotation R;                        ///< native (stage-S, full) or reconstructed attitude
    std::array<double, 9> native{};    ///< first native_dim entries meaningful
    Vec3 Omega;                        ///< body angular velocity
    Vec3 rotor_rate;                   ///< Omega_r / theta_dot / eta - Omega
    DiagnosticSample diag;
};

struct Trajectory {
    FormulationId formulation = FormulationId::ep;
    std::size_t native_dim = 0;
    std::vector<std::string> native_labels;
    std::vector<TrajectorySample> samples;
};

// Compile-time description of each formulation for the generic integrator:
// flat layout, RHS adapter, body velocity and rotor rate extractors, energy,
// and the formulation-specific extra currents.

template <FormulationId F>
struct FormulationTraits;

namespace detail {
inline void put(std::array<double, 9>& a, std::size_t at, Vec3 v) {
    a[at] = v.x;
    a[at + 1] = v.y;
    a[at + 2] = v.z;
}
template <std::size_t N>
Vec3 get(const std::array<double, N>& a, std::size_t at) {
    return {a[at], a[at + 1], a[at + 2]};
}
}  // namespace detail

template <>
struct FormulationTraits<FormulationId::ep> {
    static constexpr FormulationId id = FormulationId::ep;
    static constexpr std::size_t dim = 6;
    using State = EPState;
    using Flat = std::array<double, dim>;

    static Flat pack(const State& s) {
        return {s.Omega.x, s.Omega.y, s.Omega.z, s.Omega_r.x, s.Omega_r.y, s.Omega_r.z};
    }
    static State unpack(const Flat& y) { return {detail::get(y, 0), detail::get(y, 3)}; }
    static Flat rhs(const InertiaModel& m, const Flat& y) {
        const EPDerivative d = ep_rhs(m, unpack(y));
        return {d.dOmega.x, d.dOmega.y, d.dOmega.z, d.dOmega_r.x, d.dOmega_r.y, d.dOmega_r.z};
    }
    static Vec3 omega_flat(const InertiaModel&, const Flat& y) { return detail::get(y, 0); }
    static Vec3 rotor_rate(const InertiaModel&, const State& s) { return s.Omega_r; }
    static State from_full(const InertiaModel&, const FullState& f) { return ep_from_full(f); }
    static double energy_of(const InertiaModel& m, const State& s) { return energy(m, s); }
    static std::vector<std::string> native_labels() {
        return {"Omega_x", "Omega_y", "Omega_z", "Omega_r_x", "Omega_r_y", "Omega_r_z"};
    }
    static void extra_currents(const InertiaModel&, const State&, const Rotation&,
                               std::vector<LabeledVec>&) {}
};

template <>
struct FormulationTraits<FormulationId::stage_s> {
    static constexpr FormulationId id = FormulationId::stage_s;
    static constexpr std::size_t dim = 6;
    using State = StageSState;
    using Flat = std::array<double, dim>;

    static Flat pack(const State& s) {
        return {s.Omega.x, s.Omega.y, s.Omega.z, s.eta.x, s.eta.y, s.eta.z};
    }
    static State unpack(const Flat& y, const Rotation& R = Rotation::identity()) {
        return {R, detail::get(y, 0), detail::get(y, 3)};
    }
    static Flat rhs(const InertiaModel& m, const Flat& y) {
        const StageSDerivative d = stage_s_rhs(m, unpack(y));
        return {d.dOmega.x, d.dOmega.y, d.dOmega.z, d.deta.x, d.deta.y, d.deta.z};
    }
    static Vec3 omega_flat(const InertiaModel&, const Flat& y) { return detail::get(y, 0); }
    static Vec3 rotor_rate(const InertiaModel&, const State& s) { return s.eta - s.Omega; }
    static State from_full(const InertiaModel&, const FullState& f) {
        return stage_s_from_full(f);
    }
    static double energy_of(const InertiaModel& m, const State& s) { return energy(m, s); }
    static std::vector<std::string> native_labels() {
        return {"Omega_x", "Omega_y", "Omega_z", "eta_x", "eta_y", "eta_z"};
    }
    static void extra_currents(const InertiaModel& m, const State& s, const Rotation& R,
                               std::vector<LabeledVec>& out) {
        const StageSState with_R{R, s.Omega, s.eta};
        out.push_back({"J2_spatial", body_angular_momentum_rigid(m, R, s.Omega)});
        out.push_back({"J2_drift", drift_J2(m, with_R)});
    }
};

template <>
struct FormulationTraits<FormulationId::stage_o_mc> {
    static constexpr FormulationId id = FormulationId::stage_o_mc;
    static constexpr std::size_t dim = 9;
    using State = StageOMCState;
    using Flat = std::array<double, dim>;

    static Flat pack(const State& s) {
        Flat y{};
        detail::put(y, 0, s.theta);
        detail::put(y, 3, s.theta_dot);
        detail::put(y, 6, s.Omega);
        return y;
    }
    static State unpack(const Flat& y) {
        return {detail::get(y, 0), detail::get(y, 3), detail::get(y, 6)};
    }
    static Flat rhs(const InertiaModel& m, const Flat& y) {
        const StageOMCDerivative d = stage_o_mc_rhs(m, unpack(y));
        Flat out{};
        detail::put(out, 0, d.dtheta);
        detail::put(out, 3, d.dtheta_dot);
        detail::put(out, 6, d.dOmega);
        return out;
    }
    static Vec3 omega_flat(const InertiaModel&, const Flat& y) { return detail::get(y, 6); }
    static Vec3 rotor_rate(const InertiaModel&, const State& s) { return s.theta_dot; }
    static State from_full(const InertiaModel&, const FullState& f) {
        return stage_o_mc_from_full(f);
    }
    static double energy_of(const InertiaModel& m, const State& s) { return energy(m, s); }
    static std::vector<std::string> native_labels() {
        return {"theta_x", "theta_y", "theta_z", "theta_dot_x", "theta_dot_y", "theta_dot_z",
                "Omega_x", "Omega_y", "Omega_z"};
    }
    static void extra_currents(const InertiaModel& m, const State& s, const Rotation&,
                               std::vector<LabeledVec>& out) {
        out.push_back({"J2_mc", current_mc(m, s.theta_dot, s.Omega)});
    }
};

template <>
struct FormulationTraits<FormulationId::stage_o_mech> {
    static constexpr FormulationId id = FormulationId::stage_o_mech;
    static constexpr std::size_t dim = 9;
    using State = StageOMechState;
    using Flat = std::array<double, dim>;

    static Flat pack(const State& s) {
        Flat y{};
        detail::put(y, 0, s.theta);
        detail::put(y, 3, s.theta_dot);
        detail::put(y, 6, s.xi);
        return y;
    }
    static State unpack(const Flat& y) {
        return {detail::get(y, 0), detail::get(y, 3), detail::get(y, 6)};
    }
    static Flat rhs(const InertiaModel& m, const Flat& y) {
        const StageOMechDerivative d = stage_o_mech_rhs(m, unpack(y));
        Flat out{};
        detail::put(out, 0, d.dtheta);
        detail::put(out, 3, d.dtheta_dot);
        detail::put(out, 6, d.dxi);
        return out;
    }
    static Vec3 omega_flat(const InertiaModel& m, const Flat& y) {
        return detail::get(y, 6) - m.solve_IK(m.apply_K(detail::get(y, 3)));
    }
    static Vec3 rotor_rate(const InertiaModel&, const State& s) { return s.theta_dot; }
    static State from_full(const InertiaModel& m, const FullState& f) {
        return stage_o_mech_from_full(m, f);
    }
    static double energy_of(const InertiaModel& m, const State& s) { return energy(m, s); }
    static std::vector<std::string> native_labels() {
        return {"theta_x", "theta_y", "theta_z", "theta_dot_x", "theta_dot_y", "theta_dot_z",
                "xi_x", "xi_y", "xi_z"};
    }
    static void extra_currents(const InertiaModel& m, const State& s, const Rotation&,
                               std::vector<LabeledVec>& out) {
        out.push_back({"J2_mech", current_mech(m, s.theta_dot)});
        out.push_back({"J2_mech_drift", drift_mech(m, s)});
    }
};

template <>
struct FormulationTraits<FormulationId::full> {
    static constexpr FormulationId id = FormulationId::full;
    static constexpr std::size_t dim = 9;
    using State = FullState;
    using Flat = std::array<double, dim>;

    static Flat pack(const State& s) {
        Flat y{};
        detail::put(y, 0, s.theta);
        detail::put(y, 3, s.Omega);
        detail::put(y, 6, s.Omega_r);
        return y;
    }
    static State unpack(const Flat& y, const Rotation& R = Rotation::identity()) {
        return {R, detail::get(y, 0), detail::get(y, 3), detail::get(y, 6)};
    }
    static Flat rhs(const InertiaModel& m, const Flat& y) {
        const FullDerivative d = full_rhs(m, unpack(y));
        Flat out{};
        detail::put(out, 0, d.dtheta);
        detail::put(out, 3, d.dOmega);
        detail::put(out, 6, d.dOmega_r);
        return out;
    }
    static Vec3 omega_flat(const InertiaModel&, const Flat& y) { return detail::get(y, 3); }
    static Vec3 rotor_rate(const InertiaModel&, const State& s) { return s.Omega_r; }
    static State from_full(const InertiaModel&, const FullState& f) { return f; }
    static double energy_of(const InertiaModel& m, const State& s) { return energy(m, s); }
    static std::vector<std::string> native_labels() {
        return {"theta_x", "theta_y", "theta_z", "Omega_x", "Omega_y", "Omega_z",
                "Omega_r_x", "Omega_r_y", "Omega_r_z"};
    }
    static void extra_currents(const InertiaModel&, const State&, const Rotation&,
                               std::vector<LabeledVec>&) {}
};

namespace detail {

template <class Traits>
TrajectorySample make_sample(const InertiaModel& m, double t, const typename Traits::Flat& y,
                             const Rotation& R) {
    TrajectorySample s;
    s.t = t;
    s.R = R;
    for (std::size_t i = 0; i < Traits::dim; ++i) s.native[i] = y[i];
    const auto state = [&] {
        if constexpr (Traits::id == FormulationId::stage_s || Traits::id == FormulationId::full)
            return Traits::unpack(y, R);
        else
            return Traits::unpack(y);
    }();
    s.Omega = Traits::omega_flat(m, y);
    s.rotor_rate = Traits::rotor_rate(m, state);
    s.diag.t = t;
    s.diag.energy = Traits::energy_of(m, state);
    s.diag.rotor_momentum = rotor_momentum(m, s.Omega, s.rotor_rate);
    s.diag.body_momentum = body_momentum(m, s.Omega, s.rotor_rate);
    s.diag.spatial_momentum = R * s.diag.body_momentum;
    Traits::extra_currents(m, state, R, s.diag.extra);
    return s;
}

}  // namespace detail

/// Integrate one formulation from a typed initial state with attitude factor
/// R0 (native for stage-S/full, reconstruction seed otherwise).
///
/// Partitioned scheme: the flat part advances with classical RK4 (or Euler);
/// the attitude advances with the Munthe-Kaas update driven by the body
/// velocities at the same stage states. The flat vector field of every
/// formulation here is independent of R, so the cascade is exact, not an
/// operator splitting. Every step is sampled with full diagnostics.
template <class Traits>
Trajectory integrate_t(const InertiaModel& m, const typename Traits::State& initial,
                       const Rotation& R0, const StepSpec& spec) {
    spec.validate();
    const long long n = spec.step_count();
    const double dt = spec.dt;
    const std::string fname{formulation_name(Traits::id)};

    Trajectory traj;
    traj.formulation = Traits::id;
    traj.native_dim = Traits::dim;
    traj.native_labels = Traits::native_labels();
    traj.samples.reserve(static_cast<std::size_t>(n) + 1);

    auto y = Traits::pack(initial);
    Rotation R = R0;
    traj.samples.push_back(detail::make_sample<Traits>(m, 0.0, y, R));

    auto rhs = [&m](const typename Traits::Flat& v) { return Traits::rhs(m, v); };
    auto axpy = [](const typename Traits::Flat& a, double s, const typename Traits::Flat& b) {
        typename Traits::Flat r;
        for (std::size_t i = 0; i < Traits::dim; ++i) r[i] = a[i] + s * b[i];
        return r;
    };

    for (long long k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * dt;
        try {
            if (spec.method == Method::rk4) {
                // Shared stage values drive both the flat RK4 update and the
                // attitude Munthe-Kaas update.
                const auto k1 = rhs(y);
                const auto y2 = axpy(y, 0.5 * dt, k1);
                const auto k2 = rhs(y2);
                const auto y3 = axpy(y, 0.5 * dt, k2);
                const auto k3 = rhs(y3);
                const auto y4 = axpy(y, dt, k3);
                const auto k4 = rhs(y4);
                const std::array<Vec3, 4> stages{
                    Traits::omega_flat(m, y), Traits::omega_flat(m, y2),
                    Traits::omega_flat(m, y3), Traits::omega_flat(m, y4)};
                for (const auto& kv : {k1, k2, k3, k4})
                    for (double c : kv)
                        if (!std::isfinite(c))
                            throw std::domain_error("non-finite stage derivative");
                R = step_attitude(R, stages, dt);
                for (std::size_t i = 0; i < Traits::dim; ++i)
                    y[i] = y[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            } else {
                R = step_attitude_euler(R, Traits::omega_flat(m, y), dt);
                y = step_vector<Traits::dim>(rhs, y, dt, Method::euler);
            }
        } catch (const std::domain_error& e) {
            throw IntegrationAbort(t, fname, e.what());
        }
        const double t_next = static_cast<double>(k + 1) * dt;
        for (double c : y)
            if (!std::isfinite(c)) throw IntegrationAbort(t_next, fname, "non-finite state");
        if (!is_finite(R.m)) throw IntegrationAbort(t_next, fname, "non-finite attitude");
        traj.samples.push_back(detail::make_sample<Traits>(m, t_next, y, R));
    }
    return traj;
}

/// Runtime-dispatched entry point: maps the shared initial FullState into the
/// requested formulation and integrates it.
inline Trajectory integrate(FormulationId f, const InertiaModel& m, const FullState& initial,
                            const StepSpec& spec) {
    switch (f) {
        case FormulationId::ep: {
            using T = FormulationTraits<FormulationId::ep>;
            return integrate_t<T>(m, T::from_full(m, initial), initial.R, spec);
        }
        case FormulationId::stage_s: {
            using T = FormulationTraits<FormulationId::stage_s>;
            return integrate_t<T>(m, T::from_full(m, initial), initial.R, spec);
        }
        case FormulationId::stage_o_mc: {
            using T = FormulationTraits<FormulationId::stage_o_mc>;
            return integrate_t<T>(m, T::from_full(m, initial), initial.R, spec);
        }
        case FormulationId::stage_o_mech: {
            using T = FormulationTraits<FormulationId::stage_o_mech>;
            return integrate_t<T>(m, T::from_full(m, initial), initial.R, spec);
        }
        case FormulationId::full: {
            using T = FormulationTraits<FormulationId::full>;
            return integrate_t<T>(m, initial, initial.R, spec);
        }
    }
    throw std::logic_error("integrate: unknown formulation");
}

}  // namespace gyrostat
