// Shared fixtures and random-state generators for the test suite.
#pragma once
#include <random>

#include "gyrostat/gyrostat.hpp"

namespace testsupport {

using namespace gyrostat;

/// The canonical test body: I = diag(3,2,1), K = Id.
inline InertiaModel canonical_inertia() {
    return InertiaModel::diagonal({3.0, 2.0, 1.0}, {1.0, 1.0, 1.0});
}

/// Initial condition used throughout: Omega = (1,1,0), Omega_r = (0,0,1).
inline FullState canonical_initial() {
    return {.Omega = {1.0, 1.0, 0.0}, .Omega_r = {0.0, 0.0, 1.0}};
}

inline Scenario canonical_scenario(double dt, double t_end,
                                   std::vector<FormulationId> formulations) {
    return {.name = "canonical",
            .inertia = canonical_inertia(),
            .initial = canonical_initial(),
            .step = {.dt = dt, .t_end = t_end},
            .formulations = std::move(formulations)};
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec3 random_vec(std::mt19937_64& rng, double lo, double hi) {
    return {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

/// Diagonal inertia drawn from the ranges the property suite standardizes on.
inline InertiaModel random_inertia(std::mt19937_64& rng) {
    return InertiaModel::diagonal(random_vec(rng, 0.5, 5.0), random_vec(rng, 0.05, 2.0));
}

inline FullState random_state(std::mt19937_64& rng) {
    return {.R = so3_exp(random_vec(rng, -2.0, 2.0)),
            .theta = random_vec(rng, -3.0, 3.0),
            .Omega = random_vec(rng, -2.0, 2.0),
            .Omega_r = random_vec(rng, -2.0, 2.0)};
}

}  // namespace testsupport
