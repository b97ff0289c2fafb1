#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace gyrostat;
using testsupport::canonical_inertia;
using testsupport::canonical_initial;

TEST_CASE("formulation names parse and print consistently") {
    for (FormulationId f : all_reduced_formulations)
        CHECK(parse_formulation(formulation_name(f)) == f);
    CHECK(parse_formulation("full") == FormulationId::full);
    CHECK_FALSE(parse_formulation("euler_poincare").has_value());
    CHECK_FALSE(parse_formulation("").has_value());
}

TEST_CASE("all five Lagrangians give 4.0 on the canonical fixture") {
    const InertiaModel m = canonical_inertia();
    const FullState full = canonical_initial();

    CHECK(lagrangian_full(m, full) == Catch::Approx(4.0).margin(1e-14));
    CHECK(lagrangian_ep(m, ep_from_full(full)) == Catch::Approx(4.0).margin(1e-14));
    CHECK(lagrangian_stage_s(m, stage_s_from_full(full)) == Catch::Approx(4.0).margin(1e-14));
    CHECK(lagrangian_stage_o_mc(m, stage_o_mc_from_full(full)) ==
          Catch::Approx(4.0).margin(1e-14));
    CHECK(lagrangian_stage_o_mech(m, stage_o_mech_from_full(m, full)) ==
          Catch::Approx(4.0).margin(1e-14));
}

TEST_CASE("lagrangian_full is independent of configuration variables") {
    const InertiaModel m = canonical_inertia();
    FullState s = canonical_initial();
    const double base = lagrangian_full(m, s);
    s.R = so3_exp({1.1, -0.4, 2.0});
    s.theta = {5.0, -3.0, 0.7};
    CHECK(lagrangian_full(m, s) == base);
}

TEST_CASE("degenerate velocity cases") {
    const InertiaModel m = canonical_inertia();
    CHECK(lagrangian_full(m, FullState{}) == 0.0);
    CHECK(lagrangian_stage_s(m, {Rotation::identity(), {0, 0, 0}, {0, 0, 0}}) == 0.0);

    // Omega_r = 0 leaves the pure rigid-body energy.
    const Vec3 w{0.4, -1.0, 0.3};
    const double rigid = 0.5 * dot(w, m.apply_IK(w));
    CHECK(lagrangian_ep(m, {w, {0, 0, 0}}) == Catch::Approx(rigid).margin(1e-15));
    CHECK(lagrangian_stage_o_mc(m, {{0, 0, 0}, {0, 0, 0}, w}) ==
          Catch::Approx(rigid).margin(1e-15));
    CHECK(lagrangian_stage_o_mech(m, {{0, 0, 0}, {0, 0, 0}, w}) ==
          Catch::Approx(rigid).margin(1e-15));
}

TEST_CASE("coordinate maps produce the documented values") {
    const InertiaModel m = canonical_inertia();
    const FullState full = canonical_initial();

    CHECK(max_abs(stage_s_from_full(full).eta - Vec3{1, 1, 1}) == 0.0);
    CHECK(max_abs(stage_o_mech_from_full(m, full).xi - Vec3{1, 1, 0.5}) <= 1e-15);

    FullState still = full;
    still.Omega_r = {0, 0, 0};
    CHECK(max_abs(stage_s_from_full(still).eta - still.Omega) == 0.0);
    CHECK(max_abs(stage_o_mech_from_full(m, still).xi - still.Omega) == 0.0);

    const StageOMCState mc = stage_o_mc_from_full(full);
    CHECK(max_abs(mc.theta_dot - full.Omega_r) == 0.0);
    CHECK(max_abs(mc.Omega - full.Omega) == 0.0);
}

TEST_CASE("five-way Lagrangian agreement on random states") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 100; ++i) {
        const InertiaModel m = testsupport::random_inertia(rng);
        const FullState s = testsupport::random_state(rng);
        const double ref = lagrangian_full(m, s);
        const double scale = std::max(1.0, std::abs(ref));
        CHECK(std::abs(lagrangian_ep(m, ep_from_full(s)) - ref) <= 1e-12 * scale);
        CHECK(std::abs(lagrangian_stage_s(m, stage_s_from_full(s)) - ref) <= 1e-12 * scale);
        CHECK(std::abs(lagrangian_stage_o_mc(m, stage_o_mc_from_full(s)) - ref) <=
              1e-12 * scale);
        CHECK(std::abs(lagrangian_stage_o_mech(m, stage_o_mech_from_full(m, s)) - ref) <=
              1e-12 * scale);
    }
}

TEST_CASE("Lagrangians are positive for nonzero velocities") {
    std::mt19937_64 rng(103);
    for (int i = 0; i < 100; ++i) {
        const InertiaModel m = testsupport::random_inertia(rng);
        FullState s = testsupport::random_state(rng);
        if (max_abs(s.Omega) == 0.0 && max_abs(s.Omega_r) == 0.0) s.Omega = {1, 0, 0};
        CHECK(lagrangian_full(m, s) > 0.0);
    }
}

TEST_CASE("reduced coordinates ignore configuration variables") {
    const FullState a = canonical_initial();
    FullState b = a;
    b.R = so3_exp({0.2, 0.9, -1.3});
    b.theta = {1, 2, 3};
    const EPState ea = ep_from_full(a), eb = ep_from_full(b);
    CHECK(max_abs(ea.Omega - eb.Omega) == 0.0);
    CHECK(max_abs(ea.Omega_r - eb.Omega_r) == 0.0);
}
