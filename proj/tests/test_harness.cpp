#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace gyrostat;
using testsupport::canonical_inertia;
using testsupport::canonical_initial;
using testsupport::canonical_scenario;

namespace {
const std::vector<FormulationId> all_four{FormulationId::ep, FormulationId::stage_s,
                                          FormulationId::stage_o_mc, FormulationId::stage_o_mech};
}

TEST_CASE("scenario and tolerance validation") {
    Scenario s = canonical_scenario(1e-3, 1.0, all_four);
    CHECK_NOTHROW(s.validate());

    Scenario none = s;
    none.formulations.clear();
    CHECK_THROWS_AS(none.validate(), std::invalid_argument);

    Scenario bad_tol = s;
    bad_tol.tol.omega_dev = -1.0;
    CHECK_THROWS_AS(bad_tol.validate(), std::invalid_argument);
    bad_tol.tol.omega_dev = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(bad_tol.validate(), std::invalid_argument);

    // Zero tolerance is legal: it demands exactness.
    Scenario strict = s;
    strict.tol.omega_dev = 0.0;
    CHECK_NOTHROW(strict.validate());
}

TEST_CASE("zero-velocity scenario gives exactly zero deviations and drifts") {
    Scenario s = canonical_scenario(1e-2, 0.5, all_four);
    s.initial = FullState{};
    const ScenarioResult res = run_scenario(s);
    for (const PairDeviation& p : res.report.pairs) {
        CHECK(p.omega_dev == 0.0);
        CHECK(p.rotor_rate_dev == 0.0);
        CHECK(p.attitude_dev == 0.0);
    }
    for (const ConservationDrift& d : res.report.drifts) {
        CHECK(d.rotor_momentum == 0.0);
        CHECK(d.energy_rel == 0.0);
        CHECK(d.spatial_momentum == 0.0);
        CHECK(d.body_momentum_norm == 0.0);
    }
    CHECK(res.report.pass);
}

TEST_CASE("EP and Stage-O/MC integrate to the same trajectory bit-for-bit") {
    const Scenario s = canonical_scenario(1e-3, 1.0,
                                          {FormulationId::ep, FormulationId::stage_o_mc});
    const ScenarioResult res = run_scenario(s);
    REQUIRE(res.report.pairs.size() == 1);
    CHECK(res.report.pairs[0].omega_dev <= 1e-14);
    CHECK(res.report.pairs[0].rotor_rate_dev <= 1e-14);
    CHECK(res.report.pairs[0].attitude_dev <= 1e-13);
}

TEST_CASE("canonical fixture passes the equivalence and conservation gate") {
    const ScenarioResult res = run_scenario(canonical_scenario(1e-3, 1.0, all_four));
    REQUIRE(res.report.pairs.size() == 6);
    REQUIRE(res.report.drifts.size() == 4);
    for (const PairDeviation& p : res.report.pairs) {
        CHECK(p.omega_dev <= 1e-9);
        CHECK(p.rotor_rate_dev <= 1e-9);
        CHECK(p.attitude_dev <= 1e-8);
    }
    for (const ConservationDrift& d : res.report.drifts) {
        CHECK(d.rotor_momentum <= 1e-12);
        CHECK(d.energy_rel <= 1e-10);
        CHECK(d.spatial_momentum <= 1e-9);
        CHECK(d.body_momentum_norm <= 1e-12);
    }
    CHECK(res.report.equivalence_pass);
    CHECK(res.report.conservation_pass);
    CHECK(res.report.pass);
    // Every formulation produced the same number of samples.
    for (const Trajectory& tr : res.trajectories)
        CHECK(tr.samples.size() == res.trajectories.front().samples.size());
}

TEST_CASE("zero tolerance fails on round-off") {
    Scenario s = canonical_scenario(1e-3, 0.2, {FormulationId::ep, FormulationId::stage_s});
    s.tol.omega_dev = 0.0;
    const ScenarioResult res = run_scenario(s);
    CHECK_FALSE(res.report.equivalence_pass);
    CHECK_FALSE(res.report.pass);
}

TEST_CASE("a report never passes when conservation fails") {
    Scenario s = canonical_scenario(1e-3, 0.2, all_four);
    s.tol.energy_rel_drift = 0.0;
    const ScenarioResult res = run_scenario(s);
    CHECK_FALSE(res.report.conservation_pass);
    CHECK_FALSE(res.report.pass);
    CHECK(res.report.equivalence_pass);   // equivalence alone is not enough
}

TEST_CASE("integration aborts surface with the formulation attached") {
    Scenario s = canonical_scenario(1e3, 1e5, {FormulationId::stage_s});
    s.initial.Omega = {10, 10, 10};
    CHECK_THROWS_AS(run_scenario(s), IntegrationAbort);
}

TEST_CASE("drift_identity_check input validation") {
    const InertiaModel m = canonical_inertia();
    const Trajectory tiny = integrate(FormulationId::stage_s, m, canonical_initial(),
                                      {1e-3, 3e-3});
    CHECK_THROWS_AS(drift_identity_check(tiny), std::invalid_argument);
}

TEST_CASE("variational oracle: solutions are critical, non-solutions are not") {
    const InertiaModel m = canonical_inertia();
    const FullState init = canonical_initial();

    const auto coarse = oracle_check_euler_lagrange(m, init, 1e-3, 1.0);
    const auto fine = oracle_check_euler_lagrange(m, init, 5e-4, 1.0);
    double rc = 0.0, rf = 0.0;
    for (double v : coarse) rc = std::max(rc, std::abs(v));
    for (double v : fine) rf = std::max(rf, std::abs(v));
    const double ratio = rc / rf;
    CHECK(ratio >= 3.5);   // 2nd-order residual: halving h divides it by ~4
    CHECK(ratio <= 4.5);

    // Negative control: a smooth non-solution deformation of the same arc.
    const ConfigArc arc = reconstruct_arc(m, init, 1e-3, 1000);
    const ConfigArc bad = perturb_arc(arc, 0.05);
    double rb = 0.0;
    for (double v : el_residuals(m, bad)) rb = std::max(rb, std::abs(v));
    CHECK(rb >= 1e3 * rc);

    // Relative equilibrium: residual at round-off level.
    FullState eq;
    eq.Omega = {2, 0, 0};
    const auto eq_res = oracle_check_euler_lagrange(m, eq, 1e-3, 1.0);
    for (double v : eq_res) CHECK(std::abs(v) <= 1e-10);
}
