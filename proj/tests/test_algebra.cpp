#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace gyrostat;
using testsupport::random_vec;

namespace {
double max_abs_diff(const Mat3& a, const Mat3& b) { return max_abs(a - b); }
}  // namespace

TEST_CASE("hat builds the skew matrix of the cross product") {
    CHECK(max_abs(hat({0, 0, 0})) == 0.0);

    const Mat3 hx = hat({1, 0, 0});
    const Mat3 expected{{{0, 0, 0}, {0, 0, -1}, {0, 1, 0}}};
    CHECK(max_abs_diff(hx, expected) == 0.0);

    const Vec3 r = hat({1, 2, 3}) * Vec3{4, 5, 6};
    CHECK(r.x == -3.0);
    CHECK(r.y == 6.0);
    CHECK(r.z == -3.0);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const Vec3 v = random_vec(rng, -10, 10), w = random_vec(rng, -10, 10);
        CHECK(max_abs(hat(v) * w - cross(v, w)) <= 1e-14 * (1.0 + norm(v) * norm(w)));
        CHECK(max_abs_diff(transpose(hat(v)), -1.0 * hat(v)) == 0.0);
    }
}

TEST_CASE("vee inverts hat and rejects non-skew input") {
    CHECK(max_abs(vee(Mat3{})) == 0.0);
    const Vec3 v{1, 2, 3};
    CHECK(max_abs(vee(hat(v)) - v) == 0.0);
    const Vec3 w{-0.5, 0.25, 7};
    CHECK(max_abs(vee(hat(w)) - w) == 0.0);

    Mat3 bad = hat(v);
    bad.m[0][1] += 1e-6;
    CHECK_THROWS_AS(vee(bad), std::invalid_argument);
    // Tolerated asymmetry passes through vee_skew_part unchecked.
    CHECK(max_abs(vee_skew_part(bad) - v) <= 1e-6);
}

TEST_CASE("cross product identities") {
    CHECK(max_abs(cross({1, 0, 0}, {0, 1, 0}) - Vec3{0, 0, 1}) == 0.0);
    CHECK(max_abs(cross({4, 3, 1}, {1, 1, 0}) - Vec3{-1, 1, 1}) == 0.0);

    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        const Vec3 a = random_vec(rng, -5, 5), b = random_vec(rng, -5, 5),
                   c = random_vec(rng, -5, 5);
        CHECK(max_abs(cross(a, a)) == 0.0);
        CHECK(max_abs(cross(a, b) + cross(b, a)) == 0.0);
        CHECK(std::abs(dot(cross(a, b), a)) <= 1e-13);
        CHECK(std::abs(dot(cross(a, b), b)) <= 1e-13);
        const Vec3 jacobi = cross(a, cross(b, c)) + cross(b, cross(c, a)) + cross(c, cross(a, b));
        CHECK(max_abs(jacobi) <= 1e-12);
    }
}

TEST_CASE("apply and solve on symmetric positive-definite matrices") {
    const Vec3 v{0.3, -1.2, 4.5};
    CHECK(max_abs(apply(Mat3::identity(), v) - v) == 0.0);
    CHECK(max_abs(apply(Mat3::diagonal(3, 2, 1), {1, 1, 0}) - Vec3{3, 2, 0}) == 0.0);

    const Vec3 s = solve(Mat3::diagonal(4, 3, 2), {-1, 1, 1});
    CHECK(s.x == Catch::Approx(-0.25).margin(1e-15));
    CHECK(s.y == Catch::Approx(1.0 / 3.0).margin(1e-15));
    CHECK(s.z == Catch::Approx(0.5).margin(1e-15));

    // Round-trip on random SPD matrices with condition number <= 1e6; the
    // forward error of a backward-stable solve scales with that condition
    // number, about 1e6 * eps ~ 1e-10 here.
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        const Rotation Q = so3_exp(random_vec(rng, -2, 2));
        const Mat3 D = Mat3::diagonal(testsupport::uniform(rng, 1e-3, 1e-2),
                                      testsupport::uniform(rng, 0.5, 2.0),
                                      testsupport::uniform(rng, 1e2, 1e3));
        const Mat3 A0 = transpose(Q.m) * D * Q.m;
        const Mat3 A = 0.5 * (A0 + transpose(A0));
        const Vec3 x = random_vec(rng, -1, 1);
        const Vec3 back = solve(A, apply(A, x));
        CHECK(max_abs(back - x) <= 1e-9 * std::max(1.0, max_abs(x)));
    }

    CHECK_THROWS_AS(solve(Mat3::diagonal(1, 0, 1), v), std::invalid_argument);
    CHECK_THROWS_AS(solve(Mat3::diagonal(1, -2, 1), v), std::invalid_argument);
}

TEST_CASE("so3_exp produces rotations with the right action") {
    CHECK(max_abs_diff(so3_exp({0, 0, 0}).m, Mat3::identity()) == 0.0);

    const Rotation q = so3_exp({pi / 2, 0, 0});
    CHECK(max_abs(q * Vec3{0, 1, 0} - Vec3{0, 0, 1}) <= 1e-15);

    std::mt19937_64 rng(19);
    for (int i = 0; i < 100; ++i) {
        Vec3 v = random_vec(rng, -1, 1);
        const double n = norm(v);
        if (n > 0) v = (testsupport::uniform(rng, 0.0, pi) / n) * v;
        const Rotation r = so3_exp(v);
        CHECK(r.orthogonality_residual() <= 1e-12);
        CHECK(std::abs(determinant(r.m) - 1.0) <= 1e-12);
        CHECK(max_abs_diff((r * so3_exp(-1.0 * v)).m, Mat3::identity()) <= 1e-12);
    }

    // Small-angle branch agrees with the quadratic Taylor expansion; at
    // |v| ~ 4e-6 the neglected cubic term is ~1e-17, below the margin.
    const Vec3 tiny{3e-6, -2e-6, 1e-6};
    const Mat3 taylor = Mat3::identity() + hat(tiny) + 0.5 * (hat(tiny) * hat(tiny));
    CHECK(max_abs_diff(so3_exp(tiny).m, taylor) <= 1e-15);
    CHECK(so3_exp(tiny).orthogonality_residual() <= 1e-15);
}

TEST_CASE("Rotation::from_matrix validates its input") {
    const Rotation r = so3_exp({0.3, -0.7, 0.2});
    CHECK(max_abs_diff(Rotation::from_matrix(r.m).m, r.m) == 0.0);
    CHECK(Rotation::identity().orthogonality_residual() == 0.0);

    CHECK_THROWS_AS(Rotation::from_matrix(1.1 * Mat3::identity()), std::invalid_argument);
    CHECK_THROWS_AS(Rotation::from_matrix(Mat3::diagonal(1, 1, -1)), std::invalid_argument);
    Mat3 nan = Mat3::identity();
    nan.m[2][2] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Rotation::from_matrix(nan), std::invalid_argument);
}

TEST_CASE("geodesic distance measures the relative rotation angle") {
    for (double angle : {1e-8, 1e-3, 0.1, 1.0, 2.5, 3.0, pi - 1e-4, pi}) {
        const Rotation r = so3_exp({0.0, angle, 0.0});
        CHECK(geodesic_distance(Rotation::identity(), r) ==
              Catch::Approx(angle).margin(1e-12));
    }
    // Left invariance and symmetry.
    std::mt19937_64 rng(23);
    for (int i = 0; i < 50; ++i) {
        const Rotation a = so3_exp(random_vec(rng, -2, 2)), b = so3_exp(random_vec(rng, -2, 2)),
                       q = so3_exp(random_vec(rng, -2, 2));
        const double d = geodesic_distance(a, b);
        CHECK(geodesic_distance(b, a) == Catch::Approx(d).margin(1e-13));
        CHECK(geodesic_distance(q * a, q * b) == Catch::Approx(d).margin(1e-12));
    }
}

TEST_CASE("to_axis_angle round-trips including the near-pi branch") {
    const AxisAngle id = to_axis_angle(Rotation::identity());
    CHECK(id.angle == 0.0);
    CHECK(max_abs(id.axis) == 0.0);

    std::mt19937_64 rng(29);
    auto roundtrip = [](Vec3 v) {
        const Rotation r = so3_exp(v);
        const AxisAngle aa = to_axis_angle(r);
        CHECK(std::abs(norm(aa.axis) - 1.0) <= 1e-12);
        CHECK(geodesic_distance(so3_exp(aa.angle * aa.axis), r) <= 1e-10);
    };
    for (int i = 0; i < 50; ++i) {
        Vec3 v = random_vec(rng, -1, 1);
        v = (testsupport::uniform(rng, 1e-3, pi - 1e-3) / norm(v)) * v;
        roundtrip(v);
    }
    roundtrip({pi, 0, 0});                                // exact half turn
    roundtrip({0, pi - 1e-6, 0});                         // near-pi branch
    const Vec3 d = (1.0 / std::sqrt(3.0)) * Vec3{1, 1, 1};
    roundtrip((pi - 1e-9) * d);                           // near-pi, skew part ~1e-9
}

TEST_CASE("InertiaModel validates symmetry and positive-definiteness") {
    const InertiaModel m = InertiaModel::diagonal({3, 2, 1}, {1, 1, 1});
    CHECK(max_abs_diff(m.I(), Mat3::diagonal(3, 2, 1)) == 0.0);
    CHECK(max_abs_diff(m.K(), Mat3::identity()) == 0.0);
    CHECK(max_abs_diff(m.IK(), Mat3::diagonal(4, 3, 2)) == 0.0);
    CHECK(max_abs(m.solve_IK(m.apply_IK({1, -2, 3})) - Vec3{1, -2, 3}) <= 1e-14);

    Mat3 asym = Mat3::diagonal(3, 2, 1);
    asym.m[0][1] = 0.1;
    CHECK_THROWS_AS(InertiaModel(asym, Mat3::identity()), std::invalid_argument);
    CHECK_THROWS_AS(InertiaModel(Mat3::diagonal(-1, 1, 1), Mat3::identity()),
                    std::invalid_argument);
    CHECK_THROWS_AS(InertiaModel(Mat3::identity(), Mat3::diagonal(1, 0, 1)),
                    std::invalid_argument);
    // Positive diagonal but indefinite: fails on a principal minor.
    Mat3 indef = Mat3::identity();
    indef.m[0][1] = indef.m[1][0] = 2.0;
    CHECK_THROWS_AS(InertiaModel(indef, Mat3::identity()), std::invalid_argument);
}
