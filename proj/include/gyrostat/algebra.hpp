#pragma once
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gyrostat {

inline constexpr double pi = 3.14159265358979323846;

/// 3-vector over double; carries angular velocities, momenta, rotor angles,
/// and so(3) elements under the hat identification.
struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator*(Vec3 a, double s) { return s * a; }
inline Vec3 operator/(Vec3 a, double s) { return {a.x / s, a.y / s, a.z / s}; }
inline Vec3& operator+=(Vec3& a, Vec3 b) { a = a + b; return a; }
inline Vec3& operator-=(Vec3& a, Vec3 b) { a = a - b; return a; }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline double max_abs(Vec3 a) {
    return std::max({std::abs(a.x), std::abs(a.y), std::abs(a.z)});
}
inline bool is_finite(Vec3 a) {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// Row-major 3x3 matrix.
struct Mat3 {
    double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};

    static Mat3 identity() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }
    static Mat3 diagonal(double a, double b, double c) {
        return {{{a, 0, 0}, {0, b, 0}, {0, 0, c}}};
    }
    static Mat3 diagonal(Vec3 d) { return diagonal(d.x, d.y, d.z); }

    double operator()(int i, int j) const { return m[i][j]; }
    double& operator()(int i, int j) { return m[i][j]; }
};

inline Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
    return r;
}
inline Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
    return r;
}
inline Mat3 operator*(double s, const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = s * a.m[i][j];
    return r;
}
inline Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j] + a.m[i][2] * b.m[2][j];
    return r;
}
inline Vec3 operator*(const Mat3& a, Vec3 v) {
    return {a.m[0][0] * v.x + a.m[0][1] * v.y + a.m[0][2] * v.z,
            a.m[1][0] * v.x + a.m[1][1] * v.y + a.m[1][2] * v.z,
            a.m[2][0] * v.x + a.m[2][1] * v.y + a.m[2][2] * v.z};
}
inline Mat3 transpose(const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[j][i];
    return r;
}
inline double determinant(const Mat3& a) {
    return a.m[0][0] * (a.m[1][1] * a.m[2][2] - a.m[1][2] * a.m[2][1]) -
           a.m[0][1] * (a.m[1][0] * a.m[2][2] - a.m[1][2] * a.m[2][0]) +
           a.m[0][2] * (a.m[1][0] * a.m[2][1] - a.m[1][1] * a.m[2][0]);
}
inline double max_abs(const Mat3& a) {
    double r = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(a.m[i][j]));
    return r;
}
inline bool is_finite(const Mat3& a) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!std::isfinite(a.m[i][j])) return false;
    return true;
}

/// hat(v) w = v x w; the so(3) matrix of a 3-vector.
inline Mat3 hat(Vec3 v) {
    return {{{0, -v.z, v.y}, {v.z, 0, -v.x}, {-v.y, v.x, 0}}};
}

/// Components of the skew part of M, no skewness check: (S21, S02, S10) of
/// S = (M - M^T)/2. Exact inverse of hat on skew input.
inline Vec3 vee_skew_part(const Mat3& M) {
    return {0.5 * (M.m[2][1] - M.m[1][2]),
            0.5 * (M.m[0][2] - M.m[2][0]),
            0.5 * (M.m[1][0] - M.m[0][1])};
}

/// Inverse of hat. Rejects input that is not skew-symmetric to 1e-9.
inline Vec3 vee(const Mat3& M) {
    if (max_abs(M + transpose(M)) > 1e-9)
        throw std::invalid_argument("vee: matrix is not skew-symmetric");
    return vee_skew_part(M);
}

/// Attitude matrix in SO(3).
///
/// The raw matrix is public for arithmetic; from_matrix is the validating
/// entry point (orthogonality residual and determinant within 1e-9). Values
/// produced by so3_exp and composition of valid rotations stay within the
/// invariant up to round-off; long-run drift is measured, not re-projected.
struct Rotation {
    Mat3 m = Mat3::identity();

    static Rotation identity() { return {}; }

    /// Validating constructor for externally supplied matrices.
    static Rotation from_matrix(const Mat3& m) {
        Rotation r{m};
        if (!is_finite(m)) throw std::invalid_argument("Rotation: non-finite matrix");
        if (r.orthogonality_residual() > 1e-9)
            throw std::invalid_argument("Rotation: matrix is not orthogonal (residual > 1e-9)");
        if (std::abs(determinant(m) - 1.0) > 1e-9)
            throw std::invalid_argument("Rotation: determinant is not 1 (tolerance 1e-9)");
        return r;
    }

    /// ||R^T R - Id||_max, the invariant measured by the structural tests.
    double orthogonality_residual() const {
        return max_abs(transpose(m) * m - Mat3::identity());
    }

    Rotation inverse() const { return {transpose(m)}; }
    Vec3 operator*(Vec3 v) const { return m * v; }
    Rotation operator*(const Rotation& o) const { return {m * o.m}; }
};

/// exp(hat(v)) by the Rodrigues closed form.
/// Near ||v|| = 0 the coefficients sin(t)/t and (1-cos t)/t^2 switch to
/// 4-term Taylor series (threshold 1e-4 keeps both branches below 1e-16
/// relative error).
inline Rotation so3_exp(Vec3 v) {
    const double t2 = dot(v, v);
    const double t = std::sqrt(t2);
    double a, b;   // sin(t)/t, (1 - cos t)/t^2
    if (t < 1e-4) {
        a = 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0));
        b = 0.5 * (1.0 - t2 / 12.0 * (1.0 - t2 / 30.0 * (1.0 - t2 / 56.0)));
    } else {
        a = std::sin(t) / t;
        b = (1.0 - std::cos(t)) / t2;
    }
    const Mat3 H = hat(v);
    return {Mat3::identity() + a * H + b * (H * H)};
}

/// Geodesic distance on SO(3): the angle of the relative rotation a^T b,
/// in [0, pi].
///
/// Three branches keep full resolution everywhere: acos of the trace
/// amplifies round-off near angle 0 and pi (angle ~ sqrt(2 eps)), so the
/// skew-norm asin form is used there instead.
inline double geodesic_distance(const Rotation& a, const Rotation& b) {
    const Mat3 rel = transpose(a.m) * b.m;
    const double c = 0.5 * (rel.m[0][0] + rel.m[1][1] + rel.m[2][2] - 1.0);
    const double s = norm(vee_skew_part(rel));
    const double s1 = std::min(s, 1.0);
    if (c > 0.7) return std::asin(s1);
    if (c < -0.7) return pi - std::asin(s1);
    return std::acos(std::max(-1.0, std::min(1.0, c)));
}

/// Unit axis and angle of a rotation; identity maps to axis (0,0,0), angle 0.
/// Valid over the full angle range including the neighbourhood of pi.
struct AxisAngle {
    Vec3 axis;
    double angle = 0.0;
};

inline AxisAngle to_axis_angle(const Rotation& r) {
    const double angle = geodesic_distance(Rotation::identity(), r);
    if (angle < 1e-12) return {{0, 0, 0}, 0.0};
    const Vec3 w = vee_skew_part(r.m);   // = sin(angle) * axis
    if (angle < 3.0) return {w / std::sin(angle), angle};
    // Near pi the skew part degenerates; recover the axis from
    // a a^T = ((R + R^T)/2 - cos(angle) Id) / (1 - cos(angle)).
    const double cosr = std::cos(angle);
    const Mat3 outer = (1.0 / (1.0 - cosr)) * (0.5 * (r.m + transpose(r.m)) - cosr * Mat3::identity());
    double a[3] = {std::sqrt(std::max(0.0, outer.m[0][0])),
                   std::sqrt(std::max(0.0, outer.m[1][1])),
                   std::sqrt(std::max(0.0, outer.m[2][2]))};
    // Off-diagonal entries fix the relative signs; the sign of the largest
    // component comes from the (tiny but usually nonzero) skew part. At
    // exactly pi both signs of the axis are valid.
    const double wv[3] = {w.x, w.y, w.z};
    int k = 0;
    if (a[1] > a[k]) k = 1;
    if (a[2] > a[k]) k = 2;
    if (wv[k] < 0.0) a[k] = -a[k];
    for (int j = 0; j < 3; ++j)
        if (j != k) a[j] = std::copysign(a[j], a[k] * outer.m[std::min(j, k)][std::max(j, k)]);
    Vec3 axis{a[0], a[1], a[2]};
    return {axis / norm(axis), angle};
}

/// Symmetric apply: M v. Provided for symmetry with solve.
inline Vec3 apply(const Mat3& M, Vec3 v) { return M * v; }

/// Solve M x = v for symmetric positive-definite M via 3x3 Cholesky.
/// Throws on a non-positive pivot (M singular or not positive-definite).
inline Vec3 solve(const Mat3& M, Vec3 v) {
    // M = L L^T; forward then backward substitution.
    const double l00s = M.m[0][0];
    if (l00s <= 0.0) throw std::invalid_argument("solve: matrix is not positive-definite");
    const double l00 = std::sqrt(l00s);
    const double l10 = M.m[1][0] / l00;
    const double l20 = M.m[2][0] / l00;
    const double l11s = M.m[1][1] - l10 * l10;
    if (l11s <= 0.0) throw std::invalid_argument("solve: matrix is not positive-definite");
    const double l11 = std::sqrt(l11s);
    const double l21 = (M.m[2][1] - l20 * l10) / l11;
    const double l22s = M.m[2][2] - l20 * l20 - l21 * l21;
    if (l22s <= 0.0) throw std::invalid_argument("solve: matrix is not positive-definite");
    const double l22 = std::sqrt(l22s);
    const double y0 = v.x / l00;
    const double y1 = (v.y - l10 * y0) / l11;
    const double y2 = (v.z - l20 * y0 - l21 * y1) / l22;
    const double x2 = y2 / l22;
    const double x1 = (y1 - l21 * x2) / l11;
    const double x0 = (y0 - l10 * x1 - l20 * x2) / l00;
    return {x0, x1, x2};
}

/// The pair of inertia tensors (I, K), symmetric positive-definite.
///
/// Symmetry must hold exactly as stored; positive-definiteness is checked at
/// construction via leading principal minors. All shipped fixtures are
/// diagonal (rotor axes along principal axes); general symmetric input is
/// accepted but the closed forms that move (I+K)^-1 K across inner products
/// assume the commuting (diagonal) family.
class InertiaModel {
public:
    InertiaModel(const Mat3& I, const Mat3& K) : I_(I), K_(K) {
        check_spd(I, "I");
        check_spd(K, "K");
        IK_ = I_ + K_;
    }

    static InertiaModel diagonal(Vec3 I_diag, Vec3 K_diag) {
        return {Mat3::diagonal(I_diag), Mat3::diagonal(K_diag)};
    }

    const Mat3& I() const { return I_; }
    const Mat3& K() const { return K_; }
    const Mat3& IK() const { return IK_; }   ///< I + K

    Vec3 apply_I(Vec3 v) const { return I_ * v; }
    Vec3 apply_K(Vec3 v) const { return K_ * v; }
    Vec3 apply_IK(Vec3 v) const { return IK_ * v; }
    Vec3 solve_I(Vec3 v) const { return solve(I_, v); }
    Vec3 solve_IK(Vec3 v) const { return solve(IK_, v); }

private:
    static void check_spd(const Mat3& M, const char* name) {
        if (!is_finite(M))
            throw std::invalid_argument(std::string("InertiaModel: ") + name + " has non-finite entries");
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (M.m[i][j] != M.m[j][i])
                    throw std::invalid_argument(std::string("InertiaModel: ") + name + " is not symmetric");
        // Leading principal minors, all strictly positive (Sylvester).
        const double m1 = M.m[0][0];
        const double m2 = M.m[0][0] * M.m[1][1] - M.m[0][1] * M.m[1][0];
        const double m3 = determinant(M);
        if (m1 <= 0.0 || m2 <= 0.0 || m3 <= 0.0)
            throw std::invalid_argument(std::string("InertiaModel: ") + name + " is not positive-definite");
    }

    Mat3 I_, K_, IK_;
};

}  // namespace gyrostat
