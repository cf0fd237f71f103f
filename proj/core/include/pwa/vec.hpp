#pragma once

#include <cmath>

namespace pwa {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double k) const { return {k * x, k * y}; }
    constexpr Vec2 operator/(double k) const { return {x / k, y / k}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
};

constexpr Vec2 operator*(double k, Vec2 v) { return {k * v.x, k * v.y}; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

/// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    constexpr Vec2 operator*(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

    constexpr Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    constexpr double det() const { return a * d - b * c; }

    constexpr Mat2 inverse() const {
        const double dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    static constexpr Mat2 identity() { return {}; }
};

inline Mat2 rotation(double angle) {
    const double ca = std::cos(angle), sa = std::sin(angle);
    return {ca, -sa, sa, ca};
}

/// Affine map p -> m*p + t.
struct Affine {
    Mat2 m;
    Vec2 t;

    // The summation order makes the shear pieces fix their square side to the
    // last bit: contributions that cancel algebraically are grouped first.
    Vec2 operator()(Vec2 p) const {
        return {(m.b * p.y + t.x) + m.a * p.x,
                (m.c * p.x + t.y) + m.d * p.y};
    }

    /// Composition: (*this) after o.
    Affine operator*(const Affine& o) const { return {m * o.m, m * o.t + t}; }

    Affine inverse() const {
        const Mat2 mi = m.inverse();
        return {mi, -(mi * t)};
    }

    static Affine identity() { return {Mat2::identity(), {0.0, 0.0}}; }
};

inline double max_abs_entry(const Mat2& m) {
    return std::max(std::max(std::fabs(m.a), std::fabs(m.b)),
                    std::max(std::fabs(m.c), std::fabs(m.d)));
}

}  // namespace pwa
