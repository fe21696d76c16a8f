#pragma once

// Double-precision quaternions and 3-vectors used on the rendering side.

#include <array>
#include <cmath>
#include <ostream>

namespace fourdlo {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
    friend Vec3 operator*(double s, Vec3 a) { return a * s; }
    friend Vec3 operator/(Vec3 a, double s) { return {a.x / s, a.y / s, a.z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
    friend std::ostream& operator<<(std::ostream& os, Vec3 v) {
        return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
    }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(Vec3 a) { return a / norm(a); }

/// x i + y j + z k + w 1 in doubles.
struct Quat4 {
    double x = 0, y = 0, z = 0, w = 1;

    static constexpr Quat4 identity() { return {0, 0, 0, 1}; }

    std::array<double, 4> as_array() const { return {x, y, z, w}; }
    Vec3 im() const { return {x, y, z}; }

    friend Quat4 operator*(Quat4 p, Quat4 q) {
        return {
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        };
    }
    friend Quat4 operator+(Quat4 p, Quat4 q) { return {p.x + q.x, p.y + q.y, p.z + q.z, p.w + q.w}; }
    friend Quat4 operator-(Quat4 p, Quat4 q) { return {p.x - q.x, p.y - q.y, p.z - q.z, p.w - q.w}; }
    friend Quat4 operator*(Quat4 p, double s) { return {p.x * s, p.y * s, p.z * s, p.w * s}; }
    friend Quat4 operator*(double s, Quat4 p) { return p * s; }
    Quat4 operator-() const { return {-x, -y, -z, -w}; }
    friend bool operator==(const Quat4&, const Quat4&) = default;

    Quat4 conj() const { return {-x, -y, -z, w}; }
    friend std::ostream& operator<<(std::ostream& os, Quat4 q) {
        return os << "(" << q.x << ", " << q.y << ", " << q.z << ", " << q.w << ")";
    }
};

inline double dot(Quat4 p, Quat4 q) { return p.x * q.x + p.y * q.y + p.z * q.z + p.w * q.w; }
inline double norm(Quat4 p) { return std::sqrt(dot(p, p)); }
inline Quat4 normalized(Quat4 p) { return p * (1.0 / norm(p)); }
inline double max_abs_diff(Quat4 p, Quat4 q) {
    return std::fmax(std::fmax(std::fabs(p.x - q.x), std::fabs(p.y - q.y)),
                     std::fmax(std::fabs(p.z - q.z), std::fabs(p.w - q.w)));
}

/// Spherical interpolation along the minor great-circle arc from p to q (unit inputs, p != -q).
inline Quat4 slerp(Quat4 p, Quat4 q, double s) {
    const double c = std::fmax(-1.0, std::fmin(1.0, dot(p, q)));
    const double omega = std::acos(c);
    if (omega < 1e-15) return p;
    const double so = std::sin(omega);
    return p * (std::sin((1 - s) * omega) / so) + q * (std::sin(s * omega) / so);
}

}  // namespace fourdlo
