#pragma once

#include <cmath>

namespace spinchaos {

/// Plain 3-vector used for classical spins and local fields.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }

    friend constexpr double dot(const Vec3& a, const Vec3& b) {
        return a.x * b.x + a.y * b.y + a.z * b.z;
    }
    friend constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double squared_norm() const { return x * x + y * y + z * z; }

    Vec3 normalized() const {
        const double n = norm();
        return {x / n, y / n, z / n};
    }
    void normalize() {
        const double inv = 1.0 / norm();
        x *= inv; y *= inv; z *= inv;
    }
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

} // namespace spinchaos
