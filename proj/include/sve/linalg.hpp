#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace sve {

/// Fixed-size vector and matrix types for the three-equation system.
/// Everything is inline and value-semantic; no heap traffic in hot loops.
struct Vec3 {
    std::array<double, 3> v{0.0, 0.0, 0.0};

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
};

struct Mat3 {
    // row-major
    std::array<double, 9> m{};

    double& operator()(std::size_t i, std::size_t j) { return m[3 * i + j]; }
    double operator()(std::size_t i, std::size_t j) const { return m[3 * i + j]; }

    static Mat3 identity() {
        Mat3 a;
        a(0, 0) = a(1, 1) = a(2, 2) = 1.0;
        return a;
    }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {{{a[0] + b[0], a[1] + b[1], a[2] + b[2]}}};
}

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {{{a[0] - b[0], a[1] - b[1], a[2] - b[2]}}};
}

inline Vec3 operator*(double s, const Vec3& a) {
    return {{{s * a[0], s * a[1], s * a[2]}}};
}

inline Vec3 operator-(const Vec3& a) { return {{{-a[0], -a[1], -a[2]}}}; }

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double max_abs(const Vec3& a) {
    return std::max(std::abs(a[0]), std::max(std::abs(a[1]), std::abs(a[2])));
}

inline Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 c;
    for (std::size_t i = 0; i < 9; ++i) c.m[i] = a.m[i] + b.m[i];
    return c;
}

inline Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 c;
    for (std::size_t i = 0; i < 9; ++i) c.m[i] = a.m[i] - b.m[i];
    return c;
}

inline Mat3 operator*(double s, const Mat3& a) {
    Mat3 c;
    for (std::size_t i = 0; i < 9; ++i) c.m[i] = s * a.m[i];
    return c;
}

inline Vec3 operator*(const Mat3& a, const Vec3& x) {
    Vec3 y;
    for (std::size_t i = 0; i < 3; ++i)
        y[i] = a(i, 0) * x[0] + a(i, 1) * x[1] + a(i, 2) * x[2];
    return y;
}

inline Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 c;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    return c;
}

inline Mat3 transpose(const Mat3& a) {
    Mat3 t;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) t(i, j) = a(j, i);
    return t;
}

inline double max_abs(const Mat3& a) {
    double r = 0.0;
    for (double x : a.m) r = std::max(r, std::abs(x));
    return r;
}

/// Largest absolute deviation from symmetry, max_ij |A_ij - A_ji|.
inline double asymmetry(const Mat3& a) {
    double r = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            r = std::max(r, std::abs(a(i, j) - a(j, i)));
    return r;
}

inline double det(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

/// Inverse by adjugate; intended for well-conditioned 3x3 systems in tests
/// and diagnostics, not for the hot path.
inline Mat3 inverse(const Mat3& a) {
    const double d = det(a);
    Mat3 inv;
    inv(0, 0) = (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) / d;
    inv(0, 1) = (a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2)) / d;
    inv(0, 2) = (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1)) / d;
    inv(1, 0) = (a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2)) / d;
    inv(1, 1) = (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) / d;
    inv(1, 2) = (a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2)) / d;
    inv(2, 0) = (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)) / d;
    inv(2, 1) = (a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1)) / d;
    inv(2, 2) = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) / d;
    return inv;
}

}  // namespace sve
