#pragma once

#include <cmath>
#include <ostream>

namespace qbf {

/// Real quaternion q0 + q1 i + q2 j + q3 k.
///
/// Multiplication is the Hamilton product and does not commute.
struct Quaternion {
    double q0 = 0.0;
    double q1 = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w, double x, double y, double z) : q0(w), q1(x), q2(y), q3(z) {}
    constexpr explicit Quaternion(double real) : q0(real) {}

    static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

    constexpr double real() const { return q0; }
    constexpr Quaternion imag() const { return {0.0, q1, q2, q3}; }
    constexpr bool is_pure() const { return q0 == 0.0; }

    constexpr Quaternion conj() const { return {q0, -q1, -q2, -q3}; }
    constexpr double squared_norm() const { return q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3; }
    double norm() const { return std::sqrt(squared_norm()); }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        q0 += o.q0;
        q1 += o.q1;
        q2 += o.q2;
        q3 += o.q3;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        q0 -= o.q0;
        q1 -= o.q1;
        q2 -= o.q2;
        q3 -= o.q3;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        q0 *= s;
        q1 *= s;
        q2 *= s;
        q3 *= s;
        return *this;
    }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.q0, -a.q1, -a.q2, -a.q3}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }

/// Hamilton product.
constexpr Quaternion qmul(const Quaternion& p, const Quaternion& q) {
    return {
        p.q0 * q.q0 - p.q1 * q.q1 - p.q2 * q.q2 - p.q3 * q.q3,
        p.q0 * q.q1 + p.q1 * q.q0 + p.q2 * q.q3 - p.q3 * q.q2,
        p.q0 * q.q2 - p.q1 * q.q3 + p.q2 * q.q0 + p.q3 * q.q1,
        p.q0 * q.q3 + p.q1 * q.q2 - p.q2 * q.q1 + p.q3 * q.q0,
    };
}

constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) { return qmul(p, q); }

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.q0 << ", " << q.q1 << "i, " << q.q2 << "j, " << q.q3 << "k)";
}

} // namespace qbf
