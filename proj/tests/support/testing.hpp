#pragma once

// Seeded generators and naive reference implementations used as oracles.

#include "qbf/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace qbf::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double normal() { return normal_(rng_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    Index index(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }

    Quaternion quaternion() {
        const double a = normal();
        const double b = normal();
        const double c = normal();
        const double d = normal();
        return {a, b, c, d};
    }

    QMatrix qmatrix(Index rows, Index cols) {
        QMatrix out(rows, cols);
        for (auto& q : out.entries()) {
            q = quaternion();
        }
        return out;
    }

    /// Product of Gaussian factors: rank min(rank, rows, cols) almost surely.
    QMatrix low_rank(Index rows, Index cols, Index rank);

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Hamilton product written out term by term.
inline Quaternion hamilton(const Quaternion& p, const Quaternion& q) {
    return {p.q0 * q.q0 - p.q1 * q.q1 - p.q2 * q.q2 - p.q3 * q.q3,
            p.q0 * q.q1 + p.q1 * q.q0 + p.q2 * q.q3 - p.q3 * q.q2,
            p.q0 * q.q2 - p.q1 * q.q3 + p.q2 * q.q0 + p.q3 * q.q1,
            p.q0 * q.q3 + p.q1 * q.q2 - p.q2 * q.q1 + p.q3 * q.q0};
}

/// Triple-loop quaternion product.
inline QMatrix naive_matmul(const QMatrix& a, const QMatrix& b) {
    QMatrix out(a.rows(), b.cols());
    for (Index r = 0; r < a.rows(); ++r) {
        for (Index c = 0; c < b.cols(); ++c) {
            Quaternion acc;
            for (Index k = 0; k < a.cols(); ++k) {
                acc += hamilton(a(r, k), b(k, c));
            }
            out(r, c) = acc;
        }
    }
    return out;
}

inline QMatrix naive_adjoint(const QMatrix& a) {
    QMatrix out(a.cols(), a.rows());
    for (Index r = 0; r < a.rows(); ++r) {
        for (Index c = 0; c < a.cols(); ++c) {
            const Quaternion& q = a(r, c);
            out(c, r) = {q.q0, -q.q1, -q.q2, -q.q3};
        }
    }
    return out;
}

inline double naive_fro(const QMatrix& a) {
    double s = 0.0;
    for (const auto& q : a.entries()) {
        s += q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3;
    }
    return std::sqrt(s);
}

inline double max_abs_diff(const QMatrix& a, const QMatrix& b) {
    double m = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        m = std::max({m, std::abs(ea[i].q0 - eb[i].q0), std::abs(ea[i].q1 - eb[i].q1),
                      std::abs(ea[i].q2 - eb[i].q2), std::abs(ea[i].q3 - eb[i].q3)});
    }
    return m;
}

inline QMatrix Gen::low_rank(Index rows, Index cols, Index rank) {
    return naive_matmul(qmatrix(rows, rank), naive_adjoint(qmatrix(cols, rank)));
}

} // namespace qbf::testing
