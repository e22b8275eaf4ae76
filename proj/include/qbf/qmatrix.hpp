#pragma once

#include "qbf/quaternion.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace qbf {

using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;

/// Dense quaternion matrix, row-major with the four components of each entry
/// stored contiguously.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(Index rows, Index cols);

    static QMatrix zero(Index rows, Index cols) { return QMatrix(rows, cols); }
    /// Ones on the leading diagonal, zero elsewhere; rectangular shapes allowed.
    static QMatrix identity(Index rows, Index cols);
    static QMatrix identity(Index n) { return identity(n, n); }
    /// Real diagonal matrix.
    static QMatrix diagonal(std::span<const double> values);
    static QMatrix from_components(const Eigen::MatrixXd& q0, const Eigen::MatrixXd& q1,
                                   const Eigen::MatrixXd& q2, const Eigen::MatrixXd& q3);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    Index size() const { return rows_ * cols_; }
    bool empty() const { return size() == 0; }

    Quaternion& operator()(Index r, Index c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
    const Quaternion& operator()(Index r, Index c) const {
        return data_[static_cast<std::size_t>(r * cols_ + c)];
    }

    std::span<Quaternion> entries() { return data_; }
    std::span<const Quaternion> entries() const { return data_; }

    /// One real component (0..3) as a dense real matrix.
    Eigen::MatrixXd component(int which) const;

    /// Leading columns [0, count).
    QMatrix left_columns(Index count) const;
    bool all_finite() const;

    QMatrix& operator+=(const QMatrix& other);
    QMatrix& operator-=(const QMatrix& other);
    QMatrix& operator*=(double s);

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Quaternion> data_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a);
QMatrix operator*(QMatrix a, double s);
QMatrix operator*(double s, QMatrix a);
/// Entrywise q * A (left scalar multiplication).
QMatrix operator*(const Quaternion& q, QMatrix a);
/// Entrywise A * q (right scalar multiplication).
QMatrix operator*(QMatrix a, const Quaternion& q);
/// Quaternion matrix product; factor order is preserved.
QMatrix operator*(const QMatrix& a, const QMatrix& b);

QMatrix matmul(const QMatrix& a, const QMatrix& b);
QMatrix conj_transpose(const QMatrix& a);
/// A·diag(scales); scales.size() must equal A.cols().
QMatrix scale_columns(const QMatrix& a, std::span<const double> scales);
double squared_frobenius_norm(const QMatrix& a);
double frobenius_norm(const QMatrix& a);
Quaternion trace(const QMatrix& a);
/// Real part of tr(Aᴴ B), the real inner product used by the Lagrangians.
double real_inner(const QMatrix& a, const QMatrix& b);

/// Cayley–Dickson parts of A = Qa + Qb j with Qa = Q0 + Q1 i, Qb = Q2 + Q3 i.
struct CayleyDickson {
    ComplexMatrix a;
    ComplexMatrix b;
};

CayleyDickson cayley_dickson(const QMatrix& a);
QMatrix from_cayley_dickson(const ComplexMatrix& a, const ComplexMatrix& b);

/// 2M×2N equivalent complex matrix [[Qa, Qb], [-conj(Qb), conj(Qa)]].
ComplexMatrix complex_adjoint(const QMatrix& a);

/// Inverse of complex_adjoint. Throws StructureError if the four blocks
/// deviate from the adjoint layout by more than tol·max(1, ‖C‖_max).
QMatrix from_complex_adjoint(const ComplexMatrix& c, double tol = 1e-10);

/// Solves X·H = B for X, with H Hermitian positive definite.
///
/// Works on the Cholesky factor of the 2d×2d complex adjoint of H; no inverse
/// is formed. Throws NumericalError when H is not Hermitian within 1e-10 or
/// the factorization fails (the message carries a reciprocal condition
/// estimate).
QMatrix hermitian_solve(const QMatrix& h, const QMatrix& b);

} // namespace qbf
