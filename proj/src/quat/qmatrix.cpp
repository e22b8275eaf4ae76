#include "qbf/qmatrix.hpp"

#include "qbf/error.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qbf {

namespace {

void require_same_shape(const QMatrix& a, const QMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream msg;
        msg << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
            << b.cols();
        throw DimensionError(msg.str());
    }
}

} // namespace

QMatrix::QMatrix(Index rows, Index cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {
    if (rows < 0 || cols < 0) {
        throw DimensionError("QMatrix: negative dimension");
    }
}

QMatrix QMatrix::identity(Index rows, Index cols) {
    QMatrix out(rows, cols);
    for (Index i = 0; i < std::min(rows, cols); ++i) {
        out(i, i) = Quaternion::one();
    }
    return out;
}

QMatrix QMatrix::diagonal(std::span<const double> values) {
    const auto n = static_cast<Index>(values.size());
    QMatrix out(n, n);
    for (Index i = 0; i < n; ++i) {
        out(i, i) = Quaternion(values[static_cast<std::size_t>(i)]);
    }
    return out;
}

QMatrix QMatrix::from_components(const Eigen::MatrixXd& q0, const Eigen::MatrixXd& q1,
                                 const Eigen::MatrixXd& q2, const Eigen::MatrixXd& q3) {
    const Index m = q0.rows();
    const Index n = q0.cols();
    for (const auto* part : {&q1, &q2, &q3}) {
        if (part->rows() != m || part->cols() != n) {
            throw DimensionError("QMatrix::from_components: component shapes differ");
        }
    }
    QMatrix out(m, n);
    for (Index r = 0; r < m; ++r) {
        for (Index c = 0; c < n; ++c) {
            out(r, c) = {q0(r, c), q1(r, c), q2(r, c), q3(r, c)};
        }
    }
    return out;
}

Eigen::MatrixXd QMatrix::component(int which) const {
    Eigen::MatrixXd out(rows_, cols_);
    for (Index r = 0; r < rows_; ++r) {
        for (Index c = 0; c < cols_; ++c) {
            const Quaternion& q = (*this)(r, c);
            switch (which) {
            case 0: out(r, c) = q.q0; break;
            case 1: out(r, c) = q.q1; break;
            case 2: out(r, c) = q.q2; break;
            default: out(r, c) = q.q3; break;
            }
        }
    }
    return out;
}

QMatrix QMatrix::left_columns(Index count) const {
    if (count < 0 || count > cols_) {
        throw DimensionError("QMatrix::left_columns: count out of range");
    }
    QMatrix out(rows_, count);
    for (Index r = 0; r < rows_; ++r) {
        std::copy_n(data_.begin() + r * cols_, count, out.data_.begin() + r * count);
    }
    return out;
}

bool QMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const Quaternion& q) {
        return std::isfinite(q.q0) && std::isfinite(q.q1) && std::isfinite(q.q2) &&
               std::isfinite(q.q3);
    });
}

QMatrix& QMatrix::operator+=(const QMatrix& other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

QMatrix& QMatrix::operator*=(double s) {
    for (auto& q : data_) {
        q *= s;
    }
    return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator-(QMatrix a) { return a *= -1.0; }
QMatrix operator*(QMatrix a, double s) { return a *= s; }
QMatrix operator*(double s, QMatrix a) { return a *= s; }

QMatrix operator*(const Quaternion& q, QMatrix a) {
    for (auto& e : a.entries()) {
        e = qmul(q, e);
    }
    return a;
}

QMatrix operator*(QMatrix a, const Quaternion& q) {
    for (auto& e : a.entries()) {
        e = qmul(e, q);
    }
    return a;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) { return matmul(a, b); }

CayleyDickson cayley_dickson(const QMatrix& a) {
    CayleyDickson out{ComplexMatrix(a.rows(), a.cols()), ComplexMatrix(a.rows(), a.cols())};
    for (Index r = 0; r < a.rows(); ++r) {
        for (Index c = 0; c < a.cols(); ++c) {
            const Quaternion& q = a(r, c);
            out.a(r, c) = {q.q0, q.q1};
            out.b(r, c) = {q.q2, q.q3};
        }
    }
    return out;
}

QMatrix from_cayley_dickson(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("from_cayley_dickson: part shapes differ");
    }
    QMatrix out(a.rows(), a.cols());
    for (Index r = 0; r < a.rows(); ++r) {
        for (Index c = 0; c < a.cols(); ++c) {
            out(r, c) = {a(r, c).real(), a(r, c).imag(), b(r, c).real(), b(r, c).imag()};
        }
    }
    return out;
}

// (Aa + Ab j)(Ba + Bb j) = (Aa Ba - Ab conj(Bb)) + (Aa Bb + Ab conj(Ba)) j, using j z = conj(z) j.
QMatrix matmul(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows()) {
        std::ostringstream msg;
        msg << "matmul: inner dimensions differ (" << a.rows() << "x" << a.cols() << " times "
            << b.rows() << "x" << b.cols() << ")";
        throw DimensionError(msg.str());
    }
    if (a.cols() == 0) {
        return QMatrix(a.rows(), b.cols());
    }
    const CayleyDickson ca = cayley_dickson(a);
    const CayleyDickson cb = cayley_dickson(b);
    ComplexMatrix pa = ca.a * cb.a;
    pa.noalias() -= ca.b * cb.b.conjugate();
    ComplexMatrix pb = ca.a * cb.b;
    pb.noalias() += ca.b * cb.a.conjugate();
    return from_cayley_dickson(pa, pb);
}

QMatrix conj_transpose(const QMatrix& a) {
    QMatrix out(a.cols(), a.rows());
    for (Index r = 0; r < a.rows(); ++r) {
        for (Index c = 0; c < a.cols(); ++c) {
            out(c, r) = a(r, c).conj();
        }
    }
    return out;
}

QMatrix scale_columns(const QMatrix& a, std::span<const double> scales) {
    if (static_cast<Index>(scales.size()) != a.cols()) {
        throw DimensionError("scale_columns: one scale per column required");
    }
    QMatrix out = a;
    for (Index r = 0; r < a.rows(); ++r) {
        for (Index c = 0; c < a.cols(); ++c) {
            out(r, c) *= scales[static_cast<std::size_t>(c)];
        }
    }
    return out;
}

double squared_frobenius_norm(const QMatrix& a) {
    double sum = 0.0;
    for (const auto& q : a.entries()) {
        sum += q.squared_norm();
    }
    return sum;
}

double frobenius_norm(const QMatrix& a) { return std::sqrt(squared_frobenius_norm(a)); }

Quaternion trace(const QMatrix& a) {
    Quaternion t;
    for (Index i = 0; i < std::min(a.rows(), a.cols()); ++i) {
        t += a(i, i);
    }
    return t;
}

double real_inner(const QMatrix& a, const QMatrix& b) {
    require_same_shape(a, b, "real_inner");
    double sum = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        sum += ea[i].q0 * eb[i].q0 + ea[i].q1 * eb[i].q1 + ea[i].q2 * eb[i].q2 + ea[i].q3 * eb[i].q3;
    }
    return sum;
}

ComplexMatrix complex_adjoint(const QMatrix& a) {
    const Index m = a.rows();
    const Index n = a.cols();
    const CayleyDickson cd = cayley_dickson(a);
    ComplexMatrix out(2 * m, 2 * n);
    out.topLeftCorner(m, n) = cd.a;
    out.topRightCorner(m, n) = cd.b;
    out.bottomLeftCorner(m, n) = -cd.b.conjugate();
    out.bottomRightCorner(m, n) = cd.a.conjugate();
    return out;
}

QMatrix from_complex_adjoint(const ComplexMatrix& c, double tol) {
    if (c.rows() % 2 != 0 || c.cols() % 2 != 0) {
        throw StructureError("from_complex_adjoint: dimensions must be even");
    }
    const Index m = c.rows() / 2;
    const Index n = c.cols() / 2;
    const ComplexMatrix qa = c.topLeftCorner(m, n);
    const ComplexMatrix qb = c.topRightCorner(m, n);
    const double scale = std::max(1.0, c.size() > 0 ? c.cwiseAbs().maxCoeff() : 0.0);
    const double dev_b =
        m * n > 0 ? (c.bottomLeftCorner(m, n) + qb.conjugate()).cwiseAbs().maxCoeff() : 0.0;
    const double dev_a =
        m * n > 0 ? (c.bottomRightCorner(m, n) - qa.conjugate()).cwiseAbs().maxCoeff() : 0.0;
    if (dev_a > tol * scale || dev_b > tol * scale) {
        std::ostringstream msg;
        msg << "from_complex_adjoint: block layout violated (deviation " << std::max(dev_a, dev_b)
            << ")";
        throw StructureError(msg.str());
    }
    return from_cayley_dickson(qa, qb);
}

QMatrix hermitian_solve(const QMatrix& h, const QMatrix& b) {
    const Index d = h.rows();
    if (h.cols() != d) {
        throw DimensionError("hermitian_solve: H must be square");
    }
    if (b.cols() != d) {
        throw DimensionError("hermitian_solve: B must have as many columns as H");
    }
    if (d == 0) {
        return QMatrix(b.rows(), 0);
    }
    const double hnorm = frobenius_norm(h);
    if (frobenius_norm(h - conj_transpose(h)) > 1e-10 * std::max(hnorm, 1e-300)) {
        throw NumericalError("hermitian_solve: H is not Hermitian");
    }

    // X·H = B restricted to the first block row of the adjoints: [Xa Xb]·Hc = [Ba Bb].
    const ComplexMatrix hc = complex_adjoint(h);
    const CayleyDickson cb = cayley_dickson(b);
    ComplexMatrix rhs(2 * d, b.rows());
    rhs.topRows(d) = cb.a.adjoint();
    rhs.bottomRows(d) = cb.b.adjoint();

    const Eigen::LLT<ComplexMatrix> llt(hc);
    const double rcond = llt.info() == Eigen::Success ? llt.rcond() : 0.0;
    if (llt.info() != Eigen::Success || !(rcond > std::numeric_limits<double>::epsilon())) {
        std::ostringstream msg;
        msg << "hermitian_solve: H is singular or indefinite (reciprocal condition estimate "
            << rcond << ")";
        throw NumericalError(msg.str());
    }
    const ComplexMatrix sol = llt.solve(rhs).adjoint();
    return from_cayley_dickson(sol.leftCols(d), sol.rightCols(d));
}

} // namespace qbf
