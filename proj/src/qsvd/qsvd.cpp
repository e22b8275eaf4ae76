#include "qbf/qsvd.hpp"

#include "qbf/error.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <stdexcept>

namespace qbf {

namespace {

// Singular values closer than this (relative to σ₁) are treated as one cluster.
constexpr double kClusterTol = 1e-11;
// Duplicate complex singular values must agree within this (relative to σ₁).
constexpr double kPairingTol = 1e-8;
// Below this (relative to σ₁) right vectors are completed instead of derived.
constexpr double kDeriveCut = 1e-12;

// A complex column x = [x1; x2] of length 2n stands for the quaternion vector
// u = x1 − conj(x2) j; its partner column [−conj(x2); conj(x1)] spans the rest
// of u's image in the adjoint.
Eigen::VectorXcd partner(const Eigen::VectorXcd& x) {
    const Index n = x.size() / 2;
    Eigen::VectorXcd out(x.size());
    out.head(n) = -x.tail(n).conjugate();
    out.tail(n) = x.head(n).conjugate();
    return out;
}

// Orthonormal complex columns closed under partner(); grows two columns per
// accepted quaternion direction.
class StructuredBasis {
public:
    explicit StructuredBasis(Index length) : length_(length), cols_(length, 0) {}

    Index count() const { return count_; }
    const ComplexMatrix& columns() const { return cols_; }

    Eigen::VectorXcd residual(const Eigen::VectorXcd& x) const {
        if (used_ == 0) {
            return x;
        }
        const auto basis = cols_.leftCols(used_);
        Eigen::VectorXcd r = x - basis * (basis.adjoint() * x);
        r -= basis * (basis.adjoint() * r);
        return r;
    }

    void add(Eigen::VectorXcd direction) {
        direction.normalize();
        Eigen::VectorXcd second = residual(partner(direction));
        second.normalize();
        if (used_ + 2 > cols_.cols()) {
            cols_.conservativeResize(Eigen::NoChange, std::max<Index>(2 * used_, used_ + 2));
        }
        cols_.col(used_) = direction;
        cols_.col(used_ + 1) = second;
        used_ += 2;
        ++count_;
    }

    /// φ-columns of the accepted directions, in acceptance order.
    ComplexMatrix primary() const {
        ComplexMatrix out(length_, count_);
        for (Index k = 0; k < count_; ++k) {
            out.col(k) = cols_.col(2 * k);
        }
        return out;
    }

private:
    Index length_;
    ComplexMatrix cols_;
    Index used_ = 0;
    Index count_ = 0;
};

// Repeatedly accepts the candidate column with the largest residual until
// `target` directions are held or the candidates are exhausted.
void pivoted_fill(StructuredBasis& basis, const ComplexMatrix& candidates, Index target) {
    std::vector<bool> taken(static_cast<std::size_t>(candidates.cols()), false);
    while (basis.count() < target) {
        double best = 0.0;
        Index best_col = -1;
        Eigen::VectorXcd best_res;
        for (Index c = 0; c < candidates.cols(); ++c) {
            if (taken[static_cast<std::size_t>(c)]) {
                continue;
            }
            Eigen::VectorXcd r = basis.residual(candidates.col(c));
            const double nrm = r.norm();
            if (nrm > best) {
                best = nrm;
                best_col = c;
                best_res = std::move(r);
            }
        }
        // Candidates are unit vectors; a residual this small carries no new direction.
        if (best_col < 0 || best < 1e-6) {
            return;
        }
        taken[static_cast<std::size_t>(best_col)] = true;
        basis.add(std::move(best_res));
    }
}

void fill_from_canonical(StructuredBasis& basis, Index length, Index target) {
    if (basis.count() < target) {
        pivoted_fill(basis, ComplexMatrix::Identity(length, length), target);
    }
    if (basis.count() < target) {
        throw NumericalError("qsvd: could not complete an orthonormal quaternion basis");
    }
}

QMatrix to_quaternion_columns(const ComplexMatrix& phi) {
    const Index n = phi.rows() / 2;
    return from_cayley_dickson(phi.topRows(n), -phi.bottomRows(n).conjugate());
}

std::vector<double> paired_values(const Eigen::VectorXd& complex_values, Index count) {
    std::vector<double> out(static_cast<std::size_t>(count));
    const double top = complex_values.size() > 0 ? complex_values(0) : 0.0;
    for (Index k = 0; k < count; ++k) {
        const double odd = complex_values(2 * k);
        const double even = complex_values(2 * k + 1);
        if (std::abs(odd - even) > kPairingTol * top) {
            std::ostringstream msg;
            msg << "qsvd: complex singular values are not paired at index " << k << " (" << odd
                << " vs " << even << ")";
            throw NumericalError(msg.str());
        }
        out[static_cast<std::size_t>(k)] = std::max(odd, 0.0);
    }
    return out;
}

// Complex SVD through LAPACK divide and conquer, with the QR-iteration driver
// as a fallback when it fails to converge.
struct ComplexSvd {
    Eigen::VectorXd values;
    ComplexMatrix u;
    ComplexMatrix v;
};

ComplexSvd complex_svd(ComplexMatrix a, char job) {
    const auto m = static_cast<lapack_int>(a.rows());
    const auto n = static_cast<lapack_int>(a.cols());
    const lapack_int k = std::min(m, n);
    const lapack_int ucols = job == 'A' ? m : (job == 'S' ? k : 1);
    const lapack_int vrows = job == 'A' ? n : (job == 'S' ? k : 1);
    ComplexSvd out{Eigen::VectorXd(k), ComplexMatrix(m, ucols), ComplexMatrix(vrows, n)};
    auto* ap = reinterpret_cast<lapack_complex_double*>(a.data());
    auto* up = reinterpret_cast<lapack_complex_double*>(out.u.data());
    auto* vp = reinterpret_cast<lapack_complex_double*>(out.v.data());
    const ComplexMatrix backup = a;
    lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, job, m, n, ap, m, out.values.data(), up, m, vp, vrows);
    if (info > 0) {
        a = backup;
        ap = reinterpret_cast<lapack_complex_double*>(a.data());
        std::vector<double> superb(static_cast<std::size_t>(std::max<lapack_int>(k, 1)));
        info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, job, job, m, n, ap, m, out.values.data(), up, m, vp, vrows,
                              superb.data());
    }
    if (info != 0) {
        throw NumericalError("qsvd: complex SVD failed (LAPACK info " + std::to_string(info) + ")");
    }
    out.v.adjointInPlace();
    return out;
}

} // namespace

QsvdResult qsvd(const QMatrix& a, SvdMode mode) {
    const Index m = a.rows();
    const Index n = a.cols();
    const Index k = std::min(m, n);
    const Index left_count = mode == SvdMode::thin ? k : m;
    const Index right_count = mode == SvdMode::thin ? k : n;

    QsvdResult out;
    if (k == 0) {
        out.U = QMatrix::identity(m, left_count);
        out.V = QMatrix::identity(n, right_count);
        return out;
    }

    const ComplexMatrix qc = complex_adjoint(a);
    const ComplexSvd svd = complex_svd(qc, mode == SvdMode::thin ? 'S' : 'A');
    const Eigen::VectorXd& s = svd.values;
    out.singular_values = paired_values(s, k);
    const double top = s(0);

    // Left vectors: cluster by cluster, so each accepted direction stays an
    // exact singular direction of its cluster's value.
    const ComplexMatrix& cu = svd.u;
    StructuredBasis left(2 * m);
    Index start = 0;
    const Index ncomplex = s.size();
    while (start < ncomplex && left.count() < k) {
        Index stop = start + 1;
        while (stop < ncomplex && s(stop - 1) - s(stop) <= kClusterTol * top) {
            ++stop;
        }
        const Index target = std::min(k, left.count() + (stop - start) / 2);
        pivoted_fill(left, cu.middleCols(start, stop - start), target);
        start = stop;
    }
    if (left.count() < left_count) {
        pivoted_fill(left, cu, left_count);
    }
    fill_from_canonical(left, 2 * m, left_count);
    const ComplexMatrix w = left.primary();

    // Right vectors: v = Qcᴴ·u/σ where σ is not negligible, then completion.
    StructuredBasis right(2 * n);
    for (Index j = 0; j < k; ++j) {
        const double sigma = out.singular_values[static_cast<std::size_t>(j)];
        if (!(sigma > kDeriveCut * top)) {
            break;
        }
        Eigen::VectorXcd z = qc.adjoint() * w.col(j) / sigma;
        right.add(right.residual(z));
    }
    if (right.count() < right_count) {
        pivoted_fill(right, svd.v, right_count);
    }
    fill_from_canonical(right, 2 * n, right_count);

    out.U = to_quaternion_columns(w);
    out.V = to_quaternion_columns(right.primary());
    return out;
}

std::vector<double> singular_values(const QMatrix& a) {
    const Index k = std::min(a.rows(), a.cols());
    if (k == 0) {
        return {};
    }
    return paired_values(complex_svd(complex_adjoint(a), 'N').values, k);
}

QMatrix qsvt(const QMatrix& m, double delta) {
    if (!(delta >= 0.0)) {
        throw std::invalid_argument("qsvt: threshold must be nonnegative");
    }
    const QsvdResult svd = qsvd(m, SvdMode::thin);
    Index keep = 0;
    std::vector<double> shrunk;
    for (double sigma : svd.singular_values) {
        if (sigma > delta) {
            shrunk.push_back(sigma - delta);
            ++keep;
        }
    }
    if (keep == 0) {
        return QMatrix(m.rows(), m.cols());
    }
    return matmul(scale_columns(svd.U.left_columns(keep), shrunk),
                  conj_transpose(svd.V.left_columns(keep)));
}

Index quaternion_rank(const QMatrix& a, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("quaternion_rank: tolerance must be positive");
    }
    const std::vector<double> s = singular_values(a);
    if (s.empty() || s.front() == 0.0) {
        return 0;
    }
    const double cut = tol * s.front();
    return static_cast<Index>(std::count_if(s.begin(), s.end(), [cut](double v) { return v > cut; }));
}

FactorPair split_factors(const QMatrix& a, Index d, double u_exponent) {
    if (d < 0) {
        throw std::invalid_argument("split_factors: negative width");
    }
    const Index rank = quaternion_rank(a);
    if (d < rank) {
        std::ostringstream msg;
        msg << "factor width " << d << " is below the matrix rank " << rank;
        throw InfeasibleError(msg.str());
    }
    const QsvdResult svd = qsvd(a, SvdMode::thin);
    const Index k = rank;
    std::vector<double> su(static_cast<std::size_t>(k));
    std::vector<double> sv(static_cast<std::size_t>(k));
    for (Index j = 0; j < k; ++j) {
        const double sigma = svd.singular_values[static_cast<std::size_t>(j)];
        su[static_cast<std::size_t>(j)] = sigma > 0.0 ? std::pow(sigma, u_exponent) : 0.0;
        sv[static_cast<std::size_t>(j)] = sigma > 0.0 ? std::pow(sigma, 1.0 - u_exponent) : 0.0;
    }
    const QMatrix uk = scale_columns(svd.U.left_columns(k), su);
    const QMatrix vk = scale_columns(svd.V.left_columns(k), sv);

    FactorPair out{QMatrix(a.rows(), d), QMatrix(a.cols(), d)};
    for (Index r = 0; r < a.rows(); ++r) {
        for (Index c = 0; c < k; ++c) {
            out.U(r, c) = uk(r, c);
        }
    }
    for (Index r = 0; r < a.cols(); ++r) {
        for (Index c = 0; c < k; ++c) {
            out.V(r, c) = vk(r, c);
        }
    }
    return out;
}

FactorPair low_rank_factorize(const QMatrix& a, Index d) { return split_factors(a, d, 0.5); }

} // namespace qbf
