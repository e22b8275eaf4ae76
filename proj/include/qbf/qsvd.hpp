#pragma once

#include "qbf/qmatrix.hpp"

#include <vector>

namespace qbf {

enum class SvdMode { full, thin };

/// A = U·diag(singular_values)·Vᴴ with unitary-column U and V.
struct QsvdResult {
    QMatrix U;
    std::vector<double> singular_values; ///< min(M, N) values, nonincreasing, ≥ 0
    QMatrix V;
};

/// Quaternion SVD computed from the complex SVD of the equivalent complex
/// matrix.
///
/// Each quaternion singular value appears twice in the complex spectrum; the
/// odd-indexed copies are kept, and a mismatch with the even-indexed partner
/// beyond 1e-8·σ₁ throws NumericalError. The quaternion singular vectors are
/// read from the odd-indexed complex columns (U = col_odd(U₁) − col_odd(U₂)* j).
/// When singular values repeat, the complex solver may return a basis of the
/// repeated subspace whose odd columns are not quaternion-orthogonal, so the
/// columns are taken greedily and orthogonalized against both structured
/// images of the columns already chosen. Right vectors are derived from the
/// left ones (v = Aᴴu/σ) so the pairing holds even inside a repeated cluster.
///
/// Thin mode returns U: M×K and V: N×K with K = min(M, N); full mode returns
/// square U and V. The zero matrix yields zero singular values and identity
/// factors.
QsvdResult qsvd(const QMatrix& a, SvdMode mode = SvdMode::thin);

/// Singular values only (nonincreasing, min(M, N) entries).
std::vector<double> singular_values(const QMatrix& a);

/// Singular value thresholding P·diag(max(σ − δ, 0))·Qᴴ, the proximal map of
/// δ‖·‖_*. Throws std::invalid_argument for negative delta.
QMatrix qsvt(const QMatrix& m, double delta);

/// Number of singular values above tol·σ₁ (0 for the zero matrix).
Index quaternion_rank(const QMatrix& a, double tol = 1e-10);

struct FactorPair {
    QMatrix U;
    QMatrix V;
};

/// Width-d factors with U·Vᴴ = A built from the QSVD, each carrying D^(1/2).
/// Throws InfeasibleError when d < rank(A).
FactorPair low_rank_factorize(const QMatrix& a, Index d);

/// Width-d factors U = Â·D^(u_exponent), V = B̂·D^(1 − u_exponent), zero-padded
/// past the numerical rank. Shared by low_rank_factorize and the optimal-factor
/// constructions.
FactorPair split_factors(const QMatrix& a, Index d, double u_exponent);

} // namespace qbf
