#pragma once

#include "qbf/qmatrix.hpp"
#include "qbf/qsvd.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace qbf {

/// The three bilinear-factor surrogates of the quaternion Schatten-p norm.
enum class NormVariant {
    qdfn, ///< ½‖U‖_F² + ½‖V‖_F², equals the Schatten-1 (nuclear) norm
    qdnn, ///< ¼(‖U‖_* + ‖V‖_*)², equals the Schatten-1/2 quasi-norm
    qfnn, ///< ((‖U‖_F² + 2‖V‖_*)/3)^(3/2), equals the Schatten-2/3 quasi-norm
};

inline constexpr std::array<NormVariant, 3> kAllVariants{NormVariant::qdfn, NormVariant::qdnn,
                                                         NormVariant::qfnn};

std::string_view to_string(NormVariant v);
std::optional<NormVariant> parse_variant(std::string_view name);

/// Schatten exponent p that the variant's minimum over factorizations equals.
double schatten_exponent(NormVariant v);

/// (Σ σ_k^p)^(1/p) over the quaternion singular values above 1e-10·σ₁, the
/// same cut as quaternion_rank.
///
/// For p < 1 this is only a quasi-norm: the triangle inequality can fail.
double q_schatten_p(const QMatrix& a, double p);

/// Quaternion nuclear norm ‖A‖_*.
double nuclear_norm(const QMatrix& a);

/// The variant's factor objective evaluated at (U, V); U is M×d, V is N×d.
double factor_objective(const QMatrix& u, const QMatrix& v, NormVariant variant);

/// Factors attaining the minimum of factor_objective over U·Vᴴ = A:
/// D^(1/2) on both sides for QDFN/QDNN, D^(1/3) and D^(2/3) for QFNN.
FactorPair optimal_factors(const QMatrix& a, Index d, NormVariant variant);

struct ProductBound {
    double lhs; ///< Σ_{k≤K} σ_k^p(U·Vᴴ)
    double rhs; ///< Σ_{k≤K} σ_k^p(U)·σ_k^p(V)
};

/// Both sides of the singular-value product inequality, K = min(M, N, d).
ProductBound sv_product_bound(const QMatrix& u, const QMatrix& v, double p);

} // namespace qbf
