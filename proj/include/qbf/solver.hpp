#pragma once

#include "qbf/mask.hpp"
#include "qbf/norms.hpp"
#include "qbf/qmatrix.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace qbf {

/// ADMM hyperparameters shared by the three completion models.
struct SolverConfig {
    /// Regularization weight; unset means 0.05·sqrt(max(M, N)).
    std::optional<double> lambda;
    double mu0 = 1e-3;
    double mu_max = 1e20;
    double beta = 1.03;
    /// Initial (over)estimate of the rank, at most min(M, N).
    Index d0 = 40;
    double tol = 1e-4;
    int max_iters = 500;
    /// Rank is cut once the largest singular-value drop exceeds this many
    /// times the mean of the other drops.
    double rank_drop_threshold = 20.0;
    std::uint64_t seed = 0;

    /// Defaults for a variant: μ0 = 1e-2 for QDNN, 1e-3 otherwise.
    static SolverConfig defaults_for(NormVariant variant);

    double lambda_for(Index rows, Index cols) const;
    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;

    friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

/// Iterates of one solve. Multipliers are named by the constraint they price:
///
///   variant | coupling (X = UVᴴ) | mult_u (U = A_U) | mult_v (V = A_V)
///   QDFN    | F                  | unused           | unused
///   QDNN    | F3                 | F1               | F2
///   QFNN    | F2                 | unused           | F1
struct SolverState {
    NormVariant variant = NormVariant::qdfn;
    QMatrix U;        ///< M×d
    QMatrix V;        ///< N×d
    QMatrix X;        ///< M×N
    QMatrix aux_u;    ///< A_U, M×d (QDNN)
    QMatrix aux_v;    ///< A_V, N×d (QDNN, QFNN)
    QMatrix coupling; ///< M×N
    QMatrix mult_u;   ///< M×d (QDNN)
    QMatrix mult_v;   ///< N×d (QDNN, QFNN)
    /// U·Vᴴ for the current factors; refreshed by update_x and truncate_factors.
    QMatrix product;
    double mu = 0.0;
    Index d = 0;
    int tau = 0;
    bool rank_adjusted = false;

    bool uses_aux_u() const { return variant == NormVariant::qdnn; }
    bool uses_aux_v() const { return variant != NormVariant::qdfn; }
};

/// X⁰ = T, zero multipliers, μ = μ0, d = d0, A_U⁰ and A_V⁰ the zero-padded
/// identities, V⁰ seeded standard Gaussian (all four components) over sqrt(d),
/// U⁰ = 0 until the first factor update.
SolverState initial_state(const QMatrix& observed, NormVariant variant, const SolverConfig& cfg);

/// The update steps read λ through cfg.lambda_for(M, N) with M×N the shape of X.

/// U ← C·V(VᴴV + (λ/μ)I)⁻¹, then V ← Cᴴ·U(UᴴU + (λ/μ)I)⁻¹ with C = X + F/μ.
void qdfn_update_uv(SolverState& s, const SolverConfig& cfg);
/// U ← (A_U − F1/μ + (X + F3/μ)V)(I + VᴴV)⁻¹, then
/// V ← (A_V − F2/μ + (X + F3/μ)ᴴU)(I + UᴴU)⁻¹.
void qdnn_update_uv(SolverState& s, const SolverConfig& cfg);
/// A_U ← D_{λ/(2μ)}(U + F1/μ), A_V ← D_{λ/(2μ)}(V + F2/μ).
void qdnn_update_aux(SolverState& s, const SolverConfig& cfg);
/// U ← ((μX + F2)V)((2λ/3)I + μVᴴV)⁻¹,
/// V ← (A_V − F1/μ + (X + F2/μ)ᴴU)(I + UᴴU)⁻¹,
/// A_V ← D_{2λ/(3μ)}(V + F1/μ).
void qfnn_update_all(SolverState& s, const SolverConfig& cfg);

/// X ← P_Ωᶜ(UVᴴ − F/μ) + P_Ω((μUVᴴ − F + T)/(1 + μ)), F the coupling multiplier.
void update_x(SolverState& s, const QMatrix& observed, const ObservationMask& mask);

/// Each multiplier gains μ times its constraint residual, then μ ← min(βμ, μ_max).
/// Reads the cached product, so it must follow update_x.
void update_multipliers_and_mu(SolverState& s, const SolverConfig& cfg);

struct RankEstimate {
    Index new_d = 0;
    bool triggered = false;
    double delta = 0.0;
    Index drop_index = 0; ///< 1-based p, position of the largest quotient
};

/// Rank-drop rule on the nonincreasing values σ₁..σ_d: quotients σ_m/σ_{m+1}
/// (+∞ where σ_{m+1} = 0), p the first position of the largest quotient, and
/// δ = (d − 1)·σ̂_p / Σ_{m≠p} σ̂_m. Triggered iff δ > threshold, then new_d = p.
RankEstimate estimate_rank_from_values(std::span<const double> sigma, double threshold);

/// The rank-drop rule applied to the singular values of UᴴU. Requires d ≥ 2.
RankEstimate estimate_rank(const QMatrix& u, Index d, double threshold);

/// Shrinks every width-d iterate to new_d columns. The factors become the
/// balanced best rank-new_d factorization of the current UVᴴ; A_U, F1 (and
/// A_V, F2) are carried along by the least-squares change of frame that maps
/// the old U (V) onto the new one. M×N iterates are untouched.
void truncate_factors(SolverState& s, Index new_d);

/// ‖UVᴴ − X‖_F / ‖T‖_F. Throws std::invalid_argument when T is zero.
double relative_error(const QMatrix& u, const QMatrix& v, const QMatrix& x, const QMatrix& observed);

/// The variant's augmented Lagrangian at the current iterates.
double augmented_lagrangian(const SolverState& s, const QMatrix& observed,
                            const ObservationMask& mask, const SolverConfig& cfg);

struct IterationInfo {
    int iteration = 0;
    double relative_error = 0.0;
    Index rank = 0;
    double mu = 0.0;
};

using IterationCallback = std::function<void(const IterationInfo&)>;

struct CompletionResult {
    QMatrix X_hat;
    QMatrix U;
    QMatrix V;
    int iterations = 0;
    std::vector<double> re_trace;
    Index final_rank = 0;
    bool converged = false;
    double elapsed_seconds = 0.0;
};

/// Runs the variant's ADMM iteration until RE ≤ tol or max_iters.
///
/// The observations are projected onto Ω on entry. An all-zero projection
/// (no observed energy) returns the zero matrix without iterating. Throws
/// std::invalid_argument for a bad config and DivergedError when an iterate
/// becomes non-finite.
CompletionResult solve(const QMatrix& observed, const ObservationMask& mask, const SolverConfig& cfg,
                       NormVariant variant, const IterationCallback& on_iteration = {});

} // namespace qbf
