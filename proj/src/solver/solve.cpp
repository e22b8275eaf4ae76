#include "qbf/solver.hpp"

#include "qbf/error.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qbf {

namespace {

void check_finite(const SolverState& s, int iteration) {
    const char* bad = nullptr;
    if (!s.U.all_finite()) {
        bad = "U";
    } else if (!s.V.all_finite()) {
        bad = "V";
    } else if (!s.X.all_finite()) {
        bad = "X";
    } else if (!s.coupling.all_finite() || !s.mult_u.all_finite() || !s.mult_v.all_finite()) {
        bad = "a multiplier";
    }
    if (bad != nullptr) {
        std::ostringstream msg;
        msg << "solver diverged: " << bad << " is not finite at iteration " << iteration
            << " (mu = " << s.mu << ")";
        throw DivergedError(iteration, msg.str());
    }
}

void run_updates(SolverState& s, const SolverConfig& cfg) {
    switch (s.variant) {
    case NormVariant::qdfn:
        qdfn_update_uv(s, cfg);
        break;
    case NormVariant::qdnn:
        qdnn_update_uv(s, cfg);
        qdnn_update_aux(s, cfg);
        break;
    case NormVariant::qfnn:
        qfnn_update_all(s, cfg);
        break;
    }
}

} // namespace

CompletionResult solve(const QMatrix& observed, const ObservationMask& mask, const SolverConfig& cfg,
                       NormVariant variant, const IterationCallback& on_iteration) {
    cfg.validate();
    if (mask.rows() != observed.rows() || mask.cols() != observed.cols()) {
        throw DimensionError("solve: mask shape differs from T");
    }
    const Index m = observed.rows();
    const Index n = observed.cols();
    if (cfg.d0 > std::min(m, n)) {
        throw std::invalid_argument("SolverConfig: d0 exceeds min(M, N)");
    }
    const auto start = std::chrono::steady_clock::now();
    const QMatrix t = project_omega(observed, mask);
    const double t_norm = frobenius_norm(t);

    CompletionResult out;
    if (!(t_norm > 0.0)) {
        out.X_hat = QMatrix(m, n);
        out.U = QMatrix(m, cfg.d0);
        out.V = QMatrix(n, cfg.d0);
        out.converged = true;
        return out;
    }

    SolverState s = initial_state(t, variant, cfg);
    for (int it = 1; it <= cfg.max_iters; ++it) {
        run_updates(s, cfg);
        update_x(s, t, mask);
        update_multipliers_and_mu(s, cfg);
        if (!s.rank_adjusted && s.d >= 2) {
            const RankEstimate est = estimate_rank(s.U, s.d, cfg.rank_drop_threshold);
            if (est.triggered) {
                truncate_factors(s, est.new_d);
                s.rank_adjusted = true;
            }
        }
        s.tau = it;
        check_finite(s, it);

        const double re = frobenius_norm(s.product - s.X) / t_norm;
        out.re_trace.push_back(re);
        if (on_iteration) {
            on_iteration({it, re, s.d, s.mu});
        }
        if (re <= cfg.tol) {
            out.converged = true;
            break;
        }
    }

    out.iterations = static_cast<int>(out.re_trace.size());
    out.final_rank = s.d;
    out.X_hat = std::move(s.X);
    out.U = std::move(s.U);
    out.V = std::move(s.V);
    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace qbf
