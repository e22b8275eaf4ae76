#include "qbf/solver.hpp"

#include "qbf/error.hpp"
#include "qbf/qsvd.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qbf {

namespace {

double lambda_of(const SolverState& s, const SolverConfig& cfg) {
    return cfg.lambda_for(s.X.rows(), s.X.cols());
}

void require_mu(const SolverState& s) {
    if (!(s.mu > 0.0)) {
        throw std::invalid_argument("solver update: mu must be positive");
    }
}

void require_width(const QMatrix& m, Index rows, Index d, const char* name) {
    if (m.rows() != rows || m.cols() != d) {
        throw DimensionError(std::string("solver state: ") + name + " has the wrong shape");
    }
}

// scale·AᴴA + shift·I, symmetrized so rounding never breaks the Hermitian check.
QMatrix shifted_gram(const QMatrix& a, double scale, double shift) {
    QMatrix g = matmul(conj_transpose(a), a);
    g = 0.5 * (g + conj_transpose(g));
    g *= scale;
    for (Index i = 0; i < g.rows(); ++i) {
        g(i, i) += Quaternion(shift);
    }
    return g;
}

QMatrix over_mu(const QMatrix& f, double mu) { return f * (1.0 / mu); }

double dist2(const QMatrix& a, const QMatrix& b) { return squared_frobenius_norm(a - b); }

} // namespace

SolverState initial_state(const QMatrix& observed, NormVariant variant, const SolverConfig& cfg) {
    cfg.validate();
    const Index m = observed.rows();
    const Index n = observed.cols();
    if (cfg.d0 > std::min(m, n)) {
        throw std::invalid_argument("SolverConfig: d0 exceeds min(M, N)");
    }
    const Index d = cfg.d0;

    SolverState s;
    s.variant = variant;
    s.X = observed;
    s.U = QMatrix(m, d);
    s.V = QMatrix(n, d);
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (auto& q : s.V.entries()) {
        const double a = gauss(rng);
        const double b = gauss(rng);
        const double c = gauss(rng);
        const double e = gauss(rng);
        q = Quaternion(a, b, c, e) * scale;
    }
    s.coupling = QMatrix(m, n);
    s.product = QMatrix(m, n);
    if (s.uses_aux_u()) {
        s.aux_u = QMatrix::identity(m, d);
        s.mult_u = QMatrix(m, d);
    }
    if (s.uses_aux_v()) {
        s.aux_v = QMatrix::identity(n, d);
        s.mult_v = QMatrix(n, d);
    }
    s.mu = cfg.mu0;
    s.d = d;
    return s;
}

void qdfn_update_uv(SolverState& s, const SolverConfig& cfg) {
    require_mu(s);
    const double ridge = lambda_of(s, cfg) / s.mu;
    const QMatrix c = s.X + over_mu(s.coupling, s.mu);
    s.U = hermitian_solve(shifted_gram(s.V, 1.0, ridge), matmul(c, s.V));
    s.V = hermitian_solve(shifted_gram(s.U, 1.0, ridge), matmul(conj_transpose(c), s.U));
}

void qdnn_update_uv(SolverState& s, const SolverConfig&) {
    require_mu(s);
    require_width(s.aux_u, s.U.rows(), s.d, "A_U");
    require_width(s.aux_v, s.V.rows(), s.d, "A_V");
    require_width(s.mult_u, s.U.rows(), s.d, "F1");
    require_width(s.mult_v, s.V.rows(), s.d, "F2");
    const QMatrix c = s.X + over_mu(s.coupling, s.mu);
    s.U = hermitian_solve(shifted_gram(s.V, 1.0, 1.0),
                          s.aux_u - over_mu(s.mult_u, s.mu) + matmul(c, s.V));
    s.V = hermitian_solve(shifted_gram(s.U, 1.0, 1.0),
                          s.aux_v - over_mu(s.mult_v, s.mu) + matmul(conj_transpose(c), s.U));
}

void qdnn_update_aux(SolverState& s, const SolverConfig& cfg) {
    require_mu(s);
    const double delta = lambda_of(s, cfg) / (2.0 * s.mu);
    s.aux_u = qsvt(s.U + over_mu(s.mult_u, s.mu), delta);
    s.aux_v = qsvt(s.V + over_mu(s.mult_v, s.mu), delta);
}

void qfnn_update_all(SolverState& s, const SolverConfig& cfg) {
    require_mu(s);
    require_width(s.aux_v, s.V.rows(), s.d, "A_V");
    require_width(s.mult_v, s.V.rows(), s.d, "F1");
    const double lambda = lambda_of(s, cfg);
    s.U = hermitian_solve(shifted_gram(s.V, s.mu, 2.0 * lambda / 3.0),
                          matmul(s.mu * s.X + s.coupling, s.V));
    const QMatrix c = s.X + over_mu(s.coupling, s.mu);
    s.V = hermitian_solve(shifted_gram(s.U, 1.0, 1.0),
                          s.aux_v - over_mu(s.mult_v, s.mu) + matmul(conj_transpose(c), s.U));
    s.aux_v = qsvt(s.V + over_mu(s.mult_v, s.mu), 2.0 * lambda / (3.0 * s.mu));
}

void update_x(SolverState& s, const QMatrix& observed, const ObservationMask& mask) {
    require_mu(s);
    if (observed.rows() != s.X.rows() || observed.cols() != s.X.cols() ||
        mask.rows() != s.X.rows() || mask.cols() != s.X.cols()) {
        throw DimensionError("update_x: T, mask and X shapes differ");
    }
    s.product = matmul(s.U, conj_transpose(s.V));
    const double mu = s.mu;
    const double inv_mu = 1.0 / mu;
    const double inv_1mu = 1.0 / (1.0 + mu);
    for (Index r = 0; r < s.X.rows(); ++r) {
        for (Index c = 0; c < s.X.cols(); ++c) {
            const Quaternion& p = s.product(r, c);
            const Quaternion& f = s.coupling(r, c);
            s.X(r, c) = mask.observed(r, c) ? (mu * p - f + observed(r, c)) * inv_1mu : p - f * inv_mu;
        }
    }
}

void update_multipliers_and_mu(SolverState& s, const SolverConfig& cfg) {
    s.coupling += s.mu * (s.X - s.product);
    if (s.uses_aux_u()) {
        s.mult_u += s.mu * (s.U - s.aux_u);
    }
    if (s.uses_aux_v()) {
        s.mult_v += s.mu * (s.V - s.aux_v);
    }
    s.mu = std::min(cfg.beta * s.mu, cfg.mu_max);
}

double relative_error(const QMatrix& u, const QMatrix& v, const QMatrix& x, const QMatrix& observed) {
    const double denom = frobenius_norm(observed);
    if (!(denom > 0.0)) {
        throw std::invalid_argument("relative_error: T is zero");
    }
    return frobenius_norm(matmul(u, conj_transpose(v)) - x) / denom;
}

double augmented_lagrangian(const SolverState& s, const QMatrix& observed,
                            const ObservationMask& mask, const SolverConfig& cfg) {
    const double lambda = lambda_of(s, cfg);
    const double mu = s.mu;
    const QMatrix gap = s.X - matmul(s.U, conj_transpose(s.V));
    double value = real_inner(s.coupling, gap) + 0.5 * mu * squared_frobenius_norm(gap) +
                   0.5 * squared_frobenius_norm(project_omega(s.X - observed, mask));
    switch (s.variant) {
    case NormVariant::qdfn:
        value += 0.5 * lambda * (squared_frobenius_norm(s.U) + squared_frobenius_norm(s.V));
        break;
    case NormVariant::qdnn:
        value += 0.5 * lambda * (nuclear_norm(s.aux_u) + nuclear_norm(s.aux_v));
        value += real_inner(s.mult_u, s.U - s.aux_u) + 0.5 * mu * dist2(s.U, s.aux_u);
        value += real_inner(s.mult_v, s.V - s.aux_v) + 0.5 * mu * dist2(s.V, s.aux_v);
        break;
    case NormVariant::qfnn:
        value += lambda / 3.0 * (squared_frobenius_norm(s.U) + 2.0 * nuclear_norm(s.aux_v));
        value += real_inner(s.mult_v, s.V - s.aux_v) + 0.5 * mu * dist2(s.V, s.aux_v);
        break;
    }
    return value;
}

} // namespace qbf
