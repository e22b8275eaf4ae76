#include "qbf/solver.hpp"

#include "qbf/error.hpp"
#include "qbf/qsvd.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qbf {

namespace {

QMatrix scale_rows(const QMatrix& a, std::span<const double> scales) {
    return conj_transpose(scale_columns(conj_transpose(a), scales));
}

// Pseudo-inverse of the diagonal, dropping values below a relative cutoff.
std::vector<double> inverted(const std::vector<double>& s) {
    const double cut = s.empty() ? 0.0 : 1e-10 * s.front();
    std::vector<double> out(s.size(), 0.0);
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] > cut && s[k] > 0.0) {
            out[k] = 1.0 / s[k];
        }
    }
    return out;
}

} // namespace

RankEstimate estimate_rank_from_values(std::span<const double> sigma, double threshold) {
    const auto d = static_cast<Index>(sigma.size());
    if (d < 2) {
        throw std::invalid_argument("estimate_rank: at least two singular values required");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> q(static_cast<std::size_t>(d - 1));
    for (std::size_t m = 0; m + 1 < sigma.size(); ++m) {
        q[m] = sigma[m + 1] == 0.0 ? inf : sigma[m] / sigma[m + 1];
    }
    std::size_t p = 0;
    for (std::size_t m = 1; m < q.size(); ++m) {
        if (q[m] > q[p]) {
            p = m;
        }
    }
    double rest = 0.0;
    for (std::size_t m = 0; m < q.size(); ++m) {
        if (m != p) {
            rest += q[m];
        }
    }

    RankEstimate out;
    out.drop_index = static_cast<Index>(p) + 1;
    if (std::isinf(q[p])) {
        out.delta = inf;
    } else if (rest == 0.0) {
        out.delta = q[p] > 0.0 ? inf : 0.0;
    } else {
        out.delta = static_cast<double>(d - 1) * q[p] / rest;
    }
    out.triggered = out.delta > threshold;
    out.new_d = out.triggered ? out.drop_index : d;
    return out;
}

RankEstimate estimate_rank(const QMatrix& u, Index d, double threshold) {
    if (d < 2) {
        throw std::invalid_argument("estimate_rank: d must be at least 2");
    }
    if (u.cols() != d) {
        throw DimensionError("estimate_rank: U must have d columns");
    }
    const std::vector<double> s = singular_values(matmul(conj_transpose(u), u));
    return estimate_rank_from_values(s, threshold);
}

// With U = Pu·Su·Quᴴ and V = Pv·Sv·Qvᴴ, UVᴴ = Pu·C·Pvᴴ for the small core
// C = Su·Quᴴ·Qv·Sv, so truncating C truncates the product.
void truncate_factors(SolverState& s, Index new_d) {
    if (new_d < 1 || new_d >= s.d) {
        throw std::invalid_argument("truncate_factors: new_d must lie in [1, d)");
    }
    const QsvdResult su = qsvd(s.U, SvdMode::thin);
    const QsvdResult sv = qsvd(s.V, SvdMode::thin);
    const QMatrix core = scale_columns(
        scale_rows(matmul(conj_transpose(su.V), sv.V), su.singular_values), sv.singular_values);
    const QsvdResult sc = qsvd(core, SvdMode::thin);

    std::vector<double> root(static_cast<std::size_t>(new_d));
    for (Index k = 0; k < new_d; ++k) {
        root[static_cast<std::size_t>(k)] = std::sqrt(sc.singular_values[static_cast<std::size_t>(k)]);
    }
    const QMatrix left = scale_columns(sc.U.left_columns(new_d), root);
    const QMatrix right = scale_columns(sc.V.left_columns(new_d), root);

    // Least-squares frames: old U·G = new U, old V·H = new V.
    const QMatrix g = matmul(su.V, scale_rows(left, inverted(su.singular_values)));
    const QMatrix h = matmul(sv.V, scale_rows(right, inverted(sv.singular_values)));

    s.U = matmul(su.U, left);
    s.V = matmul(sv.U, right);
    if (s.uses_aux_u()) {
        s.aux_u = matmul(s.aux_u, g);
        s.mult_u = matmul(s.mult_u, g);
    }
    if (s.uses_aux_v()) {
        s.aux_v = matmul(s.aux_v, h);
        s.mult_v = matmul(s.mult_v, h);
    }
    s.product = matmul(s.U, conj_transpose(s.V));
    s.d = new_d;
}

} // namespace qbf
