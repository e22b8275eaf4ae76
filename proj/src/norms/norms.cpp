#include "qbf/norms.hpp"

#include "qbf/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbf {

namespace {

constexpr double kRankTolerance = 1e-10;

void require_factor_shapes(const QMatrix& u, const QMatrix& v, const char* op) {
    if (u.cols() != v.cols()) {
        throw DimensionError(std::string(op) + ": U and V must have the same number of columns");
    }
}

double sum_of_powers(const std::vector<double>& s, double p, std::size_t count) {
    double sum = 0.0;
    for (std::size_t k = 0; k < std::min(count, s.size()); ++k) {
        if (s[k] > 0.0) {
            sum += std::pow(s[k], p);
        }
    }
    return sum;
}

} // namespace

std::string_view to_string(NormVariant v) {
    switch (v) {
    case NormVariant::qdfn: return "qdfn";
    case NormVariant::qdnn: return "qdnn";
    case NormVariant::qfnn: return "qfnn";
    }
    return "unknown";
}

std::optional<NormVariant> parse_variant(std::string_view name) {
    for (NormVariant v : kAllVariants) {
        if (to_string(v) == name) {
            return v;
        }
    }
    return std::nullopt;
}

double schatten_exponent(NormVariant v) {
    switch (v) {
    case NormVariant::qdfn: return 1.0;
    case NormVariant::qdnn: return 0.5;
    case NormVariant::qfnn: return 2.0 / 3.0;
    }
    return 1.0;
}

double q_schatten_p(const QMatrix& a, double p) {
    if (!(p > 0.0)) {
        throw std::invalid_argument("q_schatten_p: p must be positive");
    }
    std::vector<double> s = singular_values(a);
    // Rounding-level values are zero in exact arithmetic; for p < 1 their
    // powers would otherwise dominate the error.
    if (!s.empty()) {
        const double cut = kRankTolerance * s.front();
        std::erase_if(s, [cut](double v) { return v <= cut; });
    }
    const double sum = sum_of_powers(s, p, s.size());
    return sum > 0.0 ? std::pow(sum, 1.0 / p) : 0.0;
}

double nuclear_norm(const QMatrix& a) {
    const std::vector<double> s = singular_values(a);
    double sum = 0.0;
    for (double v : s) {
        sum += v;
    }
    return sum;
}

double factor_objective(const QMatrix& u, const QMatrix& v, NormVariant variant) {
    require_factor_shapes(u, v, "factor_objective");
    switch (variant) {
    case NormVariant::qdfn:
        return 0.5 * squared_frobenius_norm(u) + 0.5 * squared_frobenius_norm(v);
    case NormVariant::qdnn: {
        const double t = nuclear_norm(u) + nuclear_norm(v);
        return 0.25 * t * t;
    }
    case NormVariant::qfnn: {
        const double t = (squared_frobenius_norm(u) + 2.0 * nuclear_norm(v)) / 3.0;
        return std::pow(t, 1.5);
    }
    }
    return 0.0;
}

FactorPair optimal_factors(const QMatrix& a, Index d, NormVariant variant) {
    const double u_exponent = variant == NormVariant::qfnn ? 1.0 / 3.0 : 0.5;
    return split_factors(a, d, u_exponent);
}

ProductBound sv_product_bound(const QMatrix& u, const QMatrix& v, double p) {
    require_factor_shapes(u, v, "sv_product_bound");
    if (!(p > 0.0)) {
        throw std::invalid_argument("sv_product_bound: p must be positive");
    }
    const auto k = static_cast<std::size_t>(std::min({u.rows(), v.rows(), u.cols()}));
    const std::vector<double> s_prod = singular_values(matmul(u, conj_transpose(v)));
    const std::vector<double> s_u = singular_values(u);
    const std::vector<double> s_v = singular_values(v);

    ProductBound out{sum_of_powers(s_prod, p, k), 0.0};
    for (std::size_t j = 0; j < k; ++j) {
        if (s_u[j] > 0.0 && s_v[j] > 0.0) {
            out.rhs += std::pow(s_u[j], p) * std::pow(s_v[j], p);
        }
    }
    return out;
}

} // namespace qbf
