#include "qbf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qbf {

SolverConfig SolverConfig::defaults_for(NormVariant variant) {
    SolverConfig cfg;
    if (variant == NormVariant::qdnn) {
        cfg.mu0 = 1e-2;
    }
    return cfg;
}

double SolverConfig::lambda_for(Index rows, Index cols) const {
    if (lambda) {
        return *lambda;
    }
    return 0.05 * std::sqrt(static_cast<double>(std::max(rows, cols)));
}

void SolverConfig::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("SolverConfig: " + what); };
    if (lambda && !(*lambda >= 0.0 && std::isfinite(*lambda))) {
        fail("lambda must be finite and nonnegative");
    }
    if (!(mu0 > 0.0) || !std::isfinite(mu0)) {
        fail("mu0 must be positive");
    }
    if (!(mu_max >= mu0)) {
        fail("mu_max must be at least mu0");
    }
    if (!(beta >= 1.0) || !std::isfinite(beta)) {
        fail("beta must be at least 1");
    }
    if (!(tol > 0.0)) {
        fail("tol must be positive");
    }
    if (d0 < 1) {
        fail("d0 must be at least 1");
    }
    if (max_iters < 0) {
        fail("max_iters must be nonnegative");
    }
    if (!(rank_drop_threshold > 0.0)) {
        fail("rank_drop_threshold must be positive");
    }
}

} // namespace qbf
