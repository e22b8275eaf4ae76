#include "qbf/app.hpp"

#include <json.hpp>

#include <random>
#include <stdexcept>

namespace qbf {

namespace {

QMatrix gaussian_qmatrix(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    QMatrix out(rows, cols);
    for (auto& q : out.entries()) {
        const double a = gauss(rng);
        const double b = gauss(rng);
        const double c = gauss(rng);
        const double d = gauss(rng);
        q = {a, b, c, d};
    }
    return out;
}

// Keeps the mask draw independent of the factor draw for the same seed.
constexpr std::uint64_t kMaskStream = 0x9e3779b97f4a7c15ULL;

} // namespace

SynthReport run_synth(const SynthParams& p) {
    if (p.rows < 1 || p.cols < 1) {
        throw std::invalid_argument("synth: matrix dimensions must be positive");
    }
    if (p.rank < 0 || p.rank > std::min(p.rows, p.cols)) {
        throw std::invalid_argument("synth: rank must lie in [0, min(M, N)]");
    }
    std::mt19937_64 rng(p.seed);
    const QMatrix u = gaussian_qmatrix(p.rows, p.rank, rng);
    const QMatrix v = gaussian_qmatrix(p.cols, p.rank, rng);
    const QMatrix truth = matmul(u, conj_transpose(v));
    const ObservationMask mask = random_mask(p.rows, p.cols, {p.missing_ratio, p.seed ^ kMaskStream});

    const CompletionResult res = solve(project_omega(truth, mask), mask, p.solver, p.variant);

    SynthReport r;
    const double scale = frobenius_norm(truth);
    const double err = frobenius_norm(res.X_hat - truth);
    r.recovery_error = scale > 0.0 ? err / scale : err;
    r.final_re = res.re_trace.empty() ? 0.0 : res.re_trace.back();
    r.iters = res.iterations;
    r.estimated_rank = res.iterations == 0 ? quaternion_rank(res.X_hat) : res.final_rank;
    r.converged = res.converged;
    r.elapsed_seconds = res.elapsed_seconds;
    return r;
}

std::string synth_report_json(const SynthParams& p, const SynthReport& r) {
    nlohmann::ordered_json j;
    j["rows"] = p.rows;
    j["cols"] = p.cols;
    j["true_rank"] = p.rank;
    j["mr"] = p.missing_ratio;
    j["variant"] = std::string(to_string(p.variant));
    j["seed"] = p.seed;
    j["recovery_error"] = r.recovery_error;
    j["final_re"] = r.final_re;
    j["iters"] = r.iters;
    j["estimated_rank"] = r.estimated_rank;
    j["converged"] = r.converged;
    j["elapsed_seconds"] = r.elapsed_seconds;
    return j.dump(2) + "\n";
}

} // namespace qbf
