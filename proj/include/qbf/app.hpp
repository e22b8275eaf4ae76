#pragma once

#include "qbf/imaging.hpp"
#include "qbf/norms.hpp"
#include "qbf/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qbf {

/// Everything needed to reproduce one inpainting run.
struct RunManifest {
    std::vector<std::filesystem::path> inputs;
    NormVariant variant = NormVariant::qfnn;
    double missing_ratio = 0.5;
    std::uint64_t seed = 1;
    SolverConfig solver;
    std::filesystem::path output_dir;

    friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

/// "key = value" lines; doubles use the shortest round-trip form and an
/// unset λ is written as "auto".
std::string serialize_manifest(const RunManifest& m);
/// Throws std::invalid_argument on unknown keys or malformed values.
RunManifest parse_manifest(std::string_view text);
RunManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const RunManifest& m);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Command-line overrides on top of the per-variant defaults.
struct SolverOverrides {
    std::optional<double> lambda;
    std::optional<double> mu0;
    std::optional<double> beta;
    std::optional<double> tol;
    std::optional<int> max_iters;
    std::optional<Index> d0;
    std::optional<double> rank_drop_threshold;

    SolverConfig resolve(NormVariant variant, std::uint64_t seed) const;
};

/// Observed pixels kept as given, missing pixels taken from X̂, clamped and
/// rounded to 8 bits.
ColorImage compose_completed(const ColorImage& observed, const QMatrix& x_hat,
                             const ObservationMask& mask);

struct InpaintReport {
    double psnr = 0.0;
    double ssim = 0.0;
    double observed_psnr = 0.0;
    double observed_ssim = 0.0;
    int iters = 0;
    Index final_rank = 0;
    bool converged = false;
    double elapsed_seconds = 0.0;
    std::vector<double> re_trace;
};

/// Masks the input image, completes it and writes observed.png, completed.png,
/// mask.txt, manifest.txt and report.json into the output directory. Metrics
/// compare the 8-bit completed image with the input.
InpaintReport run_inpaint(const RunManifest& m);
/// The report as the JSON text written to report.json.
std::string inpaint_report_json(const InpaintReport& r);

struct SynthParams {
    Index rows = 100;
    Index cols = 100;
    Index rank = 5;
    double missing_ratio = 0.5;
    NormVariant variant = NormVariant::qdfn;
    std::uint64_t seed = 1;
    SolverConfig solver;
};

struct SynthReport {
    /// ‖X̂ − X‖_F / ‖X‖_F, or ‖X̂‖_F when X is zero.
    double recovery_error = 0.0;
    double final_re = 0.0;
    int iters = 0;
    Index estimated_rank = 0;
    bool converged = false;
    double elapsed_seconds = 0.0;
};

/// Product of seeded Gaussian quaternion factors, masked and completed.
SynthReport run_synth(const SynthParams& p);
std::string synth_report_json(const SynthParams& p, const SynthReport& r);

struct BenchParams {
    std::vector<std::filesystem::path> images;
    std::vector<double> missing_ratios;
    std::vector<NormVariant> variants;
    std::uint64_t seed = 1;
    SolverOverrides overrides;
    int jobs = 1;
};

struct BenchRow {
    std::string image;
    double mr = 0.0;
    NormVariant variant = NormVariant::qdfn;
    double psnr = 0.0;
    double ssim = 0.0;
    int iters = 0;
    Index final_rank = 0;
    double seconds = 0.0;
    bool converged = false;
    std::string error; ///< empty on success
};

inline constexpr std::string_view kBenchHeader = "image,mr,variant,psnr,ssim,iters,final_rank,seconds";

/// One row per (image, MR, variant) in grid order; failed cells keep their row
/// with the message in `error`.
std::vector<BenchRow> run_bench(const BenchParams& p);
std::string bench_csv(const std::vector<BenchRow>& rows);

} // namespace qbf
