#include "qbf/app.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace qbf {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

} // namespace

ColorImage compose_completed(const ColorImage& observed, const QMatrix& x_hat,
                             const ObservationMask& mask) {
    const QMatrix filled = project_omega(image_to_qmatrix(observed), mask) + project_complement(x_hat, mask);
    return quantize_8bit(qmatrix_to_image(filled));
}

std::string inpaint_report_json(const InpaintReport& r) {
    nlohmann::ordered_json j;
    j["psnr"] = r.psnr;
    j["ssim"] = r.ssim;
    j["observed_psnr"] = r.observed_psnr;
    j["observed_ssim"] = r.observed_ssim;
    j["iters"] = r.iters;
    j["final_rank"] = r.final_rank;
    j["converged"] = r.converged;
    j["elapsed_seconds"] = r.elapsed_seconds;
    j["re_trace"] = r.re_trace;
    return j.dump(2) + "\n";
}

InpaintReport run_inpaint(const RunManifest& m) {
    if (m.inputs.size() != 1) {
        throw std::invalid_argument("inpaint: exactly one input image is required");
    }
    const ColorImage img = read_png(m.inputs.front());
    const ObservationMask mask = random_mask(img.height(), img.width(), {m.missing_ratio, m.seed});
    const ColorImage observed = apply_mask(img, mask);

    const CompletionResult res = solve(image_to_qmatrix(observed), mask, m.solver, m.variant);
    const ColorImage completed = compose_completed(observed, res.X_hat, mask);

    InpaintReport r;
    r.psnr = psnr(img, completed);
    r.ssim = ssim(img, completed);
    r.observed_psnr = psnr(img, observed);
    r.observed_ssim = ssim(img, observed);
    r.iters = res.iterations;
    r.final_rank = res.final_rank;
    r.converged = res.converged;
    r.elapsed_seconds = res.elapsed_seconds;
    r.re_trace = res.re_trace;

    std::filesystem::create_directories(m.output_dir);
    write_png(m.output_dir / "observed.png", observed);
    write_png(m.output_dir / "completed.png", completed);
    write_mask(m.output_dir / "mask.txt", mask);
    write_manifest(m.output_dir / "manifest.txt", m);
    write_text(m.output_dir / "report.json", inpaint_report_json(r));
    return r;
}

} // namespace qbf
