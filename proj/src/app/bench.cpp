#include "qbf/app.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace qbf {

namespace {

struct Cell {
    std::size_t image;
    double mr;
    NormVariant variant;
};

BenchRow run_cell(const BenchParams& p, const std::vector<ColorImage>& images, const Cell& cell) {
    BenchRow row;
    row.image = p.images[cell.image].filename().string();
    row.mr = cell.mr;
    row.variant = cell.variant;
    try {
        const ColorImage& img = images[cell.image];
        if (img.empty()) {
            throw std::runtime_error("image could not be loaded");
        }
        const ObservationMask mask = random_mask(img.height(), img.width(), {cell.mr, p.seed});
        const ColorImage observed = apply_mask(img, mask);
        const CompletionResult res = solve(image_to_qmatrix(observed), mask,
                                           p.overrides.resolve(cell.variant, p.seed), cell.variant);
        const ColorImage completed = compose_completed(observed, res.X_hat, mask);
        row.psnr = psnr(img, completed);
        row.ssim = ssim(img, completed);
        row.iters = res.iterations;
        row.final_rank = res.final_rank;
        row.seconds = res.elapsed_seconds;
        row.converged = res.converged;
    } catch (const std::exception& e) {
        row.error = e.what();
        row.psnr = std::nan("");
        row.ssim = std::nan("");
    }
    return row;
}

} // namespace

std::vector<BenchRow> run_bench(const BenchParams& p) {
    std::vector<ColorImage> images(p.images.size());
    std::vector<std::string> load_errors(p.images.size());
    for (std::size_t i = 0; i < p.images.size(); ++i) {
        try {
            images[i] = read_png(p.images[i]);
        } catch (const std::exception& e) {
            load_errors[i] = e.what();
        }
    }

    std::vector<Cell> cells;
    for (std::size_t i = 0; i < p.images.size(); ++i) {
        for (double mr : p.missing_ratios) {
            for (NormVariant v : p.variants) {
                cells.push_back({i, mr, v});
            }
        }
    }

    std::vector<BenchRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < cells.size(); k = next++) {
            rows[k] = run_cell(p, images, cells[k]);
            if (!load_errors[cells[k].image].empty()) {
                rows[k].error = load_errors[cells[k].image];
            }
        }
    };
    const auto jobs = static_cast<std::size_t>(std::max(1, p.jobs));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::min(jobs, cells.size()); ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << kBenchHeader << '\n';
    for (const BenchRow& r : rows) {
        out << r.image << ',' << format_double(r.mr) << ',' << to_string(r.variant) << ',';
        if (r.error.empty()) {
            out << format_double(r.psnr) << ',' << format_double(r.ssim) << ',' << r.iters << ','
                << r.final_rank << ',' << format_double(r.seconds);
        } else {
            out << "nan,nan,,,";
        }
        out << '\n';
    }
    return out.str();
}

} // namespace qbf
