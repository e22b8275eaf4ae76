#include "qbf/imaging.hpp"

#include "qbf/error.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace qbf {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

void require_same_size(const ColorImage& a, const ColorImage& b, const char* op) {
    if (a.height() != b.height() || a.width() != b.width()) {
        throw DimensionError(std::string(op) + ": image sizes differ");
    }
}

std::array<double, kWindow> gaussian_weights() {
    std::array<double, kWindow> w{};
    double sum = 0.0;
    for (int k = 0; k < kWindow; ++k) {
        const double x = k - kWindow / 2;
        w[static_cast<std::size_t>(k)] = std::exp(-x * x / (2.0 * kSigma * kSigma));
        sum += w[static_cast<std::size_t>(k)];
    }
    for (double& v : w) {
        v /= sum;
    }
    return w;
}

// 'valid' separable Gaussian filter of an H×W plane stored row-major.
std::vector<double> blur(const std::vector<double>& plane, Index h, Index w,
                         const std::array<double, kWindow>& g) {
    const Index oh = h - kWindow + 1;
    const Index ow = w - kWindow + 1;
    std::vector<double> rows(static_cast<std::size_t>(h * ow));
    for (Index r = 0; r < h; ++r) {
        for (Index c = 0; c < ow; ++c) {
            double acc = 0.0;
            for (int k = 0; k < kWindow; ++k) {
                acc += g[static_cast<std::size_t>(k)] * plane[static_cast<std::size_t>(r * w + c + k)];
            }
            rows[static_cast<std::size_t>(r * ow + c)] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(oh * ow));
    for (Index r = 0; r < oh; ++r) {
        for (Index c = 0; c < ow; ++c) {
            double acc = 0.0;
            for (int k = 0; k < kWindow; ++k) {
                acc += g[static_cast<std::size_t>(k)] * rows[static_cast<std::size_t>((r + k) * ow + c)];
            }
            out[static_cast<std::size_t>(r * ow + c)] = acc;
        }
    }
    return out;
}

double channel_ssim(const ColorImage& a, const ColorImage& b, int ch,
                    const std::array<double, kWindow>& g) {
    const Index h = a.height();
    const Index w = a.width();
    const auto n = static_cast<std::size_t>(h * w);
    std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
    for (Index r = 0; r < h; ++r) {
        for (Index c = 0; c < w; ++c) {
            const auto i = static_cast<std::size_t>(r * w + c);
            x[i] = a.at(r, c, ch);
            y[i] = b.at(r, c, ch);
            xx[i] = x[i] * x[i];
            yy[i] = y[i] * y[i];
            xy[i] = x[i] * y[i];
        }
    }
    const auto mx = blur(x, h, w, g);
    const auto my = blur(y, h, w, g);
    const auto mxx = blur(xx, h, w, g);
    const auto myy = blur(yy, h, w, g);
    const auto mxy = blur(xy, h, w, g);
    double sum = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) {
        const double vx = mxx[i] - mx[i] * mx[i];
        const double vy = myy[i] - my[i] * my[i];
        const double cov = mxy[i] - mx[i] * my[i];
        const double num = (2.0 * mx[i] * my[i] + kC1) * (2.0 * cov + kC2);
        const double den = (mx[i] * mx[i] + my[i] * my[i] + kC1) * (vx + vy + kC2);
        sum += num / den;
    }
    return sum / static_cast<double>(mx.size());
}

} // namespace

double mse(const ColorImage& reference, const ColorImage& test) {
    require_same_size(reference, test, "mse");
    const auto& a = reference.samples();
    const auto& b = test.samples();
    if (a.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double e = a[i] - b[i];
        sum += e * e;
    }
    return sum / static_cast<double>(a.size());
}

double psnr(const ColorImage& reference, const ColorImage& test) {
    const double e = mse(reference, test);
    if (e == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(1.0 / e);
}

double ssim(const ColorImage& reference, const ColorImage& test) {
    require_same_size(reference, test, "ssim");
    if (reference.height() < kWindow || reference.width() < kWindow) {
        throw DimensionError("ssim: both sides must be at least 11 pixels");
    }
    const auto g = gaussian_weights();
    double total = 0.0;
    for (int ch = 0; ch < 3; ++ch) {
        total += channel_ssim(reference, test, ch, g);
    }
    return total / 3.0;
}

} // namespace qbf
