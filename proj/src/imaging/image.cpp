#include "qbf/imaging.hpp"

#include "qbf/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qbf {

ColorImage::ColorImage(Index height, Index width)
    : height_(height), width_(width), data_(static_cast<std::size_t>(height * width * 3), 0.0) {
    if (height < 0 || width < 0) {
        throw DimensionError("ColorImage: negative dimension");
    }
}

QMatrix image_to_qmatrix(const ColorImage& img) {
    QMatrix out(img.height(), img.width());
    for (Index r = 0; r < img.height(); ++r) {
        for (Index c = 0; c < img.width(); ++c) {
            out(r, c) = {0.0, img.at(r, c, 0), img.at(r, c, 1), img.at(r, c, 2)};
        }
    }
    return out;
}

ColorImage qmatrix_to_image(const QMatrix& x) {
    ColorImage out(x.rows(), x.cols());
    auto clamp = [](double v) { return std::clamp(v, 0.0, 1.0); };
    for (Index r = 0; r < x.rows(); ++r) {
        for (Index c = 0; c < x.cols(); ++c) {
            const Quaternion& q = x(r, c);
            out.at(r, c, 0) = clamp(q.q1);
            out.at(r, c, 1) = clamp(q.q2);
            out.at(r, c, 2) = clamp(q.q3);
        }
    }
    return out;
}

ObservationMask random_mask(Index height, Index width, const MaskSpec& spec) {
    if (!(spec.missing_ratio >= 0.0 && spec.missing_ratio <= 1.0)) {
        throw std::invalid_argument("random_mask: missing ratio must lie in [0, 1]");
    }
    const Index total = height * width;
    const auto missing = static_cast<Index>(std::llround(spec.missing_ratio * static_cast<double>(total)));

    // Partial Fisher-Yates: the first `missing` slots become the removed pixels.
    std::vector<Index> order(static_cast<std::size_t>(total));
    std::iota(order.begin(), order.end(), Index{0});
    std::mt19937_64 rng(spec.seed);
    for (Index k = 0; k < missing; ++k) {
        std::uniform_int_distribution<Index> pick(k, total - 1);
        std::swap(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(pick(rng))]);
    }

    ObservationMask mask = ObservationMask::full(height, width);
    for (Index k = 0; k < missing; ++k) {
        const Index idx = order[static_cast<std::size_t>(k)];
        mask.set_observed(idx / width, idx % width, false);
    }
    return mask;
}

ColorImage apply_mask(const ColorImage& img, const ObservationMask& mask) {
    if (mask.rows() != img.height() || mask.cols() != img.width()) {
        throw DimensionError("apply_mask: mask and image sizes differ");
    }
    ColorImage out = img;
    for (Index r = 0; r < img.height(); ++r) {
        for (Index c = 0; c < img.width(); ++c) {
            if (!mask.observed(r, c)) {
                for (int ch = 0; ch < 3; ++ch) {
                    out.at(r, c, ch) = 0.0;
                }
            }
        }
    }
    return out;
}

} // namespace qbf
