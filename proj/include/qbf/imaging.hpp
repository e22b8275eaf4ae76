#pragma once

#include "qbf/mask.hpp"
#include "qbf/qmatrix.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace qbf {

/// RGB image with samples in [0, 1], stored row-major with interleaved channels.
class ColorImage {
public:
    ColorImage() = default;
    ColorImage(Index height, Index width);

    Index height() const { return height_; }
    Index width() const { return width_; }
    bool empty() const { return data_.empty(); }

    double& at(Index r, Index c, int channel) { return data_[offset(r, c, channel)]; }
    double at(Index r, Index c, int channel) const { return data_[offset(r, c, channel)]; }

    std::vector<double>& samples() { return data_; }
    const std::vector<double>& samples() const { return data_; }

    friend bool operator==(const ColorImage&, const ColorImage&) = default;

private:
    std::size_t offset(Index r, Index c, int channel) const {
        return static_cast<std::size_t>((r * width_ + c) * 3 + channel);
    }

    Index height_ = 0;
    Index width_ = 0;
    std::vector<double> data_;
};

/// Pixel (R, G, B) becomes the pure quaternion R·i + G·j + B·k.
QMatrix image_to_qmatrix(const ColorImage& img);

/// Channels from the i, j, k parts clamped to [0, 1]; the real part is dropped.
ColorImage qmatrix_to_image(const QMatrix& x);

struct MaskSpec {
    double missing_ratio = 0.0;
    std::uint64_t seed = 0;
};

/// Exactly round(MR·H·W) pixels missing, drawn uniformly without replacement.
ObservationMask random_mask(Index height, Index width, const MaskSpec& spec);

/// The image with every missing pixel set to black.
ColorImage apply_mask(const ColorImage& img, const ObservationMask& mask);

/// Mean squared error over all 3·H·W samples.
double mse(const ColorImage& reference, const ColorImage& test);

/// 10·log10(1/MSE) with peak 1; +∞ for identical images.
double psnr(const ColorImage& reference, const ColorImage& test);

/// Mean SSIM over the valid region of an 11×11 Gaussian window (σ = 1.5),
/// C₁ = 0.01², C₂ = 0.03², averaged over the three channels.
double ssim(const ColorImage& reference, const ColorImage& test);

/// Rounds every sample to the nearest of the 256 levels k/255 (half up),
/// which is what a PNG round trip produces.
ColorImage quantize_8bit(const ColorImage& img);

/// 8-bit RGB PNG; grey and alpha inputs are converted to RGB.
ColorImage read_png(const std::filesystem::path& path);
/// Samples are clamped and mapped to 0..255 with round-half-up.
void write_png(const std::filesystem::path& path, const ColorImage& img);

/// Text grid: a "H W" header line, then H rows of W space-separated 0/1 flags
/// with 1 marking an observed pixel.
void write_mask(const std::filesystem::path& path, const ObservationMask& mask);
ObservationMask read_mask(const std::filesystem::path& path);

} // namespace qbf
