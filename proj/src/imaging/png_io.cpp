#include "qbf/imaging.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace qbf {

namespace {

struct ImageGuard {
    png_image* image;
    ~ImageGuard() { png_image_free(image); }
};

std::runtime_error png_failure(const std::filesystem::path& path, const png_image& image) {
    return std::runtime_error("png: " + path.string() + ": " + image.message);
}

png_byte to_byte(double v) { return static_cast<png_byte>(std::floor(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5)); }

} // namespace

ColorImage quantize_8bit(const ColorImage& img) {
    ColorImage out = img;
    for (double& v : out.samples()) {
        v = to_byte(v) / 255.0;
    }
    return out;
}

ColorImage read_png(const std::filesystem::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    ImageGuard guard{&image};
    if (png_image_begin_read_from_file(&image, path.c_str()) == 0) {
        throw png_failure(path, image);
    }
    image.format = PNG_FORMAT_RGB;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
    if (png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr) == 0) {
        throw png_failure(path, image);
    }
    ColorImage out(static_cast<Index>(image.height), static_cast<Index>(image.width));
    auto& samples = out.samples();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i] = buffer[i] / 255.0;
    }
    return out;
}

void write_png(const std::filesystem::path& path, const ColorImage& img) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = PNG_FORMAT_RGB;
    const auto& samples = img.samples();
    std::vector<png_byte> buffer(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        buffer[i] = to_byte(samples[i]);
    }
    if (png_image_write_to_file(&image, path.c_str(), 0, buffer.data(), 0, nullptr) == 0) {
        const std::runtime_error err = png_failure(path, image);
        png_image_free(&image);
        throw err;
    }
}

} // namespace qbf
