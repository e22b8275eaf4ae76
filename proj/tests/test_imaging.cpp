#include "qbf/error.hpp"
#include "qbf/imaging.hpp"
#include "support/testing.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

using namespace qbf;
using qbf::testing::Gen;

namespace {

ColorImage random_image(Gen& g, Index h, Index w) {
    ColorImage img(h, w);
    for (double& v : img.samples()) {
        v = g.uniform(0.0, 1.0);
    }
    return img;
}

ColorImage constant_image(Index h, Index w, double v) {
    ColorImage img(h, w);
    for (double& s : img.samples()) {
        s = v;
    }
    return img;
}

// Direct per-window SSIM with the full 2-D Gaussian weight matrix.
double ssim_oracle(const ColorImage& x, const ColorImage& y) {
    const int win = 11;
    const double sigma = 1.5;
    double w[11][11];
    double total = 0.0;
    for (int a = 0; a < win; ++a) {
        for (int b = 0; b < win; ++b) {
            const double da = a - 5;
            const double db = b - 5;
            w[a][b] = std::exp(-(da * da + db * db) / (2.0 * sigma * sigma));
            total += w[a][b];
        }
    }
    const double c1 = 0.01 * 0.01;
    const double c2 = 0.03 * 0.03;
    double channels = 0.0;
    for (int ch = 0; ch < 3; ++ch) {
        double sum = 0.0;
        int count = 0;
        for (Index r = 0; r + win <= x.height(); ++r) {
            for (Index c = 0; c + win <= x.width(); ++c) {
                double mx = 0, my = 0;
                for (int a = 0; a < win; ++a) {
                    for (int b = 0; b < win; ++b) {
                        mx += w[a][b] / total * x.at(r + a, c + b, ch);
                        my += w[a][b] / total * y.at(r + a, c + b, ch);
                    }
                }
                double vx = 0, vy = 0, cxy = 0;
                for (int a = 0; a < win; ++a) {
                    for (int b = 0; b < win; ++b) {
                        const double dx = x.at(r + a, c + b, ch) - mx;
                        const double dy = y.at(r + a, c + b, ch) - my;
                        vx += w[a][b] / total * dx * dx;
                        vy += w[a][b] / total * dy * dy;
                        cxy += w[a][b] / total * dx * dy;
                    }
                }
                sum += ((2 * mx * my + c1) * (2 * cxy + c2)) /
                       ((mx * mx + my * my + c1) * (vx + vy + c2));
                ++count;
            }
        }
        channels += sum / count;
    }
    return channels / 3.0;
}

std::filesystem::path scratch_dir(const char* name) {
    const auto dir = std::filesystem::temp_directory_path() / ("qbf_test_" + std::string(name));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("pure quaternion encoding") {
    Gen g(81);
    const ColorImage img = random_image(g, 7, 9);
    const QMatrix q = image_to_qmatrix(img);
    CHECK(q.rows() == 7);
    CHECK(q.cols() == 9);
    double energy = 0.0;
    for (Index r = 0; r < 7; ++r) {
        for (Index c = 0; c < 9; ++c) {
            CHECK(q(r, c).q0 == 0.0);
            CHECK(q(r, c).q1 == img.at(r, c, 0));
            CHECK(q(r, c).q2 == img.at(r, c, 1));
            CHECK(q(r, c).q3 == img.at(r, c, 2));
            for (int ch = 0; ch < 3; ++ch) {
                energy += img.at(r, c, ch) * img.at(r, c, ch);
            }
        }
    }
    CHECK(squared_frobenius_norm(q) == doctest::Approx(energy).epsilon(1e-14));
    CHECK(qmatrix_to_image(q) == img);

    QMatrix wild = g.qmatrix(3, 4);
    const ColorImage clamped = qmatrix_to_image(wild);
    for (Index r = 0; r < 3; ++r) {
        for (Index c = 0; c < 4; ++c) {
            CHECK(clamped.at(r, c, 0) == std::clamp(wild(r, c).q1, 0.0, 1.0));
            CHECK(clamped.at(r, c, 2) == std::clamp(wild(r, c).q3, 0.0, 1.0));
        }
    }
}

TEST_CASE("random masks") {
    const ObservationMask m = random_mask(256, 256, {0.7, 4});
    CHECK(m.missing_count() == 45875);
    CHECK(random_mask(256, 256, {0.7, 4}) == m);
    CHECK_FALSE(random_mask(256, 256, {0.7, 5}) == m);
    CHECK(random_mask(10, 10, {0.0, 1}).missing_count() == 0);
    CHECK(random_mask(10, 10, {1.0, 1}).missing_count() == 100);
    CHECK(random_mask(3, 5, {0.5, 1}).missing_count() == 8);
    CHECK_THROWS_AS(random_mask(4, 4, {1.5, 1}), std::invalid_argument);
    CHECK_THROWS_AS(random_mask(4, 4, {-0.1, 1}), std::invalid_argument);

    // Each pixel is dropped with frequency close to MR over many seeds.
    std::vector<int> hits(16, 0);
    for (std::uint64_t s = 0; s < 2000; ++s) {
        const ObservationMask mm = random_mask(4, 4, {0.25, s});
        for (Index k = 0; k < 16; ++k) {
            hits[static_cast<std::size_t>(k)] += mm.observed(k / 4, k % 4) ? 0 : 1;
        }
    }
    for (int h : hits) {
        CHECK(std::abs(h / 2000.0 - 0.25) < 0.05);
    }

    Gen g(82);
    const ColorImage img = random_image(g, 6, 5);
    const ObservationMask mk = random_mask(6, 5, {0.4, 2});
    const ColorImage masked = apply_mask(img, mk);
    for (Index r = 0; r < 6; ++r) {
        for (Index c = 0; c < 5; ++c) {
            for (int ch = 0; ch < 3; ++ch) {
                CHECK(masked.at(r, c, ch) == (mk.observed(r, c) ? img.at(r, c, ch) : 0.0));
            }
        }
    }
}

TEST_CASE("PSNR") {
    const ColorImage zero = constant_image(8, 8, 0.0);
    CHECK(psnr(zero, constant_image(8, 8, 1.0)) == doctest::Approx(0.0));
    CHECK(psnr(zero, constant_image(8, 8, 0.1)) == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(std::isinf(psnr(zero, zero)));
    CHECK(mse(zero, constant_image(8, 8, 0.5)) == doctest::Approx(0.25));
    CHECK_THROWS_AS(psnr(zero, constant_image(8, 7, 0.0)), DimensionError);
}

TEST_CASE("SSIM") {
    Gen g(83);
    for (int t = 0; t < 4; ++t) {
        const Index h = g.index(11, 24);
        const Index w = g.index(11, 24);
        const ColorImage a = random_image(g, h, w);
        ColorImage b = a;
        for (double& v : b.samples()) {
            v = std::clamp(v + 0.2 * g.normal(), 0.0, 1.0);
        }
        CHECK(std::abs(ssim(a, b) - ssim_oracle(a, b)) <= 1e-6);
        CHECK(ssim(a, b) == doctest::Approx(ssim(b, a)).epsilon(1e-12));
        CHECK(ssim(a, a) == 1.0);
    }
    const ColorImage flat = constant_image(12, 12, 0.3);
    CHECK(ssim(flat, flat) == 1.0);
    CHECK(ssim(flat, constant_image(12, 12, 0.6)) < 1.0);
    CHECK_THROWS_AS(ssim(constant_image(10, 20, 0.0), constant_image(10, 20, 0.0)), DimensionError);
}

TEST_CASE("8-bit quantization") {
    ColorImage img(1, 2);
    img.at(0, 0, 0) = 0.5 / 255.0;
    img.at(0, 0, 1) = 0.49 / 255.0;
    img.at(0, 0, 2) = 1.7;
    img.at(0, 1, 0) = -0.2;
    img.at(0, 1, 1) = 128.5 / 255.0;
    img.at(0, 1, 2) = 1.0;
    const ColorImage q = quantize_8bit(img);
    CHECK(q.at(0, 0, 0) == 1.0 / 255.0);
    CHECK(q.at(0, 0, 1) == 0.0);
    CHECK(q.at(0, 0, 2) == 1.0);
    CHECK(q.at(0, 1, 0) == 0.0);
    CHECK(q.at(0, 1, 1) == 129.0 / 255.0);
    CHECK(q.at(0, 1, 2) == 1.0);
    CHECK(quantize_8bit(q) == q);
}

TEST_CASE("PNG round trip") {
    Gen g(84);
    const auto dir = scratch_dir("png");
    const ColorImage img = quantize_8bit(random_image(g, 13, 17));
    write_png(dir / "a.png", img);
    const ColorImage back = read_png(dir / "a.png");
    CHECK(back == img);

    const ColorImage raw = random_image(g, 5, 6);
    write_png(dir / "b.png", raw);
    CHECK(read_png(dir / "b.png") == quantize_8bit(raw));

    CHECK_THROWS(read_png(dir / "missing.png"));
    std::ofstream(dir / "junk.png") << "not a png";
    CHECK_THROWS(read_png(dir / "junk.png"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("test images load") {
    for (const char* name : {"astronaut_256.png", "coffee_256.png"}) {
        const ColorImage img = read_png(std::filesystem::path(QBF_TEST_DATA_DIR) / name);
        CHECK(img.height() == 256);
        CHECK(img.width() == 256);
    }
}

TEST_CASE("mask file round trip") {
    const auto dir = scratch_dir("mask");
    const ObservationMask m = random_mask(9, 14, {0.3, 7});
    write_mask(dir / "m.txt", m);
    CHECK(read_mask(dir / "m.txt") == m);

    std::ifstream in(dir / "m.txt");
    std::string header;
    std::getline(in, header);
    CHECK(header == "9 14");

    std::ofstream(dir / "bad.txt") << "2 2\n1 0\n1\n";
    CHECK_THROWS(read_mask(dir / "bad.txt"));
    std::ofstream(dir / "bad2.txt") << "1 2\n1 5\n";
    CHECK_THROWS(read_mask(dir / "bad2.txt"));
    std::filesystem::remove_all(dir);
}
