#include "qbf/imaging.hpp"

#include <fstream>
#include <stdexcept>

namespace qbf {

void write_mask(const std::filesystem::path& path, const ObservationMask& mask) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("mask: cannot write " + path.string());
    }
    out << mask.rows() << ' ' << mask.cols() << '\n';
    for (Index r = 0; r < mask.rows(); ++r) {
        for (Index c = 0; c < mask.cols(); ++c) {
            if (c > 0) {
                out << ' ';
            }
            out << (mask.observed(r, c) ? '1' : '0');
        }
        out << '\n';
    }
    if (!out) {
        throw std::runtime_error("mask: write failed for " + path.string());
    }
}

ObservationMask read_mask(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("mask: cannot read " + path.string());
    }
    Index rows = -1;
    Index cols = -1;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
        throw std::runtime_error("mask: bad header in " + path.string());
    }
    ObservationMask mask(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
            int flag = -1;
            if (!(in >> flag) || (flag != 0 && flag != 1)) {
                throw std::runtime_error("mask: expected 0 or 1 in " + path.string());
            }
            mask.set_observed(r, c, flag == 1);
        }
    }
    return mask;
}

} // namespace qbf
