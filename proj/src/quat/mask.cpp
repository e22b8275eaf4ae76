#include "qbf/mask.hpp"

#include "qbf/error.hpp"

#include <algorithm>

namespace qbf {

namespace {

QMatrix project(const QMatrix& a, const ObservationMask& mask, bool keep_observed) {
    if (a.rows() != mask.rows() || a.cols() != mask.cols()) {
        throw DimensionError("mask projection: matrix and mask shapes differ");
    }
    QMatrix out(a.rows(), a.cols());
    for (Index r = 0; r < a.rows(); ++r) {
        for (Index c = 0; c < a.cols(); ++c) {
            if (mask.observed(r, c) == keep_observed) {
                out(r, c) = a(r, c);
            }
        }
    }
    return out;
}

} // namespace

ObservationMask::ObservationMask(Index rows, Index cols)
    : rows_(rows), cols_(cols), flags_(static_cast<std::size_t>(rows * cols), 0) {
    if (rows < 0 || cols < 0) {
        throw DimensionError("ObservationMask: negative dimension");
    }
}

ObservationMask ObservationMask::full(Index rows, Index cols) {
    ObservationMask m(rows, cols);
    std::fill(m.flags_.begin(), m.flags_.end(), std::uint8_t{1});
    return m;
}

Index ObservationMask::observed_count() const {
    return static_cast<Index>(std::count(flags_.begin(), flags_.end(), std::uint8_t{1}));
}

double ObservationMask::missing_ratio() const {
    const Index total = rows_ * cols_;
    if (total == 0) {
        return 0.0;
    }
    return 1.0 - static_cast<double>(observed_count()) / static_cast<double>(total);
}

ObservationMask ObservationMask::complement() const {
    ObservationMask m(rows_, cols_);
    for (std::size_t i = 0; i < flags_.size(); ++i) {
        m.flags_[i] = flags_[i] ? 0 : 1;
    }
    return m;
}

QMatrix project_omega(const QMatrix& a, const ObservationMask& mask) {
    return project(a, mask, true);
}

QMatrix project_complement(const QMatrix& a, const ObservationMask& mask) {
    return project(a, mask, false);
}

} // namespace qbf
