#pragma once

#include "qbf/qmatrix.hpp"

#include <cstdint>
#include <vector>

namespace qbf {

/// The observed index set Ω of an M×N matrix.
class ObservationMask {
public:
    ObservationMask() = default;
    /// All entries start unobserved.
    ObservationMask(Index rows, Index cols);

    static ObservationMask full(Index rows, Index cols);
    static ObservationMask none(Index rows, Index cols) { return ObservationMask(rows, cols); }

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }

    bool observed(Index r, Index c) const { return flags_[offset(r, c)] != 0; }
    void set_observed(Index r, Index c, bool value) { flags_[offset(r, c)] = value ? 1 : 0; }

    Index observed_count() const;
    Index missing_count() const { return rows_ * cols_ - observed_count(); }
    /// MR = 1 − |Ω|/(MN).
    double missing_ratio() const;
    ObservationMask complement() const;

    friend bool operator==(const ObservationMask&, const ObservationMask&) = default;

private:
    std::size_t offset(Index r, Index c) const { return static_cast<std::size_t>(r * cols_ + c); }

    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<std::uint8_t> flags_;
};

/// P_Ω: keeps observed entries and zeroes the rest.
QMatrix project_omega(const QMatrix& a, const ObservationMask& mask);
/// P_Ωᶜ: keeps unobserved entries and zeroes the rest.
QMatrix project_complement(const QMatrix& a, const ObservationMask& mask);

} // namespace qbf
