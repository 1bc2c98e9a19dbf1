#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "globenv/matrix.hpp"

namespace globenv {

/// s curves sampled on a common grid of d points. Curve i, point k is values()(i, k).
///
/// Construction validates: s >= 2, d >= 1, every value finite, grid of length d
/// and strictly increasing. Violations throw InvalidInput.
class CurveSet {
public:
    CurveSet(Matrix<double> values, std::vector<double> grid);

    /// Grid x_k = k / d for k = 1..d.
    static CurveSet on_unit_grid(Matrix<double> values);

    std::size_t num_curves() const noexcept { return values_.rows(); }
    std::size_t num_points() const noexcept { return values_.cols(); }

    const Matrix<double>& values() const noexcept { return values_; }
    std::span<const double> grid() const noexcept { return grid_; }
    std::span<const double> curve(std::size_t i) const noexcept { return values_.row(i); }
    double operator()(std::size_t i, std::size_t k) const noexcept { return values_(i, k); }

private:
    Matrix<double> values_;
    std::vector<double> grid_;
};

} // namespace globenv
