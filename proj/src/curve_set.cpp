#include "globenv/curve_set.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "globenv/error.hpp"

namespace globenv {

CurveSet::CurveSet(Matrix<double> values, std::vector<double> grid)
    : values_(std::move(values)), grid_(std::move(grid)) {
    if (values_.rows() < 2) {
        throw InvalidInput("need at least 2 curves, got " + std::to_string(values_.rows()));
    }
    if (values_.cols() < 1) {
        throw InvalidInput("curves need at least one grid point");
    }
    if (grid_.size() != values_.cols()) {
        throw InvalidInput("grid has " + std::to_string(grid_.size()) + " points but curves have " +
                           std::to_string(values_.cols()));
    }
    for (std::size_t k = 0; k < grid_.size(); ++k) {
        if (!std::isfinite(grid_[k])) {
            throw InvalidInput("non-finite grid value at point " + std::to_string(k + 1));
        }
        if (k > 0 && !(grid_[k] > grid_[k - 1])) {
            throw InvalidInput("grid is not strictly increasing at point " + std::to_string(k + 1));
        }
    }
    for (std::size_t i = 0; i < values_.rows(); ++i) {
        for (std::size_t k = 0; k < values_.cols(); ++k) {
            if (!std::isfinite(values_(i, k))) {
                throw InvalidInput("non-finite value for curve " + std::to_string(i + 1) +
                                   " at point " + std::to_string(k + 1));
            }
        }
    }
}

CurveSet CurveSet::on_unit_grid(Matrix<double> values) {
    std::vector<double> grid(values.cols());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        grid[k] = static_cast<double>(k + 1) / static_cast<double>(grid.size());
    }
    return CurveSet(std::move(values), std::move(grid));
}

} // namespace globenv
