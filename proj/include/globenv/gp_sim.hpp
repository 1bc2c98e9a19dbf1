#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "globenv/curve_set.hpp"
#include "globenv/matrix.hpp"

namespace globenv {

inline constexpr std::size_t kBaseResolution = 2500;

struct GpConfig {
    double scale = 0.0; ///< correlation scale phi; 0 means independent points
    std::size_t base_resolution = kBaseResolution;
    std::uint64_t seed = 0;
};

enum class OutlierKind { none, integral, maximum };

std::string_view to_string(OutlierKind kind) noexcept;
OutlierKind parse_outlier(std::string_view name);

/// n x D realizations on the grid x_k = k / D, k = 1..D.
struct CurvePool {
    Matrix<double> values;
    std::vector<double> grid;
    std::uint64_t seed = 0;
    double scale = 0.0;

    std::size_t num_curves() const noexcept { return values.rows(); }
    std::size_t resolution() const noexcept { return values.cols(); }
};

/// Lag-one coefficient exp(-(1/D) / phi), or 0 for phi = 0.
double ar1_coefficient(double scale, std::size_t base_resolution);

/// Seed of the random stream that produces row `row` of a pool.
std::uint64_t row_seed(std::uint64_t pool_seed, std::size_t row);

/// Zero-mean, unit-variance stationary process with corr = exp(-|x - x'| / phi),
/// drawn exactly by the AR(1) recursion. Row r depends only on (seed, r), so a
/// pool of n rows is a prefix of any larger pool with the same seed and rows
/// are generated in parallel without affecting the result.
CurvePool simulate_gp(const GpConfig& config, std::size_t n);

/// none: 0; integral: 5x(1 - x); maximum: 100x(1 - 10x) on [0, 0.1], else 0.
double outlier_value(OutlierKind kind, double x) noexcept;

/// Adds the outlier function to row 0; all other rows are untouched.
void inject_outlier(CurvePool& pool, OutlierKind kind);

/// First s rows at grid indices step, 2 step, ..., D (1-based) with step = D / d.
CurveSet extract(const CurvePool& pool, std::size_t s, std::size_t d);

/// extract(inject_outlier(simulate_gp(config, s)), s, d) computed row by row,
/// holding only s x d values. Bit-identical to the pool route.
CurveSet simulate_extracted(const GpConfig& config, OutlierKind outlier, std::size_t s,
                            std::size_t d);

namespace reference {
/// Single-threaded row loop.
CurvePool simulate_gp(const GpConfig& config, std::size_t n);
} // namespace reference

} // namespace globenv
