#include "globenv/gp_sim.hpp"

#include <boost/random/normal_distribution.hpp>

#include <cmath>
#include <string>

#include "globenv/error.hpp"
#include "globenv/rng.hpp"

namespace globenv {

std::string_view to_string(OutlierKind kind) noexcept {
    switch (kind) {
    case OutlierKind::none: return "none";
    case OutlierKind::integral: return "integral";
    case OutlierKind::maximum: return "maximum";
    }
    return "unknown";
}

OutlierKind parse_outlier(std::string_view name) {
    for (const auto kind : {OutlierKind::none, OutlierKind::integral, OutlierKind::maximum}) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    throw InvalidInput("unknown outlier kind '" + std::string(name) +
                       "' (expected none, integral or maximum)");
}

double ar1_coefficient(double scale, std::size_t base_resolution) {
    if (scale == 0.0) {
        return 0.0;
    }
    return std::exp(-(1.0 / static_cast<double>(base_resolution)) / scale);
}

std::uint64_t row_seed(std::uint64_t pool_seed, std::size_t row) {
    return derive_seed(pool_seed, row);
}

double outlier_value(OutlierKind kind, double x) noexcept {
    switch (kind) {
    case OutlierKind::none: return 0.0;
    case OutlierKind::integral: return 5.0 * x * (1.0 - x);
    case OutlierKind::maximum: return x <= 0.1 ? 100.0 * x * (1.0 - 10.0 * x) : 0.0;
    }
    return 0.0;
}

namespace {

void validate(const GpConfig& config, std::size_t n) {
    if (n < 1) {
        throw InvalidInput("need at least one simulated curve");
    }
    if (!(config.scale >= 0.0) || !std::isfinite(config.scale)) {
        throw InvalidInput("correlation scale must be finite and >= 0");
    }
    if (config.base_resolution < 2) {
        throw InvalidInput("base resolution must be at least 2");
    }
}

std::vector<double> base_grid(std::size_t resolution) {
    std::vector<double> grid(resolution);
    for (std::size_t k = 0; k < resolution; ++k) {
        grid[k] = static_cast<double>(k + 1) / static_cast<double>(resolution);
    }
    return grid;
}

/// AR(1) coefficients for one configuration.
struct Recursion {
    double rho;
    double innovation_sd;

    explicit Recursion(const GpConfig& config)
        : rho(ar1_coefficient(config.scale, config.base_resolution)),
          innovation_sd(config.scale == 0.0
                            ? 1.0
                            : std::sqrt(-std::expm1(-2.0 / static_cast<double>(config.base_resolution) /
                                                    config.scale))) {}
};

void fill_row(const Recursion& rec, std::uint64_t pool_seed, std::size_t row, std::span<double> out) {
    Engine engine(row_seed(pool_seed, row));
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    double x = normal(engine);
    out[0] = x;
    for (std::size_t k = 1; k < out.size(); ++k) {
        x = rec.rho * x + rec.innovation_sd * normal(engine);
        out[k] = x;
    }
}

void check_extract(std::size_t n, std::size_t resolution, std::size_t s, std::size_t d) {
    if (s > n) {
        throw InvalidInput("requested " + std::to_string(s) + " curves from a pool of " +
                           std::to_string(n));
    }
    if (d == 0 || resolution % d != 0) {
        throw InvalidInput("resolution " + std::to_string(d) + " does not divide the base resolution " +
                           std::to_string(resolution));
    }
}

CurvePool empty_pool(const GpConfig& config, std::size_t n) {
    CurvePool pool;
    pool.values = Matrix<double>(n, config.base_resolution);
    pool.grid = base_grid(config.base_resolution);
    pool.seed = config.seed;
    pool.scale = config.scale;
    return pool;
}

} // namespace

CurvePool simulate_gp(const GpConfig& config, std::size_t n) {
    validate(config, n);
    CurvePool pool = empty_pool(config, n);
    const Recursion rec(config);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(n); ++r) {
        const auto row = static_cast<std::size_t>(r);
        fill_row(rec, config.seed, row, pool.values.row(row));
    }
    return pool;
}

void inject_outlier(CurvePool& pool, OutlierKind kind) {
    if (pool.num_curves() == 0) {
        throw InvalidInput("cannot inject an outlier into an empty pool");
    }
    if (kind == OutlierKind::none) {
        return;
    }
    auto first = pool.values.row(0);
    for (std::size_t k = 0; k < first.size(); ++k) {
        first[k] += outlier_value(kind, pool.grid[k]);
    }
}

CurveSet extract(const CurvePool& pool, std::size_t s, std::size_t d) {
    check_extract(pool.num_curves(), pool.resolution(), s, d);
    const std::size_t step = pool.resolution() / d;
    Matrix<double> values(s, d);
    std::vector<double> grid(d);
    for (std::size_t j = 0; j < d; ++j) {
        grid[j] = pool.grid[(j + 1) * step - 1];
    }
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            values(i, j) = pool.values(i, (j + 1) * step - 1);
        }
    }
    return CurveSet(std::move(values), std::move(grid));
}

CurveSet simulate_extracted(const GpConfig& config, OutlierKind outlier, std::size_t s,
                            std::size_t d) {
    validate(config, s);
    check_extract(s, config.base_resolution, s, d);
    const std::size_t step = config.base_resolution / d;
    const std::vector<double> full_grid = base_grid(config.base_resolution);
    const Recursion rec(config);

    Matrix<double> values(s, d);
#pragma omp parallel
    {
        std::vector<double> row(config.base_resolution);
#pragma omp for schedule(static)
        for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(s); ++r) {
            const auto i = static_cast<std::size_t>(r);
            fill_row(rec, config.seed, i, row);
            if (i == 0 && outlier != OutlierKind::none) {
                for (std::size_t k = 0; k < row.size(); ++k) {
                    row[k] += outlier_value(outlier, full_grid[k]);
                }
            }
            for (std::size_t j = 0; j < d; ++j) {
                values(i, j) = row[(j + 1) * step - 1];
            }
        }
    }
    std::vector<double> grid(d);
    for (std::size_t j = 0; j < d; ++j) {
        grid[j] = full_grid[(j + 1) * step - 1];
    }
    return CurveSet(std::move(values), std::move(grid));
}

namespace reference {

CurvePool simulate_gp(const GpConfig& config, std::size_t n) {
    validate(config, n);
    CurvePool pool = empty_pool(config, n);
    const Recursion rec(config);
    for (std::size_t row = 0; row < n; ++row) {
        fill_row(rec, config.seed, row, pool.values.row(row));
    }
    return pool;
}

} // namespace reference
} // namespace globenv
