#include <gtest/gtest.h>

#include <omp.h>

#include <cmath>

#include "globenv/error.hpp"
#include "globenv/gp_sim.hpp"

namespace {

using namespace globenv;

/// Pearson correlation of (X_k, X_{k+lag}) pairs pooled over rows.
double lag_correlation(const Matrix<double>& v, std::size_t lag) {
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    double n = 0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
        for (std::size_t k = 0; k + lag < v.cols(); ++k) {
            const double x = v(i, k);
            const double y = v(i, k + lag);
            sx += x;
            sy += y;
            sxx += x * x;
            syy += y * y;
            sxy += x * y;
            n += 1;
        }
    }
    const double cov = sxy / n - (sx / n) * (sy / n);
    return cov / std::sqrt((sxx / n - (sx / n) * (sx / n)) * (syy / n - (sy / n) * (sy / n)));
}

TEST(Ar1, CoefficientFromScale) {
    EXPECT_EQ(ar1_coefficient(0.0, 2500), 0.0);
    EXPECT_NEAR(ar1_coefficient(1.0, 2500), 0.99960008, 1e-8);
    EXPECT_DOUBLE_EQ(ar1_coefficient(0.1, 2500), std::exp(-0.004));
}

TEST(OutlierValue, IntegralAndMaximumShapes) {
    EXPECT_DOUBLE_EQ(outlier_value(OutlierKind::integral, 0.5), 1.25);
    EXPECT_EQ(outlier_value(OutlierKind::integral, 0.0), 0.0);
    EXPECT_EQ(outlier_value(OutlierKind::integral, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(outlier_value(OutlierKind::maximum, 0.05), 2.5);
    EXPECT_EQ(outlier_value(OutlierKind::maximum, 0.2), 0.0);
    EXPECT_EQ(outlier_value(OutlierKind::maximum, 0.1), 0.0);
    EXPECT_EQ(outlier_value(OutlierKind::none, 0.3), 0.0);
}

TEST(OutlierKindNames, RoundTrip) {
    for (const auto kind : {OutlierKind::none, OutlierKind::integral, OutlierKind::maximum}) {
        EXPECT_EQ(parse_outlier(to_string(kind)), kind);
    }
    EXPECT_THROW(parse_outlier("spike"), InvalidInput);
}

TEST(SimulateGp, RejectsBadConfig) {
    EXPECT_THROW(simulate_gp({0.1, 2500, 1}, 0), InvalidInput);
    EXPECT_THROW(simulate_gp({-0.1, 2500, 1}, 3), InvalidInput);
    EXPECT_THROW(simulate_gp({NAN, 2500, 1}, 3), InvalidInput);
    EXPECT_THROW(simulate_gp({0.1, 1, 1}, 3), InvalidInput);
}

TEST(SimulateGp, GridAndShape) {
    const auto pool = simulate_gp({0.1, 2500, 3}, 4);
    ASSERT_EQ(pool.num_curves(), 4u);
    ASSERT_EQ(pool.resolution(), 2500u);
    EXPECT_DOUBLE_EQ(pool.grid.front(), 1.0 / 2500.0);
    EXPECT_EQ(pool.grid.back(), 1.0);
}

TEST(SimulateGp, DeterministicAndThreadIndependent) {
    const GpConfig config{1.0, 2500, 99};
    const auto serial = reference::simulate_gp(config, 37);
    const int saved = omp_get_max_threads();
    for (const int threads : {1, 2, 5}) {
        omp_set_num_threads(threads);
        EXPECT_EQ(simulate_gp(config, 37).values, serial.values);
    }
    omp_set_num_threads(saved);
}

TEST(SimulateGp, SmallerPoolIsAPrefix) {
    const GpConfig config{0.1, 2500, 5};
    const auto big = simulate_gp(config, 30);
    const auto small = simulate_gp(config, 10);
    for (std::size_t i = 0; i < 10; ++i) {
        ASSERT_TRUE(std::equal(small.values.row(i).begin(), small.values.row(i).end(),
                               big.values.row(i).begin()));
    }
}

TEST(SimulateGp, IndependentCaseHasNoLagCorrelation) {
    const auto pool = simulate_gp({0.0, 2500, 8}, 40);
    EXPECT_NEAR(lag_correlation(pool.values, 1), 0.0, 0.02);
}

TEST(SimulateGp, LagCorrelationFollowsExponentialKernel) {
    for (const double scale : {0.1, 1.0}) {
        const auto pool = simulate_gp({scale, 2500, 9}, 60);
        for (const std::size_t lag : {1u, 25u}) {
            EXPECT_NEAR(lag_correlation(pool.values, lag),
                        std::exp(-static_cast<double>(lag) / 2500.0 / scale), 0.02)
                << "scale " << scale << " lag " << lag;
        }
    }
}

TEST(SimulateGp, StandardNormalMarginals) {
    const auto pool = simulate_gp({0.0, 2500, 10}, 400);
    double sum = 0, sq = 0;
    for (const double v : pool.values.data()) {
        sum += v;
        sq += v * v;
    }
    const double n = static_cast<double>(pool.values.data().size());
    EXPECT_NEAR(sum / n, 0.0, 0.01);
    EXPECT_NEAR(sq / n - (sum / n) * (sum / n), 1.0, 0.02);
}

TEST(InjectOutlier, NoneIsIdentity) {
    auto pool = simulate_gp({0.1, 2500, 12}, 3);
    const auto before = pool.values;
    inject_outlier(pool, OutlierKind::none);
    EXPECT_EQ(pool.values, before);
}

TEST(InjectOutlier, OnlyFirstRowChanges) {
    for (const auto kind : {OutlierKind::integral, OutlierKind::maximum}) {
        auto pool = simulate_gp({0.1, 2500, 13}, 4);
        const auto before = pool.values;
        inject_outlier(pool, kind);
        for (std::size_t k = 0; k < pool.resolution(); ++k) {
            const double expected = before(0, k) + outlier_value(kind, pool.grid[k]);
            ASSERT_EQ(pool.values(0, k), expected);
        }
        for (std::size_t i = 1; i < 4; ++i) {
            ASSERT_TRUE(std::equal(pool.values.row(i).begin(), pool.values.row(i).end(),
                                   before.row(i).begin()));
        }
    }
}

TEST(Extract, IdentityAtFullResolution) {
    const auto pool = simulate_gp({0.1, 2500, 14}, 5);
    const auto curves = extract(pool, 5, 2500);
    EXPECT_EQ(curves.values(), pool.values);
}

TEST(Extract, CoarseGridIsARegularSubsample) {
    const auto pool = simulate_gp({0.1, 2500, 15}, 5);
    const auto curves = extract(pool, 3, 20);
    ASSERT_EQ(curves.num_points(), 20u);
    for (std::size_t j = 0; j < 20; ++j) {
        EXPECT_NEAR(curves.grid()[j], 0.05 * static_cast<double>(j + 1), 1e-15);
        EXPECT_EQ(curves(2, j), pool.values(2, 125 * (j + 1) - 1));
    }
}

TEST(Extract, PrefixNesting) {
    const auto pool = simulate_gp({1.0, 2500, 16}, 40);
    const auto a = extract(pool, 20, 100);
    const auto b = extract(pool, 40, 100);
    for (std::size_t i = 0; i < 20; ++i) {
        ASSERT_TRUE(std::equal(a.curve(i).begin(), a.curve(i).end(), b.curve(i).begin()));
    }
}

TEST(Extract, RejectsNonDivisorsAndOversizedRequests) {
    const auto pool = simulate_gp({0.1, 2500, 17}, 5);
    EXPECT_THROW(extract(pool, 5, 300), InvalidInput);
    EXPECT_THROW(extract(pool, 5, 0), InvalidInput);
    EXPECT_THROW(extract(pool, 6, 100), InvalidInput);
}

TEST(Extract, CoarseGridKeepsTheProcessLaw) {
    // Spacing 25 / 2500 = 0.01, so the lag-one correlation is exp(-0.01 / scale).
    const auto pool = simulate_gp({0.1, 2500, 18}, 400);
    const auto curves = extract(pool, 400, 100);
    EXPECT_NEAR(lag_correlation(curves.values(), 1), std::exp(-0.1), 0.02);
}

TEST(SimulateExtracted, BitIdenticalToThePoolRoute) {
    for (const auto kind : {OutlierKind::none, OutlierKind::integral, OutlierKind::maximum}) {
        const GpConfig config{0.1, 2500, 19};
        auto pool = simulate_gp(config, 12);
        inject_outlier(pool, kind);
        const auto via_pool = extract(pool, 12, 100);
        const auto streamed = simulate_extracted(config, kind, 12, 100);
        ASSERT_EQ(streamed.values(), via_pool.values());
        ASSERT_TRUE(std::equal(streamed.grid().begin(), streamed.grid().end(), via_pool.grid().begin()));
    }
}

} // namespace
