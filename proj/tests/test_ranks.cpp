#include <gtest/gtest.h>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "globenv/error.hpp"
#include "globenv/ranks.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace {

using namespace globenv;

CurveSet column(std::vector<double> values) {
    Matrix<double> m(values.size(), 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, 0) = values[i];
    }
    return CurveSet::on_unit_grid(std::move(m));
}

std::vector<std::int32_t> rank_column(const CurveSet& c) {
    const auto r = two_sided_pointwise_ranks(c);
    std::vector<std::int32_t> out;
    for (std::size_t i = 0; i < c.num_curves(); ++i) {
        out.push_back(r.r(i, 0));
    }
    return out;
}

TEST(TwoSidedRanks, SymmetricColumn) {
    EXPECT_EQ(rank_column(column({1, 2, 3, 4})), (std::vector<std::int32_t>{1, 2, 2, 1}));
}

TEST(TwoSidedRanks, FullTie) {
    EXPECT_EQ(rank_column(column({5, 5, 5})), (std::vector<std::int32_t>{1, 1, 1}));
}

TEST(TwoSidedRanks, TiesShareTheSmallerCompetitionRank) {
    // 3: 4 from below, 2 from above; 1: 1; 2,2: 2 from below, 3 from above; 4: 1.
    EXPECT_EQ(rank_column(column({3, 1, 2, 2, 4})), (std::vector<std::int32_t>{2, 1, 2, 2, 1}));
}

TEST(TwoSidedRanks, MultisetAtDistinctPoints) {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t s = support::uniform_size(rng, 2, 30);
        const std::size_t d = support::uniform_size(rng, 1, 6);
        const auto curves = support::random_distinct_curves(rng, s, d);
        const auto r = two_sided_pointwise_ranks(curves);
        std::vector<std::int32_t> expected;
        for (std::size_t j = 1; j <= s; ++j) {
            expected.push_back(static_cast<std::int32_t>(std::min(j, s + 1 - j)));
        }
        std::sort(expected.begin(), expected.end());
        for (std::size_t k = 0; k < d; ++k) {
            std::vector<std::int32_t> got;
            for (std::size_t i = 0; i < s; ++i) {
                got.push_back(r.r(i, k));
                EXPECT_LE(r.r(i, k), static_cast<std::int32_t>((s + 1) / 2));
            }
            std::sort(got.begin(), got.end());
            ASSERT_EQ(got, expected);
        }
    }
}

TEST(TwoSidedRanks, MatchesCountingOracleWithTies) {
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 300; ++rep) {
        const auto curves = support::random_tied_curves(rng, support::uniform_size(rng, 2, 12),
                                                        support::uniform_size(rng, 1, 5));
        const auto r = two_sided_pointwise_ranks(curves);
        const auto expected = oracle::two_sided_ranks(curves);
        for (std::size_t i = 0; i < curves.num_curves(); ++i) {
            for (std::size_t k = 0; k < curves.num_points(); ++k) {
                ASSERT_EQ(r.r(i, k), expected[i][k]);
            }
        }
    }
}

TEST(ContinuousRanks, ThreeBranchFormula) {
    const auto c = continuous_pointwise_ranks(column({1, 2, 4, 8}));
    // 1: exp(-(2-1)/(8-2)); 2: 1 + (2-1)/(4-1); 4: upper side 1 + (8-4)/(8-2);
    // 8: upper side exp(-(8-4)/(4-1)).
    EXPECT_DOUBLE_EQ(c.c(0, 0), std::exp(-1.0 / 6.0));
    EXPECT_DOUBLE_EQ(c.c(1, 0), 1.0 + 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(c.c(2, 0), 1.0 + 4.0 / 6.0);
    EXPECT_DOUBLE_EQ(c.c(3, 0), std::exp(-4.0 / 3.0));
    EXPECT_NEAR(c.c(0, 0), 0.8465, 5e-5);
    EXPECT_NEAR(c.c(3, 0), 0.2636, 5e-5);
}

TEST(ContinuousRanks, CeilingEqualsIntegerRank) {
    const auto curves = column({1, 2, 4, 8});
    const auto c = continuous_pointwise_ranks(curves);
    const auto r = two_sided_pointwise_ranks(curves);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(std::ceil(c.c(i, 0)), r.r(i, 0));
    }
}

TEST(ContinuousRanks, SandwichAndStrictOrderOnRandomData) {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 300; ++rep) {
        const auto curves = support::random_distinct_curves(rng, support::uniform_size(rng, 3, 25),
                                                            support::uniform_size(rng, 1, 6));
        const auto both = pointwise_ranks(curves);
        for (std::size_t k = 0; k < curves.num_points(); ++k) {
            std::vector<double> col;
            std::vector<double> values;
            for (std::size_t i = 0; i < curves.num_curves(); ++i) {
                const double c = both.cont.c(i, k);
                ASSERT_GT(c, 0.0);
                ASSERT_EQ(std::ceil(c), both.ranks.r(i, k));
                col.push_back(c);
                values.push_back(curves(i, k));
            }
            const auto expected = oracle::continuous_ranks_distinct(values);
            for (std::size_t i = 0; i < col.size(); ++i) {
                ASSERT_DOUBLE_EQ(col[i], expected[i]);
            }
            std::sort(col.begin(), col.end());
            ASSERT_EQ(std::adjacent_find(col.begin(), col.end()), col.end());
        }
    }
}

TEST(ContinuousRanks, TiesStayWithinTheRankInterval) {
    std::mt19937_64 rng(14);
    for (int rep = 0; rep < 300; ++rep) {
        const auto curves = support::random_tied_curves(rng, support::uniform_size(rng, 3, 12),
                                                        support::uniform_size(rng, 1, 5), 3);
        const auto both = pointwise_ranks(curves);
        for (std::size_t i = 0; i < curves.num_curves(); ++i) {
            for (std::size_t k = 0; k < curves.num_points(); ++k) {
                const double c = both.cont.c(i, k);
                ASSERT_TRUE(std::isfinite(c));
                ASSERT_GT(c, both.ranks.r(i, k) - 1);
                ASSERT_LE(c, both.ranks.r(i, k));
            }
        }
    }
}

TEST(ContinuousRanks, DegenerateSpacingsFallBackToHalf) {
    // Only two distinct values: y_(s) - y_(2) is zero for the bottom value.
    const auto c = continuous_pointwise_ranks(column({0, 1, 1}));
    EXPECT_DOUBLE_EQ(c.c(0, 0), 0.5);
    const auto flat = continuous_pointwise_ranks(column({2, 2, 2, 2}));
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_DOUBLE_EQ(flat.c(i, 0), 1.0);
    }
}

TEST(ContinuousRanks, NeedsThreeCurves) {
    EXPECT_THROW(continuous_pointwise_ranks(column({1, 2})), InvalidInput);
}

TEST(RankKernels, BitIdenticalToSerialReferenceAcrossThreadCounts) {
    std::mt19937_64 rng(15);
    const int saved = omp_get_max_threads();
    for (int rep = 0; rep < 40; ++rep) {
        const bool ties = rep % 2 == 0;
        const std::size_t s = support::uniform_size(rng, 3, 60);
        const std::size_t d = support::uniform_size(rng, 1, 40);
        const auto curves = ties ? support::random_tied_curves(rng, s, d, 5)
                                 : support::random_distinct_curves(rng, s, d);
        const auto ref_r = reference::two_sided_pointwise_ranks(curves);
        const auto ref_c = reference::continuous_pointwise_ranks(curves);
        for (const int threads : {1, 3, 4}) {
            omp_set_num_threads(threads);
            const auto both = pointwise_ranks(curves);
            ASSERT_EQ(both.ranks.r, ref_r.r);
            ASSERT_EQ(both.cont.c, ref_c.c);
            ASSERT_EQ(two_sided_pointwise_ranks(curves).r, ref_r.r);
        }
    }
    omp_set_num_threads(saved);
}

TEST(CurveSetValidation, RejectsBadShapes) {
    EXPECT_THROW(column({1.0}), InvalidInput);
    EXPECT_THROW(column({1.0, NAN}), InvalidInput);
    EXPECT_THROW(column({1.0, INFINITY}), InvalidInput);
    EXPECT_THROW(CurveSet(Matrix<double>(2, 2), {0.5, 0.5}), InvalidInput);
    EXPECT_THROW(CurveSet(Matrix<double>(2, 2), {0.5}), InvalidInput);
    EXPECT_THROW(CurveSet(Matrix<double>(2, 0), {}), InvalidInput);
}

} // namespace
