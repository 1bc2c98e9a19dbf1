#pragma once

#include <cstdint>

#include "globenv/curve_set.hpp"
#include "globenv/matrix.hpp"

namespace globenv {

/// Integer two-sided pointwise ranks R_ik >= 1 (s x d).
struct RankMatrix {
    Matrix<std::int32_t> r;
};

/// Continuous two-sided pointwise ranks c_ik > 0 (s x d).
struct ContRankMatrix {
    Matrix<double> c;
};

/// R_ik = min(1 + #{j : T_j[k] < T_i[k]}, 1 + #{j : T_j[k] > T_i[k]}).
/// Ties share the smaller competition rank on each side.
RankMatrix two_sided_pointwise_ranks(const CurveSet& curves);

/// Interpolated two-sided ranks. At a point with ordered values
/// y_(1) < ... < y_(s), the lower rank of y_(j) is
///   exp(-(y_(2) - y_(1)) / (y_(s) - y_(2)))              for j = 1,
///   (j - 1) + (y_(j) - y_(j-1)) / (y_(j+1) - y_(j-1))     for 1 < j < s,
///   s                                                    for j = s;
/// the upper rank is the same on negated values and c_ik is the smaller of the two.
///
/// With ties, j is the competition rank and the neighbours are the nearest
/// distinct values. A denominator at or below 1e-12 times the column range is
/// replaced by a fraction of 0.5 (or the value 0.5 for j = 1).
///
/// Requires s >= 3; throws InvalidInput otherwise.
ContRankMatrix continuous_pointwise_ranks(const CurveSet& curves);

/// Both rank matrices from one sort per grid point.
struct PointwiseRanks {
    RankMatrix ranks;
    ContRankMatrix cont;
};
PointwiseRanks pointwise_ranks(const CurveSet& curves);

/// Serial implementations straight from the counting definitions, O(s^2 d).
/// Kept as the oracle for the parallel kernels above; results are bit-identical.
namespace reference {
RankMatrix two_sided_pointwise_ranks(const CurveSet& curves);
ContRankMatrix continuous_pointwise_ranks(const CurveSet& curves);
} // namespace reference

} // namespace globenv
