#include "globenv/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "globenv/error.hpp"

namespace globenv {
namespace {

constexpr double kRelativeTieFloor = 1e-12;

/// Lower continuous rank of the value at competition rank j (1-based) given
/// its distinct neighbours. `prev`/`next` are only read when they exist.
double lower_continuous_rank(std::size_t j, double v, bool has_prev, double prev, bool has_next,
                             double next, double top, double eps) {
    if (!has_next) {
        return static_cast<double>(j);
    }
    if (!has_prev) {
        const double den = top - next;
        if (den <= eps) {
            return 0.5;
        }
        // exp underflows for very isolated minima; stay strictly above zero.
        return std::max(std::exp(-(next - v) / den), std::numeric_limits<double>::denorm_min());
    }
    const double den = next - prev;
    const double base = static_cast<double>(j - 1);
    if (den <= eps) {
        return base + 0.5;
    }
    return std::max(base + (v - prev) / den, std::nextafter(base, INFINITY));
}

void require_cont_size(const CurveSet& curves) {
    if (curves.num_curves() < 3) {
        throw InvalidInput("continuous ranks need at least 3 curves");
    }
}

struct Entry {
    double value;
    std::size_t curve;
};

/// Ranks one grid point from its values sorted ascending. Writes integer ranks
/// and, when `cont` is non-null, continuous ranks.
void rank_sorted_column(std::span<const Entry> sorted, std::size_t k, Matrix<std::int32_t>& ranks,
                        Matrix<double>* cont) {
    const std::size_t s = sorted.size();
    const double bottom = sorted.front().value;
    const double top = sorted.back().value;
    const double eps = kRelativeTieFloor * (top - bottom);

    // Group boundaries of tied values.
    std::size_t start = 0;
    while (start < s) {
        std::size_t end = start + 1;
        while (end < s && sorted[end].value == sorted[start].value) {
            ++end;
        }
        const double v = sorted[start].value;
        const auto below = static_cast<std::int32_t>(start + 1);
        const auto above = static_cast<std::int32_t>(s - end + 1);
        const std::int32_t r = std::min(below, above);

        double c = 0.0;
        if (cont != nullptr) {
            const bool has_prev = start > 0;
            const bool has_next = end < s;
            const double prev = has_prev ? sorted[start - 1].value : 0.0;
            const double next = has_next ? sorted[end].value : 0.0;
            const double lo = lower_continuous_rank(start + 1, v, has_prev, prev, has_next, next,
                                                    top, eps);
            // Same construction on negated values: roles of prev/next swap.
            const double hi = lower_continuous_rank(s - end + 1, -v, has_next, -next, has_prev,
                                                    -prev, -bottom, eps);
            c = std::min(lo, hi);
        }
        for (std::size_t p = start; p < end; ++p) {
            ranks(sorted[p].curve, k) = r;
            if (cont != nullptr) {
                (*cont)(sorted[p].curve, k) = c;
            }
        }
        start = end;
    }
}

void rank_all_columns(const CurveSet& curves, Matrix<std::int32_t>& ranks, Matrix<double>* cont) {
    const std::size_t s = curves.num_curves();
    const auto d = static_cast<std::ptrdiff_t>(curves.num_points());
    const auto& values = curves.values();

#pragma omp parallel
    {
        std::vector<Entry> column(s);
#pragma omp for schedule(static)
        for (std::ptrdiff_t kk = 0; kk < d; ++kk) {
            const auto k = static_cast<std::size_t>(kk);
            for (std::size_t i = 0; i < s; ++i) {
                column[i] = {values(i, k), i};
            }
            std::sort(column.begin(), column.end(), [](const Entry& a, const Entry& b) {
                return a.value < b.value || (a.value == b.value && a.curve < b.curve);
            });
            rank_sorted_column(column, k, ranks, cont);
        }
    }
}

} // namespace

RankMatrix two_sided_pointwise_ranks(const CurveSet& curves) {
    RankMatrix out{Matrix<std::int32_t>(curves.num_curves(), curves.num_points())};
    rank_all_columns(curves, out.r, nullptr);
    return out;
}

ContRankMatrix continuous_pointwise_ranks(const CurveSet& curves) {
    return std::move(pointwise_ranks(curves).cont);
}

PointwiseRanks pointwise_ranks(const CurveSet& curves) {
    require_cont_size(curves);
    PointwiseRanks out{{Matrix<std::int32_t>(curves.num_curves(), curves.num_points())},
                       {Matrix<double>(curves.num_curves(), curves.num_points())}};
    rank_all_columns(curves, out.ranks.r, &out.cont.c);
    return out;
}

namespace reference {

RankMatrix two_sided_pointwise_ranks(const CurveSet& curves) {
    const std::size_t s = curves.num_curves();
    const std::size_t d = curves.num_points();
    RankMatrix out{Matrix<std::int32_t>(s, d)};
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t i = 0; i < s; ++i) {
            std::int32_t below = 1;
            std::int32_t above = 1;
            for (std::size_t j = 0; j < s; ++j) {
                below += curves(j, k) < curves(i, k) ? 1 : 0;
                above += curves(j, k) > curves(i, k) ? 1 : 0;
            }
            out.r(i, k) = std::min(below, above);
        }
    }
    return out;
}

namespace {

/// Lower continuous rank of curves(i, k) among `column`, by scanning.
double lower_by_scan(std::span<const double> column, double v) {
    const double bottom = *std::min_element(column.begin(), column.end());
    const double top = *std::max_element(column.begin(), column.end());
    const double eps = kRelativeTieFloor * (top - bottom);
    std::size_t j = 1;
    bool has_prev = false;
    bool has_next = false;
    double prev = 0.0;
    double next = 0.0;
    for (const double y : column) {
        if (y < v) {
            ++j;
            if (!has_prev || y > prev) {
                prev = y;
                has_prev = true;
            }
        } else if (y > v) {
            if (!has_next || y < next) {
                next = y;
                has_next = true;
            }
        }
    }
    return lower_continuous_rank(j, v, has_prev, prev, has_next, next, top, eps);
}

} // namespace

ContRankMatrix continuous_pointwise_ranks(const CurveSet& curves) {
    require_cont_size(curves);
    const std::size_t s = curves.num_curves();
    const std::size_t d = curves.num_points();
    ContRankMatrix out{Matrix<double>(s, d)};
    std::vector<double> column(s);
    std::vector<double> negated(s);
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t i = 0; i < s; ++i) {
            column[i] = curves(i, k);
            negated[i] = -curves(i, k);
        }
        for (std::size_t i = 0; i < s; ++i) {
            out.c(i, k) = std::min(lower_by_scan(column, column[i]), lower_by_scan(negated, negated[i]));
        }
    }
    return out;
}

} // namespace reference
} // namespace globenv
