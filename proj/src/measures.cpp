#include "globenv/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "globenv/error.hpp"

namespace globenv {

std::string_view to_string(MeasureKind kind) noexcept {
    switch (kind) {
    case MeasureKind::rank: return "rank";
    case MeasureKind::erl: return "erl";
    case MeasureKind::cont: return "cont";
    case MeasureKind::area: return "area";
    case MeasureKind::qdir: return "qdir";
    }
    return "unknown";
}

MeasureKind parse_measure(std::string_view name) {
    for (const auto kind : kAllMeasures) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    throw InvalidInput("unknown measure '" + std::string(name) +
                       "' (expected rank, erl, cont, area or qdir)");
}

namespace {

std::ptrdiff_t signed_size(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }

/// Per-curve minimum of a rank-like matrix.
template <typename T>
std::vector<double> row_minima(const Matrix<T>& m) {
    std::vector<double> out(m.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < signed_size(m.rows()); ++ii) {
        const auto row = m.row(static_cast<std::size_t>(ii));
        out[static_cast<std::size_t>(ii)] = static_cast<double>(*std::min_element(row.begin(), row.end()));
    }
    return out;
}

/// Each curve's ranks sorted ascending.
Matrix<std::int32_t> sorted_rank_rows(const RankMatrix& ranks) {
    Matrix<std::int32_t> sorted = ranks.r;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < signed_size(sorted.rows()); ++ii) {
        auto row = sorted.row(static_cast<std::size_t>(ii));
        std::sort(row.begin(), row.end());
    }
    return sorted;
}

bool lex_less(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

MeasureVector extreme_rank(const RankMatrix& ranks) {
    return {MeasureKind::rank, row_minima(ranks.r)};
}

MeasureVector erl_measure(const RankMatrix& ranks) {
    const std::size_t s = ranks.r.rows();
    const Matrix<std::int32_t> sorted = sorted_rank_rows(ranks);

    std::vector<std::size_t> order(s);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lex_less(sorted.row(a), sorted.row(b));
    });

    // Walk groups of equal vectors; every member counts all vectors up to the group end.
    MeasureVector out{MeasureKind::erl, std::vector<double>(s)};
    std::size_t start = 0;
    while (start < s) {
        std::size_t end = start + 1;
        while (end < s && !lex_less(sorted.row(order[start]), sorted.row(order[end]))) {
            ++end;
        }
        const double value = static_cast<double>(end) / static_cast<double>(s);
        for (std::size_t p = start; p < end; ++p) {
            out.m[order[p]] = value;
        }
        start = end;
    }
    return out;
}

MeasureVector cont_measure(const ContRankMatrix& contranks) {
    return {MeasureKind::cont, row_minima(contranks.c)};
}

MeasureVector area_measure(const RankMatrix& ranks, const ContRankMatrix& contranks) {
    if (ranks.r.rows() != contranks.c.rows() || ranks.r.cols() != contranks.c.cols()) {
        throw InvalidInput("rank matrices come from different curve sets");
    }
    const std::size_t s = ranks.r.rows();
    const std::size_t d = ranks.r.cols();
    MeasureVector out{MeasureKind::area, std::vector<double>(s)};
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < signed_size(s); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        const auto r = ranks.r.row(i);
        const auto c = contranks.c.row(i);
        const double extreme = *std::min_element(r.begin(), r.end());
        double deficit = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            deficit += std::max(0.0, extreme - c[k]);
        }
        // The deficit can round up to the whole rank level; keep the value above k - 1.
        out.m[i] = std::max(extreme - deficit / static_cast<double>(d), std::nextafter(extreme - 1.0, INFINITY));
    }
    return out;
}

namespace {

/// Sample quantile with order-statistic interpolation at h = (n - 1) p + 1.
double interpolated_quantile(std::span<const double> sorted, double p) {
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

constexpr double kRelativeSpreadFloor = 1e-12;

} // namespace

QdirParams qdir_params(const CurveSet& curves, double beta) {
    if (!(beta > 0.0 && beta < 0.5)) {
        throw InvalidInput("qdir beta must lie in (0, 0.5)");
    }
    const std::size_t s = curves.num_curves();
    const std::size_t d = curves.num_points();
    QdirParams p;
    p.beta = beta;
    p.t0.resize(d);
    p.qlo.resize(d);
    p.qup.resize(d);
    p.up.resize(d);
    p.down.resize(d);
    p.flat.assign(d, 0);
    std::vector<char> spread_ok(d, 0);

#pragma omp parallel
    {
        std::vector<double> column(s);
#pragma omp for schedule(static)
        for (std::ptrdiff_t kk = 0; kk < signed_size(d); ++kk) {
            const auto k = static_cast<std::size_t>(kk);
            double sum = 0.0;
            for (std::size_t i = 0; i < s; ++i) {
                column[i] = curves(i, k);
                sum += column[i];
            }
            std::sort(column.begin(), column.end());
            const double t0 = sum / static_cast<double>(s);
            const double range = column.back() - column.front();
            const double floor = kRelativeSpreadFloor * range;
            const double up = interpolated_quantile(column, 1.0 - beta) - t0;
            const double down = t0 - interpolated_quantile(column, beta);
            p.t0[k] = t0;
            p.up[k] = std::max(up, floor);
            p.down[k] = std::max(down, floor);
            p.qup[k] = t0 + p.up[k];
            p.qlo[k] = t0 - p.down[k];
            p.flat[k] = range == 0.0 ? 1 : 0;
            spread_ok[k] = (up > floor || down > floor) ? 1 : 0;
        }
    }
    if (std::none_of(spread_ok.begin(), spread_ok.end(), [](char c) { return c != 0; })) {
        throw DegenerateData("curves have no spread at any grid point");
    }
    return p;
}

MeasureVector qdir_measure(const CurveSet& curves, const QdirParams& params) {
    const std::size_t s = curves.num_curves();
    const std::size_t d = curves.num_points();
    if (params.t0.size() != d) {
        throw InvalidInput("qdir parameters do not match the curve set");
    }
    MeasureVector out{MeasureKind::qdir, std::vector<double>(s)};
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < signed_size(s); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        double worst = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            if (params.flat[k] != 0) {
                continue;
            }
            const double t = curves(i, k);
            const double dev = std::max((t - params.t0[k]) / params.up[k],
                                        (params.t0[k] - t) / params.down[k]);
            worst = std::max(worst, dev);
        }
        out.m[i] = -worst;
    }
    return out;
}

const MeasureVector& MeasureBundle::get(MeasureKind kind) const {
    for (const auto& mv : measures) {
        if (mv.kind == kind) {
            return mv;
        }
    }
    throw InvalidInput("measure '" + std::string(to_string(kind)) + "' was not computed");
}

MeasureBundle compute_measures(const CurveSet& curves, std::span<const MeasureKind> kinds,
                               double qdir_beta) {
    const auto wants = [&](MeasureKind k) {
        return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
    };
    const bool need_cont = wants(MeasureKind::cont) || wants(MeasureKind::area);
    const bool need_ranks = need_cont || wants(MeasureKind::rank) || wants(MeasureKind::erl);

    MeasureBundle bundle;
    PointwiseRanks pr;
    if (need_cont) {
        pr = pointwise_ranks(curves);
    } else if (need_ranks) {
        pr.ranks = two_sided_pointwise_ranks(curves);
    }
    for (const auto kind : kinds) {
        switch (kind) {
        case MeasureKind::rank: bundle.measures.push_back(extreme_rank(pr.ranks)); break;
        case MeasureKind::erl: bundle.measures.push_back(erl_measure(pr.ranks)); break;
        case MeasureKind::cont: bundle.measures.push_back(cont_measure(pr.cont)); break;
        case MeasureKind::area: bundle.measures.push_back(area_measure(pr.ranks, pr.cont)); break;
        case MeasureKind::qdir:
            bundle.qdir = qdir_params(curves, qdir_beta);
            bundle.measures.push_back(qdir_measure(curves, *bundle.qdir));
            break;
        }
    }
    return bundle;
}

MeasureVector compute_measure(const CurveSet& curves, MeasureKind kind, double qdir_beta) {
    const MeasureKind kinds[] = {kind};
    return std::move(compute_measures(curves, kinds, qdir_beta).measures.front());
}

namespace reference {

MeasureVector erl_measure(const RankMatrix& ranks) {
    const std::size_t s = ranks.r.rows();
    std::vector<std::vector<std::int32_t>> sorted(s);
    for (std::size_t i = 0; i < s; ++i) {
        const auto row = ranks.r.row(i);
        sorted[i].assign(row.begin(), row.end());
        std::sort(sorted[i].begin(), sorted[i].end());
    }
    MeasureVector out{MeasureKind::erl, std::vector<double>(s)};
    for (std::size_t i = 0; i < s; ++i) {
        std::size_t count = 0;
        for (std::size_t j = 0; j < s; ++j) {
            count += sorted[j] <= sorted[i] ? 1 : 0;
        }
        out.m[i] = static_cast<double>(count) / static_cast<double>(s);
    }
    return out;
}

} // namespace reference
} // namespace globenv
