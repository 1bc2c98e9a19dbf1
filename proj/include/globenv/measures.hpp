#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "globenv/curve_set.hpp"
#include "globenv/ranks.hpp"

namespace globenv {

enum class MeasureKind { rank, erl, cont, area, qdir };

inline constexpr std::array<MeasureKind, 5> kAllMeasures = {
    MeasureKind::rank, MeasureKind::erl, MeasureKind::cont, MeasureKind::area, MeasureKind::qdir};

std::string_view to_string(MeasureKind kind) noexcept;
/// Throws InvalidInput for unknown names.
MeasureKind parse_measure(std::string_view name);

/// True for the kinds whose envelope is the hull of the kept curves.
constexpr bool is_rank_family(MeasureKind kind) noexcept { return kind != MeasureKind::qdir; }

/// Per-curve measure values, oriented so that smaller means more extreme.
struct MeasureVector {
    MeasureKind kind;
    std::vector<double> m;
};

MeasureVector extreme_rank(const RankMatrix& ranks);

/// Extreme rank length: (1/s) * #{j : sorted ranks of j <=lex sorted ranks of i}.
MeasureVector erl_measure(const RankMatrix& ranks);

MeasureVector cont_measure(const ContRankMatrix& contranks);

/// M_i = k_i - (1/d) * sum_k max(0, k_i - c_ik) with k_i the extreme rank of curve i.
MeasureVector area_measure(const RankMatrix& ranks, const ContRankMatrix& contranks);

inline constexpr double kDefaultQdirBeta = 0.025;

/// Central curve and directional quantiles for the qdir measure.
///
/// The spreads qup - t0 and t0 - qlo are clamped below at 1e-12 times the
/// column range and kept separately in `up`/`down`, which is what the measure
/// divides by. Points where every curve has the same value are flagged in
/// `flat` and ignored by the measure.
struct QdirParams {
    std::vector<double> t0;
    std::vector<double> qlo;
    std::vector<double> qup;
    std::vector<double> up;
    std::vector<double> down;
    std::vector<char> flat;
    double beta = kDefaultQdirBeta;
};

/// Pointwise mean and beta / (1 - beta) sample quantiles (order-statistic
/// interpolation at h = (s - 1) p + 1). Throws InvalidInput for beta outside
/// (0, 0.5) and DegenerateData when no point has spread above the clamp floor.
QdirParams qdir_params(const CurveSet& curves, double beta = kDefaultQdirBeta);

/// M_i = -max_k max((T_i - t0) / (qup - t0), (t0 - T_i) / (t0 - qlo)).
MeasureVector qdir_measure(const CurveSet& curves, const QdirParams& params);

/// Everything needed to evaluate any subset of measures on one CurveSet.
struct MeasureBundle {
    std::vector<MeasureVector> measures;
    std::optional<QdirParams> qdir;

    const MeasureVector& get(MeasureKind kind) const;
};

/// Computes the requested measures, sharing rank matrices between kinds.
MeasureBundle compute_measures(const CurveSet& curves, std::span<const MeasureKind> kinds,
                               double qdir_beta = kDefaultQdirBeta);

MeasureVector compute_measure(const CurveSet& curves, MeasureKind kind,
                              double qdir_beta = kDefaultQdirBeta);

namespace reference {
/// Brute-force pairwise lexicographic counting, O(s^2 d log d).
MeasureVector erl_measure(const RankMatrix& ranks);
} // namespace reference

} // namespace globenv
