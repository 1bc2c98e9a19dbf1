#pragma once

#include <cstddef>
#include <vector>

#include "globenv/curve_set.hpp"
#include "globenv/measures.hpp"

namespace globenv {

/// m_(alpha) = max{ M_i : #{j : M_j < M_i} <= alpha * s }.
///
/// The count comparison carries a 1e-9 relative guard toward inclusion so that
/// alpha * s landing on an integer does not flip with rounding.
/// Throws InvalidInput unless 0 < alpha < 1.
double critical_value(const MeasureVector& measures, double alpha);

/// out[i] = M_i < crit.
std::vector<bool> classify(const MeasureVector& measures, double crit);

struct GlobalEnvelope {
    std::vector<double> lower;
    std::vector<double> upper;
    double crit = 0.0;
    std::vector<std::size_t> kept;
    double alpha = 0.0;
};

/// Envelope with the graphical interpretation: curve i leaves [lower, upper]
/// at some point iff M_i < crit.
///
/// Rank-family kinds use the pointwise hull of the kept curves. qdir needs the
/// QdirParams the measure was computed with; the band is
/// t0 -/+ u * (t0 - qlo, qup - t0) with u = -crit, widened where necessary so
/// every kept curve stays inside despite rounding.
GlobalEnvelope build_envelope(const CurveSet& curves, const MeasureVector& measures, double alpha,
                              const QdirParams* qdir = nullptr);

/// True if curve i lies strictly outside the envelope at some point.
bool exits_envelope(const CurveSet& curves, const GlobalEnvelope& envelope, std::size_t i);

/// Pointwise median of the kept curves (rank family) or t0 (qdir).
std::vector<double> envelope_central_curve(const CurveSet& curves, const GlobalEnvelope& envelope,
                                           MeasureKind kind, const QdirParams* qdir = nullptr);

namespace reference {
/// Exhaustive search over all candidates, O(s^2).
double critical_value(const MeasureVector& measures, double alpha);
} // namespace reference

} // namespace globenv
