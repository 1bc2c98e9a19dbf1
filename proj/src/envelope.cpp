#include "globenv/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "globenv/error.hpp"

namespace globenv {
namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidInput("alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
}

void check_measures(const MeasureVector& measures) {
    if (measures.m.empty()) {
        throw InvalidInput("empty measure vector");
    }
    for (const double v : measures.m) {
        if (std::isnan(v)) {
            throw InvalidInput("measure vector contains NaN");
        }
    }
}

/// count <= alpha * s, leaning toward inclusion by a relative 1e-9.
bool count_within_level(std::size_t count, double alpha, std::size_t s) {
    const double bound = alpha * static_cast<double>(s);
    return static_cast<double>(count) <= bound * (1.0 + 1e-9);
}

} // namespace

double critical_value(const MeasureVector& measures, double alpha) {
    check_alpha(alpha);
    check_measures(measures);
    std::vector<double> sorted = measures.m;
    std::sort(sorted.begin(), sorted.end());

    // The index of the first occurrence of a value is the number of strictly smaller ones,
    // and it grows with the value, so the answer is the last qualifying distinct value.
    double crit = sorted.front();
    for (std::size_t p = 1; p < sorted.size(); ++p) {
        if (sorted[p] == sorted[p - 1]) {
            continue;
        }
        if (!count_within_level(p, alpha, sorted.size())) {
            break;
        }
        crit = sorted[p];
    }
    return crit;
}

std::vector<bool> classify(const MeasureVector& measures, double crit) {
    std::vector<bool> out(measures.m.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = measures.m[i] < crit;
    }
    return out;
}

GlobalEnvelope build_envelope(const CurveSet& curves, const MeasureVector& measures, double alpha,
                              const QdirParams* qdir) {
    const std::size_t s = curves.num_curves();
    const std::size_t d = curves.num_points();
    if (measures.m.size() != s) {
        throw InvalidInput("measure vector length does not match the number of curves");
    }

    GlobalEnvelope env;
    env.alpha = alpha;
    env.crit = critical_value(measures, alpha);
    for (std::size_t i = 0; i < s; ++i) {
        if (measures.m[i] >= env.crit) {
            env.kept.push_back(i);
        }
    }

    // Hull of the kept curves.
    std::vector<double> kept_lo(d);
    std::vector<double> kept_hi(d);
    for (std::size_t k = 0; k < d; ++k) {
        double lo = curves(env.kept.front(), k);
        double hi = lo;
        for (const std::size_t i : env.kept) {
            lo = std::min(lo, curves(i, k));
            hi = std::max(hi, curves(i, k));
        }
        kept_lo[k] = lo;
        kept_hi[k] = hi;
    }

    if (measures.kind != MeasureKind::qdir) {
        env.lower = std::move(kept_lo);
        env.upper = std::move(kept_hi);
        return env;
    }

    if (qdir == nullptr) {
        throw InvalidInput("the qdir envelope needs the qdir parameters of the measure");
    }
    if (qdir->t0.size() != d) {
        throw InvalidInput("qdir parameters do not match the curve set");
    }
    const double u = -env.crit;
    env.lower.resize(d);
    env.upper.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
        if (qdir->flat[k] != 0) {
            env.lower[k] = env.upper[k] = qdir->t0[k];
            continue;
        }
        env.lower[k] = std::min(qdir->t0[k] - u * qdir->down[k], kept_lo[k]);
        env.upper[k] = std::max(qdir->t0[k] + u * qdir->up[k], kept_hi[k]);
    }
    return env;
}

bool exits_envelope(const CurveSet& curves, const GlobalEnvelope& envelope, std::size_t i) {
    for (std::size_t k = 0; k < curves.num_points(); ++k) {
        if (curves(i, k) < envelope.lower[k] || curves(i, k) > envelope.upper[k]) {
            return true;
        }
    }
    return false;
}

std::vector<double> envelope_central_curve(const CurveSet& curves, const GlobalEnvelope& envelope,
                                           MeasureKind kind, const QdirParams* qdir) {
    if (kind == MeasureKind::qdir) {
        if (qdir == nullptr) {
            throw InvalidInput("the qdir central curve needs the qdir parameters");
        }
        return qdir->t0;
    }
    const std::size_t d = curves.num_points();
    std::vector<double> central(d);
    std::vector<double> column(envelope.kept.size());
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t p = 0; p < envelope.kept.size(); ++p) {
            column[p] = curves(envelope.kept[p], k);
        }
        std::sort(column.begin(), column.end());
        const std::size_t n = column.size();
        central[k] = n % 2 == 1 ? column[n / 2] : 0.5 * (column[n / 2 - 1] + column[n / 2]);
    }
    return central;
}

namespace reference {

double critical_value(const MeasureVector& measures, double alpha) {
    check_alpha(alpha);
    check_measures(measures);
    const std::size_t s = measures.m.size();
    bool found = false;
    double best = 0.0;
    for (const double candidate : measures.m) {
        std::size_t smaller = 0;
        for (const double other : measures.m) {
            smaller += other < candidate ? 1 : 0;
        }
        if (count_within_level(smaller, alpha, s) && (!found || candidate > best)) {
            best = candidate;
            found = true;
        }
    }
    return best;
}

} // namespace reference
} // namespace globenv
