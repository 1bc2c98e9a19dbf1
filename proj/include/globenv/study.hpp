#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "globenv/curve_set.hpp"
#include "globenv/gp_sim.hpp"
#include "globenv/measures.hpp"

namespace globenv {

struct ScenarioGrid {
    std::vector<std::size_t> s_list{20, 40, 80, 160, 320, 640, 1280, 2560, 5120, 10240};
    std::vector<std::size_t> d_list{20, 100, 500, 2500};
    std::vector<double> scale_list{0.0, 0.1, 1.0};
    std::vector<OutlierKind> outlier_list{OutlierKind::none, OutlierKind::integral,
                                          OutlierKind::maximum};
    std::vector<MeasureKind> measures{kAllMeasures.begin(), kAllMeasures.end()};
    double alpha = 0.05;
    std::size_t reps = 1000;
    std::uint64_t master_seed = 0;

    /// Draw a fresh pool for every (s, d) cell instead of nesting cells in one pool.
    bool independent_cells = false;
    /// Upper bound on simultaneously held pool memory across worker threads.
    std::size_t memory_budget_bytes = std::size_t{512} << 20;

    /// Throws InvalidInput on empty lists, d not dividing 2500, reps == 0, bad alpha
    /// or s < 3 when cont/area are requested.
    void validate() const;

    std::size_t s_max() const;
    std::size_t cell_count() const;
};

/// reps = 500, s <= 640, d <= 500, everything else at the defaults.
ScenarioGrid desk_profile();

struct PowerEstimate {
    MeasureKind measure;
    std::size_t s = 0;
    std::size_t d = 0;
    double scale = 0.0;
    OutlierKind outlier = OutlierKind::none;
    double alpha = 0.0;
    std::size_t reps = 0;
    std::size_t detections = 0;
    double power = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::uint64_t master_seed = 0;
};

using PowerTable = std::vector<PowerEstimate>;

inline constexpr double kWilsonZ95 = 1.959964;

/// Wilson score interval for detections / reps.
std::pair<double, double> wilson_ci(std::size_t detections, std::size_t reps,
                                    double z = kWilsonZ95);

/// M_1 < m_(alpha) for the given measure, i.e. curve 0 is flagged extreme.
bool detect_first(const CurveSet& curves, MeasureKind kind, double alpha);

/// detect_first for several kinds with shared rank computations; result order follows `kinds`.
std::vector<char> detect_first_all(const CurveSet& curves, std::span<const MeasureKind> kinds,
                                   double alpha);

/// Seed of the pool for one replication. Mixes the master seed with the bit
/// pattern of the scale value, the outlier kind and the replication index.
std::uint64_t rep_seed(std::uint64_t master_seed, double scale, OutlierKind outlier,
                       std::size_t rep_index);

/// Detections of one replication, indexed [s][d][measure] in grid-list order.
struct RepDetections {
    std::size_t n_s = 0, n_d = 0, n_m = 0;
    std::vector<char> hits;

    bool operator()(std::size_t si, std::size_t di, std::size_t mi) const {
        return hits[(si * n_d + di) * n_m + mi] != 0;
    }
};

/// One replication (1-based rep_index) for one (scale, outlier) pair.
RepDetections run_rep(const ScenarioGrid& grid, double scale, OutlierKind outlier,
                      std::size_t rep_index);

/// Invoked after each (scale, outlier) block with (blocks done, blocks total).
using ProgressFn = std::function<void(std::size_t, std::size_t)>;

/// Full factorial study. Replications run in parallel; the table does not
/// depend on the thread count.
PowerTable run_study(const ScenarioGrid& grid, const ProgressFn& progress = {});

} // namespace globenv
