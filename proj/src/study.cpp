#include "globenv/study.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <string>

#include "globenv/envelope.hpp"
#include "globenv/error.hpp"
#include "globenv/rng.hpp"

namespace globenv {
namespace {

template <typename T>
void require_unique(const std::vector<T>& values, const char* what) {
    if (values.empty()) {
        throw InvalidInput(std::string(what) + " must not be empty");
    }
    const std::set<T> seen(values.begin(), values.end());
    if (seen.size() != values.size()) {
        throw InvalidInput(std::string(what) + " contains duplicates");
    }
}

} // namespace

void ScenarioGrid::validate() const {
    require_unique(s_list, "s list");
    require_unique(d_list, "d list");
    require_unique(scale_list, "scale list");
    require_unique(outlier_list, "outlier list");
    require_unique(measures, "measure list");
    const bool needs_three = std::any_of(measures.begin(), measures.end(), [](MeasureKind k) {
        return k == MeasureKind::cont || k == MeasureKind::area;
    });
    for (const auto s : s_list) {
        if (s < (needs_three ? 3u : 2u)) {
            throw InvalidInput("s = " + std::to_string(s) + " is too small for the requested measures");
        }
    }
    for (const auto d : d_list) {
        if (d == 0 || kBaseResolution % d != 0) {
            throw InvalidInput("d = " + std::to_string(d) + " does not divide " +
                               std::to_string(kBaseResolution));
        }
    }
    for (const auto scale : scale_list) {
        if (!(scale >= 0.0) || !std::isfinite(scale)) {
            throw InvalidInput("correlation scales must be finite and >= 0");
        }
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidInput("alpha must lie in (0, 1)");
    }
    if (reps < 1) {
        throw InvalidInput("reps must be at least 1");
    }
}

std::size_t ScenarioGrid::s_max() const {
    return *std::max_element(s_list.begin(), s_list.end());
}

std::size_t ScenarioGrid::cell_count() const {
    return measures.size() * s_list.size() * d_list.size() * scale_list.size() *
           outlier_list.size();
}

ScenarioGrid desk_profile() {
    ScenarioGrid grid;
    grid.reps = 500;
    std::erase_if(grid.s_list, [](std::size_t s) { return s > 640; });
    std::erase_if(grid.d_list, [](std::size_t d) { return d > 500; });
    return grid;
}

std::pair<double, double> wilson_ci(std::size_t detections, std::size_t reps, double z) {
    if (reps == 0 || detections > reps) {
        throw InvalidInput("Wilson interval needs 0 <= detections <= reps and reps >= 1");
    }
    const double n = static_cast<double>(reps);
    const double p = static_cast<double>(detections) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    double lo = detections == 0 ? 0.0 : std::max(0.0, center - half);
    double hi = detections == reps ? 1.0 : std::min(1.0, center + half);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
    return {lo, hi};
}

std::vector<char> detect_first_all(const CurveSet& curves, std::span<const MeasureKind> kinds,
                                   double alpha) {
    const MeasureBundle bundle = compute_measures(curves, kinds);
    std::vector<char> out(kinds.size());
    for (std::size_t m = 0; m < kinds.size(); ++m) {
        const MeasureVector& mv = bundle.get(kinds[m]);
        out[m] = mv.m.front() < critical_value(mv, alpha) ? 1 : 0;
    }
    return out;
}

bool detect_first(const CurveSet& curves, MeasureKind kind, double alpha) {
    const MeasureKind kinds[] = {kind};
    return detect_first_all(curves, kinds, alpha).front() != 0;
}

std::uint64_t rep_seed(std::uint64_t master_seed, double scale, OutlierKind outlier,
                       std::size_t rep_index) {
    const double canonical = scale == 0.0 ? 0.0 : scale; // fold -0.0 into 0.0
    std::uint64_t seed = derive_seed(master_seed, std::bit_cast<std::uint64_t>(canonical));
    seed = derive_seed(seed, static_cast<std::uint64_t>(outlier));
    return derive_seed(seed, rep_index);
}

namespace {

constexpr std::size_t kBytesPerValue = sizeof(double);

RepDetections run_rep_within(const ScenarioGrid& grid, double scale, OutlierKind outlier,
                             std::size_t rep_index, std::size_t budget) {
    RepDetections out;
    out.n_s = grid.s_list.size();
    out.n_d = grid.d_list.size();
    out.n_m = grid.measures.size();
    out.hits.assign(out.n_s * out.n_d * out.n_m, 0);

    const GpConfig config{scale, kBaseResolution, rep_seed(grid.master_seed, scale, outlier, rep_index)};
    const auto record = [&](std::size_t si, std::size_t di, const CurveSet& curves) {
        const auto hits = detect_first_all(curves, grid.measures, grid.alpha);
        std::copy(hits.begin(), hits.end(), out.hits.begin() + static_cast<std::ptrdiff_t>((si * out.n_d + di) * out.n_m));
    };

    const std::size_t pool_bytes = grid.s_max() * kBaseResolution * kBytesPerValue;
    if (!grid.independent_cells && pool_bytes <= budget) {
        CurvePool pool = simulate_gp(config, grid.s_max());
        inject_outlier(pool, outlier);
        for (std::size_t si = 0; si < out.n_s; ++si) {
            for (std::size_t di = 0; di < out.n_d; ++di) {
                record(si, di, extract(pool, grid.s_list[si], grid.d_list[di]));
            }
        }
        return out;
    }

    // Cell by cell, holding s x d values at a time. With shared pools the rows are
    // the same as the pool route; independent cells get their own seed.
    for (std::size_t si = 0; si < out.n_s; ++si) {
        for (std::size_t di = 0; di < out.n_d; ++di) {
            const std::size_t s = grid.s_list[si];
            const std::size_t d = grid.d_list[di];
            // The streaming route buffers one full-resolution row besides the cell itself.
            if ((s * d + kBaseResolution) * kBytesPerValue > budget) {
                throw ResourceError("cell s=" + std::to_string(s) + ", d=" + std::to_string(d) +
                                    " exceeds the memory budget");
            }
            GpConfig cell = config;
            if (grid.independent_cells) {
                cell.seed = derive_seed(derive_seed(config.seed, s), d);
            }
            record(si, di, simulate_extracted(cell, outlier, s, d));
        }
    }
    return out;
}

} // namespace

RepDetections run_rep(const ScenarioGrid& grid, double scale, OutlierKind outlier,
                      std::size_t rep_index) {
    grid.validate();
    if (rep_index < 1 || rep_index > grid.reps) {
        throw InvalidInput("rep index out of range");
    }
    return run_rep_within(grid, scale, outlier, rep_index, grid.memory_budget_bytes);
}

PowerTable run_study(const ScenarioGrid& grid, const ProgressFn& progress) {
    grid.validate();
    const std::size_t n_s = grid.s_list.size();
    const std::size_t n_d = grid.d_list.size();
    const std::size_t n_m = grid.measures.size();
    const std::size_t per_block = n_s * n_d * n_m;
    const std::size_t n_blocks = grid.scale_list.size() * grid.outlier_list.size();
    const auto threads = static_cast<std::size_t>(std::max(1, omp_get_max_threads()));
    const std::size_t budget = grid.memory_budget_bytes / threads;

    // counts[(outlier, scale) block][s][d][measure]
    std::vector<std::size_t> counts(n_blocks * per_block, 0);
    std::size_t blocks_done = 0;
    for (std::size_t oi = 0; oi < grid.outlier_list.size(); ++oi) {
        for (std::size_t ci = 0; ci < grid.scale_list.size(); ++ci) {
            const std::size_t block = oi * grid.scale_list.size() + ci;
            std::vector<RepDetections> reps(grid.reps);
            std::exception_ptr failure;
            std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic)
            for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(grid.reps); ++r) {
                try {
                    reps[static_cast<std::size_t>(r)] =
                        run_rep_within(grid, grid.scale_list[ci], grid.outlier_list[oi],
                                       static_cast<std::size_t>(r) + 1, budget);
                } catch (...) {
                    const std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
            if (failure) {
                std::rethrow_exception(failure);
            }
            for (const auto& rep : reps) {
                for (std::size_t c = 0; c < per_block; ++c) {
                    counts[block * per_block + c] += rep.hits[c] != 0 ? 1 : 0;
                }
            }
            ++blocks_done;
            if (progress) {
                progress(blocks_done, n_blocks);
            }
        }
    }

    PowerTable table;
    table.reserve(grid.cell_count());
    for (std::size_t oi = 0; oi < grid.outlier_list.size(); ++oi) {
        for (std::size_t ci = 0; ci < grid.scale_list.size(); ++ci) {
            const std::size_t block = oi * grid.scale_list.size() + ci;
            for (std::size_t di = 0; di < n_d; ++di) {
                for (std::size_t si = 0; si < n_s; ++si) {
                    for (std::size_t mi = 0; mi < n_m; ++mi) {
                        PowerEstimate row;
                        row.measure = grid.measures[mi];
                        row.s = grid.s_list[si];
                        row.d = grid.d_list[di];
                        row.scale = grid.scale_list[ci];
                        row.outlier = grid.outlier_list[oi];
                        row.alpha = grid.alpha;
                        row.reps = grid.reps;
                        row.detections = counts[block * per_block + (si * n_d + di) * n_m + mi];
                        row.power = static_cast<double>(row.detections) / static_cast<double>(row.reps);
                        std::tie(row.ci_lo, row.ci_hi) = wilson_ci(row.detections, row.reps);
                        row.master_seed = grid.master_seed;
                        table.push_back(row);
                    }
                }
            }
        }
    }
    return table;
}

} // namespace globenv
