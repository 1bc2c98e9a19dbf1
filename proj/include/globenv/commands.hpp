#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "globenv/gp_sim.hpp"
#include "globenv/measures.hpp"
#include "globenv/study.hpp"
#include "globenv/summarize.hpp"

namespace globenv::cli {

/// Exit codes shared by every command that tests curve 1.
inline constexpr int kExitNotExtreme = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitExtreme = 2;

struct EnvelopeOptions {
    std::filesystem::path input;
    MeasureKind measure = MeasureKind::erl;
    double alpha = 0.05;
    double beta = kDefaultQdirBeta;
    std::optional<std::filesystem::path> output;  ///< envelope CSV; skipped when empty
    std::optional<std::filesystem::path> summary; ///< JSON; written to `out` when empty
};

struct SimulateOptions {
    std::size_t s = 20;
    std::size_t d = 100;
    double scale = 0.0;
    OutlierKind outlier = OutlierKind::none;
    std::optional<std::uint64_t> seed; ///< time-derived when empty
    std::optional<std::filesystem::path> output; ///< stdout when empty
};

struct StudyOptions {
    ScenarioGrid grid;
    std::optional<std::uint64_t> seed;
    int threads = 0; ///< 0 keeps the OpenMP default
    bool quiet = false;
    std::filesystem::path output;
};

struct SummarizeOptions {
    std::filesystem::path input;
    SummaryFilter filter;
    bool json = false;
};

int cmd_envelope(const EnvelopeOptions& opts, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_study(const StudyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_summarize(const SummarizeOptions& opts, std::ostream& out, std::ostream& err);

} // namespace globenv::cli
