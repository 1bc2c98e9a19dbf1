#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>
#include "globenv/study.hpp"

namespace globenv {

struct SummaryFilter {
    std::optional<std::size_t> s;
    std::optional<std::size_t> d;
    std::optional<double> scale;
    std::optional<OutlierKind> outlier;
    std::optional<MeasureKind> measure;
};

/// Power as a function of s for one (outlier, d, scale, measure) panel line.
struct SummaryBlock {
    OutlierKind outlier;
    std::size_t d;
    double scale;
    MeasureKind measure;
    std::vector<PowerEstimate> rows; ///< ascending s
};

/// Blocks ordered by (outlier, d, scale, measure), rows by s.
std::vector<SummaryBlock> summarize(const PowerTable& table, const SummaryFilter& filter = {});

std::string summary_text(const std::vector<SummaryBlock>& blocks);
nlohmann::json summary_json(const std::vector<SummaryBlock>& blocks);

} // namespace globenv
