#include "globenv/summarize.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "globenv/csv_io.hpp"

namespace globenv {

std::vector<SummaryBlock> summarize(const PowerTable& table, const SummaryFilter& filter) {
    std::vector<PowerEstimate> rows;
    for (const auto& row : table) {
        if ((filter.s && row.s != *filter.s) || (filter.d && row.d != *filter.d) ||
            (filter.scale && row.scale != *filter.scale) ||
            (filter.outlier && row.outlier != *filter.outlier) ||
            (filter.measure && row.measure != *filter.measure)) {
            continue;
        }
        rows.push_back(row);
    }
    const auto key = [](const PowerEstimate& r) {
        return std::make_tuple(r.outlier, r.d, r.scale, r.measure, r.s);
    };
    std::stable_sort(rows.begin(), rows.end(),
                     [&](const PowerEstimate& a, const PowerEstimate& b) { return key(a) < key(b); });

    std::vector<SummaryBlock> blocks;
    for (const auto& row : rows) {
        if (blocks.empty() || blocks.back().outlier != row.outlier || blocks.back().d != row.d ||
            blocks.back().scale != row.scale || blocks.back().measure != row.measure) {
            blocks.push_back({row.outlier, row.d, row.scale, row.measure, {}});
        }
        blocks.back().rows.push_back(row);
    }
    return blocks;
}

std::string summary_text(const std::vector<SummaryBlock>& blocks) {
    std::ostringstream out;
    for (const auto& block : blocks) {
        out << "outlier=" << to_string(block.outlier) << " d=" << block.d
            << " scale=" << format_double(block.scale) << " measure=" << to_string(block.measure)
            << '\n';
        out << "  s\tpower\tci_lo\tci_hi\treps\n";
        for (const auto& row : block.rows) {
            out << "  " << row.s << '\t' << format_double(row.power) << '\t'
                << format_double(row.ci_lo) << '\t' << format_double(row.ci_hi) << '\t' << row.reps
                << '\n';
        }
    }
    return out.str();
}

nlohmann::json summary_json(const std::vector<SummaryBlock>& blocks) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& block : blocks) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : block.rows) {
            rows.push_back({{"s", row.s},
                            {"power", row.power},
                            {"ci_lo", row.ci_lo},
                            {"ci_hi", row.ci_hi},
                            {"reps", row.reps},
                            {"detections", row.detections}});
        }
        out.push_back({{"outlier", std::string(to_string(block.outlier))},
                       {"d", block.d},
                       {"scale", block.scale},
                       {"measure", std::string(to_string(block.measure))},
                       {"rows", std::move(rows)}});
    }
    return out;
}

} // namespace globenv
