#include "globenv/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <system_error>

#include "globenv/error.hpp"

namespace globenv {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    std::string_view body = text;
    if (!body.empty() && body.front() == '+') {
        body.remove_prefix(1);
    }
    double v = 0.0;
    const auto res = std::from_chars(body.data(), body.data() + body.size(), v);
    if (body.empty() || res.ec != std::errc{} || res.ptr != body.data() + body.size()) {
        throw InvalidInput("not a number: '" + std::string(text) + "'");
    }
    return v;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

/// Next non-empty line without its trailing CR; false at end of input.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!line.empty()) {
            return true;
        }
    }
    return false;
}

std::string at_line(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw InvalidInput("not a non-negative integer: '" + std::string(text) + "'");
    }
    return v;
}

} // namespace

void write_curves_csv(std::ostream& out, const CurveSet& curves) {
    out << 'x';
    for (const double x : curves.grid()) {
        out << ',' << format_double(x);
    }
    out << '\n';
    for (std::size_t i = 0; i < curves.num_curves(); ++i) {
        out << "curve_" << (i + 1);
        for (const double v : curves.curve(i)) {
            out << ',' << format_double(v);
        }
        out << '\n';
    }
}

CurveSet read_curves_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line, line_no)) {
        throw InvalidInput("empty curves file");
    }
    const auto header = split_fields(line);
    if (header.front() != "x" || header.size() < 2) {
        throw InvalidInput(at_line(line_no) + "header must be 'x,<x_1>,...,<x_d>'");
    }
    std::vector<double> grid;
    grid.reserve(header.size() - 1);
    try {
        for (std::size_t k = 1; k < header.size(); ++k) {
            grid.push_back(parse_double(header[k]));
        }
    } catch (const InvalidInput& e) {
        throw InvalidInput(at_line(line_no) + e.what());
    }

    std::vector<double> flat;
    std::size_t rows = 0;
    while (next_line(in, line, line_no)) {
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw InvalidInput(at_line(line_no) + "expected " + std::to_string(header.size()) +
                               " fields, found " + std::to_string(fields.size()));
        }
        try {
            for (std::size_t k = 1; k < fields.size(); ++k) {
                flat.push_back(parse_double(fields[k]));
            }
        } catch (const InvalidInput& e) {
            throw InvalidInput(at_line(line_no) + e.what());
        }
        ++rows;
    }
    Matrix<double> values(rows, grid.size());
    std::copy(flat.begin(), flat.end(), values.data().begin());
    return CurveSet(std::move(values), std::move(grid));
}

void write_envelope_csv(std::ostream& out, std::span<const double> grid,
                        const GlobalEnvelope& envelope, std::span<const double> central) {
    out << "x,lower,upper,central\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
        out << format_double(grid[k]) << ',' << format_double(envelope.lower[k]) << ','
            << format_double(envelope.upper[k]) << ',' << format_double(central[k]) << '\n';
    }
}

namespace {
constexpr const char* kStudyColumns[] = {"measure", "s",      "d",          "scale",
                                         "outlier", "alpha",  "reps",       "detections",
                                         "power",   "ci_lo",  "ci_hi",      "master_seed"};
}

void write_study_csv(std::ostream& out, const PowerTable& table) {
    for (std::size_t c = 0; c < std::size(kStudyColumns); ++c) {
        out << (c == 0 ? "" : ",") << kStudyColumns[c];
    }
    out << '\n';
    for (const auto& row : table) {
        out << to_string(row.measure) << ',' << row.s << ',' << row.d << ','
            << format_double(row.scale) << ',' << to_string(row.outlier) << ','
            << format_double(row.alpha) << ',' << row.reps << ',' << row.detections << ','
            << format_double(row.power) << ',' << format_double(row.ci_lo) << ','
            << format_double(row.ci_hi) << ',' << row.master_seed << '\n';
    }
}

PowerTable read_study_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line, line_no)) {
        throw InvalidInput("empty study file");
    }
    const auto header = split_fields(line);
    std::map<std::string, std::size_t, std::less<>> column;
    for (std::size_t c = 0; c < header.size(); ++c) {
        column.emplace(std::string(header[c]), c);
    }
    for (const char* name : kStudyColumns) {
        if (!column.contains(name)) {
            throw InvalidInput(std::string("study file lacks column '") + name + "'");
        }
    }

    PowerTable table;
    while (next_line(in, line, line_no)) {
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw InvalidInput(at_line(line_no) + "expected " + std::to_string(header.size()) +
                               " fields, found " + std::to_string(fields.size()));
        }
        const auto field = [&](const char* name) { return fields[column.find(name)->second]; };
        try {
            PowerEstimate row;
            row.measure = parse_measure(field("measure"));
            row.s = parse_u64(field("s"));
            row.d = parse_u64(field("d"));
            row.scale = parse_double(field("scale"));
            row.outlier = parse_outlier(field("outlier"));
            row.alpha = parse_double(field("alpha"));
            row.reps = parse_u64(field("reps"));
            row.detections = parse_u64(field("detections"));
            row.power = parse_double(field("power"));
            row.ci_lo = parse_double(field("ci_lo"));
            row.ci_hi = parse_double(field("ci_hi"));
            row.master_seed = parse_u64(field("master_seed"));
            if (row.reps == 0 || row.detections > row.reps) {
                throw InvalidInput("detections must lie in [0, reps] with reps >= 1");
            }
            table.push_back(row);
        } catch (const InvalidInput& e) {
            throw InvalidInput(at_line(line_no) + e.what());
        }
    }
    return table;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    try {
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) {
                throw InvalidInput("cannot open '" + tmp.string() + "' for writing");
            }
            writer(out);
            out.flush();
            if (!out) {
                throw InvalidInput("failed writing '" + tmp.string() + "'");
            }
        }
        std::filesystem::rename(tmp, path);
    } catch (...) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw;
    }
}

} // namespace globenv
