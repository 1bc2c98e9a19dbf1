#pragma once

#include <filesystem>
#include <functional>
#include <span>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "globenv/curve_set.hpp"
#include "globenv/envelope.hpp"
#include "globenv/study.hpp"

namespace globenv {

/// Shortest representation that parses back to the same double.
std::string format_double(double v);
/// Whole-field parse accepting decimal and exponent forms; throws InvalidInput.
double parse_double(std::string_view text);

/// Header "x,<x_1>,...,<x_d>", then one "curve_<i>,<v_1>,...,<v_d>" row per curve.
void write_curves_csv(std::ostream& out, const CurveSet& curves);
CurveSet read_curves_csv(std::istream& in);

/// Columns x,lower,upper,central.
void write_envelope_csv(std::ostream& out, std::span<const double> grid,
                        const GlobalEnvelope& envelope, std::span<const double> central);

/// Columns measure,s,d,scale,outlier,alpha,reps,detections,power,ci_lo,ci_hi,master_seed.
void write_study_csv(std::ostream& out, const PowerTable& table);
PowerTable read_study_csv(std::istream& in);

/// Writes through a temporary sibling file and renames it into place, so a
/// failed write never leaves a partial file at `path`.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer);

} // namespace globenv
