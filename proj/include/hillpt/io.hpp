#pragma once

#include <string>
#include <string_view>

#include "hillpt/model.hpp"
#include "json.hpp"

namespace hillpt::io {

/// %.12g
std::string format_number(double value);

/// value rounded to `digits` significant digits (for JSON output).
double round_significant(double value, int digits = 12);

/// Writes via a temporary file in the same directory and renames it into
/// place. Empty path or "-" writes to stdout.
void write_output(const std::string& path, std::string_view content);

nlohmann::json to_json(const OscillatorParams& params);
nlohmann::json to_json(const SolverConfig& config);

/// Applies any params/solver keys present in `doc` (objects named "params" and "solver").
void merge_json(const nlohmann::json& doc, OscillatorParams& params, SolverConfig& config);

}  // namespace hillpt::io
