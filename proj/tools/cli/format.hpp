#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace ldproj::cli {

/// Shortest decimal string that parses back to the same double; inf, -inf
/// and nan for non-finite values.
std::string format_double(double x);

/// %.6g-style rendering for human-facing summaries.
std::string format_sig6(double x);

/// Accepts everything std::from_chars does plus inf/-inf/nan.
double parse_double(const std::string& text);

/// Finite values as JSON numbers; non-finite values as their string tokens.
nlohmann::json json_number(double x);
double from_json_number(const nlohmann::json& j);

/// "min:max:steps" with steps >= 1 (a single step yields min).
std::vector<double> parse_grid(const std::string& spec);

}  // namespace ldproj::cli
