#include "cli/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <system_error>

#include "ldproj/errors.hpp"

namespace ldproj::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string format_sig6(double x) {
  if (!std::isfinite(x)) return format_double(x);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

double parse_double(const std::string& text) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw UsageError("not a number: '" + text + "'");
  }
  return v;
}

nlohmann::json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

double from_json_number(const nlohmann::json& j) {
  if (j.is_string()) return parse_double(j.get<std::string>());
  return j.get<double>();
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
  if (c2 == std::string::npos) throw UsageError("grid must look like min:max:steps, got '" + spec + "'");
  const double lo = parse_double(spec.substr(0, c1));
  const double hi = parse_double(spec.substr(c1 + 1, c2 - c1 - 1));
  const double steps_d = parse_double(spec.substr(c2 + 1));
  const auto steps = static_cast<long>(steps_d);
  if (steps < 1 || static_cast<double>(steps) != steps_d) {
    throw UsageError("grid steps must be a positive integer, got '" + spec.substr(c2 + 1) + "'");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw UsageError("grid bounds must be finite");
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(steps));
  for (long i = 0; i < steps; ++i) {
    g.push_back(steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1));
  }
  if (steps > 1) g.back() = hi;
  return g;
}

}  // namespace ldproj::cli
