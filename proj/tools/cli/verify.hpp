#pragma once

// Cross-module verification suites behind `ldproj verify`.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ldproj::cli {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

inline const std::vector<std::string> kSuites = {"moments", "samplers", "alpha", "b2", "legendre"};

/// Runs one named suite ("all" expands to every suite). Throws UsageError for unknown names.
std::vector<CheckResult> run_suite(std::string_view suite, std::uint64_t seed, bool quick);

}  // namespace ldproj::cli
