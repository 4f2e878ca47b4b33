// Embedded fixtures and property sweeps, runnable from the shipped binary.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace curveprime::selftest {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Options {
  bool quick = false;                        // smaller sweeps, no enumeration over F_499 or above
  std::optional<std::string> fixtures_json;  // replaces the embedded fixtures
};

/// The fixture document compiled into the library.
const std::string& embedded_fixtures();

/// Runs every check, reporting each one as it finishes.
std::vector<CheckResult> run(const Options& options,
                             const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace curveprime::selftest
