// One entry point for all four families, keyed by name with decimal-string
// parameters. Shared by the C API and the self-test.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "curveprime/outcome.hpp"
#include "curveprime/ring.hpp"

namespace curveprime {

enum class Family { kA, kS, kL, kMersenne };

std::optional<Family> parse_family(std::string_view name);  // "A", "S", "L", "mersenne"
const char* family_name(Family f);

using Params = std::map<std::string, std::string>;

struct RunOptions {
  bool collect_trace = false;
  bool closed_form = false;  // L only
};

struct RunResult {
  TestOutcome outcome;
  BigInt value;  // the number tested
};

/// A: m, n.  S: p, n.  L: n, h (default 10), F (default "x+1;3").  mersenne: p.
/// Throws HypothesisViolated when the theorem's hypotheses fail and
/// std::invalid_argument on missing, unknown or malformed parameters.
RunResult run_family(Family family, const Params& params, const RunOptions& options = {});

/// The number a run would test, without running it.
BigInt family_value(Family family, const Params& params);

/// Smallest admissible exponent: 4m < 2^n for A, p < 2^n for S, 3 for L and mersenne.
unsigned search_start(Family family, const std::string& param);

}  // namespace curveprime
