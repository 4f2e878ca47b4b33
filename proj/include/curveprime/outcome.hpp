#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curveprime/ring.hpp"

namespace curveprime {

enum class Verdict { kCertifiedPrime, kCompositeWitness, kNotCertified };

const char* verdict_name(Verdict v);  // certified_prime | composite | not_certified

/// Result of every primality test in the library.
///
/// A CompositeWitness may carry a factor; when it does, 1 < factor < N and
/// factor | N are checked on construction.
struct TestOutcome {
  Verdict verdict = Verdict::kNotCertified;
  std::string reason;
  std::optional<BigInt> factor;
  std::uint64_t steps = 0;           // recurrence steps completed
  std::vector<std::string> trace;    // per-step values when requested

  static TestOutcome certified(std::string reason, std::uint64_t steps);
  static TestOutcome composite(std::string reason, std::uint64_t steps);
  static TestOutcome composite_factor(const BigInt& factor, const BigInt& n,
                                      std::string reason, std::uint64_t steps);
  static TestOutcome not_certified(std::string reason, std::uint64_t steps);

  bool is_certified() const { return verdict == Verdict::kCertifiedPrime; }
  bool is_composite() const { return verdict == Verdict::kCompositeWitness; }
};

/// Converts an arithmetic failure met while working modulo n into a verdict.
/// A proper factor is a certificate of compositeness; so is a nonzero zero
/// divisor in a ring that is a field whenever n is prime.
TestOutcome outcome_from_failure(const ArithmeticFailure& failure, const BigInt& n,
                                 const std::string& where, std::uint64_t steps);

/// A test was called outside the hypotheses of its theorem.
class HypothesisViolated : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TestOptions {
  bool collect_trace = false;
};

}  // namespace curveprime
