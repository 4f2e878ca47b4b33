#include "curveprime/outcome.hpp"

namespace curveprime {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kCertifiedPrime:
      return "certified_prime";
    case Verdict::kCompositeWitness:
      return "composite";
    case Verdict::kNotCertified:
      return "not_certified";
  }
  return "not_certified";
}

TestOutcome TestOutcome::certified(std::string reason, std::uint64_t steps) {
  TestOutcome o;
  o.verdict = Verdict::kCertifiedPrime;
  o.reason = std::move(reason);
  o.steps = steps;
  return o;
}

TestOutcome TestOutcome::composite(std::string reason, std::uint64_t steps) {
  TestOutcome o;
  o.verdict = Verdict::kCompositeWitness;
  o.reason = std::move(reason);
  o.steps = steps;
  return o;
}

TestOutcome TestOutcome::composite_factor(const BigInt& factor, const BigInt& n,
                                          std::string reason, std::uint64_t steps) {
  if (!(factor > 1 && factor < n) || !mpz_divisible_p(n.get_mpz_t(), factor.get_mpz_t())) {
    throw std::logic_error("unsound compositeness witness " + to_decimal(factor) + " for " +
                           to_decimal(n));
  }
  TestOutcome o = composite(std::move(reason), steps);
  o.factor = factor;
  return o;
}

TestOutcome TestOutcome::not_certified(std::string reason, std::uint64_t steps) {
  TestOutcome o;
  o.verdict = Verdict::kNotCertified;
  o.reason = std::move(reason);
  o.steps = steps;
  return o;
}

TestOutcome outcome_from_failure(const ArithmeticFailure& failure, const BigInt& n,
                                 const std::string& where, std::uint64_t steps) {
  switch (failure.kind) {
    case ArithmeticFailure::Kind::kProperFactor:
      return TestOutcome::composite_factor(failure.factor, n, where + ": non-unit denominator",
                                           steps);
    case ArithmeticFailure::Kind::kZeroDivisor:
      return TestOutcome::composite(where + ": zero divisor in a ring that is a field for prime N",
                                    steps);
    case ArithmeticFailure::Kind::kZero:
      break;
  }
  return TestOutcome::composite(where + ": denominator vanishes", steps);
}

}  // namespace curveprime
