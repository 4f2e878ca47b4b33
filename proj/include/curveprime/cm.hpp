// Primality of S(p, n) = p^2 * 16^n + 1 via complex multiplication by Z[i] on
// E30 : 30y^2 = x^3 - x. All work happens in Z/S with i = p*4^n.
#pragma once

#include <cstdint>

#include "curveprime/outcome.hpp"
#include "curveprime/ring.hpp"

namespace curveprime::cm {

BigInt s_value(const BigInt& p, unsigned n);

/// Needs p = +-1 (mod 10) and p < 2^n (HypothesisViolated otherwise).
/// Primality of p is checked by test_S, not here.
class CmContext {
 public:
  CmContext(const BigInt& p, unsigned n);

  const BigInt& p() const noexcept { return p_; }
  unsigned n() const noexcept { return n_; }
  const Modulus& modulus() const noexcept { return modulus_; }
  const Residue& i() const noexcept { return i_; }

 private:
  BigInt p_;
  unsigned n_;
  Modulus modulus_;
  Residue i_;
};

/// x(k*(5, 2)) on E30, computed as k*(150, 1800) on y^2 = x^3 - 900x and
/// divided by 30. Exact; cached per k. k >= 1.
Rational compute_Q_x(const BigInt& k);

/// x -> i(1 - x^2) / (2x): the x-coordinate of (1+i)P. Fails with kZero at x = 0.
Witnessed<Residue> one_plus_i_step(const Residue& x, const CmContext& ctx);

/// Above this p, x0 is computed modulo S instead of over Q.
inline constexpr unsigned kRationalMultiplierLimit = 64;

/// Applies one_plus_i_step 4n-1 times from x0 = x(p(5, 2)). S is prime iff
/// every step is defined and the last value is 0; both verdicts are proofs.
/// HypothesisViolated when p is not a proven prime or the context rejects (p, n).
TestOutcome test_S(const BigInt& p, unsigned n, const TestOptions& options = {});

struct GaussCount {
  std::uint64_t count = 0;  // #E(F_q) for y^2 = x^3 - x, infinity included
  long long alpha = 0;      // q = alpha^2 + beta^2, alpha = 1 or 3 (mod 4) by q mod 8
  std::uint64_t q = 0;

  bool consistent() const {
    return static_cast<long long>(count) == static_cast<long long>(q) + 1 - 2 * alpha;
  }
};

/// Needs a prime q = 1 (mod 4), q <= 10^4.
GaussCount gauss_count_check(std::uint64_t q);

}  // namespace curveprime::cm
