// Lucas's certificate, the Lucas-Lehmer test and the Pell-conic group
// x^2 - 3y^2 = 1 whose doubling map drives the Lucas-Lehmer recurrence.
#pragma once

#include <vector>

#include "curveprime/outcome.hpp"
#include "curveprime/ring.hpp"

namespace curveprime::classic {

/// Primality certificate from a primitive root: a^(n-1) = 1 and
/// a^((n-1)/p) != 1 for every prime p | n-1.
///
/// `prime_factors` must be the distinct primes dividing n-1; a non-divisor,
/// or a list that leaves part of n-1 unaccounted for, is rejected with
/// std::invalid_argument. A failing primitive-root condition proves nothing
/// and yields NotCertified.
TestOutcome lucas_certify(const BigInt& n, const BigInt& a, const std::vector<BigInt>& prime_factors);

BigInt mersenne(unsigned p);

/// a_0 = 4, a_{i+1} = a_i^2 - 2 mod 2^p - 1; prime iff a_{p-2} = 0. Needs p > 2.
TestOutcome lucas_lehmer(unsigned p, const TestOptions& options = {});

/// The full residue sequence a_0 .. a_{p-2}.
std::vector<BigInt> lucas_lehmer_sequence(unsigned p);

class PellPoint {
 public:
  /// Throws std::invalid_argument if x^2 - 3y^2 != 1.
  PellPoint(Residue x, Residue y);
  static PellPoint identity(const Modulus& m);

  const Residue& x() const noexcept { return x_; }
  const Residue& y() const noexcept { return y_; }
  friend bool operator==(const PellPoint& a, const PellPoint& b) { return a.x_ == b.x_ && a.y_ == b.y_; }

 private:
  Residue x_;
  Residue y_;
};

PellPoint pell_add(const PellPoint& p, const PellPoint& q);
PellPoint pell_double(const PellPoint& p);

}  // namespace curveprime::classic
