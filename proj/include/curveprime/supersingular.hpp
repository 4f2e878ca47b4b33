// Primality of A(m, n) = m*2^n - 1 through the curves E_t : y^2 = x^3 - (t^2+1)x.
//
// The point (-1, t) is multiplied by m (over Q for small m, modulo A otherwise)
// and its x-coordinate is doubled n-1 times with the x-only formula
//   x' = (x^2 + c)^2 / (4(x^3 - c x)).
// A is prime exactly when every step is defined and the last x is 0.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "curveprime/outcome.hpp"
#include "curveprime/ring.hpp"

namespace curveprime::supersingular {

BigInt a_value(const BigInt& m, unsigned n);

enum class Prefilter { kClean, kDivisibleBy3, kDivisibleBy5 };
const char* prefilter_name(Prefilter p);

/// Residue-class test for 3 | A (m mod 3 against n mod 2) and 5 | A
/// (m mod 5 against n mod 4). Needs m odd, n >= 1.
Prefilter prefilter_35(const BigInt& m, unsigned n);

class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr unsigned long kMaxTwistSearch = 1'000'000;

/// t = 2 when (m mod 5, n mod 4) makes 5 a non-residue mod A; otherwise the
/// least t >= 1 with jacobi(t^2 + 1, A) = -1. Throws SearchExhausted past 10^6.
unsigned long select_t(const BigInt& m, unsigned n);

/// y^2 = x^3 - c x with c = t^2 + 1.
struct CurveEt {
  BigInt t;
  BigInt c;
  explicit CurveEt(BigInt t_) : t(std::move(t_)), c(t * t + 1) {}
};

struct RationalPoint {
  Rational x;
  Rational y;
  bool at_infinity = false;

  static RationalPoint infinity() { return {Rational(0), Rational(0), true}; }
  bool on_curve(const BigInt& c) const;  // y^2 = x^3 - c x
  friend bool operator==(const RationalPoint& a, const RationalPoint& b) {
    return a.at_infinity == b.at_infinity && (a.at_infinity || (a.x == b.x && a.y == b.y));
  }
};

RationalPoint rational_add(const BigInt& c, const RationalPoint& p, const RationalPoint& q);

/// k*P on y^2 = x^3 - c x over Q by double-and-add; k >= 1.
RationalPoint rational_multiple(const BigInt& c, const RationalPoint& p, const BigInt& k);

// --- the same curve family over Z/N ---------------------------------------

struct ModPoint {
  Residue x;
  Residue y;
  bool at_infinity = false;

  static ModPoint infinity(const Modulus& m) { return {Residue(0L, m), Residue(0L, m), true}; }
  bool on_curve(const Residue& c) const;
  friend bool operator==(const ModPoint& a, const ModPoint& b) {
    return a.at_infinity == b.at_infinity && (a.at_infinity || (a.x == b.x && a.y == b.y));
  }
};

/// Chord-tangent addition on y^2 = x^3 - c x over Z/N. Over a field this is
/// the group law. Over a composite ring, a slope denominator that is a nonzero
/// non-unit fails with its gcd. Equal x with y1 != +-y2 also fails: that
/// cannot happen modulo a prime.
Witnessed<ModPoint> mod_add(const Residue& c, const ModPoint& p, const ModPoint& q);
Witnessed<ModPoint> mod_multiple(const Residue& c, const ModPoint& p, const BigInt& k);

/// Above this m, x0 is computed modulo A instead of over Q.
inline constexpr unsigned kRationalMultiplierLimit = 64;

/// Needs m odd, n > 1, 4m < 2^n and a clean prefilter (HypothesisViolated
/// otherwise); A in {3, 5} is answered directly. Both verdicts are proofs.
TestOutcome test_A(const BigInt& m, unsigned n, const TestOptions& options = {});

/// x-coordinates x_0 .. x_{n-1} modulo A by full point doubling of m(-1, t);
/// an independent route to the values test_A traces. Fails like mod_add.
Witnessed<std::vector<BigInt>> doubling_chain_x(const BigInt& m, unsigned n, unsigned long t);

// --- exhaustive structure over small fields -------------------------------

struct GroupStructure {
  std::uint64_t order = 0;
  bool is_cyclic = false;
  bool point_not_divisible_by_2 = false;  // (-1, t) outside 2E
};

/// Enumerates E_t(F_p) for a prime p = 3 (mod 4), p <= 10^4.
GroupStructure brute_group_structure(std::uint64_t p, std::uint64_t t);

}  // namespace curveprime::supersingular
