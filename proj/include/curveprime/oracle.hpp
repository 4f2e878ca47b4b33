// Ground-truth primality verdicts and exhaustive point enumeration over small
// prime fields. Used by tests, the self-test and the CLI's --cross-check mode;
// no certificate path calls into this header.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curveprime/ring.hpp"

namespace curveprime::oracle {

struct OracleVerdict {
  enum class Kind { kPrime, kComposite, kProbablePrime };
  Kind kind = Kind::kComposite;
  std::optional<BigInt> factor;  // set when a composite verdict found one
  unsigned rounds = 0;           // Miller-Rabin rounds for kProbablePrime
  std::uint64_t seed = 0;        // base-selection seed for kProbablePrime

  bool says_prime() const { return kind != Kind::kComposite; }
  std::string describe() const;
};

inline constexpr unsigned kProbableRounds = 64;
inline constexpr std::uint64_t kDefaultSeed = 0x5eed'c0de'2024ULL;

/// Trial division below 10^12, deterministic Miller-Rabin below 3.3e24, then
/// 64 random-base rounds (ProbablePrime). Needs n >= 2.
OracleVerdict is_prime_oracle(const BigInt& n, std::uint64_t seed = kDefaultSeed);

bool is_prime_small(std::uint64_t n);  // trial division

// --- small prime field enumeration -----------------------------------------

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q);
std::uint64_t invmod(std::uint64_t a, std::uint64_t q);  // q prime, a != 0

inline constexpr std::uint64_t kMaxEnumerationPrime = 10'000;

/// y^2 = f(x) with integer coefficients, lowest degree first.
struct CurveSpec {
  std::vector<long long> f;
};

struct AffinePoint {
  std::uint64_t x;
  std::uint64_t y;
  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;
};

struct PointEnumeration {
  std::uint64_t count = 0;            // affine points plus one point at infinity
  std::vector<AffinePoint> points;    // x ascending, then y
};

/// Exhaustive enumeration over F_q; q prime <= 10^4 (std::invalid_argument otherwise).
PointEnumeration enumerate_curve_points(std::uint64_t q, const CurveSpec& curve);

/// Same count as enumerate_curve_points(q, curve).count, from a square table.
std::uint64_t count_curve_points(std::uint64_t q, const CurveSpec& curve);

/// #{(x, y) in F_{q^2}^2 : y^2 = f(x)} + 1, by enumeration of F_{q^2}.
std::uint64_t count_points_quadratic_extension(std::uint64_t q, const CurveSpec& curve);

}  // namespace curveprime::oracle
