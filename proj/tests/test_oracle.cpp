#include <doctest.h>

#include "curveprime/oracle.hpp"
#include "curveprime/ring.hpp"

using namespace curveprime;
using namespace curveprime::oracle;

TEST_CASE("oracle verdicts") {
  CHECK(is_prime_oracle(1663).kind == OracleVerdict::Kind::kPrime);
  const auto c = is_prime_oracle(2047);
  CHECK(c.kind == OracleVerdict::Kind::kComposite);
  CHECK(c.factor == 23);
  CHECK(is_prime_oracle(2).kind == OracleVerdict::Kind::kPrime);
  CHECK_THROWS_AS(is_prime_oracle(1), std::invalid_argument);

  // Beyond trial division: 2^61 - 1 is prime, 2^67 - 1 is not.
  BigInt m61 = 1;
  m61 <<= 61;
  CHECK(is_prime_oracle(m61 - 1).kind == OracleVerdict::Kind::kPrime);
  BigInt m67 = 1;
  m67 <<= 67;
  CHECK(is_prime_oracle(m67 - 1).kind == OracleVerdict::Kind::kComposite);
  // Strong pseudoprime to bases 2..37, caught by base 41.
  CHECK(is_prime_oracle(BigInt("3825123056546413051")).kind == OracleVerdict::Kind::kComposite);
}

TEST_CASE("large inputs fall back to probable primality") {
  const BigInt lambda = lambda_value(2033);
  const auto v = is_prime_oracle(lambda);
  CHECK(v.kind == OracleVerdict::Kind::kProbablePrime);
  CHECK(v.rounds == 64);
  CHECK(v.seed == kDefaultSeed);
  CHECK(is_prime_oracle(lambda_value(2031)).kind == OracleVerdict::Kind::kComposite);
}

TEST_CASE("oracle agrees with trial division below 10^5") {
  for (std::uint64_t n = 2; n < 100'000; ++n) {
    REQUIRE(is_prime_oracle(BigInt(static_cast<unsigned long>(n))).says_prime() == is_prime_small(n));
  }
}

TEST_CASE("point enumeration") {
  const auto e = enumerate_curve_points(5, CurveSpec{{0, -1, 0, 1}});
  CHECK(e.count == 8);
  const std::vector<AffinePoint> expected{{0, 0}, {1, 0}, {2, 1}, {2, 4}, {3, 2}, {3, 3}, {4, 0}};
  CHECK(e.points == expected);

  CHECK(enumerate_curve_points(7, CurveSpec{{0, -5, 0, 1}}).count == 8);
  CHECK_THROWS_AS(enumerate_curve_points(10'007, CurveSpec{{1}}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_curve_points(15, CurveSpec{{1}}), std::invalid_argument);

  for (std::uint64_t q : {3ULL, 5ULL, 19ULL, 101ULL, 499ULL}) {
    const CurveSpec h{{10, 0, 0, 0, 0, 1}};
    CHECK(count_curve_points(q, h) == enumerate_curve_points(q, h).count);
  }
}

TEST_CASE("extension-field counts match the Jacobian order at lambda_1") {
  const CurveSpec h{{10, 0, 0, 0, 0, 1}};
  const std::uint64_t n1 = count_curve_points(19, h);
  const std::uint64_t n2 = count_points_quadratic_extension(19, h);
  CHECK((n1 * n1 + n2) / 2 - 19 == 400);
}

TEST_CASE("quadratic extension count for an elliptic curve") {
  // #E(F_{q^2}) = q^2 + 1 - (a^2 - 2q) with a = q + 1 - #E(F_q).
  for (std::uint64_t q : {5ULL, 7ULL, 13ULL, 37ULL}) {
    const CurveSpec e{{0, -1, 0, 1}};
    const long long a = static_cast<long long>(q) + 1 - static_cast<long long>(count_curve_points(q, e));
    const long long expected = static_cast<long long>(q * q) + 1 - (a * a - 2 * static_cast<long long>(q));
    CHECK(static_cast<long long>(count_points_quadratic_extension(q, e)) == expected);
  }
}
