#include <doctest.h>

#include <random>

#include "curveprime/oracle.hpp"
#include "curveprime/ring.hpp"

using namespace curveprime;

namespace {

// Legendre symbol by Euler's criterion, native arithmetic.
int euler_legendre(std::uint64_t a, std::uint64_t p) {
  const std::uint64_t r = oracle::powmod(a % p, (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

}  // namespace

TEST_CASE("inv_witnessed variants") {
  const Modulus m7(7);
  auto inv = inv_witnessed(Residue(3L, m7));
  REQUIRE(inv.ok());
  CHECK(inv.value().value() == 5);

  auto factor = inv_witnessed(Residue(6L, Modulus(15)));
  REQUIRE_FALSE(factor.ok());
  CHECK(factor.failure().kind == ArithmeticFailure::Kind::kProperFactor);
  CHECK(factor.failure().factor == 3);

  auto zero = inv_witnessed(Residue(0L, Modulus(11)));
  REQUIRE_FALSE(zero.ok());
  CHECK(zero.failure().kind == ArithmeticFailure::Kind::kZero);
}

TEST_CASE("inverse is never wrong") {
  for (long n = 2; n < 200; ++n) {
    const Modulus m(n);
    for (long x = 0; x < n; ++x) {
      const Residue r(x, m);
      auto inv = inv_witnessed(r);
      if (inv) {
        CHECK((r * inv.value()).value() == 1 % n);
      } else if (inv.failure().kind == ArithmeticFailure::Kind::kProperFactor) {
        const BigInt& g = inv.failure().factor;
        CHECK(g > 1);
        CHECK(g < n);
        CHECK(n % g.get_si() == 0);
        CHECK(x % g.get_si() == 0);
      } else {
        CHECK(x == 0);
      }
    }
  }
}

TEST_CASE("residues are canonical") {
  const Modulus m(13);
  CHECK(Residue(-1L, m).value() == 12);
  CHECK(Residue(BigInt("-27"), m).value() == 12);
  CHECK((Residue(5L, m) - Residue(9L, m)).value() == 9);
  CHECK(Residue(2L, m).pow(12).value() == 1);
  CHECK_THROWS_AS(Modulus(1), std::invalid_argument);
  CHECK_THROWS_AS(Residue(1L, m) + Residue(1L, Modulus(17)), std::logic_error);
}

TEST_CASE("jacobi fixtures") {
  CHECK(jacobi(1, 9) == 1);
  CHECK(jacobi(5, 1663) == -1);
  CHECK(euler_legendre(5, 1663) == -1);
  CHECK_THROWS_AS(jacobi(3, 8), std::invalid_argument);
  CHECK_THROWS_AS(jacobi(3, 1), std::invalid_argument);
  CHECK(jacobi(6, 15) == 0);

  // S(11, 11) = 11^2 * 16^11 + 1 is prime, so 30 is a square modulo it.
  BigInt s = 121;
  s <<= 44;
  s += 1;
  CHECK(jacobi(30, s) == 1);
  BigInt e;
  const BigInt half = (s - 1) / 2;
  mpz_powm(e.get_mpz_t(), BigInt(30).get_mpz_t(), half.get_mpz_t(), s.get_mpz_t());
  CHECK(e == 1);
}

TEST_CASE("jacobi equals Euler's criterion for odd primes below 10^4") {
  std::mt19937_64 rng(17);
  for (std::uint64_t p = 3; p < 10'000; p += 2) {
    if (!oracle::is_prime_small(p)) continue;
    for (int k = 0; k < 8; ++k) {
      const std::uint64_t a = rng() % (3 * p);
      CHECK(jacobi(BigInt(static_cast<unsigned long>(a)), BigInt(static_cast<unsigned long>(p))) ==
            euler_legendre(a, p));
    }
  }
}

TEST_CASE("sqrt5_mod_lambda contexts") {
  const auto ctx3 = sqrt5_mod_lambda(3);
  CHECK(ctx3.modulus().value() == 499);
  CHECK(ctx3.d().value() == 50);
  CHECK(ctx3.eta().value() == 49 * 250 % 499);
  const Residue& eta = ctx3.eta();
  CHECK((eta * eta + eta).value() == 1);

  const auto ctx9 = sqrt5_mod_lambda(9);
  CHECK(ctx9.d().value() == 6250);
  CHECK((ctx9.d() * ctx9.d()).value() == 5);
  CHECK(lambda_value(9) == BigInt(4) * 1953125 - 1);

  CHECK_THROWS_AS(sqrt5_mod_lambda(4), std::invalid_argument);
  CHECK_THROWS_AS(QuadExtContext(Modulus(499), 7), std::invalid_argument);
}

TEST_CASE("conjugation") {
  const auto ctx = sqrt5_mod_lambda(3);
  const Modulus& m = ctx.modulus();
  const auto a = QuadExtElement::from_base(Residue(17L, m), ctx);
  CHECK(quad_conj(a) == a);
  const auto t = QuadExtElement::t(ctx);
  const auto ct = quad_conj(t);
  CHECK(ct.a() == ctx.eta());
  CHECK(ct.b() == Residue(-1L, m));
  CHECK(quad_conj(ct) == t);
  CHECK(t * ct == QuadExtElement::from_base(Residue(1L, m), ctx));
  // T is a primitive fifth root of unity.
  auto p = t;
  for (int k = 2; k <= 5; ++k) {
    p = p * t;
    CHECK((p == QuadExtElement::from_base(Residue(1L, m), ctx)) == (k == 5));
  }
}

TEST_CASE("extension ring properties on random elements") {
  for (unsigned n : {1u, 3u, 5u}) {
    const auto ctx = sqrt5_mod_lambda(n);
    const Modulus& m = ctx.modulus();
    std::mt19937_64 rng(n);
    auto rnd = [&] {
      const long mod = m.value().get_si();
      return QuadExtElement(Residue(static_cast<long>(rng() % mod), m),
                            Residue(static_cast<long>(rng() % mod), m), ctx);
    };
    for (int i = 0; i < 1000; ++i) {
      const auto x = rnd(), y = rnd(), z = rnd();
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      const auto nx = x * quad_conj(x);
      CHECK(nx.in_base_ring());
      CHECK(nx.a() == x.norm());
      auto inv = quad_inverse(x);
      if (inv) {
        CHECK(x * inv.value() == QuadExtElement::from_base(Residue(1L, m), ctx));
      } else {
        CHECK_FALSE(inv_witnessed(x.norm()).ok());
      }
    }
  }
}

TEST_CASE("extension ring over composite lambda_5 exposes zero divisors") {
  const auto ctx = sqrt5_mod_lambda(5);  // 12499 = 29 * 431
  const Modulus& m = ctx.modulus();
  int failures = 0;
  for (long a = 0; a < 431 && failures < 3; ++a) {
    const QuadExtElement x(Residue(a, m), Residue(1L, m), ctx);
    auto inv = quad_inverse(x);
    if (!inv) {
      ++failures;
      if (inv.failure().kind == ArithmeticFailure::Kind::kProperFactor) {
        const BigInt& g = inv.failure().factor;
        CHECK((g == 29 || g == 431));
      }
    }
  }
  CHECK(failures > 0);
}

TEST_CASE("rationals with unit denominator behave like integers") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const long a = static_cast<long>(rng() % 2000000) - 1000000;
    const long b = static_cast<long>(rng() % 2000000) - 1000000;
    const Rational qa(a), qb(b);
    CHECK(Rational(qa * qb) == Rational(BigInt(a) * b));
    CHECK(Rational(qa + qb) == Rational(BigInt(a) + b));
    CHECK(Rational(qa - qb) == Rational(BigInt(a) - b));
  }
  const Modulus m(7);
  auto r = reduce_rational(Rational(9, 4), m);
  REQUIRE(r.ok());
  CHECK(r.value().value() == 4);
  auto bad = reduce_rational(Rational(1, 3), Modulus(15));
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.failure().factor == 3);
}
