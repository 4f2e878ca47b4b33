#include <doctest.h>

#include "curveprime/cm.hpp"
#include "curveprime/oracle.hpp"
#include "curveprime/supersingular.hpp"

using namespace curveprime;
using namespace curveprime::cm;

TEST_CASE("context") {
  const CmContext ctx(11, 11);
  CHECK(ctx.modulus().value() == s_value(11, 11));
  CHECK((ctx.i() * ctx.i()).value() == ctx.modulus().value() - 1);
  CHECK_THROWS_AS(CmContext(13, 11), HypothesisViolated);
  CHECK_THROWS_AS(CmContext(11, 3), HypothesisViolated);
}

TEST_CASE("compute_Q_x") {
  CHECK(compute_Q_x(1) == Rational(5));
  for (long k : {2L, 3L, 11L}) {
    const Rational x = compute_Q_x(k);
    // y^2 = (x^3 - x)/30 must be a rational square.
    const Rational y2 = (x * x * x - x) / 30;
    CHECK(sgn(y2) >= 0);
    CHECK(mpz_perfect_square_p(y2.get_num_mpz_t()));
    CHECK(mpz_perfect_square_p(y2.get_den_mpz_t()));
  }
  // The cached value is the same object on repeat calls.
  CHECK(compute_Q_x(3) == compute_Q_x(3));
}

TEST_CASE("one_plus_i_step") {
  const CmContext ctx(11, 11);
  auto zero = one_plus_i_step(Residue(0L, ctx.modulus()), ctx);
  REQUIRE_FALSE(zero.ok());
  CHECK(zero.failure().kind == ArithmeticFailure::Kind::kZero);
  auto one = one_plus_i_step(Residue(1L, ctx.modulus()), ctx);
  REQUIRE(one.ok());
  CHECK(one.value().is_zero());
}

namespace {

// Points of 30y^2 = x^3 - x over F_q by brute force.
struct E30 {
  std::uint64_t q;
  std::uint64_t i;  // i^2 = -1
  std::uint64_t inv30;

  std::uint64_t rhs(std::uint64_t x) const {
    const std::uint64_t f = (oracle::powmod(x, 3, q) + q - x) % q;
    return oracle::mulmod(f, inv30, q);
  }
};

}  // namespace

TEST_CASE("two (1+i) steps equal the x of 2i P on small fields") {
  // (1+i)^2 = 2i; the CM map is (x, y) -> (-x, i y), so x(2iP) = -x(2P).
  int checked = 0;
  for (std::uint64_t q = 5; q < 400; q += 4) {
    if (!oracle::is_prime_small(q)) continue;
    std::uint64_t i = 2;
    while (oracle::mulmod(i, i, q) != q - 1) ++i;
    const E30 e{q, i, oracle::invmod(30 % q, q)};
    if (30 % q == 0) continue;
    for (std::uint64_t x = 1; x < q; ++x) {
      if (oracle::powmod(e.rhs(x), (q - 1) / 2, q) != 1) continue;  // need a point with y != 0
      // Doubling on 30y^2 = x^3 - x: x(2P) = (x^2 + 1)^2 / (4(x^3 - x)).
      const std::uint64_t x2 = oracle::mulmod(x, x, q);
      const std::uint64_t num = oracle::mulmod((x2 + 1) % q, (x2 + 1) % q, q);
      const std::uint64_t den = oracle::mulmod(4, (oracle::mulmod(x2, x, q) + q - x) % q, q);
      const std::uint64_t xdbl = oracle::mulmod(num, oracle::invmod(den, q), q);
      const std::uint64_t expected = (q - xdbl) % q;

      const Modulus m(static_cast<unsigned long>(q));
      auto step = [&](const Residue& r) -> std::optional<Residue> {
        const Residue ii(static_cast<long>(i), m);
        auto inv = inv_witnessed(Residue(2L, m) * r);
        if (!inv) return std::nullopt;
        return ii * (Residue(1L, m) - r * r) * inv.value();
      };
      auto s1 = step(Residue(static_cast<long>(x), m));
      REQUIRE(s1);
      auto s2 = step(*s1);
      if (!s2) continue;
      CHECK(s2->value() == expected);
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("test_S fixtures") {
  CHECK(test_S(11, 11).is_certified());
  const auto c = test_S(11, 12);
  CHECK(c.is_composite());
  CHECK_FALSE(oracle::is_prime_oracle(s_value(11, 12)).says_prime());
  CHECK(test_S(19, 7).is_certified());
  CHECK_THROWS_AS(test_S(21, 11), HypothesisViolated);  // 21 is not prime
  CHECK_THROWS_AS(test_S(13, 11), HypothesisViolated);
}

TEST_CASE("test_S agrees with the oracle") {
  for (long p : {11L, 19L, 29L, 31L}) {
    for (unsigned n = 3; n <= 60; ++n) {
      BigInt bound = 1;
      bound <<= n;
      if (p >= bound) continue;
      const auto out = test_S(p, n, TestOptions{true});
      const BigInt s = s_value(p, n);
      const bool prime = oracle::is_prime_oracle(s).says_prime();
      CHECK_MESSAGE(out.is_certified() == prime, "p=", p, " n=", n);
      CHECK(out.verdict != Verdict::kNotCertified);
      if (prime) {
        // Zero first appears at the final step.
        REQUIRE(out.trace.size() == 4 * n);
        for (std::size_t j = 0; j + 1 < out.trace.size(); ++j) CHECK(out.trace[j] != "0");
        CHECK(out.trace.back() == "0");
      }
      if (out.factor) CHECK(s % *out.factor == 0);
    }
  }
}

TEST_CASE("modular x0 path") {
  // p = 71, 79, 89 exceed the rational threshold.
  for (long p : {71L, 79L, 89L, 101L}) {
    for (unsigned n = 7; n <= 40; ++n) {
      const auto out = test_S(p, n);
      CHECK_MESSAGE(out.is_certified() == oracle::is_prime_oracle(s_value(p, n)).says_prime(), "p=", p,
                    " n=", n);
    }
  }
}

TEST_CASE("gauss counts") {
  const auto g37 = gauss_count_check(37);
  CHECK(g37.count == 40);
  CHECK(g37.alpha == -1);
  CHECK(g37.consistent());
  const auto g5 = gauss_count_check(5);
  CHECK(g5.count == 8);
  CHECK(g5.alpha == -1);
  const auto g17 = gauss_count_check(17);
  CHECK(g17.count == 16);
  CHECK(g17.alpha == 1);
  CHECK_THROWS_AS(gauss_count_check(7), std::invalid_argument);

  for (std::uint64_t q = 5; q <= 10'000; q += 4) {
    if (!oracle::is_prime_small(q)) continue;
    const auto g = gauss_count_check(q);
    CHECK_MESSAGE(g.consistent(), "q=", q);
    CHECK(g.count % 8 == 0);
  }
}
