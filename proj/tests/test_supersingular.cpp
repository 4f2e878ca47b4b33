#include <doctest.h>

#include "curveprime/classic.hpp"
#include "curveprime/oracle.hpp"
#include "curveprime/supersingular.hpp"

using namespace curveprime;
using namespace curveprime::supersingular;

TEST_CASE("prefilter") {
  CHECK(prefilter_35(1, 2) == Prefilter::kDivisibleBy3);
  CHECK(prefilter_35(13, 7) == Prefilter::kClean);
  CHECK(prefilter_35(3, 1) == Prefilter::kDivisibleBy5);
  CHECK(a_value(13, 7) == 1663);

  // The residue tables agree with direct division.
  for (long m = 1; m < 200; m += 2) {
    for (unsigned n = 1; n < 24; ++n) {
      const BigInt a = a_value(m, n);
      const Prefilter pf = prefilter_35(m, n);
      const bool by3 = a % 3 == 0;
      const bool by5 = a % 5 == 0;
      CHECK((pf == Prefilter::kDivisibleBy3) == by3);
      CHECK((pf == Prefilter::kDivisibleBy5) == (by5 && !by3));
    }
  }
}

TEST_CASE("select_t") {
  CHECK(select_t(13, 7) == 2);

  // A = 31: scan by Euler's criterion.
  unsigned long expected = 0;
  for (unsigned long t = 1; t < 31; ++t) {
    if (oracle::powmod(t * t + 1, 15, 31) == 30) {
      expected = t;
      break;
    }
  }
  CHECK(expected == 4);
  CHECK(select_t(1, 5) == expected);

  for (long m = 1; m < 60; m += 2) {
    for (unsigned n = 3; n < 30; ++n) {
      if (prefilter_35(m, n) != Prefilter::kClean) continue;
      const unsigned long t = select_t(m, n);
      CHECK(jacobi(BigInt(t) * t + 1, a_value(m, n)) == -1);
    }
  }
}

TEST_CASE("rational multiples on E_t") {
  const RationalPoint p{Rational(-1), Rational(2)};
  CHECK(p.on_curve(5));
  CHECK(rational_multiple(5, p, 1) == p);
  const auto d = rational_multiple(5, p, 2);
  CHECK(d.x == Rational(9, 4));
  CHECK(d.on_curve(5));
  // Tangent at (-1, 2) has slope -1/2, so y(2P) = -1/2 (-1 - 9/4) - 2.
  CHECK(d.y == Rational(-3, 8));

  const auto p13 = rational_multiple(5, p, 13);
  CHECK(p13.on_curve(5));
  CHECK(p13.x == Rational(BigInt("-38867230505264472384304448711791072932034380121"),
                          BigInt("20648248720215880190543854206835397627372795209")));

  // Double-and-add agrees with repeated addition.
  RationalPoint acc = p;
  for (int k = 2; k <= 9; ++k) {
    acc = rational_add(5, acc, p);
    CHECK(acc == rational_multiple(5, p, k));
  }
}

TEST_CASE("test_A fixtures") {
  const auto a1663 = test_A(13, 7);
  CHECK(a1663.is_certified());
  CHECK(a1663.steps == 6);

  const auto a26623 = test_A(13, 11);
  CHECK(a26623.is_certified() == oracle::is_prime_oracle(26623).says_prime());

  CHECK(test_A(1, 5).is_certified());
  CHECK(classic::lucas_lehmer(5).is_certified());

  CHECK(test_A(1, 2).is_certified());  // A = 3
  CHECK(test_A(3, 1).is_certified());  // A = 5
  CHECK_THROWS_AS(test_A(13, 5), HypothesisViolated);
  CHECK_THROWS_AS(test_A(4, 9), HypothesisViolated);
  CHECK_THROWS_AS(test_A(1, 4), HypothesisViolated);  // 15 = 3 * 5
}

TEST_CASE("test_A agrees with the oracle") {
  for (long m = 1; m <= 25; m += 2) {
    for (unsigned n = 2; n <= 40; ++n) {
      BigInt bound = 1;
      bound <<= n;
      if (4 * m >= bound || prefilter_35(m, n) != Prefilter::kClean) continue;
      const auto out = test_A(m, n);
      const BigInt a = a_value(m, n);
      CHECK_MESSAGE(out.is_certified() == oracle::is_prime_oracle(a).says_prime(), "m=", m, " n=", n);
      CHECK(out.verdict != Verdict::kNotCertified);
      if (out.factor) {
        CHECK(*out.factor > 1);
        CHECK(*out.factor < a);
        CHECK(a % *out.factor == 0);
      }
    }
  }
}

TEST_CASE("modular x0 path matches the rational path") {
  for (long m : {65L, 71L, 99L, 127L, 131L, 255L}) {
    for (unsigned n = 10; n <= 60; ++n) {
      if (prefilter_35(m, n) != Prefilter::kClean) continue;
      const auto out = test_A(m, n);
      CHECK_MESSAGE(out.is_certified() == oracle::is_prime_oracle(a_value(m, n)).says_prime(), "m=",
                    m, " n=", n);
    }
  }
}

TEST_CASE("x-only recurrence matches generic point doubling") {
  for (long m = 1; m <= 25; m += 2) {
    for (unsigned n = 4; n <= 40; ++n) {
      BigInt bound = 1;
      bound <<= n;
      if (4 * m >= bound || prefilter_35(m, n) != Prefilter::kClean) continue;
      const BigInt a = a_value(m, n);
      if (!oracle::is_prime_oracle(a).says_prime()) continue;
      const auto out = test_A(m, n, TestOptions{true});
      auto xs = doubling_chain_x(m, n, select_t(m, n));
      REQUIRE(xs.ok());
      REQUIRE(xs.value().size() == out.trace.size());
      for (std::size_t i = 0; i < out.trace.size(); ++i) CHECK(to_decimal(xs.value()[i]) == out.trace[i]);
    }
  }
}

TEST_CASE("small group structure") {
  const auto g7 = brute_group_structure(7, 2);
  CHECK(g7.order == 8);
  CHECK(g7.is_cyclic);
  CHECK(g7.point_not_divisible_by_2);
  CHECK(brute_group_structure(11, 2).order == 12);
  for (std::uint64_t t = 0; t < 19; ++t) CHECK(brute_group_structure(19, t).order == 20);
  CHECK_THROWS_AS(brute_group_structure(13, 2), std::invalid_argument);
}

TEST_CASE("cyclic and (-1,t) not halvable when t^2+1 is a non-residue") {
  for (std::uint64_t p = 3; p <= 400; p += 4) {
    if (!oracle::is_prime_small(p)) continue;
    for (std::uint64_t t = 0; t < p; ++t) {
      const std::uint64_t c = (t * t + 1) % p;
      if (oracle::powmod(c, (p - 1) / 2, p) != p - 1) continue;
      const auto g = brute_group_structure(p, t);
      CHECK(g.order == p + 1);
      CHECK(g.is_cyclic);
      CHECK(g.point_not_divisible_by_2);
    }
  }
}

TEST_CASE("E_t has p + 1 points for p = 3 (mod 4), p <= 2000") {
  for (std::uint64_t p = 3; p <= 2000; p += 4) {
    if (!oracle::is_prime_small(p)) continue;
    for (std::uint64_t t = 0; t < p; ++t) {
      const long long c = static_cast<long long>((t * t + 1) % p);
      REQUIRE(oracle::count_curve_points(p, oracle::CurveSpec{{0, -c, 0, 1}}) == p + 1);
    }
  }
}
