#include <doctest.h>

#include <random>

#include "curveprime/classic.hpp"
#include "curveprime/oracle.hpp"

using namespace curveprime;
using namespace curveprime::classic;

namespace {

std::vector<BigInt> distinct_prime_factors(std::uint64_t n) {
  std::vector<BigInt> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.emplace_back(static_cast<unsigned long>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.emplace_back(static_cast<unsigned long>(n));
  return out;
}

}  // namespace

TEST_CASE("lucas_certify fixtures") {
  CHECK(lucas_certify(7, 3, {2, 3}).verdict == Verdict::kCertifiedPrime);
  CHECK(lucas_certify(7, 2, {2, 3}).verdict == Verdict::kNotCertified);
  CHECK(lucas_certify(9, 2, {2}).verdict == Verdict::kCompositeWitness);
  CHECK_THROWS_AS(lucas_certify(7, 3, {2, 5}), std::invalid_argument);
  CHECK_THROWS_AS(lucas_certify(7, 3, {2}), std::invalid_argument);
}

TEST_CASE("lucas_certify never certifies a composite below 10^4") {
  for (std::uint64_t n = 3; n <= 10'000; ++n) {
    const auto factors = distinct_prime_factors(n - 1);
    bool certified = false;
    for (unsigned long a = 2; a < 12 && a < n; ++a) {
      const auto out = lucas_certify(BigInt(static_cast<unsigned long>(n)), a, factors);
      if (out.is_certified()) certified = true;
    }
    if (certified) CHECK(oracle::is_prime_small(n));
  }
}

TEST_CASE("lucas_lehmer fixtures") {
  const auto seq = lucas_lehmer_sequence(5);
  REQUIRE(seq.size() == 4);
  CHECK(seq[0] == 4);
  CHECK(seq[1] == 14);
  CHECK(seq[2] == 8);
  CHECK(seq[3] == 0);
  CHECK(lucas_lehmer(5).is_certified());
  CHECK(lucas_lehmer(7).is_certified());
  const auto m11 = lucas_lehmer(11);
  CHECK(m11.is_composite());
  CHECK(m11.reason == "Lucas-Lehmer residue nonzero");
  CHECK(oracle::is_prime_oracle(mersenne(11)).factor == 23);
  CHECK_THROWS_AS(lucas_lehmer(2), std::invalid_argument);
  CHECK(lucas_lehmer(5, TestOptions{true}).trace.size() == 4);
}

TEST_CASE("pell conic") {
  const Modulus m(31);
  const PellPoint g(Residue(2L, m), Residue(1L, m));
  CHECK(pell_add(PellPoint::identity(m), g) == g);
  const auto d = pell_double(g);
  CHECK(d.x().value() == 7);
  CHECK(d.y().value() == 4);
  CHECK_THROWS_AS(PellPoint(Residue(2L, m), Residue(2L, m)), std::invalid_argument);
}

TEST_CASE("lucas-lehmer terms are twice the x of 2^j (2,1)") {
  for (unsigned p = 3; p <= 31; ++p) {
    const Modulus m(mersenne(p));
    const auto seq = lucas_lehmer_sequence(p);
    PellPoint pt(Residue(2L, m), Residue(1L, m));
    for (std::size_t j = 0; j < seq.size(); ++j) {
      CHECK((Residue(2L, m) * pt.x()).value() == seq[j]);
      pt = pell_double(pt);
    }
  }
}

TEST_CASE("pell group law is commutative and associative") {
  std::mt19937_64 rng(5);
  for (long q : {11L, 13L, 23L, 97L, 1009L}) {
    const Modulus m(q);
    std::vector<PellPoint> pts;
    for (long x = 0; x < q; ++x) {
      for (long y = 0; y < q; ++y) {
        if ((x * x - 3 * y * y - 1) % q == 0) pts.emplace_back(Residue(x, m), Residue(y, m));
      }
    }
    REQUIRE(!pts.empty());
    for (int i = 0; i < 250; ++i) {
      const auto& a = pts[rng() % pts.size()];
      const auto& b = pts[rng() % pts.size()];
      const auto& c = pts[rng() % pts.size()];
      CHECK(pell_add(a, b) == pell_add(b, a));
      CHECK(pell_add(pell_add(a, b), c) == pell_add(a, pell_add(b, c)));
    }
  }
}
