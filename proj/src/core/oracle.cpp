#include "curveprime/oracle.hpp"

#include <gmp.h>

#include <array>
#include <random>
#include <stdexcept>

namespace curveprime::oracle {

namespace {

bool miller_rabin_round(const BigInt& n, const BigInt& d, unsigned s, const BigInt& base) {
  BigInt x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const BigInt n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

const BigInt& deterministic_mr_bound() {
  // First 13 prime bases are exact below 3317044064679887385961981.
  static const BigInt bound("3317044064679887385961981", 10);
  return bound;
}

}  // namespace

std::string OracleVerdict::describe() const {
  switch (kind) {
    case Kind::kPrime:
      return "prime";
    case Kind::kProbablePrime:
      return "probable_prime(" + std::to_string(rounds) + " rounds, seed " + std::to_string(seed) + ")";
    case Kind::kComposite:
      return factor ? "composite(" + to_decimal(*factor) + ")" : "composite";
  }
  return "composite";
}

bool is_prime_small(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

OracleVerdict is_prime_oracle(const BigInt& n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("oracle needs n >= 2");
  OracleVerdict v;
  const BigInt trial_limit = 1'000'000;
  const bool small = n < BigInt(1'000'000) * 1'000'000;
  for (unsigned long d = 2; BigInt(d) * d <= n && (small || d < trial_limit); ++d) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      v.kind = OracleVerdict::Kind::kComposite;
      v.factor = BigInt(d);
      return v;
    }
  }
  if (small) {
    v.kind = OracleVerdict::Kind::kPrime;
    return v;
  }

  BigInt d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  if (n < deterministic_mr_bound()) {
    static constexpr std::array<unsigned, 13> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned b : kBases) {
      if (!miller_rabin_round(n, d, s, BigInt(b))) {
        v.kind = OracleVerdict::Kind::kComposite;
        return v;
      }
    }
    v.kind = OracleVerdict::Kind::kPrime;
    return v;
  }

  std::mt19937_64 rng(seed);
  gmp_randclass gen(gmp_randinit_default);
  gen.seed(static_cast<unsigned long>(rng()));
  for (unsigned r = 0; r < kProbableRounds; ++r) {
    BigInt base = gen.get_z_range(n - 3) + 2;
    if (!miller_rabin_round(n, d, s, base)) {
      v.kind = OracleVerdict::Kind::kComposite;
      return v;
    }
  }
  v.kind = OracleVerdict::Kind::kProbablePrime;
  v.rounds = kProbableRounds;
  v.seed = seed;
  return v;
}

// ---------------------------------------------------------------------------

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1 % q;
  a %= q;
  while (e) {
    if (e & 1) r = mulmod(r, a, q);
    a = mulmod(a, a, q);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t q) { return powmod(a, q - 2, q); }

namespace {

void check_field(std::uint64_t q) {
  if (q > kMaxEnumerationPrime || !is_prime_small(q)) {
    throw std::invalid_argument("enumeration needs a prime q <= 10^4, got " + std::to_string(q));
  }
}

std::uint64_t reduce(long long c, std::uint64_t q) {
  long long r = c % static_cast<long long>(q);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(q) : r);
}

}  // namespace

PointEnumeration enumerate_curve_points(std::uint64_t q, const CurveSpec& curve) {
  check_field(q);
  std::vector<std::vector<std::uint64_t>> roots(q);
  for (std::uint64_t y = 0; y < q; ++y) roots[y * y % q].push_back(y);
  PointEnumeration out;
  for (std::uint64_t x = 0; x < q; ++x) {
    std::uint64_t fx = 0;
    for (auto it = curve.f.rbegin(); it != curve.f.rend(); ++it) fx = (fx * x + reduce(*it, q)) % q;
    for (std::uint64_t y : roots[fx]) out.points.push_back({x, y});
  }
  out.count = out.points.size() + 1;
  return out;
}

std::uint64_t count_curve_points(std::uint64_t q, const CurveSpec& curve) {
  check_field(q);
  std::vector<unsigned char> roots(q, 0);
  for (std::uint64_t y = 0; y < q; ++y) ++roots[y * y % q];
  std::vector<std::uint64_t> coeffs;
  for (long long c : curve.f) coeffs.push_back(reduce(c, q));
  std::uint64_t count = 1;
  for (std::uint64_t x = 0; x < q; ++x) {
    std::uint64_t fx = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) fx = (fx * x + *it) % q;
    count += roots[fx];
  }
  return count;
}

std::uint64_t count_points_quadratic_extension(std::uint64_t q, const CurveSpec& curve) {
  check_field(q);
  if (q == 2) throw std::invalid_argument("odd characteristic only");
  // F_{q^2} = F_q[s]/(s^2 - r) with r a non-residue.
  std::uint64_t r = 2;
  while (powmod(r, (q - 1) / 2, q) != q - 1) ++r;
  struct Fq2 {
    std::uint64_t a, b;
  };
  auto mul = [&](Fq2 x, Fq2 y) {
    return Fq2{(x.a * y.a + mulmod(x.b * y.b % q, r, q)) % q, (x.a * y.b + x.b * y.a) % q};
  };
  // Squares of F_{q^2}^* are the elements of norm a quadratic residue in F_q:
  // z is a square iff N(z) = a^2 - r b^2 is a square in F_q.
  std::vector<char> is_sq(q, 0);
  for (std::uint64_t y = 0; y < q; ++y) is_sq[y * y % q] = 1;
  std::uint64_t count = 1;
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t b = 0; b < q; ++b) {
      Fq2 x{a, b}, fx{0, 0};
      for (auto it = curve.f.rbegin(); it != curve.f.rend(); ++it) {
        fx = mul(fx, x);
        fx.a = (fx.a + reduce(*it, q)) % q;
      }
      if (fx.a == 0 && fx.b == 0) {
        count += 1;
      } else {
        const std::uint64_t norm = (fx.a * fx.a % q + q - mulmod(fx.b * fx.b % q, r, q)) % q;
        if (is_sq[norm]) count += 2;
      }
    }
  }
  return count;
}

}  // namespace curveprime::oracle
