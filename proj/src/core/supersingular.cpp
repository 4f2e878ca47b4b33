#include "curveprime/supersingular.hpp"

#include <unordered_set>
#include <vector>

#include "curveprime/oracle.hpp"

namespace curveprime::supersingular {

BigInt a_value(const BigInt& m, unsigned n) {
  BigInt a = m;
  a <<= n;
  return a - 1;
}

const char* prefilter_name(Prefilter p) {
  switch (p) {
    case Prefilter::kClean:
      return "clean";
    case Prefilter::kDivisibleBy3:
      return "divisible by 3";
    case Prefilter::kDivisibleBy5:
      return "divisible by 5";
  }
  return "clean";
}

Prefilter prefilter_35(const BigInt& m, unsigned n) {
  if (m < 1 || mpz_even_p(m.get_mpz_t())) throw std::invalid_argument("m must be odd and positive");
  if (n < 1) throw std::invalid_argument("n must be positive");
  const unsigned long m3 = mpz_fdiv_ui(m.get_mpz_t(), 3);
  const unsigned long m5 = mpz_fdiv_ui(m.get_mpz_t(), 5);
  if ((m3 == 2 && n % 2 == 1) || (m3 == 1 && n % 2 == 0)) return Prefilter::kDivisibleBy3;
  switch (n % 4) {
    case 0:
      if (m5 == 1) return Prefilter::kDivisibleBy5;
      break;
    case 1:
      if (m5 == 3) return Prefilter::kDivisibleBy5;
      break;
    case 2:
      if (m5 == 4) return Prefilter::kDivisibleBy5;
      break;
    default:
      if (m5 == 2) return Prefilter::kDivisibleBy5;
      break;
  }
  return Prefilter::kClean;
}

unsigned long select_t(const BigInt& m, unsigned n) {
  // 5 is a non-residue mod A exactly when m*2^n = 3 or 4 (mod 5).
  const unsigned long m5 = mpz_fdiv_ui(m.get_mpz_t(), 5);
  static constexpr unsigned kPow2Mod5[4] = {1, 2, 4, 3};
  const unsigned long r = m5 * kPow2Mod5[n % 4] % 5;
  if (r == 3 || r == 4) return 2;

  const BigInt a = a_value(m, n);
  for (unsigned long t = 1; t < kMaxTwistSearch; ++t) {
    if (jacobi(BigInt(t) * t + 1, a) == -1) return t;
  }
  throw SearchExhausted("no t < 10^6 with jacobi(t^2+1, A) = -1");
}

// ---------------------------------------------------------------------------

bool RationalPoint::on_curve(const BigInt& c) const {
  if (at_infinity) return true;
  return y * y == x * x * x - Rational(c) * x;
}

RationalPoint rational_add(const BigInt& c, const RationalPoint& p, const RationalPoint& q) {
  if (p.at_infinity) return q;
  if (q.at_infinity) return p;
  Rational slope;
  if (p.x == q.x) {
    if (p.y == -q.y) return RationalPoint::infinity();
    slope = (3 * p.x * p.x - Rational(c)) / (2 * p.y);
  } else {
    slope = (q.y - p.y) / (q.x - p.x);
  }
  RationalPoint r;
  r.x = slope * slope - p.x - q.x;
  r.y = slope * (p.x - r.x) - p.y;
  return r;
}

RationalPoint rational_multiple(const BigInt& c, const RationalPoint& p, const BigInt& k) {
  if (k < 1) throw std::invalid_argument("multiplier must be positive");
  RationalPoint acc = p;
  for (long bit = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 2; bit >= 0; --bit) {
    acc = rational_add(c, acc, acc);
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) acc = rational_add(c, acc, p);
  }
  return acc;
}

// ---------------------------------------------------------------------------

bool ModPoint::on_curve(const Residue& c) const {
  if (at_infinity) return true;
  return y * y == x * x * x - c * x;
}

Witnessed<ModPoint> mod_add(const Residue& c, const ModPoint& p, const ModPoint& q) {
  if (p.at_infinity) return q;
  if (q.at_infinity) return p;
  const Modulus& mod = c.modulus();
  Residue slope(0L, mod);
  if (p.x == q.x) {
    if ((p.y + q.y).is_zero()) return ModPoint::infinity(mod);
    if (!(p.y == q.y)) {
      BigInt g;
      const BigInt diff = (p.y - q.y).value();
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), mod.value().get_mpz_t());
      if (g > 1 && g < mod.value()) return ArithmeticFailure::proper_factor(g);
      return ArithmeticFailure::zero_divisor();
    }
    auto inv = inv_witnessed(Residue(2L, mod) * p.y);
    if (!inv) return inv.failure();
    slope = (Residue(3L, mod) * p.x * p.x - c) * inv.value();
  } else {
    auto inv = inv_witnessed(q.x - p.x);
    if (!inv) return inv.failure();
    slope = (q.y - p.y) * inv.value();
  }
  Residue x = slope * slope - p.x - q.x;
  Residue y = slope * (p.x - x) - p.y;
  return ModPoint{x, y, false};
}

Witnessed<ModPoint> mod_multiple(const Residue& c, const ModPoint& p, const BigInt& k) {
  if (k < 1) throw std::invalid_argument("multiplier must be positive");
  ModPoint acc = p;
  for (long bit = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 2; bit >= 0; --bit) {
    auto d = mod_add(c, acc, acc);
    if (!d) return d;
    acc = d.value();
    if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
      auto s = mod_add(c, acc, p);
      if (!s) return s;
      acc = s.value();
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------

namespace {

void check_hypotheses(const BigInt& m, unsigned n) {
  if (m < 1 || mpz_even_p(m.get_mpz_t())) throw HypothesisViolated("m must be odd and positive");
  if (n < 2) throw HypothesisViolated("n must be > 1");
  BigInt bound = 1;
  bound <<= n;
  if (4 * m >= bound) throw HypothesisViolated("needs 4m < 2^n");
  const Prefilter pf = prefilter_35(m, n);
  if (pf != Prefilter::kClean) {
    throw HypothesisViolated(std::string("A(m, n) is ") + prefilter_name(pf));
  }
}

/// x(m(-1, t)) modulo A, or the failure that proves A composite.
Witnessed<Residue> starting_x(const BigInt& m, const Residue& c, unsigned long t) {
  const Modulus& mod = c.modulus();
  if (m <= kRationalMultiplierLimit) {
    const BigInt cq = t * BigInt(t) + 1;
    const RationalPoint p = rational_multiple(cq, {Rational(-1), Rational(t)}, m);
    if (p.at_infinity) return ArithmeticFailure::zero();
    return reduce_rational(p.x, mod);
  }
  const ModPoint base{Residue(-1L, mod), Residue(BigInt(t), mod), false};
  auto p = mod_multiple(c, base, m);
  if (!p) return p.failure();
  if (p.value().at_infinity) return ArithmeticFailure::zero();
  return p.value().x;
}

}  // namespace

TestOutcome test_A(const BigInt& m, unsigned n, const TestOptions& options) {
  const BigInt a = a_value(m, n);
  if (a == 3 || a == 5) return TestOutcome::certified("A is 3 or 5", 0);
  check_hypotheses(m, n);

  unsigned long t = 0;
  try {
    t = select_t(m, n);
  } catch (const SearchExhausted& e) {
    return TestOutcome::not_certified(e.what(), 0);
  }
  const Modulus mod(a);
  const Residue c(BigInt(t) * t + 1, mod);

  auto x0 = starting_x(m, c, t);
  if (!x0) return outcome_from_failure(x0.failure(), a, "x0 = x(m(-1,t))", 0);
  Residue x = x0.value();

  std::vector<std::string> trace;
  if (options.collect_trace) trace.push_back(to_decimal(x.value()));
  const Residue four(4L, mod);
  for (unsigned i = 0; i + 1 < n; ++i) {
    const Residue x2 = x * x;
    auto inv = inv_witnessed(four * (x2 * x - c * x));
    if (!inv) {
      TestOutcome out = outcome_from_failure(inv.failure(), a, "step " + std::to_string(i + 1), i);
      out.trace = std::move(trace);
      return out;
    }
    const Residue num = x2 + c;
    x = num * num * inv.value();
    if (options.collect_trace) trace.push_back(to_decimal(x.value()));
  }
  TestOutcome out = x.is_zero()
                        ? TestOutcome::certified("x_{n-1} = 0 (t = " + std::to_string(t) + ")", n - 1)
                        : TestOutcome::composite("x_{n-1} != 0 (t = " + std::to_string(t) + ")", n - 1);
  out.trace = std::move(trace);
  return out;
}

Witnessed<std::vector<BigInt>> doubling_chain_x(const BigInt& m, unsigned n, unsigned long t) {
  const Modulus mod(a_value(m, n));
  const Residue c(BigInt(t) * t + 1, mod);
  const ModPoint base{Residue(-1L, mod), Residue(BigInt(t), mod), false};
  auto p = mod_multiple(c, base, m);
  if (!p) return p.failure();
  std::vector<BigInt> xs;
  ModPoint q = p.value();
  for (unsigned i = 0; i < n; ++i) {
    if (q.at_infinity) return ArithmeticFailure::zero();
    xs.push_back(q.x.value());
    if (i + 1 == n) break;
    auto d = mod_add(c, q, q);
    if (!d) return d.failure();
    q = d.value();
  }
  return xs;
}

// ---------------------------------------------------------------------------

namespace {

struct SmallPoint {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  bool inf = true;
};

struct SmallCurve {
  std::uint64_t p;
  std::uint64_t c;  // y^2 = x^3 - c x

  SmallPoint add(const SmallPoint& a, const SmallPoint& b) const {
    using oracle::invmod;
    using oracle::mulmod;
    if (a.inf) return b;
    if (b.inf) return a;
    std::uint64_t slope;
    if (a.x == b.x) {
      if ((a.y + b.y) % p == 0) return {};
      const std::uint64_t num = (3 * mulmod(a.x, a.x, p) + p - c) % p;
      slope = mulmod(num, invmod(2 * a.y % p, p), p);
    } else {
      slope = mulmod((b.y + p - a.y) % p, invmod((b.x + p - a.x) % p, p), p);
    }
    SmallPoint r;
    r.inf = false;
    r.x = (mulmod(slope, slope, p) + 2 * p - a.x - b.x) % p;
    r.y = (mulmod(slope, (a.x + p - r.x) % p, p) + p - a.y) % p;
    return r;
  }

  SmallPoint multiple(SmallPoint a, std::uint64_t k) const {
    SmallPoint r;
    while (k) {
      if (k & 1) r = add(r, a);
      a = add(a, a);
      k >>= 1;
    }
    return r;
  }
};

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

GroupStructure brute_group_structure(std::uint64_t p, std::uint64_t t) {
  if (p % 4 != 3 || !oracle::is_prime_small(p) || p > oracle::kMaxEnumerationPrime) {
    throw std::invalid_argument("needs a prime p = 3 (mod 4), p <= 10^4");
  }
  const std::uint64_t c = (oracle::mulmod(t % p, t % p, p) + 1) % p;
  const auto points =
      oracle::enumerate_curve_points(p, oracle::CurveSpec{{0, -static_cast<long long>(c), 0, 1}});
  const SmallCurve curve{p, c};

  GroupStructure out;
  out.order = points.count;

  out.is_cyclic = true;
  for (std::uint64_t ell : prime_divisors(out.order)) {
    bool found = false;
    for (const auto& pt : points.points) {
      if (!curve.multiple({pt.x, pt.y, false}, out.order / ell).inf) {
        found = true;
        break;
      }
    }
    if (!found) {
      out.is_cyclic = false;
      break;
    }
  }

  std::unordered_set<std::uint64_t> doubles;
  for (const auto& pt : points.points) {
    const SmallPoint d = curve.add({pt.x, pt.y, false}, {pt.x, pt.y, false});
    if (!d.inf) doubles.insert(d.x * p + d.y);
  }
  out.point_not_divisible_by_2 = doubles.count((p - 1) * p + t % p) == 0;
  return out;
}

}  // namespace curveprime::supersingular
