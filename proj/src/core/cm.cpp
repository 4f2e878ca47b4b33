#include "curveprime/cm.hpp"

#include <map>
#include <mutex>

#include "curveprime/oracle.hpp"
#include "curveprime/supersingular.hpp"

namespace curveprime::cm {

BigInt s_value(const BigInt& p, unsigned n) {
  BigInt s = p * p;
  s <<= 4 * n;
  return s + 1;
}

namespace {

BigInt i_value(const BigInt& p, unsigned n) {
  BigInt i = p;
  i <<= 2 * n;
  return i;
}

void check_context(const BigInt& p, unsigned n) {
  const unsigned long r = mpz_fdiv_ui(p.get_mpz_t(), 10);
  if (p < 2 || (r != 1 && r != 9)) throw HypothesisViolated("p must be = +-1 (mod 10)");
  BigInt bound = 1;
  bound <<= n;
  if (p >= bound) throw HypothesisViolated("needs p < 2^n");
}

}  // namespace

CmContext::CmContext(const BigInt& p, unsigned n)
    : p_((check_context(p, n), p)),
      n_(n),
      modulus_(s_value(p, n)),
      i_(i_value(p, n), modulus_) {
  if (!(i_ * i_ == Residue(-1L, modulus_))) throw std::logic_error("(p 4^n)^2 != -1 mod S");
}

Rational compute_Q_x(const BigInt& k) {
  static std::mutex mu;
  static std::map<BigInt, Rational> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
  }
  const auto q = supersingular::rational_multiple(900, {Rational(150), Rational(1800)}, k);
  if (q.at_infinity) throw std::logic_error("(150, 1800) has infinite order");
  Rational x = q.x / 30;
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(k, x);
  return x;
}

Witnessed<Residue> one_plus_i_step(const Residue& x, const CmContext& ctx) {
  const Modulus& mod = ctx.modulus();
  auto inv = inv_witnessed(Residue(2L, mod) * x);
  if (!inv) return inv.failure();
  return ctx.i() * (Residue(1L, mod) - x * x) * inv.value();
}

namespace {

Witnessed<Residue> starting_x(const CmContext& ctx) {
  const Modulus& mod = ctx.modulus();
  if (ctx.p() <= kRationalMultiplierLimit) return reduce_rational(compute_Q_x(ctx.p()), mod);
  const Residue c(900L, mod);
  const supersingular::ModPoint base{Residue(150L, mod), Residue(1800L, mod), false};
  auto q = supersingular::mod_multiple(c, base, ctx.p());
  if (!q) return q.failure();
  if (q.value().at_infinity) return ArithmeticFailure::zero();
  auto inv30 = inv_witnessed(Residue(30L, mod));
  if (!inv30) return inv30.failure();
  return q.value().x * inv30.value();
}

}  // namespace

TestOutcome test_S(const BigInt& p, unsigned n, const TestOptions& options) {
  const CmContext ctx(p, n);
  if (oracle::is_prime_oracle(p).kind != oracle::OracleVerdict::Kind::kPrime) {
    throw HypothesisViolated("p must be a proven prime");
  }
  const BigInt& s = ctx.modulus().value();
  auto x0 = starting_x(ctx);
  if (!x0) return outcome_from_failure(x0.failure(), s, "x0 = x(p(5,2))", 0);

  Residue x = x0.value();
  std::vector<std::string> trace;
  if (options.collect_trace) trace.push_back(to_decimal(x.value()));
  const std::uint64_t total = 4ULL * n - 1;
  for (std::uint64_t j = 0; j < total; ++j) {
    auto next = one_plus_i_step(x, ctx);
    if (!next) {
      TestOutcome out =
          next.failure().kind == ArithmeticFailure::Kind::kZero
              ? TestOutcome::composite("x_" + std::to_string(j) + " = 0 before step 4n-1", j)
              : outcome_from_failure(next.failure(), s, "step " + std::to_string(j + 1), j);
      out.trace = std::move(trace);
      return out;
    }
    x = next.value();
    if (options.collect_trace) trace.push_back(to_decimal(x.value()));
  }
  TestOutcome out = x.is_zero() ? TestOutcome::certified("x_{4n-1} = 0", total)
                                : TestOutcome::composite("x_{4n-1} != 0", total);
  out.trace = std::move(trace);
  return out;
}

GaussCount gauss_count_check(std::uint64_t q) {
  if (q % 4 != 1 || q > oracle::kMaxEnumerationPrime || !oracle::is_prime_small(q)) {
    throw std::invalid_argument("needs a prime q = 1 (mod 4), q <= 10^4");
  }
  GaussCount out;
  out.q = q;
  for (long long a = 1; a * a < static_cast<long long>(q); a += 2) {
    const long long rest = static_cast<long long>(q) - a * a;
    long long b = 0;
    while (b * b < rest) ++b;
    if (b * b != rest) continue;
    const long long want = q % 8 == 1 ? 1 : 3;
    out.alpha = (a % 4 == want) ? a : -a;
    break;
  }
  out.count = oracle::count_curve_points(q, oracle::CurveSpec{{0, -1, 0, 1}});
  return out;
}

}  // namespace curveprime::cm
