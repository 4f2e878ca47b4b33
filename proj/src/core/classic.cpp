#include "curveprime/classic.hpp"

#include <set>
#include <string>

namespace curveprime::classic {

TestOutcome lucas_certify(const BigInt& n, const BigInt& a, const std::vector<BigInt>& prime_factors) {
  if (n < 3) throw std::invalid_argument("lucas_certify needs n >= 3");
  const BigInt n_minus_1 = n - 1;
  BigInt rest = n_minus_1;
  std::set<std::string> seen;
  for (const auto& p : prime_factors) {
    if (p < 2 || !mpz_divisible_p(n_minus_1.get_mpz_t(), p.get_mpz_t())) {
      throw std::invalid_argument(to_decimal(p) + " does not divide n-1");
    }
    if (!seen.insert(to_decimal(p)).second) {
      throw std::invalid_argument("repeated factor " + to_decimal(p));
    }
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) rest /= p;
  }
  if (rest != 1) {
    throw std::invalid_argument("factor list leaves cofactor " + to_decimal(rest) + " of n-1");
  }

  const Modulus m(n);
  const Residue base(a, m);
  const Residue one(1L, m);
  if (!(base.pow(n_minus_1) == one)) {
    return TestOutcome::composite("a^(n-1) != 1 (mod n)", 1);
  }
  std::uint64_t steps = 1;
  for (const auto& p : prime_factors) {
    ++steps;
    if (base.pow(n_minus_1 / p) == one) {
      return TestOutcome::not_certified(
          "a is not a primitive root: a^((n-1)/" + to_decimal(p) + ") = 1", steps);
    }
  }
  return TestOutcome::certified("a has order n-1", steps);
}

BigInt mersenne(unsigned p) {
  BigInt m;
  mpz_ui_pow_ui(m.get_mpz_t(), 2, p);
  return m - 1;
}

std::vector<BigInt> lucas_lehmer_sequence(unsigned p) {
  if (p <= 2) throw std::invalid_argument("lucas_lehmer needs p > 2");
  const Modulus m(mersenne(p));
  Residue a(4L, m);
  const Residue two(2L, m);
  std::vector<BigInt> seq{a.value()};
  for (unsigned i = 0; i + 3 <= p; ++i) {
    a = a * a - two;
    seq.push_back(a.value());
  }
  return seq;
}

TestOutcome lucas_lehmer(unsigned p, const TestOptions& options) {
  auto seq = lucas_lehmer_sequence(p);
  const std::uint64_t steps = seq.size() - 1;
  TestOutcome out = seq.back() == 0
                        ? TestOutcome::certified("a_{p-2} = 0 (mod M_p)", steps)
                        : TestOutcome::composite("Lucas-Lehmer residue nonzero", steps);
  if (options.collect_trace) {
    for (const auto& v : seq) out.trace.push_back(to_decimal(v));
  }
  return out;
}

PellPoint::PellPoint(Residue x, Residue y) : x_(std::move(x)), y_(std::move(y)) {
  const Residue three(3L, x_.modulus());
  if (!(x_ * x_ - three * y_ * y_ == Residue(1L, x_.modulus()))) {
    throw std::invalid_argument("point is not on x^2 - 3y^2 = 1");
  }
}

PellPoint PellPoint::identity(const Modulus& m) { return PellPoint(Residue(1L, m), Residue(0L, m)); }

PellPoint pell_add(const PellPoint& p, const PellPoint& q) {
  const Residue three(3L, p.x().modulus());
  return PellPoint(p.x() * q.x() + three * p.y() * q.y(), p.x() * q.y() + q.x() * p.y());
}

PellPoint pell_double(const PellPoint& p) { return pell_add(p, p); }

}  // namespace curveprime::classic
