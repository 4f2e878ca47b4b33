#include "curveprime/ring.hpp"

#include <gmp.h>

#include <cctype>

namespace curveprime {

std::string to_decimal(const BigInt& x) { return x.get_str(10); }

BigInt parse_bigint(const std::string& text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw std::invalid_argument("not an integer: '" + text + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw std::invalid_argument("not an integer: '" + text + "'");
    }
  }
  return BigInt(text[0] == '+' ? text.substr(1) : text, 10);
}

std::string ArithmeticFailure::describe() const {
  switch (kind) {
    case Kind::kProperFactor:
      return "non-unit with proper factor " + to_decimal(factor);
    case Kind::kZero:
      return "division by zero";
    case Kind::kZeroDivisor:
      return "nonzero zero divisor";
  }
  return "arithmetic failure";
}

Modulus::Modulus(BigInt n) {
  if (n < 2) throw std::invalid_argument("modulus must be >= 2, got " + to_decimal(n));
  n_ = std::make_shared<const BigInt>(std::move(n));
}

Residue::Residue(const BigInt& value, Modulus modulus) : modulus_(std::move(modulus)) {
  mpz_mod(value_.get_mpz_t(), value.get_mpz_t(), modulus_.value().get_mpz_t());
}

void Residue::check_same(const Residue& o) const {
  if (!(modulus_ == o.modulus_)) {
    throw std::logic_error("arithmetic between residues of different moduli");
  }
}

Residue Residue::operator+(const Residue& o) const {
  check_same(o);
  BigInt r = value_ + o.value_;
  if (r >= modulus_.value()) r -= modulus_.value();
  return Residue(Raw{}, std::move(r), modulus_);
}

Residue Residue::operator-(const Residue& o) const {
  check_same(o);
  BigInt r = value_ - o.value_;
  if (r < 0) r += modulus_.value();
  return Residue(Raw{}, std::move(r), modulus_);
}

Residue Residue::operator*(const Residue& o) const {
  check_same(o);
  BigInt r;
  mpz_mul(r.get_mpz_t(), value_.get_mpz_t(), o.value_.get_mpz_t());
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus_.value().get_mpz_t());
  return Residue(Raw{}, std::move(r), modulus_);
}

Residue Residue::operator-() const {
  if (value_ == 0) return *this;
  return Residue(Raw{}, modulus_.value() - value_, modulus_);
}

Residue Residue::pow(const BigInt& exponent) const {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  BigInt r;
  mpz_powm(r.get_mpz_t(), value_.get_mpz_t(), exponent.get_mpz_t(),
           modulus_.value().get_mpz_t());
  return Residue(Raw{}, std::move(r), modulus_);
}

InverseOutcome inv_witnessed(const Residue& x) {
  if (x.is_zero()) return ArithmeticFailure::zero();
  BigInt inv;
  if (mpz_invert(inv.get_mpz_t(), x.value().get_mpz_t(), x.modulus().value().get_mpz_t()) != 0) {
    return Residue(inv, x.modulus());
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), x.value().get_mpz_t(), x.modulus().value().get_mpz_t());
  return ArithmeticFailure::proper_factor(std::move(g));
}

Witnessed<Residue> reduce_rational(const Rational& q, const Modulus& modulus) {
  Residue den(q.get_den(), modulus);
  auto inv = inv_witnessed(den);
  if (!inv) return inv.failure();
  return Residue(q.get_num(), modulus) * inv.value();
}

int jacobi(const BigInt& a, const BigInt& n) {
  if (n < 3 || mpz_even_p(n.get_mpz_t())) {
    throw std::invalid_argument("jacobi symbol needs odd n >= 3, got " + to_decimal(n));
  }
  return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

// ---------------------------------------------------------------------------

QuadExtContext::QuadExtContext(Modulus modulus, const BigInt& d) {
  if (mpz_even_p(modulus.value().get_mpz_t())) {
    throw std::invalid_argument("extension ring needs an odd modulus");
  }
  Residue dd(d, modulus);
  if (!(dd * dd == Residue(5L, modulus))) {
    throw std::invalid_argument("d^2 != 5 modulo " + to_decimal(modulus.value()));
  }
  Residue half = inv_witnessed(Residue(2L, modulus)).value();
  Residue eta = (dd - Residue(1L, modulus)) * half;
  data_ = std::make_shared<const Data>(Data{modulus, dd, eta});
}

BigInt lambda_value(unsigned n) {
  BigInt five_n;
  mpz_ui_pow_ui(five_n.get_mpz_t(), 5, n);
  return 4 * five_n - 1;
}

QuadExtContext sqrt5_mod_lambda(unsigned n) {
  if (n % 2 == 0) throw std::invalid_argument("sqrt5_mod_lambda needs odd n");
  BigInt d;
  mpz_ui_pow_ui(d.get_mpz_t(), 5, (n + 1) / 2);
  d *= 2;
  return QuadExtContext(Modulus(lambda_value(n)), d);
}

QuadExtElement::QuadExtElement(Residue a, Residue b, QuadExtContext ctx)
    : a_(std::move(a)), b_(std::move(b)), ctx_(std::move(ctx)) {
  if (!(a_.modulus() == ctx_.modulus()) || !(b_.modulus() == ctx_.modulus())) {
    throw std::logic_error("extension element coefficients over the wrong modulus");
  }
}

QuadExtElement QuadExtElement::from_base(const Residue& a, const QuadExtContext& ctx) {
  return QuadExtElement(a, Residue(0L, ctx.modulus()), ctx);
}

QuadExtElement QuadExtElement::t(const QuadExtContext& ctx) {
  return QuadExtElement(Residue(0L, ctx.modulus()), Residue(1L, ctx.modulus()), ctx);
}

QuadExtElement QuadExtElement::operator+(const QuadExtElement& o) const {
  return QuadExtElement(a_ + o.a_, b_ + o.b_, ctx_);
}

QuadExtElement QuadExtElement::operator-(const QuadExtElement& o) const {
  return QuadExtElement(a_ - o.a_, b_ - o.b_, ctx_);
}

QuadExtElement QuadExtElement::operator-() const { return QuadExtElement(-a_, -b_, ctx_); }

QuadExtElement QuadExtElement::operator*(const QuadExtElement& o) const {
  // T^2 = eta*T - 1
  Residue bb = b_ * o.b_;
  Residue a = a_ * o.a_ - bb;
  Residue b = a_ * o.b_ + b_ * o.a_ + bb * ctx_.eta();
  return QuadExtElement(std::move(a), std::move(b), ctx_);
}

Residue QuadExtElement::norm() const { return a_ * a_ + a_ * b_ * ctx_.eta() + b_ * b_; }

QuadExtElement quad_conj(const QuadExtElement& x) {
  const auto& ctx = x.context();
  return QuadExtElement(x.a() + x.b() * ctx.eta(), -x.b(), ctx);
}

Witnessed<QuadExtElement> quad_inverse(const QuadExtElement& x) {
  if (x.is_zero()) return ArithmeticFailure::zero();
  const BigInt& n = x.context().modulus().value();
  auto inv = inv_witnessed(x.norm());
  if (inv) {
    return quad_conj(x) * QuadExtElement::from_base(inv.value(), x.context());
  }
  if (inv.failure().kind == ArithmeticFailure::Kind::kProperFactor) return inv.failure();
  // Norm vanishes although x does not: try the coordinates for a factor.
  BigInt g;
  mpz_gcd(g.get_mpz_t(), x.a().value().get_mpz_t(), x.b().value().get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  if (g > 1 && g < n) return ArithmeticFailure::proper_factor(std::move(g));
  return ArithmeticFailure::zero_divisor();
}

// ---------------------------------------------------------------------------

ResidueRing::Element ResidueRing::invert(const Element& x) const {
  auto r = inv_witnessed(x);
  if (!r) throw NonInvertible(r.failure());
  return r.value();
}

RationalField::Element RationalField::invert(const Element& x) const {
  if (sgn(x) == 0) throw NonInvertible(ArithmeticFailure::zero());
  return Rational(1) / x;
}

QuadExtRing::Element QuadExtRing::zero() const {
  return QuadExtElement::from_base(Residue(0L, ctx_.modulus()), ctx_);
}

QuadExtRing::Element QuadExtRing::one() const {
  return QuadExtElement::from_base(Residue(1L, ctx_.modulus()), ctx_);
}

QuadExtRing::Element QuadExtRing::from_integer(const BigInt& x) const {
  return QuadExtElement::from_base(Residue(x, ctx_.modulus()), ctx_);
}

QuadExtRing::Element QuadExtRing::invert(const Element& x) const {
  auto r = quad_inverse(x);
  if (!r) throw NonInvertible(r.failure());
  return r.value();
}

}  // namespace curveprime
