// Residue rings, exact rationals and the quadratic extension used for the
// fifth-root-of-unity twist. Every inversion is witnessed: a failure either
// names a proper factor of the modulus or reports that the element is zero.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace curveprime {

using BigInt = mpz_class;
using Rational = mpq_class;  // always canonical: gcd(num, den) = 1, den > 0

std::string to_decimal(const BigInt& x);
BigInt parse_bigint(const std::string& text);  // throws std::invalid_argument

/// Why an element could not be inverted.
struct ArithmeticFailure {
  enum class Kind {
    kProperFactor,  // gcd(x, N) is a proper factor; N is composite
    kZero,          // the element is zero
    kZeroDivisor,   // nonzero non-unit whose factor could not be recovered
  };
  Kind kind = Kind::kZero;
  BigInt factor;  // meaningful only for kProperFactor

  static ArithmeticFailure proper_factor(BigInt g) { return {Kind::kProperFactor, std::move(g)}; }
  static ArithmeticFailure zero() { return {Kind::kZero, 0}; }
  static ArithmeticFailure zero_divisor() { return {Kind::kZeroDivisor, 0}; }
  std::string describe() const;
};

/// Thrown from inside multi-step arithmetic (polynomial gcds, Cantor steps)
/// and converted back into a `Witnessed` at the operation boundary.
class NonInvertible : public std::runtime_error {
 public:
  explicit NonInvertible(ArithmeticFailure failure)
      : std::runtime_error(failure.describe()), failure_(std::move(failure)) {}
  const ArithmeticFailure& failure() const noexcept { return failure_; }

 private:
  ArithmeticFailure failure_;
};

/// A value or the arithmetic failure that prevented computing it.
template <class T>
class Witnessed {
 public:
  Witnessed(T value) : state_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Witnessed(ArithmeticFailure failure) : state_(std::move(failure)) {}  // NOLINT

  bool ok() const noexcept { return std::holds_alternative<T>(state_); }
  explicit operator bool() const noexcept { return ok(); }
  const T& value() const { return std::get<T>(state_); }
  T& value() { return std::get<T>(state_); }
  const ArithmeticFailure& failure() const { return std::get<ArithmeticFailure>(state_); }

 private:
  std::variant<T, ArithmeticFailure> state_;
};

// ---------------------------------------------------------------------------
// Z/N

class Modulus {
 public:
  explicit Modulus(BigInt n);  // throws std::invalid_argument unless n >= 2
  const BigInt& value() const noexcept { return *n_; }
  friend bool operator==(const Modulus& a, const Modulus& b) {
    return a.n_ == b.n_ || *a.n_ == *b.n_;
  }

 private:
  std::shared_ptr<const BigInt> n_;
};

/// Canonical representative in [0, N).
class Residue {
 public:
  Residue(const BigInt& value, Modulus modulus);
  Residue(long value, Modulus modulus) : Residue(BigInt(value), std::move(modulus)) {}

  const BigInt& value() const noexcept { return value_; }
  const Modulus& modulus() const noexcept { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;
  Residue& operator+=(const Residue& o) { return *this = *this + o; }
  Residue& operator-=(const Residue& o) { return *this = *this - o; }
  Residue& operator*=(const Residue& o) { return *this = *this * o; }
  Residue pow(const BigInt& exponent) const;  // exponent >= 0

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.modulus_ == b.modulus_ && a.value_ == b.value_;
  }

 private:
  struct Raw {};
  Residue(Raw, BigInt value, Modulus modulus)
      : value_(std::move(value)), modulus_(std::move(modulus)) {}
  void check_same(const Residue& o) const;

  BigInt value_;
  Modulus modulus_;
};

using InverseOutcome = Witnessed<Residue>;

/// Inverse(r) with r*x = 1, ProperFactor(gcd(x, N)) or Zero.
InverseOutcome inv_witnessed(const Residue& x);

/// Reduces a rational into Z/N; a denominator sharing a factor with N fails.
Witnessed<Residue> reduce_rational(const Rational& q, const Modulus& modulus);

/// Jacobi symbol (a | n) for odd n >= 3; throws std::invalid_argument otherwise.
int jacobi(const BigInt& a, const BigInt& n);

// ---------------------------------------------------------------------------
// (Z/N)[T] / (T^2 - eta*T + 1), with T standing for a primitive fifth root of
// unity zeta and conj(T) = eta - T = zeta^4.

class QuadExtContext {
 public:
  /// d must satisfy d^2 = 5 (mod N) and N must be odd.
  QuadExtContext(Modulus modulus, const BigInt& d);

  const Modulus& modulus() const noexcept { return data_->modulus; }
  const Residue& d() const noexcept { return data_->d; }
  const Residue& eta() const noexcept { return data_->eta; }
  friend bool operator==(const QuadExtContext& a, const QuadExtContext& b) {
    return a.data_ == b.data_ ||
           (a.modulus() == b.modulus() && a.d() == b.d());
  }

 private:
  struct Data {
    Modulus modulus;
    Residue d;
    Residue eta;
  };
  std::shared_ptr<const Data> data_;
};

/// Context for lambda_n = 4*5^n - 1 with d = 2*5^((n+1)/2); n odd, n > 1
/// (n = 1 is accepted too, giving the field of 19 elements).
QuadExtContext sqrt5_mod_lambda(unsigned n);

BigInt lambda_value(unsigned n);

/// a + b*T.
class QuadExtElement {
 public:
  QuadExtElement(Residue a, Residue b, QuadExtContext ctx);
  static QuadExtElement from_base(const Residue& a, const QuadExtContext& ctx);
  static QuadExtElement t(const QuadExtContext& ctx);

  const Residue& a() const noexcept { return a_; }
  const Residue& b() const noexcept { return b_; }
  const QuadExtContext& context() const noexcept { return ctx_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool in_base_ring() const { return b_.is_zero(); }

  QuadExtElement operator+(const QuadExtElement& o) const;
  QuadExtElement operator-(const QuadExtElement& o) const;
  QuadExtElement operator*(const QuadExtElement& o) const;
  QuadExtElement operator-() const;
  QuadExtElement& operator+=(const QuadExtElement& o) { return *this = *this + o; }
  QuadExtElement& operator-=(const QuadExtElement& o) { return *this = *this - o; }
  QuadExtElement& operator*=(const QuadExtElement& o) { return *this = *this * o; }

  /// x * conj(x) = a^2 + a*b*eta + b^2, an element of the base ring.
  Residue norm() const;

  friend bool operator==(const QuadExtElement& x, const QuadExtElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  Residue a_;
  Residue b_;
  QuadExtContext ctx_;
};

/// a + bT -> (a + b*eta) - bT; the nontrivial automorphism, swapping zeta and zeta^4.
QuadExtElement quad_conj(const QuadExtElement& x);

Witnessed<QuadExtElement> quad_inverse(const QuadExtElement& x);

// ---------------------------------------------------------------------------
// Coefficient-ring adapters for the generic polynomial and Jacobian code.
// `invert` throws NonInvertible.

class ResidueRing {
 public:
  using Element = Residue;
  explicit ResidueRing(Modulus m) : modulus_(std::move(m)) {}
  const Modulus& modulus() const noexcept { return modulus_; }
  Element zero() const { return Residue(0L, modulus_); }
  Element one() const { return Residue(1L, modulus_); }
  Element from_integer(const BigInt& x) const { return Residue(x, modulus_); }
  static bool is_zero(const Element& x) { return x.is_zero(); }
  Element invert(const Element& x) const;

 private:
  Modulus modulus_;
};

class RationalField {
 public:
  using Element = Rational;
  Element zero() const { return Rational(0); }
  Element one() const { return Rational(1); }
  Element from_integer(const BigInt& x) const { return Rational(x); }
  static bool is_zero(const Element& x) { return sgn(x) == 0; }
  Element invert(const Element& x) const;
};

class QuadExtRing {
 public:
  using Element = QuadExtElement;
  explicit QuadExtRing(QuadExtContext ctx) : ctx_(std::move(ctx)) {}
  const QuadExtContext& context() const noexcept { return ctx_; }
  Element zero() const;
  Element one() const;
  Element from_integer(const BigInt& x) const;
  Element lift(const Residue& x) const { return QuadExtElement::from_base(x, ctx_); }
  static bool is_zero(const Element& x) { return x.is_zero(); }
  Element invert(const Element& x) const;

 private:
  QuadExtContext ctx_;
};

}  // namespace curveprime
