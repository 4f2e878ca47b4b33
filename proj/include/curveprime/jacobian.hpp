// Jacobian of H : y^2 = x^5 + h in Mumford form, Cantor's group law over any
// coefficient ring adapter, the real multiplication by sqrt(5) and the
// primality test for lambda_n = 4*5^n - 1 built on it.
//
// sqrt(5) = 2*eta + 1 with eta = zeta + zeta^4, where zeta acts on points by
// (x, y) -> (zeta x, y). eta(D) is computed in (Z/N)[T]/(T^2 - eta T + 1) and
// descends to Z/N; a second, closed-form evaluation exists as a cross-check.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "curveprime/outcome.hpp"
#include "curveprime/polynomial.hpp"
#include "curveprime/ring.hpp"

namespace curveprime::jacobian {

/// <u, v>: u monic of degree <= 2, deg v < deg u, v^2 = x^5 + h (mod u).
/// The identity is <1, 0> (u = {1}, v = {}).
template <class E>
struct MumfordDivisor {
  Poly<E> u;
  Poly<E> v;
  friend bool operator==(const MumfordDivisor& a, const MumfordDivisor& b) {
    return a.u == b.u && a.v == b.v;
  }
};

template <class Ring>
class Genus2Arithmetic {
 public:
  using E = typename Ring::Element;
  using Divisor = MumfordDivisor<E>;

  Genus2Arithmetic(Ring ring, const E& h) : ring_(std::move(ring)), f_(6, ring_.zero()) {
    f_[0] = h;
    f_[5] = ring_.one();
    trim(ring_, f_);
  }

  const Ring& ring() const noexcept { return ring_; }
  const Poly<E>& f() const noexcept { return f_; }

  Divisor identity() const { return {Poly<E>{ring_.one()}, Poly<E>{}}; }
  static bool is_identity(const Divisor& d) { return d.u.size() == 1; }

  bool is_valid(const Divisor& d) const {
    if (d.u.empty() || d.u.size() > 3) return false;
    if (!(d.u.back() == ring_.one())) return false;
    if (d.v.size() >= d.u.size()) return false;
    try {
      return poly_mod(ring_, poly_sub(ring_, poly_mul(ring_, d.v, d.v), f_), d.u).empty();
    } catch (const NonInvertible&) {
      return false;
    }
  }

  Divisor negate(const Divisor& d) const { return {d.u, poly_neg<Ring>(d.v)}; }

  /// Composition and reduction; throws NonInvertible when a pivot is not a unit.
  Divisor add(const Divisor& a, const Divisor& b) const {
    if (is_identity(a)) return b;
    if (is_identity(b)) return a;
    const auto g1 = poly_xgcd(ring_, a.u, b.u);
    const Poly<E> vsum = poly_add(ring_, a.v, b.v);
    Poly<E> d = g1.g, c1{ring_.one()}, c2{};
    if (degree(g1.g) > 0) {
      auto g2 = poly_xgcd(ring_, g1.g, vsum);
      d = std::move(g2.g);
      c1 = std::move(g2.s);
      c2 = std::move(g2.t);
    }
    const Poly<E> s1 = poly_mul(ring_, c1, g1.s);
    const Poly<E> s2 = poly_mul(ring_, c1, g1.t);
    Poly<E> u = poly_div_exact(ring_, poly_mul(ring_, a.u, b.u), poly_mul(ring_, d, d));
    Poly<E> num = poly_mul(ring_, poly_mul(ring_, s1, a.u), b.v);
    num = poly_add(ring_, num, poly_mul(ring_, poly_mul(ring_, s2, b.u), a.v));
    num = poly_add(ring_, num, poly_mul(ring_, c2, poly_add(ring_, poly_mul(ring_, a.v, b.v), f_)));
    Poly<E> v = poly_mod(ring_, poly_div_exact(ring_, num, d), u);
    return reduce(std::move(u), std::move(v));
  }

  Divisor dbl(const Divisor& a) const { return add(a, a); }

  /// k*D for k >= 0.
  Divisor scalar_mul(const BigInt& k, const Divisor& d) const {
    if (k < 0) throw std::invalid_argument("negative multiplier");
    Divisor acc = identity();
    for (long bit = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
      acc = dbl(acc);
      if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) acc = add(acc, d);
    }
    return acc;
  }

 private:
  Divisor reduce(Poly<E> u, Poly<E> v) const {
    while (degree(u) > 2) {
      Poly<E> u2 = poly_div_exact(ring_, poly_sub(ring_, f_, poly_mul(ring_, v, v)), u);
      v = poly_mod(ring_, poly_neg<Ring>(v), u2);
      u = make_monic(ring_, u2);
    }
    if (degree(u) == 0) return identity();
    Poly<E> vr = poly_mod(ring_, v, u);
    return {std::move(u), std::move(vr)};
  }

  Ring ring_;
  Poly<E> f_;
};

using BaseDivisor = MumfordDivisor<Residue>;
using ExtDivisor = MumfordDivisor<QuadExtElement>;
using RationalDivisor = MumfordDivisor<Rational>;
using StepResult = Witnessed<BaseDivisor>;

/// Runs `op`, turning a NonInvertible thrown inside it into a failure.
template <class Fn>
StepResult witnessed(Fn&& op) {
  try {
    return op();
  } catch (const NonInvertible& e) {
    return e.failure();
  }
}

/// Curve data modulo N together with the fifth-root-of-unity extension.
class Sqrt5Context {
 public:
  /// Needs gcd(h, N) = 1 (std::invalid_argument otherwise).
  Sqrt5Context(QuadExtContext ext, const BigInt& h);
  static Sqrt5Context for_lambda(unsigned n, const BigInt& h);

  const QuadExtContext& ext() const noexcept;
  const Modulus& modulus() const noexcept;
  const BigInt& h() const noexcept;
  const Genus2Arithmetic<ResidueRing>& base() const noexcept;
  const Genus2Arithmetic<QuadExtRing>& extended() const noexcept;
  const QuadExtElement& zeta_power(unsigned k) const;  // T^(k mod 5)

  struct ClosedFormMaps;  // specialized lazily for the closed form
  const ClosedFormMaps& closed_form_maps() const;

 private:
  struct Data;
  std::shared_ptr<Data> data_;
};

/// Internal consistency failure: eta(D) came out with a T-component.
class GaloisStabilityViolated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// zeta^k acting on D: u(x) -> zeta^(k deg u) u(zeta^-k x), v(x) -> v(zeta^-k x). k in 0..4.
ExtDivisor zeta_twist(const ExtDivisor& d, unsigned k, const Sqrt5Context& ctx);
ExtDivisor zeta_twist(const BaseDivisor& d, unsigned k, const Sqrt5Context& ctx);
ExtDivisor lift(const BaseDivisor& d, const Sqrt5Context& ctx);

/// zeta(D) + zeta^4(D), descended to the base ring. A single point
/// <x - x0, y0> maps to <x^2 - eta x0 x + x0^2, y0> directly.
StepResult eta_action(const BaseDivisor& d, const Sqrt5Context& ctx);

/// 2 eta(D) + D.
StepResult sqrt5_action(const BaseDivisor& d, const Sqrt5Context& ctx);

/// Evaluates the explicit rational maps for sqrt(5) on a divisor with deg u = 2.
/// std::nullopt when D lies outside their domain (deg u < 2 or a denominator
/// vanishes); a failure when a denominator is a nonzero non-unit.
std::optional<StepResult> sqrt5_closed_form(const BaseDivisor& d, const Sqrt5Context& ctx);

/// sqrt5_closed_form, retrying as sqrt5(D + Dc) - sqrt5(Dc) for Dc = 2F, 3F, 5F
/// when D itself is outside the domain.
std::optional<StepResult> sqrt5_closed_form_translated(const BaseDivisor& d, const BaseDivisor& f,
                                                       const Sqrt5Context& ctx);

// --- the test --------------------------------------------------------------

struct LambdaOptions : TestOptions {
  bool closed_form = false;  // use sqrt5_closed_form_translated, falling back to sqrt5_action
};

/// D_0 = 4F mod lambda_n, D_j = sqrt5(D_{j-1}). Certified when D_j != <1,0>
/// for j < 2n and D_2n = <1,0>. A non-unit proves lambda_n composite. Any
/// other ending is NotCertified: the criterion only proves primality.
/// HypothesisViolated for n even or n < 3, gcd(h, lambda_n) > 1, or F off the curve.
TestOutcome test_lambda(unsigned n, const BigInt& h, const RationalDivisor& f,
                        const LambdaOptions& options = {});

/// <x + 1, 3>, which lies on the curve for h = 10.
RationalDivisor default_base_divisor();

// --- conversion and text ---------------------------------------------------

Witnessed<BaseDivisor> reduce_divisor(const RationalDivisor& d, const Modulus& m);
bool is_valid_rational(const RationalDivisor& d, const BigInt& h);

/// "u;v" with u, v polynomials in x over Q, e.g. "x+1;3" or "x^2+2*x+1;5/6*x+23/6".
/// u is made monic. Throws std::invalid_argument on malformed text.
RationalDivisor parse_divisor(const std::string& text);

/// {"u": [...], "v": [...], "modulus": "N"} with decimal coefficients, low degree first.
std::string divisor_json(const BaseDivisor& d);
std::string divisor_text(const RationalDivisor& d);

// --- oracles over small prime fields --------------------------------------

/// #J(F_q) = (N1^2 + N2)/2 - q from point counts over F_q and F_{q^2}.
/// Needs a prime 3 <= q <= 500 with q not dividing h.
std::uint64_t jacobian_order_oracle(std::uint64_t q, long long h);

/// Every <u, v> with u monic of degree <= 2 and v^2 = f (mod u), by brute force. q <= 50.
std::vector<BaseDivisor> enumerate_jacobian(std::uint64_t q, long long h);

struct TwoTorsion {
  std::vector<BaseDivisor> elements;  // D with 2D = 0, identity included
  unsigned exponent = 0;
  unsigned rational_weierstrass_points = 0;  // roots of x^5 + h in F_q
};

/// 2-torsion of J(F_q) from the divisors <u, 0> with u | x^5 + h; doubling
/// each element with Cantor's law confirms the exponent. q prime <= 500.
TwoTorsion two_torsion_oracle(std::uint64_t q, long long h);

/// Sum of three random affine points (square roots by a^((N+1)/4), which needs
/// N = 3 mod 4; samples whose root fails to verify are redrawn).
std::optional<BaseDivisor> random_divisor(const Sqrt5Context& ctx, std::mt19937_64& rng);

/// The divisor modulo N1*N2 reducing to `a` mod N1 and `b` mod N2, glued
/// coefficientwise by CRT. Needs coprime moduli and deg a.u = deg b.u.
BaseDivisor crt_divisor(const BaseDivisor& a, const BaseDivisor& b);

}  // namespace curveprime::jacobian
