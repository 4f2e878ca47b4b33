#include "curveprime/jacobian.hpp"

#include <json.hpp>

#include <cctype>
#include <set>

#include "curveprime/oracle.hpp"
#include "jacobian_detail.hpp"

namespace curveprime::jacobian {

Sqrt5Context::Sqrt5Context(QuadExtContext ext, const BigInt& h) {
  const Modulus& m = ext.modulus();
  BigInt g;
  mpz_gcd(g.get_mpz_t(), h.get_mpz_t(), m.value().get_mpz_t());
  if (g != 1) throw std::invalid_argument("h must be a unit modulo N");
  const Residue hr(h, m);
  std::vector<QuadExtElement> powers;
  const auto t = QuadExtElement::t(ext);
  auto p = QuadExtElement::from_base(Residue(1L, m), ext);
  for (int k = 0; k < 5; ++k) {
    powers.push_back(p);
    p = p * t;
  }
  data_ = std::shared_ptr<Data>(new Data{
      ext, h, Genus2Arithmetic<ResidueRing>(ResidueRing(m), hr),
      Genus2Arithmetic<QuadExtRing>(QuadExtRing(ext), QuadExtElement::from_base(hr, ext)),
      std::move(powers), {}, {}});
}

Sqrt5Context Sqrt5Context::for_lambda(unsigned n, const BigInt& h) {
  return Sqrt5Context(sqrt5_mod_lambda(n), h);
}

const QuadExtContext& Sqrt5Context::ext() const noexcept { return data_->ext; }
const Modulus& Sqrt5Context::modulus() const noexcept { return data_->ext.modulus(); }
const BigInt& Sqrt5Context::h() const noexcept { return data_->h; }
const Genus2Arithmetic<ResidueRing>& Sqrt5Context::base() const noexcept { return data_->base; }
const Genus2Arithmetic<QuadExtRing>& Sqrt5Context::extended() const noexcept { return data_->extended; }
const QuadExtElement& Sqrt5Context::zeta_power(unsigned k) const { return data_->zeta_pow[k % 5]; }

const Sqrt5Context::ClosedFormMaps& Sqrt5Context::closed_form_maps() const {
  std::call_once(data_->maps_once, [this] {
    data_->maps = detail::build_closed_form_maps(modulus(), Residue(data_->h, modulus()), ext().d());
  });
  return *data_->maps;
}

// ---------------------------------------------------------------------------

ExtDivisor lift(const BaseDivisor& d, const Sqrt5Context& ctx) {
  ExtDivisor out;
  for (const auto& c : d.u) out.u.push_back(QuadExtElement::from_base(c, ctx.ext()));
  for (const auto& c : d.v) out.v.push_back(QuadExtElement::from_base(c, ctx.ext()));
  return out;
}

ExtDivisor zeta_twist(const ExtDivisor& d, unsigned k, const Sqrt5Context& ctx) {
  if (k > 4) throw std::invalid_argument("twist exponent must be in 0..4");
  const unsigned deg = static_cast<unsigned>(degree(d.u));
  ExtDivisor out = d;
  for (unsigned i = 0; i <= deg; ++i) out.u[i] *= ctx.zeta_power(k * (deg - i));
  for (unsigned i = 0; i < out.v.size(); ++i) out.v[i] *= ctx.zeta_power((5 - k) * i);
  return out;
}

ExtDivisor zeta_twist(const BaseDivisor& d, unsigned k, const Sqrt5Context& ctx) {
  return zeta_twist(lift(d, ctx), k, ctx);
}

namespace {

Poly<Residue> descend(const Poly<QuadExtElement>& p) {
  Poly<Residue> out;
  out.reserve(p.size());
  for (const auto& c : p) {
    if (!c.in_base_ring()) throw GaloisStabilityViolated("eta(D) has a coefficient outside Z/N");
    out.push_back(c.a());
  }
  return out;
}

}  // namespace

StepResult eta_action(const BaseDivisor& d, const Sqrt5Context& ctx) {
  const auto& base = ctx.base();
  if (base.is_identity(d)) return d;
  if (degree(d.u) == 1) {
    const Residue x0 = -d.u[0];
    BaseDivisor out{{x0 * x0, -(ctx.ext().eta() * x0), Residue(1L, ctx.modulus())}, d.v};
    trim(base.ring(), out.u);
    return out;
  }
  return witnessed([&]() -> StepResult {
    const ExtDivisor s = ctx.extended().add(zeta_twist(d, 1, ctx), zeta_twist(d, 4, ctx));
    return BaseDivisor{descend(s.u), descend(s.v)};
  });
}

StepResult sqrt5_action(const BaseDivisor& d, const Sqrt5Context& ctx) {
  auto e = eta_action(d, ctx);
  if (!e) return e;
  const auto& base = ctx.base();
  return witnessed([&]() -> StepResult { return base.add(base.dbl(e.value()), d); });
}

std::optional<StepResult> sqrt5_closed_form_translated(const BaseDivisor& d, const BaseDivisor& f,
                                                       const Sqrt5Context& ctx) {
  auto direct = sqrt5_closed_form(d, ctx);
  if (direct) return direct;
  const auto& base = ctx.base();
  for (long k : {2L, 3L, 5L}) {
    BaseDivisor dc, shifted;
    try {
      dc = base.scalar_mul(k, f);
      shifted = base.add(d, dc);
    } catch (const NonInvertible& e) {
      return StepResult(e.failure());
    }
    auto a = sqrt5_closed_form(shifted, ctx);
    if (!a) continue;
    if (!*a) return a;
    auto b = sqrt5_closed_form(dc, ctx);
    if (!b) continue;
    if (!*b) return b;
    return witnessed([&]() -> StepResult { return base.add(a->value(), base.negate(b->value())); });
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

RationalDivisor default_base_divisor() { return {{Rational(1), Rational(1)}, {Rational(3)}}; }

Witnessed<BaseDivisor> reduce_divisor(const RationalDivisor& d, const Modulus& m) {
  BaseDivisor out;
  for (const auto* src : {&d.u, &d.v}) {
    Poly<Residue> p;
    for (const auto& c : *src) {
      auto r = reduce_rational(c, m);
      if (!r) return r.failure();
      p.push_back(r.value());
    }
    trim(ResidueRing(m), p);
    (src == &d.u ? out.u : out.v) = std::move(p);
  }
  return out;
}

bool is_valid_rational(const RationalDivisor& d, const BigInt& h) {
  return Genus2Arithmetic<RationalField>(RationalField{}, Rational(h)).is_valid(d);
}

namespace {

TestOutcome lambda_failure(const ArithmeticFailure& f, const BigInt& n, const std::string& where,
                           std::uint64_t steps) {
  if (f.kind == ArithmeticFailure::Kind::kZero) {
    return TestOutcome::not_certified(where + ": division by zero", steps);
  }
  return outcome_from_failure(f, n, where, steps);
}

}  // namespace

TestOutcome test_lambda(unsigned n, const BigInt& h, const RationalDivisor& f,
                        const LambdaOptions& options) {
  if (n < 3 || n % 2 == 0) throw HypothesisViolated("n must be odd and > 1");
  const BigInt lambda = lambda_value(n);
  BigInt g;
  mpz_gcd(g.get_mpz_t(), h.get_mpz_t(), lambda.get_mpz_t());
  if (g != 1) throw HypothesisViolated("h must be prime to lambda_n");
  if (!is_valid_rational(f, h)) throw HypothesisViolated("F is not a divisor on y^2 = x^5 + h");

  const Sqrt5Context ctx = Sqrt5Context::for_lambda(n, h);
  const auto& base = ctx.base();
  auto fr = reduce_divisor(f, ctx.modulus());
  if (!fr) {
    if (fr.failure().kind == ArithmeticFailure::Kind::kZero) {
      return TestOutcome::not_certified("F does not reduce modulo lambda_n", 0);
    }
    return outcome_from_failure(fr.failure(), lambda, "reducing F", 0);
  }
  auto d0 = witnessed([&]() -> StepResult { return base.scalar_mul(4, fr.value()); });
  if (!d0) return lambda_failure(d0.failure(), lambda, "D_0 = 4F", 0);

  std::vector<std::string> trace;
  auto record = [&](const BaseDivisor& d) {
    if (options.collect_trace) trace.push_back(divisor_json(d));
  };
  auto finish = [&](TestOutcome out) {
    out.trace = std::move(trace);
    return out;
  };

  BaseDivisor d = d0.value();
  record(d);
  if (base.is_identity(d)) return finish(TestOutcome::not_certified("D_0 = <1,0>", 0));

  const unsigned total = 2 * n;
  for (unsigned j = 1; j <= total; ++j) {
    StepResult next = StepResult(ArithmeticFailure::zero());
    if (options.closed_form) {
      auto cf = sqrt5_closed_form_translated(d, fr.value(), ctx);
      next = cf ? *cf : sqrt5_action(d, ctx);
    } else {
      next = sqrt5_action(d, ctx);
    }
    if (!next) return finish(lambda_failure(next.failure(), lambda, "step " + std::to_string(j), j - 1));
    d = std::move(next.value());
    record(d);
    if (base.is_identity(d)) {
      if (j == total) return finish(TestOutcome::certified("D_2n = <1,0>", j));
      return finish(TestOutcome::not_certified(
          "D_" + std::to_string(j) + " = <1,0> before step 2n", j));
    }
  }
  return finish(TestOutcome::not_certified("D_2n != <1,0>", total));
}

// ---------------------------------------------------------------------------

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string text) {
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
    }
  }

  Poly<Rational> parse() {
    Poly<Rational> p;
    if (s_.empty()) throw std::invalid_argument("empty polynomial");
    while (pos_ < s_.size()) {
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      }
      Rational coeff(1);
      bool has_coeff = false;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        coeff = number();
        has_coeff = true;
        if (pos_ < s_.size() && s_[pos_] == '/') {
          ++pos_;
          const Rational den = number();
          if (den == 0) throw std::invalid_argument("zero denominator");
          coeff /= den;
        }
      }
      unsigned exp = 0;
      if (pos_ < s_.size() && s_[pos_] == '*') {
        if (!has_coeff) throw std::invalid_argument("misplaced '*'");
        ++pos_;
        expect_x();
      }
      if (pos_ < s_.size() && s_[pos_] == 'x') expect_x();
      if (saw_x_) {
        exp = 1;
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          exp = static_cast<unsigned>(number().get_num().get_ui());
        }
      } else if (!has_coeff) {
        throw std::invalid_argument("expected a term");
      }
      saw_x_ = false;
      if (p.size() <= exp) p.resize(exp + 1, Rational(0));
      p[exp] += sign * coeff;
      if (pos_ < s_.size() && s_[pos_] != '+' && s_[pos_] != '-') {
        throw std::invalid_argument("unexpected character in polynomial");
      }
    }
    trim(RationalField{}, p);
    return p;
  }

 private:
  Rational number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 4000) throw std::invalid_argument("expected a number");
    return Rational(BigInt(s_.substr(start, pos_ - start), 10));
  }
  void expect_x() {
    if (pos_ >= s_.size() || s_[pos_] != 'x') throw std::invalid_argument("expected 'x'");
    ++pos_;
    saw_x_ = true;
  }

  std::string s_;
  std::size_t pos_ = 0;
  bool saw_x_ = false;
};

std::string rational_text(const Rational& q) { return q.get_str(10); }

std::string poly_text(const Poly<Rational>& p) {
  if (p.empty()) return "0";
  std::string out;
  for (int i = degree(p); i >= 0; --i) {
    const Rational& c = p[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    const bool neg = sgn(c) < 0;
    const Rational mag = abs(c);
    if (!out.empty() || neg) out += neg ? "-" : "+";
    if (i == 0) {
      out += rational_text(mag);
      continue;
    }
    if (mag != 1) out += rational_text(mag) + "*";
    out += i == 1 ? "x" : "x^" + std::to_string(i);
  }
  return out;
}

}  // namespace

RationalDivisor parse_divisor(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw std::invalid_argument("divisor text must be \"u;v\"");
  Poly<Rational> u = PolyParser(text.substr(0, semi)).parse();
  std::string vtext = text.substr(semi + 1);
  Poly<Rational> v = PolyParser(vtext).parse();
  if (u.empty()) throw std::invalid_argument("u must be nonzero");
  if (u.size() > 3) throw std::invalid_argument("deg u must be <= 2");
  u = make_monic(RationalField{}, u);
  if (v.size() >= u.size()) throw std::invalid_argument("deg v must be < deg u");
  return {u, v};
}

std::string divisor_text(const RationalDivisor& d) { return poly_text(d.u) + ";" + poly_text(d.v); }

std::string divisor_json(const BaseDivisor& d) {
  nlohmann::json j;
  j["u"] = nlohmann::json::array();
  j["v"] = nlohmann::json::array();
  for (const auto& c : d.u) j["u"].push_back(to_decimal(c.value()));
  for (const auto& c : d.v) j["v"].push_back(to_decimal(c.value()));
  j["modulus"] = d.u.empty() ? "" : to_decimal(d.u.front().modulus().value());
  return j.dump();
}

// ---------------------------------------------------------------------------

namespace {

void check_small_field(std::uint64_t q, long long h, std::uint64_t limit) {
  if (q < 3 || q > limit || !oracle::is_prime_small(q)) {
    throw std::invalid_argument("needs an odd prime q <= " + std::to_string(limit));
  }
  if (h % static_cast<long long>(q) == 0) throw std::invalid_argument("q divides h");
}

std::uint64_t mod_q(long long h, std::uint64_t q) {
  const long long r = h % static_cast<long long>(q);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(q) : r);
}

/// x^5 + h reduced modulo x^2 + a x + b, as (c1, c0).
std::pair<std::uint64_t, std::uint64_t> f_mod_quadratic(std::uint64_t a, std::uint64_t b, std::uint64_t h,
                                                        std::uint64_t q) {
  // x^k = p1 x + p0; multiply by x and reduce x^2 = -a x - b.
  std::uint64_t p1 = 1, p0 = 0;
  for (int k = 1; k < 5; ++k) {
    const std::uint64_t n1 = (p0 + (q - a) * p1) % q;
    const std::uint64_t n0 = (q - b) * p1 % q;
    p1 = n1;
    p0 = n0;
  }
  return {p1, (p0 + h) % q};
}

Poly<Residue> residue_poly(std::initializer_list<std::uint64_t> coeffs, const Modulus& m) {
  Poly<Residue> p;
  for (auto c : coeffs) p.emplace_back(BigInt(static_cast<unsigned long>(c)), m);
  trim(ResidueRing(m), p);
  return p;
}

}  // namespace

std::uint64_t jacobian_order_oracle(std::uint64_t q, long long h) {
  check_small_field(q, h, 500);
  const oracle::CurveSpec curve{{h, 0, 0, 0, 0, 1}};
  const std::uint64_t n1 = oracle::count_curve_points(q, curve);
  const std::uint64_t n2 = oracle::count_points_quadratic_extension(q, curve);
  return (n1 * n1 + n2) / 2 - q;
}

std::vector<BaseDivisor> enumerate_jacobian(std::uint64_t q, long long h) {
  check_small_field(q, h, 50);
  const Modulus m(static_cast<unsigned long>(q));
  const std::uint64_t hq = mod_q(h, q);
  std::vector<BaseDivisor> out;
  out.push_back({residue_poly({1}, m), {}});
  for (std::uint64_t a = 0; a < q; ++a) {
    // u = x + a, root -a.
    const std::uint64_t x = (q - a) % q;
    const std::uint64_t fx = (oracle::powmod(x, 5, q) + hq) % q;
    for (std::uint64_t y = 0; y < q; ++y) {
      if (y * y % q == fx) out.push_back({residue_poly({a, 1}, m), residue_poly({y}, m)});
    }
  }
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t b = 0; b < q; ++b) {
      const auto [f1, f0] = f_mod_quadratic(a, b, hq, q);
      for (std::uint64_t c = 0; c < q; ++c) {
        for (std::uint64_t e = 0; e < q; ++e) {
          // (c x + e)^2 = c^2 x^2 + 2ce x + e^2 = (2ce - a c^2) x + (e^2 - b c^2).
          const std::uint64_t c2 = c * c % q;
          const std::uint64_t v1 = (2 * c * e + (q - a) * c2) % q;
          const std::uint64_t v0 = (e * e + (q - b) * c2) % q;
          if (v1 == f1 && v0 == f0) {
            out.push_back({residue_poly({b, a, 1}, m), residue_poly({e, c}, m)});
          }
        }
      }
    }
  }
  return out;
}

TwoTorsion two_torsion_oracle(std::uint64_t q, long long h) {
  check_small_field(q, h, 500);
  const Modulus m(static_cast<unsigned long>(q));
  const std::uint64_t hq = mod_q(h, q);
  const Genus2Arithmetic<ResidueRing> jac(ResidueRing(m), Residue(static_cast<long>(hq), m));
  TwoTorsion out;
  out.elements.push_back(jac.identity());
  for (std::uint64_t a = 0; a < q; ++a) {
    const std::uint64_t x = (q - a) % q;
    if ((oracle::powmod(x, 5, q) + hq) % q == 0) {
      ++out.rational_weierstrass_points;
      out.elements.push_back({residue_poly({a, 1}, m), {}});
    }
  }
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t b = 0; b < q; ++b) {
      const auto [f1, f0] = f_mod_quadratic(a, b, hq, q);
      if (f1 == 0 && f0 == 0) out.elements.push_back({residue_poly({b, a, 1}, m), {}});
    }
  }
  out.exponent = 1;
  for (const auto& d : out.elements) {
    if (!jac.is_valid(d)) throw std::logic_error("2-torsion candidate fails the Mumford congruence");
    if (!jac.is_identity(jac.dbl(d))) throw std::logic_error("2-torsion candidate is not killed by 2");
    if (!jac.is_identity(d)) out.exponent = 2;
  }
  return out;
}

namespace {

BigInt random_below(const BigInt& n, std::mt19937_64& rng) {
  BigInt r = 0;
  const std::size_t words = mpz_sizeinbase(n.get_mpz_t(), 2) / 64 + 2;
  for (std::size_t i = 0; i < words; ++i) {
    r <<= 64;
    r += BigInt(std::to_string(rng()), 10);
  }
  return r % n;
}

}  // namespace

std::optional<BaseDivisor> random_divisor(const Sqrt5Context& ctx, std::mt19937_64& rng) {
  const Modulus& m = ctx.modulus();
  const BigInt& n = m.value();
  if (mpz_fdiv_ui(n.get_mpz_t(), 4) != 3) throw std::invalid_argument("needs N = 3 (mod 4)");
  const BigInt exponent = (n + 1) / 4;
  const auto& base = ctx.base();
  const Residue h(ctx.h(), m);
  BaseDivisor acc = base.identity();
  for (int k = 0; k < 3; ++k) {
    bool found = false;
    for (int attempt = 0; attempt < 1000 && !found; ++attempt) {
      const Residue x(random_below(n, rng), m);
      const Residue fx = x * x * x * x * x + h;
      const Residue y = fx.pow(exponent);
      if (!(y * y == fx)) continue;
      found = true;
      const BaseDivisor pt{{-x, Residue(1L, m)}, y.is_zero() ? Poly<Residue>{} : Poly<Residue>{y}};
      try {
        acc = base.add(acc, pt);
      } catch (const NonInvertible&) {
        return std::nullopt;
      }
    }
    if (!found) return std::nullopt;
  }
  return acc;
}

BaseDivisor crt_divisor(const BaseDivisor& a, const BaseDivisor& b) {
  if (a.u.empty() || b.u.empty() || degree(a.u) != degree(b.u)) {
    throw std::invalid_argument("crt_divisor needs divisors of equal degree");
  }
  const BigInt& n1 = a.u.front().modulus().value();
  const BigInt& n2 = b.u.front().modulus().value();
  BigInt e1, e2;  // e1 = 1 mod n1, 0 mod n2; e2 the other way round
  if (mpz_invert(e1.get_mpz_t(), n2.get_mpz_t(), n1.get_mpz_t()) == 0) {
    throw std::invalid_argument("crt_divisor needs coprime moduli");
  }
  mpz_invert(e2.get_mpz_t(), n1.get_mpz_t(), n2.get_mpz_t());
  e1 *= n2;
  e2 *= n1;
  const Modulus m(n1 * n2);
  auto glue = [&](const Poly<Residue>& p, const Poly<Residue>& q) {
    Poly<Residue> out;
    for (std::size_t i = 0; i < std::max(p.size(), q.size()); ++i) {
      const BigInt x = i < p.size() ? p[i].value() : BigInt(0);
      const BigInt y = i < q.size() ? q[i].value() : BigInt(0);
      out.emplace_back(x * e1 + y * e2, m);
    }
    trim(ResidueRing(m), out);
    return out;
  };
  return {glue(a.u, b.u), glue(a.v, b.v)};
}

}  // namespace curveprime::jacobian
