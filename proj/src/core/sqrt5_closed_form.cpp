// Closed-form sqrt(5) on divisors with deg u = 2, from the generated rational maps.
#include <cctype>
#include <map>
#include <string_view>

#include "curveprime/jacobian.hpp"
#include "jacobian_detail.hpp"
#include "sqrt5_maps.inc"

namespace curveprime::jacobian {

namespace detail {
namespace {

// A monomial c * d^e * A^a * B^b * C^c * h^k over Q.
struct RawTerm {
  Rational coeff;
  unsigned d = 0, h = 0;
  std::uint8_t a = 0, b = 0, c = 0;
};

std::vector<RawTerm> parse_map(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  std::vector<RawTerm> out;
  std::size_t pos = 0;
  auto number = [&] {
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw std::logic_error("closed-form map: expected a number");
    return BigInt(s.substr(start, pos - start), 10);
  };
  while (pos < s.size()) {
    RawTerm t;
    t.coeff = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') t.coeff = -1;
      ++pos;
    }
    for (bool first = true;; first = false) {
      if (!first) {
        if (pos >= s.size() || s[pos] != '*') break;
        ++pos;
      }
      if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        Rational q(number());
        if (pos < s.size() && s[pos] == '/') {
          ++pos;
          q /= Rational(number());
        }
        t.coeff *= q;
        continue;
      }
      const char var = s[pos++];
      unsigned e = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        e = static_cast<unsigned>(number().get_ui());
      }
      switch (var) {
        case 'A': t.a = static_cast<std::uint8_t>(t.a + e); break;
        case 'B': t.b = static_cast<std::uint8_t>(t.b + e); break;
        case 'C': t.c = static_cast<std::uint8_t>(t.c + e); break;
        case 'd': t.d += e; break;
        case 'h': t.h += e; break;
        default: throw std::logic_error("closed-form map: unknown variable");
      }
    }
    if (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
      throw std::logic_error("closed-form map: unexpected character");
    }
    out.push_back(t);
  }
  return out;
}

struct RawMaps {
  std::vector<RawTerm> an, ad, bn, bd, cn, cd;
};

const RawMaps& raw_maps() {
  static const RawMaps maps{parse_map(kAn), parse_map(kAd), parse_map(kBn),
                            parse_map(kBd), parse_map(kCn), parse_map(kCd)};
  return maps;
}

std::optional<Sqrt5Context::ClosedFormMaps::Map> specialize(const std::vector<RawTerm>& raw, const Modulus& m,
                                                            const Residue& h, const Residue& d) {
  // Merge terms sharing (a, b, c) after substituting h and d.
  std::map<std::tuple<int, int, int>, Residue> acc;
  for (const auto& t : raw) {
    auto c = reduce_rational(t.coeff, m);
    if (!c) return std::nullopt;
    const Residue value = c.value() * h.pow(t.h) * d.pow(t.d);
    const auto key = std::make_tuple(t.a, t.b, t.c);
    auto it = acc.find(key);
    if (it == acc.end()) {
      acc.emplace(key, value);
    } else {
      it->second += value;
    }
  }
  Sqrt5Context::ClosedFormMaps::Map out;
  for (const auto& [key, value] : acc) {
    if (value.is_zero()) continue;
    out.push_back({value, static_cast<std::uint8_t>(std::get<0>(key)), static_cast<std::uint8_t>(std::get<1>(key)),
                   static_cast<std::uint8_t>(std::get<2>(key))});
  }
  return out;
}

Residue evaluate(const Sqrt5Context::ClosedFormMaps::Map& map, const std::vector<Residue>& pa,
                 const std::vector<Residue>& pb, const std::vector<Residue>& pc, const Modulus& m) {
  Residue sum(0L, m);
  for (const auto& t : map) sum += t.coeff * pa[t.a] * pb[t.b] * pc[t.c];
  return sum;
}

std::vector<Residue> powers(const Residue& x, unsigned top) {
  std::vector<Residue> p{Residue(1L, x.modulus())};
  for (unsigned i = 1; i <= top; ++i) p.push_back(p.back() * x);
  return p;
}

constexpr unsigned kMaxExponent = 32;

}  // namespace

std::shared_ptr<const Sqrt5Context::ClosedFormMaps> build_closed_form_maps(const Modulus& m, const Residue& h,
                                                                           const Residue& d) {
  auto maps = std::make_shared<Sqrt5Context::ClosedFormMaps>();
  const RawMaps& raw = raw_maps();
  // The D-recovery formula divides by 2.
  if (!inv_witnessed(Residue(2L, m))) return maps;
  auto an = specialize(raw.an, m, h, d), ad = specialize(raw.ad, m, h, d);
  auto bn = specialize(raw.bn, m, h, d), bd = specialize(raw.bd, m, h, d);
  auto cn = specialize(raw.cn, m, h, d), cd = specialize(raw.cd, m, h, d);
  if (!an || !ad || !bn || !bd || !cn || !cd) return maps;
  maps->an = std::move(*an);
  maps->ad = std::move(*ad);
  maps->bn = std::move(*bn);
  maps->bd = std::move(*bd);
  maps->cn = std::move(*cn);
  maps->cd = std::move(*cd);
  maps->available = true;
  return maps;
}

std::optional<StepResult> sqrt5_closed_form_signed(const BaseDivisor& d, const Sqrt5Context& ctx, int sign_a,
                                                   int sign_out_a, int sign_out_v) {
  if (degree(d.u) != 2) return std::nullopt;
  const auto& maps = ctx.closed_form_maps();
  if (!maps.available) return std::nullopt;
  const Modulus& m = ctx.modulus();
  const Residue zero(0L, m);
  const Residue A = sign_a < 0 ? -d.u[1] : d.u[1];
  const Residue B = d.u[0];
  const Residue C = d.v.size() > 1 ? d.v[1] : zero;
  const auto pa = powers(A, kMaxExponent), pb = powers(B, kMaxExponent), pc = powers(C, 4);

  // A quotient of two map values; nullopt when the denominator vanishes.
  std::optional<ArithmeticFailure> failure;
  auto quotient = [&](const auto& num, const auto& den) -> std::optional<Residue> {
    const Residue dv = evaluate(den, pa, pb, pc, m);
    auto inv = inv_witnessed(dv);
    if (!inv) {
      if (inv.failure().kind != ArithmeticFailure::Kind::kZero) failure = inv.failure();
      return std::nullopt;
    }
    return evaluate(num, pa, pb, pc, m) * inv.value();
  };
  const auto aa = quotient(maps.an, maps.ad);
  if (failure) return StepResult(*failure);
  if (!aa) return std::nullopt;
  const auto bb = quotient(maps.bn, maps.bd);
  if (failure) return StepResult(*failure);
  if (!bb) return std::nullopt;
  const auto cc = quotient(maps.cn, maps.cd);
  if (failure) return StepResult(*failure);
  if (!cc) return std::nullopt;

  const Residue h(ctx.h(), m);
  const Residue& a = *aa;
  const Residue& b = *bb;
  const Residue& c = *cc;
  const Residue a2 = a * a, a3 = a2 * a, a5 = a3 * a2;
  const Residue five(5L, m), three(3L, m), four(4L, m), two(2L, m);
  const Residue core = a5 + five * a * b * b - five * a3 * b;
  const Residue sigma1 = (two * h - core - c * c * (a2 - four * b)) * inv_witnessed(two).value();
  const Residue den = a2 * a2 - b * (three * a2 - b);
  auto den_inv = inv_witnessed(den);
  if (!den_inv) {
    if (den_inv.failure().kind == ArithmeticFailure::Kind::kZero) return std::nullopt;
    return StepResult(den_inv.failure());
  }
  const Residue dd = c * (h - core + sigma1 + a * (a2 - three * b) * (a2 - b)) * den_inv.value();

  const Residue out_a = sign_out_a < 0 ? -a : a;
  BaseDivisor out{{b, out_a, Residue(1L, m)}, {dd, c}};
  if (sign_out_v < 0) out.v = poly_neg<ResidueRing>(out.v);
  trim(ResidueRing(m), out.v);
  return StepResult(std::move(out));
}

}  // namespace detail

// The maps read A as minus the x-coefficient of u and return u, v unchanged;
// fixed by agreement with sqrt5_action on random divisors.
namespace {
constexpr int kSignA = -1;
constexpr int kSignOutA = 1;
constexpr int kSignOutV = 1;
}  // namespace

std::optional<StepResult> sqrt5_closed_form(const BaseDivisor& d, const Sqrt5Context& ctx) {
  return detail::sqrt5_closed_form_signed(d, ctx, kSignA, kSignOutA, kSignOutV);
}

}  // namespace curveprime::jacobian
