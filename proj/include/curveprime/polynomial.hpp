// Dense univariate polynomials over a coefficient ring adapter (see ring.hpp).
// Coefficients are stored low degree first and kept trimmed, so the leading
// coefficient is never zero in the ring. Division by a non-monic polynomial
// inverts its leading coefficient through Ring::invert, which throws
// NonInvertible when that coefficient is not a unit.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "curveprime/ring.hpp"

namespace curveprime {

template <class E>
using Poly = std::vector<E>;

template <class E>
int degree(const Poly<E>& p) {
  return static_cast<int>(p.size()) - 1;  // -1 for the zero polynomial
}

template <class Ring>
void trim(const Ring& ring, Poly<typename Ring::Element>& p) {
  while (!p.empty() && ring.is_zero(p.back())) p.pop_back();
}

template <class Ring>
Poly<typename Ring::Element> poly_add(const Ring& ring, const Poly<typename Ring::Element>& a,
                                      const Poly<typename Ring::Element>& b) {
  Poly<typename Ring::Element> r = a.size() >= b.size() ? a : b;
  const auto& shorter = a.size() >= b.size() ? b : a;
  for (std::size_t i = 0; i < shorter.size(); ++i) r[i] += shorter[i];
  trim(ring, r);
  return r;
}

template <class Ring>
Poly<typename Ring::Element> poly_neg(const Poly<typename Ring::Element>& a) {
  Poly<typename Ring::Element> r;
  r.reserve(a.size());
  for (const auto& c : a) r.push_back(-c);
  return r;
}

template <class Ring>
Poly<typename Ring::Element> poly_sub(const Ring& ring, const Poly<typename Ring::Element>& a,
                                      const Poly<typename Ring::Element>& b) {
  return poly_add(ring, a, poly_neg<Ring>(b));
}

template <class Ring>
Poly<typename Ring::Element> poly_mul(const Ring& ring, const Poly<typename Ring::Element>& a,
                                      const Poly<typename Ring::Element>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<typename Ring::Element> r(a.size() + b.size() - 1, ring.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(ring, r);
  return r;
}

template <class Ring>
Poly<typename Ring::Element> poly_scale(const Ring& ring, const Poly<typename Ring::Element>& a,
                                        const typename Ring::Element& c) {
  Poly<typename Ring::Element> r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(x * c);
  trim(ring, r);
  return r;
}

/// (quotient, remainder) of a by b; b must be nonzero.
template <class Ring>
std::pair<Poly<typename Ring::Element>, Poly<typename Ring::Element>> poly_divmod(
    const Ring& ring, const Poly<typename Ring::Element>& a, const Poly<typename Ring::Element>& b) {
  using E = typename Ring::Element;
  if (b.empty()) throw std::logic_error("polynomial division by zero polynomial");
  Poly<E> rem = a;
  if (rem.size() < b.size()) return {Poly<E>{}, rem};
  const E lead_inv = ring.invert(b.back());
  Poly<E> quot(rem.size() - b.size() + 1, ring.zero());
  for (int k = degree(rem) - degree(b); k >= 0; --k) {
    const std::size_t top = static_cast<std::size_t>(k) + b.size() - 1;
    if (ring.is_zero(rem[top])) continue;
    E c = rem[top] * lead_inv;
    quot[static_cast<std::size_t>(k)] = c;
    for (std::size_t j = 0; j < b.size(); ++j) rem[static_cast<std::size_t>(k) + j] -= c * b[j];
  }
  trim(ring, quot);
  trim(ring, rem);
  return {std::move(quot), std::move(rem)};
}

template <class Ring>
Poly<typename Ring::Element> poly_mod(const Ring& ring, const Poly<typename Ring::Element>& a,
                                      const Poly<typename Ring::Element>& b) {
  return poly_divmod(ring, a, b).second;
}

/// Exact quotient; a nonzero remainder is an internal error.
template <class Ring>
Poly<typename Ring::Element> poly_div_exact(const Ring& ring, const Poly<typename Ring::Element>& a,
                                            const Poly<typename Ring::Element>& b) {
  auto [q, r] = poly_divmod(ring, a, b);
  if (!r.empty()) throw std::logic_error("inexact polynomial division");
  return q;
}

template <class Ring>
Poly<typename Ring::Element> make_monic(const Ring& ring, const Poly<typename Ring::Element>& a) {
  if (a.empty()) return a;
  return poly_scale(ring, a, ring.invert(a.back()));
}

/// Monic gcd g with g = s*a + t*b. xgcd(0, 0) yields g = 0.
template <class E>
struct XgcdResult {
  Poly<E> g;
  Poly<E> s;
  Poly<E> t;
};

template <class Ring>
XgcdResult<typename Ring::Element> poly_xgcd(const Ring& ring, const Poly<typename Ring::Element>& a,
                                             const Poly<typename Ring::Element>& b) {
  using E = typename Ring::Element;
  Poly<E> r0 = a, r1 = b;
  Poly<E> s0{ring.one()}, s1{};
  Poly<E> t0{}, t1{ring.one()};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(ring, r0, r1);
    Poly<E> s2 = poly_sub(ring, s0, poly_mul(ring, q, s1));
    Poly<E> t2 = poly_sub(ring, t0, poly_mul(ring, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {r0, s0, t0};
  const E lead_inv = ring.invert(r0.back());
  return {poly_scale(ring, r0, lead_inv), poly_scale(ring, s0, lead_inv),
          poly_scale(ring, t0, lead_inv)};
}

template <class Ring>
typename Ring::Element poly_eval(const Ring& ring, const Poly<typename Ring::Element>& p,
                                 const typename Ring::Element& x) {
  auto acc = ring.zero();
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace curveprime
