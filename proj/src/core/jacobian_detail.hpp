#pragma once

#include <cstdint>
#include <mutex>
#include <vector>

#include "curveprime/jacobian.hpp"

namespace curveprime::jacobian {

/// One of the six closed-form polynomials with h and d substituted, as a
/// polynomial in A, B, C over Z/N.
struct Sqrt5Context::ClosedFormMaps {
  struct Term {
    Residue coeff;
    std::uint8_t a, b, c;
  };
  using Map = std::vector<Term>;
  bool available = false;  // false when a rational coefficient has no inverse mod N
  Map an, ad, bn, bd, cn, cd;
};

struct Sqrt5Context::Data {
  QuadExtContext ext;
  BigInt h;
  Genus2Arithmetic<ResidueRing> base;
  Genus2Arithmetic<QuadExtRing> extended;
  std::vector<QuadExtElement> zeta_pow;  // T^0 .. T^4
  std::once_flag maps_once;
  std::shared_ptr<const ClosedFormMaps> maps;
};

namespace detail {

std::shared_ptr<const Sqrt5Context::ClosedFormMaps> build_closed_form_maps(const Modulus& m,
                                                                           const Residue& h,
                                                                           const Residue& d);

/// The closed form with its sign conventions exposed: A is read as sign_a
/// times the x-coefficient of u, and the output x-coefficient of u and the
/// whole of v are multiplied by sign_out_a and sign_out_v.
std::optional<StepResult> sqrt5_closed_form_signed(const BaseDivisor& d, const Sqrt5Context& ctx,
                                                   int sign_a, int sign_out_a, int sign_out_v);

}  // namespace detail

}  // namespace curveprime::jacobian
