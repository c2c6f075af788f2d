#include "polyxform/extension.hpp"

#include <algorithm>
#include <string>

#include "polyxform/linalg.hpp"
#include "polyxform/primes.hpp"
#include "polyxform/residues.hpp"

namespace polyxform {

CubicExtension::CubicExtension(PrimeModulus p, u64 y) : p_(p), y_(y) {
  const u64 m = p.value();
  if (y >= m) throw UsageError("extension parameter y must be reduced modulo p");
  if (m >= (1ULL << 21)) throw UsageError("p^3 must fit in 63 bits; p = " + std::to_string(m));
  is_field_ = m % 3 == 1 && !is_cubic_residue(Residue(p, y));
  // p^3 - 1 = (p - 1)(p^2 + p + 1); factoring the halves separately keeps
  // trial division short.
  factors_ = prime_factors(m - 1);
  for (u64 f : prime_factors(m * m + m + 1)) factors_.push_back(f);
  std::sort(factors_.begin(), factors_.end());
  factors_.erase(std::unique(factors_.begin(), factors_.end()), factors_.end());
}

ExtensionElement::ExtensionElement(const CubicExtension& ctx, Coefficients a)
    : p_(ctx.p().value()), y_(ctx.y()), a_(a) {
  for (auto& c : a_) c %= p_;
}

ExtensionElement ExtensionElement::in_ring_of(const ExtensionElement& like, Coefficients a) noexcept {
  for (auto& c : a) c %= like.p_;
  return ExtensionElement(like.p_, like.y_, a);
}

ExtensionElement ExtensionElement::from_index(const CubicExtension& ctx, u64 index) {
  const u64 p = ctx.p().value();
  if (index > ctx.unit_group_order()) throw UsageError("extension index out of range");
  return ExtensionElement(ctx, {index % p, (index / p) % p, index / (p * p)});
}

namespace {

void require_same_ring(const ExtensionElement& u, const ExtensionElement& v) {
  if (!u.same_ring(v)) throw UsageError("extension elements belong to different rings");
}

}  // namespace

ExtensionElement ext_add(const ExtensionElement& u, const ExtensionElement& v) {
  require_same_ring(u, v);
  const u64 p = u.p_;
  return ExtensionElement(p, u.y_,
                          {raw::add(u.a_[0], v.a_[0], p), raw::add(u.a_[1], v.a_[1], p), raw::add(u.a_[2], v.a_[2], p)});
}

ExtensionElement ext_sub(const ExtensionElement& u, const ExtensionElement& v) {
  require_same_ring(u, v);
  const u64 p = u.p_;
  return ExtensionElement(p, u.y_,
                          {raw::sub(u.a_[0], v.a_[0], p), raw::sub(u.a_[1], v.a_[1], p), raw::sub(u.a_[2], v.a_[2], p)});
}

ExtensionElement ext_mul(const ExtensionElement& u, const ExtensionElement& v) {
  require_same_ring(u, v);
  const u64 p = u.p_;
  const auto& a = u.a_;
  const auto& b = v.a_;
  // Schoolbook product of degree-2 polynomials, then t^3 -> y, t^4 -> y t.
  // p < 2^21 so every partial sum below fits comfortably in 128 bits.
  const u128 c0 = static_cast<u128>(a[0]) * b[0];
  const u128 c1 = static_cast<u128>(a[0]) * b[1] + static_cast<u128>(a[1]) * b[0];
  const u128 c2 = static_cast<u128>(a[0]) * b[2] + static_cast<u128>(a[1]) * b[1] + static_cast<u128>(a[2]) * b[0];
  const u128 c3 = static_cast<u128>(a[1]) * b[2] + static_cast<u128>(a[2]) * b[1];
  const u128 c4 = static_cast<u128>(a[2]) * b[2];
  const u64 y = u.y_;
  return ExtensionElement(p, y,
                          {static_cast<u64>((c0 + (c3 % p) * y) % p), static_cast<u64>((c1 + (c4 % p) * y) % p),
                           static_cast<u64>(c2 % p)});
}

ExtensionElement ext_scale(const ExtensionElement& u, u64 scalar) {
  const u64 p = u.p_;
  const u64 s = scalar % p;
  return ExtensionElement(p, u.y_, {raw::mul(u.a_[0], s, p), raw::mul(u.a_[1], s, p), raw::mul(u.a_[2], s, p)});
}

ExtensionElement ext_pow(ExtensionElement base, u64 exponent) {
  ExtensionElement result = ExtensionElement::in_ring_of(base, {1, 0, 0});
  while (exponent > 0) {
    if (exponent & 1) result = ext_mul(result, base);
    base = ext_mul(base, base);
    exponent >>= 1;
  }
  return result;
}

ExtensionElement ext_inv(const ExtensionElement& u) {
  const PrimeModulus p(u.p_);
  const u64 y = u.y_;
  const auto& a = u.a_;
  // Column j holds u * t^j, so M x = e0 solves u * x = 1.
  const ModMatrix m = ModMatrix::from_rows(p, {{a[0], raw::mul(y, a[2], p.value()), raw::mul(y, a[1], p.value())},
                                               {a[1], a[0], raw::mul(y, a[2], p.value())},
                                               {a[2], a[1], a[0]}});
  const std::vector<Residue> rhs{Residue(p, 1), Residue(p, 0), Residue(p, 0)};
  try {
    const auto sol = solve_linear_mod(m, rhs);
    return ExtensionElement(u.p_, y, {sol.x[0].value(), sol.x[1].value(), sol.x[2].value()});
  } catch (const Singular&) {
    throw NotInvertible("extension element has no inverse");
  }
}

}  // namespace polyxform
