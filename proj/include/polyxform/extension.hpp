#pragma once

/**
 * @file extension.hpp
 * @brief Arithmetic in F_p[t] / (t^3 - y).
 *
 * When y is not a cube modulo p (which needs p = 1 mod 3) the quotient is the
 * field with p^3 elements. Elements are triples (a0, a1, a2) meaning
 * a0 + a1 t + a2 t^2, with t^3 reduced to y.
 */

#include <array>
#include <ostream>
#include <vector>

#include "polyxform/modular.hpp"

namespace polyxform {

class CubicExtension {
 public:
  // Throws UsageError if y >= p or p^3 does not fit in 63 bits.
  CubicExtension(PrimeModulus p, u64 y);

  PrimeModulus p() const noexcept { return p_; }
  u64 y() const noexcept { return y_; }
  // y is a non-cube, so every nonzero element is invertible.
  bool is_field() const noexcept { return is_field_; }
  // p^3 - 1; the unit group order when is_field().
  u64 unit_group_order() const noexcept { return p_.value() * p_.value() * p_.value() - 1; }
  const std::vector<u64>& unit_group_order_factors() const noexcept { return factors_; }

  friend bool operator==(const CubicExtension& a, const CubicExtension& b) noexcept {
    return a.p_ == b.p_ && a.y_ == b.y_;
  }

 private:
  PrimeModulus p_;
  u64 y_;
  bool is_field_;
  std::vector<u64> factors_;
};

class ExtensionElement {
 public:
  using Coefficients = std::array<u64, 3>;

  ExtensionElement(const CubicExtension& ctx, Coefficients a);

  static ExtensionElement zero(const CubicExtension& ctx) { return ExtensionElement(ctx, {0, 0, 0}); }
  static ExtensionElement one(const CubicExtension& ctx) { return ExtensionElement(ctx, {1, 0, 0}); }
  // The adjoined cube root t.
  static ExtensionElement generator_t(const CubicExtension& ctx) { return ExtensionElement(ctx, {0, 1, 0}); }

  // An element of the same ring as `like`; coefficients are reduced mod p.
  static ExtensionElement in_ring_of(const ExtensionElement& like, Coefficients a) noexcept;

  u64 p() const noexcept { return p_; }
  u64 y() const noexcept { return y_; }
  bool same_ring(const ExtensionElement& other) const noexcept { return p_ == other.p_ && y_ == other.y_; }
  const Coefficients& coefficients() const noexcept { return a_; }
  u64 operator[](std::size_t i) const { return a_[i]; }
  bool is_zero() const noexcept { return a_[0] == 0 && a_[1] == 0 && a_[2] == 0; }

  // a0 + a1 p + a2 p^2, the ordering used for deterministic tie-breaks.
  u64 canonical_index() const noexcept { return a_[0] + a_[1] * p_ + a_[2] * p_ * p_; }
  static ExtensionElement from_index(const CubicExtension& ctx, u64 index);

  friend bool operator==(const ExtensionElement& u, const ExtensionElement& v) noexcept {
    return u.a_ == v.a_ && u.same_ring(v);
  }
  friend std::ostream& operator<<(std::ostream& os, const ExtensionElement& e) {
    return os << "(" << e.a_[0] << ", " << e.a_[1] << ", " << e.a_[2] << ")";
  }

 private:
  ExtensionElement(u64 p, u64 y, Coefficients a) noexcept : p_(p), y_(y), a_(a) {}
  friend ExtensionElement ext_add(const ExtensionElement&, const ExtensionElement&);
  friend ExtensionElement ext_sub(const ExtensionElement&, const ExtensionElement&);
  friend ExtensionElement ext_mul(const ExtensionElement&, const ExtensionElement&);
  friend ExtensionElement ext_scale(const ExtensionElement&, u64);
  friend ExtensionElement ext_inv(const ExtensionElement&);

  u64 p_;
  u64 y_;
  Coefficients a_;
};

// Throw UsageError when the contexts differ.
ExtensionElement ext_add(const ExtensionElement& u, const ExtensionElement& v);
ExtensionElement ext_sub(const ExtensionElement& u, const ExtensionElement& v);
ExtensionElement ext_mul(const ExtensionElement& u, const ExtensionElement& v);
ExtensionElement ext_scale(const ExtensionElement& u, u64 scalar);
ExtensionElement ext_pow(ExtensionElement base, u64 exponent);
// Solves the 3x3 multiplication-matrix system; NotInvertible if singular.
ExtensionElement ext_inv(const ExtensionElement& u);

inline ExtensionElement operator+(const ExtensionElement& u, const ExtensionElement& v) { return ext_add(u, v); }
inline ExtensionElement operator-(const ExtensionElement& u, const ExtensionElement& v) { return ext_sub(u, v); }
inline ExtensionElement operator*(const ExtensionElement& u, const ExtensionElement& v) { return ext_mul(u, v); }

}  // namespace polyxform
