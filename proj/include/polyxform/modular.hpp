#pragma once

/**
 * @file modular.hpp
 * @brief Word-sized modular arithmetic over prime moduli.
 *
 * Every product is formed in a 128-bit intermediate, so moduli up to
 * 2^64 - 1 are supported. Residues are kept canonical (in [0, q)) from the
 * moment they are constructed, which lets equality be a plain comparison.
 */

#include <compare>
#include <cstdint>
#include <ostream>

#include <boost/multiprecision/cpp_int.hpp>

#include "polyxform/errors.hpp"

namespace polyxform {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

// Arbitrary-precision natural, used wherever a value can outgrow a word
// (CRT products, coefficient-growth bounds).
using Natural = boost::multiprecision::cpp_int;

namespace raw {

constexpr u64 add(u64 a, u64 b, u64 m) noexcept {
  // a, b < m; the sum may wrap past 2^64 when m is close to it.
  u64 s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

constexpr u64 sub(u64 a, u64 b, u64 m) noexcept { return a >= b ? a - b : a + (m - b); }

constexpr u64 mul(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 pow(u64 base, u64 exp, u64 m) noexcept {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul(result, base, m);
    base = mul(base, base, m);
    exp >>= 1;
  }
  return result;
}

constexpr u64 gcd(u64 a, u64 b) noexcept {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Inverse of a modulo m by the extended Euclidean algorithm. m need not be
// prime; throws NotInvertible when gcd(a, m) != 1.
u64 inv(u64 a, u64 m);

}  // namespace raw

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n) noexcept;

class PrimeModulus {
 public:
  // Throws UsageError unless q is prime.
  explicit PrimeModulus(u64 q);

  u64 value() const noexcept { return q_; }

  friend bool operator==(PrimeModulus, PrimeModulus) = default;

 private:
  u64 q_;
};

class Residue {
 public:
  // Reduces value into [0, q).
  Residue(PrimeModulus modulus, u64 value) noexcept : modulus_(modulus), value_(value % modulus.value()) {}

  u64 value() const noexcept { return value_; }
  PrimeModulus modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  friend bool operator==(const Residue&, const Residue&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Residue& r) {
    return os << r.value_ << " (mod " << r.modulus_.value() << ")";
  }

 private:
  PrimeModulus modulus_;
  u64 value_;
};

// All binary operations throw UsageError when the moduli differ.
Residue add_mod(const Residue& a, const Residue& b);
Residue sub_mod(const Residue& a, const Residue& b);
Residue mul_mod(const Residue& a, const Residue& b);
Residue neg_mod(const Residue& a) noexcept;
Residue pow_mod(const Residue& a, u64 exponent) noexcept;
// Throws NotInvertible for zero.
Residue inv_mod(const Residue& a);

inline Residue operator+(const Residue& a, const Residue& b) { return add_mod(a, b); }
inline Residue operator-(const Residue& a, const Residue& b) { return sub_mod(a, b); }
inline Residue operator*(const Residue& a, const Residue& b) { return mul_mod(a, b); }
inline Residue operator-(const Residue& a) noexcept { return neg_mod(a); }

}  // namespace polyxform
