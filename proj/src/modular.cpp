#include "polyxform/modular.hpp"

#include <array>
#include <string>

namespace polyxform {

namespace raw {

u64 inv(u64 a, u64 m) {
  if (m == 0) throw UsageError("inverse modulo zero");
  __extension__ typedef __int128 i128;
  i128 old_r = a % m, r = m;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    i128 quotient = old_r / r;
    i128 tmp = old_r - quotient * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quotient * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) {
    if (m == 1) return 0;
    throw NotInvertible(std::to_string(a) + " has no inverse modulo " + std::to_string(m));
  }
  i128 result = old_s % static_cast<i128>(m);
  if (result < 0) result += m;
  return static_cast<u64>(result);
}

}  // namespace raw

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // The first twelve primes are a complete witness set below 3.3e24.
  static constexpr std::array<u64, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 a : witnesses) {
    u64 x = raw::pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = raw::mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(u64 q) : q_(q) {
  if (!is_prime(q)) throw UsageError(std::to_string(q) + " is not prime");
}

namespace {

void require_same_modulus(const Residue& a, const Residue& b) {
  if (a.modulus() != b.modulus()) {
    throw UsageError("modulus mismatch: " + std::to_string(a.modulus().value()) + " vs " +
                     std::to_string(b.modulus().value()));
  }
}

}  // namespace

Residue add_mod(const Residue& a, const Residue& b) {
  require_same_modulus(a, b);
  return Residue(a.modulus(), raw::add(a.value(), b.value(), a.modulus().value()));
}

Residue sub_mod(const Residue& a, const Residue& b) {
  require_same_modulus(a, b);
  return Residue(a.modulus(), raw::sub(a.value(), b.value(), a.modulus().value()));
}

Residue mul_mod(const Residue& a, const Residue& b) {
  require_same_modulus(a, b);
  return Residue(a.modulus(), raw::mul(a.value(), b.value(), a.modulus().value()));
}

Residue neg_mod(const Residue& a) noexcept {
  return Residue(a.modulus(), raw::sub(0, a.value(), a.modulus().value()));
}

Residue pow_mod(const Residue& a, u64 exponent) noexcept {
  return Residue(a.modulus(), raw::pow(a.value(), exponent, a.modulus().value()));
}

Residue inv_mod(const Residue& a) {
  if (a.is_zero()) throw NotInvertible("zero has no inverse modulo " + std::to_string(a.modulus().value()));
  return Residue(a.modulus(), raw::inv(a.value(), a.modulus().value()));
}

}  // namespace polyxform
