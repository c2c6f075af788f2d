#pragma once

/**
 * @file dft.hpp
 * @brief Quadratic-time DFTs and root-of-unity machinery over Z/qZ and the
 *        cubic extension.
 *
 * These are deliberately naive: they serve as the trusted reference that
 * the fast paths are measured against.
 */

#include <span>
#include <string>
#include <vector>

#include "polyxform/extension.hpp"
#include "polyxform/modular.hpp"
#include "polyxform/primes.hpp"
#include "polyxform/residues.hpp"

namespace polyxform {

// Element helpers found by ADL from the generic algorithms below.
inline Residue one_like(const Residue& e) noexcept { return Residue(e.modulus(), 1); }
inline Residue zero_like(const Residue& e) noexcept { return Residue(e.modulus(), 0); }
inline Residue scalar_like(const Residue& e, u64 v) noexcept { return Residue(e.modulus(), v); }
inline Residue power(const Residue& e, u64 k) noexcept { return pow_mod(e, k); }
inline Residue inverse(const Residue& e) { return inv_mod(e); }
inline bool in_field(const Residue&) noexcept { return true; }

inline ExtensionElement one_like(const ExtensionElement& e) noexcept { return ExtensionElement::in_ring_of(e, {1, 0, 0}); }
inline ExtensionElement zero_like(const ExtensionElement& e) noexcept { return ExtensionElement::in_ring_of(e, {0, 0, 0}); }
inline ExtensionElement scalar_like(const ExtensionElement& e, u64 v) noexcept {
  return ExtensionElement::in_ring_of(e, {v, 0, 0});
}
inline ExtensionElement power(const ExtensionElement& e, u64 k) { return ext_pow(e, k); }
inline ExtensionElement inverse(const ExtensionElement& e) { return ext_inv(e); }
inline bool in_field(const ExtensionElement& e) {
  return e.p() % 3 == 1 && !is_cubic_residue(Residue(PrimeModulus(e.p()), e.y()));
}

// Evaluates X[j] = sum_k x[k] omega^(jk) for j < outputs, with no
// condition on the order of omega. This is the Vandermonde product itself.
template <class F>
std::vector<F> vandermonde_eval(std::span<const F> x, const F& omega, std::size_t outputs) {
  std::vector<F> out;
  out.reserve(outputs);
  F step = one_like(omega);  // omega^j
  for (std::size_t j = 0; j < outputs; ++j) {
    F acc = zero_like(omega);
    F cur = one_like(omega);  // omega^(jk)
    for (const F& v : x) {
      acc = acc + v * cur;
      cur = cur * step;
    }
    out.push_back(acc);
    step = step * omega;
  }
  return out;
}

// omega^n = 1 and omega^(n/f) != 1 for every prime f | n.
template <class F>
bool has_exact_order(const F& omega, u64 n) {
  if (n == 0) return false;
  if (power(omega, n) != one_like(omega)) return false;
  for (u64 f : prime_factors(n)) {
    if (power(omega, n / f) == one_like(omega)) return false;
  }
  return true;
}

template <class F>
std::vector<F> naive_dft(std::span<const F> x, const F& omega) {
  if (!has_exact_order(omega, x.size())) {
    throw UsageError("omega does not have multiplicative order " + std::to_string(x.size()));
  }
  return vandermonde_eval(x, omega, x.size());
}

template <class F>
std::vector<F> naive_dft(const std::vector<F>& x, const F& omega) {
  return naive_dft(std::span<const F>(x), omega);
}

template <class F>
std::vector<F> naive_inverse_dft(std::span<const F> spectrum, const F& omega) {
  const u64 n = spectrum.size();
  if (!has_exact_order(omega, n)) {
    throw UsageError("omega does not have multiplicative order " + std::to_string(n));
  }
  const F n_field = scalar_like(omega, n);
  if (n_field == zero_like(omega)) throw NotInvertible("transform length vanishes in the field");
  const F scale = inverse(n_field);
  auto out = vandermonde_eval(spectrum, inverse(omega), n);
  for (auto& v : out) v = v * scale;
  return out;
}

template <class F>
std::vector<F> naive_inverse_dft(const std::vector<F>& spectrum, const F& omega) {
  return naive_inverse_dft(std::span<const F>(spectrum), omega);
}

enum class SumMethod {
  direct,      // every sum accumulated term by term, O(n^2)
  telescoping  // S_j (w - 1) = w^n - 1 with w = omega^j; exact in a field, O(n)
};

template <class F>
struct PrincipalRootCertificate {
  F omega;
  u64 order = 0;
  bool power_is_one = false;     // omega^order == 1
  bool sums_vanish = false;      // sum_i omega^(ij) == 0 for all 1 <= j < order
  u64 first_failing_sum = 0;     // the smallest j whose sum is nonzero, 0 if none
  SumMethod method = SumMethod::direct;

  bool passed() const noexcept { return power_is_one && sums_vanish; }
};

// Sizes at or below this use direct summation under SumMethod selection.
inline constexpr u64 kDirectSumLimit = 4096;

template <class F>
PrincipalRootCertificate<F> check_principal_root(const F& omega, u64 n, SumMethod method) {
  PrincipalRootCertificate<F> cert{omega, n};
  cert.method = method;
  if (n == 0) return cert;
  const F one = one_like(omega);
  const F zero = zero_like(omega);
  cert.power_is_one = power(omega, n) == one;
  cert.sums_vanish = true;

  if (method == SumMethod::direct) {
    F step = omega;  // omega^j
    for (u64 j = 1; j < n; ++j) {
      F sum = zero;
      F term = one;
      for (u64 i = 0; i < n; ++i) {
        sum = sum + term;
        term = term * step;
      }
      if (sum != zero) {
        cert.sums_vanish = false;
        cert.first_failing_sum = j;
        break;
      }
      step = step * omega;
    }
    return cert;
  }

  if (!in_field(omega)) throw UsageError("telescoping sums need a field");
  const F omega_n = power(omega, n);
  F w = omega;          // omega^j
  F w_to_n = omega_n;   // (omega^j)^n
  const bool n_vanishes = scalar_like(omega, n) == zero;
  for (u64 j = 1; j < n; ++j) {
    const bool sum_is_zero = (w == one) ? n_vanishes : (w_to_n == one);
    if (!sum_is_zero) {
      cert.sums_vanish = false;
      cert.first_failing_sum = j;
      break;
    }
    w = w * omega;
    w_to_n = w_to_n * omega_n;
  }
  return cert;
}

// Direct summation up to kDirectSumLimit, telescoping above it.
template <class F>
PrincipalRootCertificate<F> check_principal_root(const F& omega, u64 n) {
  const bool direct = n <= kDirectSumLimit || !in_field(omega);
  return check_principal_root(omega, n, direct ? SumMethod::direct : SumMethod::telescoping);
}

// Multiplicative order of a unit, given the group order and its distinct
// prime factors.
template <class F>
u64 multiplicative_order(const F& e, u64 group_order, std::span<const u64> factors) {
  if (power(e, group_order) != one_like(e)) throw UsageError("element is not a unit of the given group");
  u64 order = group_order;
  for (u64 f : factors) {
    while (order % f == 0 && power(e, order / f) == one_like(e)) order /= f;
  }
  return order;
}

u64 multiplicative_order(const Residue& e);
u64 multiplicative_order(const ExtensionElement& e, const CubicExtension& field);

// The element of exact order n with the smallest canonical value, validated
// by check_principal_root. Throws NoSuchRoot unless n divides q - 1.
Residue find_root_of_order(u64 n, PrimeModulus q);

// Same over the cubic extension (which must be a field); n must divide
// p^3 - 1. Ties break on ExtensionElement::canonical_index.
ExtensionElement find_root_of_order(u64 n, const CubicExtension& field);

}  // namespace polyxform
