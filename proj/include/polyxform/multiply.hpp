#pragma once

/**
 * @file multiply.hpp
 * @brief Big-integer multiplication backends and the packing scheme.
 *
 * Transform backends split both operands into limb_bits-wide coefficients,
 * convolve them through a forward transform, a pointwise product and an
 * inverse transform, then rebuild the product with carry_propagate. The
 * limb width is the largest one whose worst-case convolution coefficient,
 * min(|a|, |b|) * (2^limb_bits - 1)^2, stays below the transform modulus.
 */

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyxform/bignat.hpp"
#include "polyxform/plan.hpp"

namespace polyxform {

struct MulStats {
  u64 limb_multiplications = 0;  // word products, butterflies or field products
  u64 limb_additions = 0;
};

BigNat schoolbook_mul(const BigNat& a, const BigNat& b, MulStats* stats = nullptr);

inline constexpr std::size_t kDefaultKaratsubaThreshold = 32;

// threshold (in limbs) must be at least 2; operands with fewer limbs than
// that go to schoolbook.
BigNat karatsuba_mul(const BigNat& a, const BigNat& b, std::size_t threshold = kDefaultKaratsubaThreshold,
                     MulStats* stats = nullptr);

// Throws OverflowRisk unless terms * (2^limb_bits - 1)^2 < modulus.
void certify_packing(unsigned limb_bits, u64 terms, const Natural& modulus);
bool packing_fits(unsigned limb_bits, u64 terms, const Natural& modulus);

// Coefficients of a in base 2^limb_bits, zero-padded to `length`. `terms`
// is the convolution depth to certify against the modulus (0: length).
// UsageError if a needs more than `length` coefficients.
std::vector<u64> pack(const BigNat& a, unsigned limb_bits, std::size_t length, const Natural& modulus, u64 terms = 0);

// Sum of coeffs[k] * 2^(k limb_bits); coefficients may exceed the base.
BigNat carry_propagate(std::span<const u64> coeffs, unsigned limb_bits);
BigNat carry_propagate(std::span<const Natural> coeffs, unsigned limb_bits);
inline BigNat unpack(std::span<const u64> coeffs, unsigned limb_bits) { return carry_propagate(coeffs, limb_bits); }

// Largest limb width in [1, 64] for which packing a and b certifies against
// the modulus and the product fits in max_length coefficients.
// OverflowRisk when none does.
unsigned choose_limb_bits(u64 a_bits, u64 b_bits, const Natural& modulus, u64 max_length);

enum class MulBackendKind { schoolbook, karatsuba, oracle_ntt, polynomial_transform };

std::string_view to_string(MulBackendKind kind) noexcept;
MulBackendKind parse_backend(std::string_view text);

struct MulBackend {
  MulBackendKind kind = MulBackendKind::schoolbook;
  std::size_t karatsuba_threshold = kDefaultKaratsubaThreshold;
  // Polynomial-transform backend only. The inverse plan must come from
  // invert_plan(*forward_plan). With oracle_transform set, both directions
  // are computed by direct O(n^2) sums in F_{p^3} instead of the pipeline.
  const PTPlan* forward_plan = nullptr;
  const PTPlan* inverse_plan = nullptr;
  bool oracle_transform = false;
  std::size_t workers = 0;

  bool asserts_exactness() const noexcept { return kind != MulBackendKind::polynomial_transform || oracle_transform; }
};

struct MulReport {
  MulBackendKind backend = MulBackendKind::schoolbook;
  BigNat product;
  BigNat reference;  // schoolbook product
  bool matches = false;
  unsigned limb_bits = 0;               // 0 for non-transform backends
  u64 transform_length = 0;
  u64 used_coefficients = 0;            // |a| + |b| - 1 packed coefficients
  double utilization = 0.0;             // used_coefficients / transform_length
  u64 stray_components = 0;             // nonzero t or t^2 parts in extension outputs
  MulStats stats;
};

// Product under the backend, cross-checked against schoolbook.
MulReport multiply(const BigNat& a, const BigNat& b, const MulBackend& backend);

// Transform backends only (UsageError otherwise).
MulReport transform_mul(const BigNat& a, const BigNat& b, const MulBackend& backend);

}  // namespace polyxform
