#pragma once

// Arbitrary-size naturals stored as little-endian limbs of 1..64 bits.

#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyxform/modular.hpp"

namespace polyxform {

class BigNat {
 public:
  static constexpr unsigned kDefaultLimbBits = 64;

  explicit BigNat(unsigned limb_bits = kDefaultLimbBits);

  // Trailing zero limbs are dropped; UsageError if a limb is out of range.
  static BigNat from_limbs(std::vector<u64> limbs, unsigned limb_bits = kDefaultLimbBits);
  static BigNat from_u64(u64 value, unsigned limb_bits = kDefaultLimbBits);
  // Big-endian hex with optional 0x prefix; either case accepted.
  static BigNat from_hex(std::string_view text, unsigned limb_bits = kDefaultLimbBits);

  // Lowercase, 0x-prefixed, no leading zeros ("0x0" for zero).
  std::string to_hex() const;

  unsigned limb_bits() const noexcept { return bits_; }
  const std::vector<u64>& limbs() const noexcept { return limbs_; }
  std::size_t size() const noexcept { return limbs_.size(); }
  bool is_zero() const noexcept { return limbs_.empty(); }
  u64 bit_length() const noexcept;
  u64 limb_mask() const noexcept { return bits_ == 64 ? ~u64{0} : (u64{1} << bits_) - 1; }

  // Same value in another limb width.
  BigNat rebase(unsigned limb_bits) const;

  // Values compare equal regardless of limb width.
  friend bool operator==(const BigNat& a, const BigNat& b);
  // Result takes the left operand's limb width.
  friend BigNat operator+(const BigNat& a, const BigNat& b);

 private:
  unsigned bits_;
  std::vector<u64> limbs_;
};

void check_limb_bits(unsigned limb_bits);

// Uniform value with exactly `bits` bits (top bit set); 0 bits gives zero.
BigNat random_bignat(u64 bits, std::mt19937_64& rng, unsigned limb_bits = BigNat::kDefaultLimbBits);
// 2^bits - 1.
BigNat all_ones(u64 bits, unsigned limb_bits = BigNat::kDefaultLimbBits);

}  // namespace polyxform
