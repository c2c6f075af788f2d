#include "polyxform/bignat.hpp"

#include <algorithm>
#include <bit>

#include "polyxform/errors.hpp"

namespace polyxform {

namespace {

void trim(std::vector<u64>& limbs) {
  while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
}

// Bit stream repacking between limb widths.
std::vector<u64> repack(const std::vector<u64>& src, unsigned from_bits, unsigned to_bits) {
  std::vector<u64> out;
  const u64 to_mask = to_bits == 64 ? ~u64{0} : (u64{1} << to_bits) - 1;
  u128 acc = 0;
  unsigned have = 0;
  for (u64 limb : src) {
    acc |= static_cast<u128>(limb) << have;
    have += from_bits;
    while (have >= to_bits) {
      out.push_back(static_cast<u64>(acc) & to_mask);
      acc >>= to_bits;
      have -= to_bits;
    }
  }
  if (have > 0) out.push_back(static_cast<u64>(acc) & to_mask);
  trim(out);
  return out;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

void check_limb_bits(unsigned limb_bits) {
  if (limb_bits < 1 || limb_bits > 64) throw UsageError("limb width must be between 1 and 64 bits");
}

BigNat::BigNat(unsigned limb_bits) : bits_(limb_bits) { check_limb_bits(limb_bits); }

BigNat BigNat::from_limbs(std::vector<u64> limbs, unsigned limb_bits) {
  BigNat out(limb_bits);
  const u64 mask = out.limb_mask();
  for (u64 l : limbs) {
    if (l & ~mask) throw UsageError("limb exceeds the limb width");
  }
  trim(limbs);
  out.limbs_ = std::move(limbs);
  return out;
}

BigNat BigNat::from_u64(u64 value, unsigned limb_bits) { return from_limbs({value}, 64).rebase(limb_bits); }

BigNat BigNat::from_hex(std::string_view text, unsigned limb_bits) {
  if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
  if (text.empty()) throw UsageError("empty hexadecimal number");
  std::vector<u64> nibbles;
  nibbles.reserve(text.size());
  for (auto it = text.rbegin(); it != text.rend(); ++it) {
    const int d = hex_digit(*it);
    if (d < 0) throw UsageError(std::string("invalid hexadecimal digit '") + *it + "'");
    nibbles.push_back(static_cast<u64>(d));
  }
  BigNat out(limb_bits);
  out.limbs_ = repack(nibbles, 4, limb_bits);
  return out;
}

std::string BigNat::to_hex() const {
  if (is_zero()) return "0x0";
  const auto nibbles = repack(limbs_, bits_, 4);
  std::string s = "0x";
  for (auto it = nibbles.rbegin(); it != nibbles.rend(); ++it) s.push_back("0123456789abcdef"[*it]);
  return s;
}

u64 BigNat::bit_length() const noexcept {
  if (is_zero()) return 0;
  return (limbs_.size() - 1) * bits_ + static_cast<u64>(std::bit_width(limbs_.back()));
}

BigNat BigNat::rebase(unsigned limb_bits) const {
  BigNat out(limb_bits);
  out.limbs_ = limb_bits == bits_ ? limbs_ : repack(limbs_, bits_, limb_bits);
  return out;
}

bool operator==(const BigNat& a, const BigNat& b) {
  if (a.bits_ == b.bits_) return a.limbs_ == b.limbs_;
  return a.limbs_ == b.rebase(a.bits_).limbs_;
}

BigNat operator+(const BigNat& a, const BigNat& b) {
  const BigNat rhs = b.bits_ == a.bits_ ? b : b.rebase(a.bits_);
  const std::size_t len = std::max(a.size(), rhs.size());
  std::vector<u64> out(len + 1, 0);
  u128 carry = 0;
  for (std::size_t i = 0; i < len; ++i) {
    u128 t = carry;
    if (i < a.size()) t += a.limbs_[i];
    if (i < rhs.size()) t += rhs.limbs_[i];
    out[i] = static_cast<u64>(t) & a.limb_mask();
    carry = t >> a.bits_;
  }
  out[len] = static_cast<u64>(carry);
  return BigNat::from_limbs(std::move(out), a.bits_);
}

BigNat random_bignat(u64 bits, std::mt19937_64& rng, unsigned limb_bits) {
  if (bits == 0) return BigNat(limb_bits);
  std::vector<u64> words((bits + 63) / 64);
  for (auto& w : words) w = rng();
  const unsigned top = static_cast<unsigned>(bits % 64);
  if (top != 0) words.back() &= (u64{1} << top) - 1;
  words.back() |= u64{1} << ((bits - 1) % 64);
  return BigNat::from_limbs(std::move(words), 64).rebase(limb_bits);
}

BigNat all_ones(u64 bits, unsigned limb_bits) {
  std::vector<u64> words((bits + 63) / 64, ~u64{0});
  const unsigned top = static_cast<unsigned>(bits % 64);
  if (top != 0) words.back() = (u64{1} << top) - 1;
  return BigNat::from_limbs(std::move(words), 64).rebase(limb_bits);
}

}  // namespace polyxform
