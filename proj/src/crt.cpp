#include "polyxform/crt.hpp"

#include <string>

namespace polyxform {

CrtBasis::CrtBasis(std::vector<u64> moduli) : moduli_(std::move(moduli)), product_(1) {
  if (moduli_.empty()) throw UsageError("CRT basis needs at least one modulus");
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (moduli_[i] < 2) throw UsageError("CRT modulus must be at least 2");
    for (std::size_t j = 0; j < i; ++j) {
      if (raw::gcd(moduli_[i], moduli_[j]) != 1) {
        throw UsageError("CRT moduli " + std::to_string(moduli_[j]) + " and " + std::to_string(moduli_[i]) +
                         " are not coprime");
      }
    }
    product_ *= moduli_[i];
  }
  cofactors_.reserve(moduli_.size());
  cofactor_inverses_.reserve(moduli_.size());
  garner_inverses_.reserve(moduli_.size());
  for (std::size_t k = 0; k < moduli_.size(); ++k) {
    const u64 m = moduli_[k];
    Natural cofactor = product_ / m;
    cofactor_inverses_.push_back(raw::inv(static_cast<u64>(cofactor % m), m));
    cofactors_.push_back(std::move(cofactor));

    u64 prefix = 1 % m;
    for (std::size_t j = 0; j < k; ++j) prefix = raw::mul(prefix, moduli_[j] % m, m);
    garner_inverses_.push_back(raw::inv(prefix, m));
  }
}

namespace {

void check_residues(std::span<const u64> residues, const CrtBasis& basis) {
  if (residues.size() != basis.size()) throw UsageError("residue count does not match CRT basis");
  for (std::size_t k = 0; k < residues.size(); ++k) {
    if (residues[k] >= basis.moduli()[k]) throw UsageError("residue is not reduced modulo its modulus");
  }
}

}  // namespace

Natural crt_reconstruct(std::span<const u64> residues, const CrtBasis& basis) {
  check_residues(residues, basis);
  Natural x = 0;
  for (std::size_t k = 0; k < residues.size(); ++k) {
    const u64 m = basis.moduli_[k];
    x += basis.cofactors_[k] * raw::mul(residues[k], basis.cofactor_inverses_[k], m);
  }
  return x % basis.product_;
}

u64 crt_reduce(std::span<const u64> residues, const CrtBasis& basis, u64 m) {
  check_residues(residues, basis);
  if (m == 0) throw UsageError("reduction modulus must be positive");
  const auto& mods = basis.moduli_;
  // x = d_0 + d_1 m_0 + d_2 m_0 m_1 + ..., with 0 <= d_k < m_k.
  std::vector<u64> digits(residues.size());
  for (std::size_t k = 0; k < residues.size(); ++k) {
    const u64 mk = mods[k];
    u64 partial = 0;
    u64 radix = 1 % mk;
    for (std::size_t j = 0; j < k; ++j) {
      partial = raw::add(partial, raw::mul(digits[j] % mk, radix, mk), mk);
      radix = raw::mul(radix, mods[j] % mk, mk);
    }
    digits[k] = raw::mul(raw::sub(residues[k], partial, mk), basis.garner_inverses_[k], mk);
  }
  u64 result = 0;
  u64 radix = 1 % m;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    result = raw::add(result, raw::mul(digits[k] % m, radix, m), m);
    radix = raw::mul(radix, mods[k] % m, m);
  }
  return result;
}

}  // namespace polyxform
