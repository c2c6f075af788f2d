#pragma once

#include <span>
#include <vector>

#include "polyxform/modular.hpp"

namespace polyxform {

// Pairwise-coprime moduli with their exact product.
class CrtBasis {
 public:
  // Throws UsageError if a modulus is < 2 or two moduli share a factor.
  explicit CrtBasis(std::vector<u64> moduli);

  const std::vector<u64>& moduli() const noexcept { return moduli_; }
  const Natural& product() const noexcept { return product_; }
  std::size_t size() const noexcept { return moduli_.size(); }

 private:
  friend Natural crt_reconstruct(std::span<const u64>, const CrtBasis&);
  friend u64 crt_reduce(std::span<const u64>, const CrtBasis&, u64);

  std::vector<u64> moduli_;
  Natural product_;
  // (Q / m_k) and its inverse modulo m_k.
  std::vector<Natural> cofactors_;
  std::vector<u64> cofactor_inverses_;
  // Garner constants: inverse of m_0 * ... * m_{k-1} modulo m_k.
  std::vector<u64> garner_inverses_;
};

// The unique x in [0, Q) with x = residues[k] (mod moduli[k]).
Natural crt_reconstruct(std::span<const u64> residues, const CrtBasis& basis);

// The same x reduced modulo m, computed through mixed-radix (Garner) digits
// in word arithmetic; never forms x itself.
u64 crt_reduce(std::span<const u64> residues, const CrtBasis& basis, u64 m);

}  // namespace polyxform
