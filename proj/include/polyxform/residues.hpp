#pragma once

/**
 * @file residues.hpp
 * @brief Square roots of -1, cube roots, non-cubes, and recovery of
 *        polynomial components from their values at roots.
 *
 * The recovery step is the core trick of the transform: a value
 * c0 + c1 t + c2 t^2 that lives in an extension is evaluated at every root
 * of the defining polynomial modulo a smaller prime, and the resulting
 * Vandermonde system is solved to read the components back out.
 */

#include <span>
#include <vector>

#include "polyxform/linalg.hpp"
#include "polyxform/modular.hpp"

namespace polyxform {

// Roots of a fixed equation (r^2 = -1 or r^3 = x), ascending.
struct RootSet {
  Residue x;
  std::vector<Residue> roots;
};

// Empty for q = 3 (mod 4). Exhaustive scan below 10^4, otherwise g^((q-1)/4)
// for a quadratic non-residue g. Throws UsageError for q = 2.
RootSet sqrt_minus_one(PrimeModulus q);

// Entry x holds every cube root of x (mod q), found by cubing all of
// 0..q-1 at two multiplications apiece.
class CubeTable {
 public:
  explicit CubeTable(PrimeModulus q);

  PrimeModulus modulus() const noexcept { return q_; }
  const RootSet& roots_of(u64 x) const { return table_.at(x % q_.value()); }
  const RootSet& operator[](const Residue& x) const;
  std::size_t size() const noexcept { return table_.size(); }
  // Number of nonzero x that have at least one cube root.
  std::size_t nonzero_cube_count() const noexcept;

 private:
  PrimeModulus q_;
  std::vector<RootSet> table_;
};

inline CubeTable cube_table(PrimeModulus q) { return CubeTable(q); }

// x^((2q - 1) / 3): the unique cube root when q = 2 (mod 3). Throws
// UsageError otherwise.
Residue cube_root_fermat(const Residue& x);

// Exponent test: x is a nonzero cube iff x^((p-1)/3) = 1. Only meaningful
// for p = 1 (mod 3).
bool is_cubic_residue(const Residue& x);

struct NoncubeSearch {
  Residue y;
  u64 attempts;  // candidates examined, including the accepted one
};

// A non-cube modulo p. Seed 0 scans 2, 3, 4, ...; any other seed draws
// candidates uniformly from [2, p-1]. Throws NoncubeImpossible unless
// p = 1 (mod 3).
NoncubeSearch find_noncube_search(PrimeModulus p, u64 rng_seed = 0);
inline Residue find_noncube(PrimeModulus p, u64 rng_seed = 0) { return find_noncube_search(p, rng_seed).y; }

struct RecoveryMatrix {
  std::vector<Residue> roots;
  ModMatrix matrix;   // row j = (1, r_j, r_j^2, ...)
  ModMatrix inverse;

  std::size_t dimension() const noexcept { return roots.size(); }
};

// Throws UsageError for repeated, zero, or mixed-modulus roots and Singular
// if elimination fails.
RecoveryMatrix build_recovery(std::span<const Residue> roots);

// Components c with sum_t c_t r_j^t = evals[j] for every root.
std::vector<Residue> recover_components(std::span<const Residue> evals, const RecoveryMatrix& rm);

// Horner evaluation of c0 + c1 r + c2 r^2 + ... modulo q.
u64 evaluate_components(std::span<const u64> components, u64 r, u64 q) noexcept;

}  // namespace polyxform
