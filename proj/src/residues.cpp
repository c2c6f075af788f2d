#include "polyxform/residues.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace polyxform {

RootSet sqrt_minus_one(PrimeModulus q) {
  const u64 m = q.value();
  if (m == 2) throw UsageError("sqrt_minus_one requires an odd prime");
  RootSet out{Residue(q, m - 1), {}};
  if (m % 4 != 1) return out;
  if (m < 10000) {
    for (u64 z = 1; z < m; ++z) {
      if (raw::mul(z, z, m) == m - 1) out.roots.emplace_back(q, z);
    }
    return out;
  }
  u64 g = 2;
  while (raw::pow(g, (m - 1) / 2, m) != m - 1) ++g;
  const u64 r = raw::pow(g, (m - 1) / 4, m);
  out.roots.emplace_back(q, std::min(r, m - r));
  out.roots.emplace_back(q, std::max(r, m - r));
  return out;
}

CubeTable::CubeTable(PrimeModulus q) : q_(q) {
  const u64 m = q.value();
  table_.reserve(m);
  for (u64 x = 0; x < m; ++x) table_.push_back(RootSet{Residue(q, x), {}});
  for (u64 r = 0; r < m; ++r) {
    const u64 square = raw::mul(r, r, m);
    const u64 cube = raw::mul(square, r, m);
    table_[cube].roots.emplace_back(q, r);  // r ascends, so each list is sorted
  }
}

const RootSet& CubeTable::operator[](const Residue& x) const {
  if (x.modulus() != q_) throw UsageError("cube table lookup with a different modulus");
  return table_[x.value()];
}

std::size_t CubeTable::nonzero_cube_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(table_.begin() + 1, table_.end(), [](const RootSet& s) { return !s.roots.empty(); }));
}

Residue cube_root_fermat(const Residue& x) {
  const u64 q = x.modulus().value();
  if (q % 3 != 2) throw UsageError("cube_root_fermat requires q = 2 (mod 3); got " + std::to_string(q));
  const Residue root = pow_mod(x, (2 * q - 1) / 3);
  if (pow_mod(root, 3) != x) throw Error("Fermat cube root failed its postcondition");
  return root;
}

bool is_cubic_residue(const Residue& x) {
  const u64 q = x.modulus().value();
  if (x.is_zero()) return true;
  if (q % 3 != 1) return true;
  return pow_mod(x, (q - 1) / 3).value() == 1;
}

NoncubeSearch find_noncube_search(PrimeModulus p, u64 rng_seed) {
  const u64 m = p.value();
  if (m % 3 != 1) {
    throw NoncubeImpossible("every residue modulo " + std::to_string(m) + " is a cube");
  }
  u64 attempts = 0;
  if (rng_seed == 0) {
    for (u64 c = 2; c < m; ++c) {
      ++attempts;
      if (!is_cubic_residue(Residue(p, c))) return {Residue(p, c), attempts};
    }
  } else {
    std::mt19937_64 rng(rng_seed);
    std::uniform_int_distribution<u64> pick(2, m - 1);
    for (;;) {
      ++attempts;
      const Residue c(p, pick(rng));
      if (!is_cubic_residue(c)) return {c, attempts};
    }
  }
  throw Error("no non-cube found modulo " + std::to_string(m));  // unreachable for p = 1 (mod 3)
}

RecoveryMatrix build_recovery(std::span<const Residue> roots) {
  if (roots.empty()) throw UsageError("recovery needs at least one root");
  const PrimeModulus q = roots.front().modulus();
  const std::size_t k = roots.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (roots[i].modulus() != q) throw UsageError("recovery roots use different moduli");
    if (roots[i].is_zero()) throw UsageError("recovery roots must be nonzero");
    for (std::size_t j = 0; j < i; ++j) {
      if (roots[i] == roots[j]) throw UsageError("recovery roots must be distinct");
    }
  }
  ModMatrix matrix(q, k, k);
  for (std::size_t j = 0; j < k; ++j) {
    u64 power = 1;
    for (std::size_t t = 0; t < k; ++t) {
      matrix.set(j, t, power);
      power = raw::mul(power, roots[j].value(), q.value());
    }
  }
  ModMatrix inverse = inverse_mod(matrix);
  return RecoveryMatrix{std::vector<Residue>(roots.begin(), roots.end()), std::move(matrix), std::move(inverse)};
}

std::vector<Residue> recover_components(std::span<const Residue> evals, const RecoveryMatrix& rm) {
  if (evals.size() != rm.dimension()) throw UsageError("evaluation count does not match recovery dimension");
  return rm.inverse.apply(evals);
}

u64 evaluate_components(std::span<const u64> components, u64 r, u64 q) noexcept {
  u64 acc = 0;
  for (auto it = components.rbegin(); it != components.rend(); ++it) {
    acc = raw::add(raw::mul(acc, r, q), *it % q, q);
  }
  return acc;
}

}  // namespace polyxform
