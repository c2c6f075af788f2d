#include "polyxform/circulant.hpp"

#include <random>
#include <string>

#include "polyxform/dft.hpp"
#include "polyxform/parallel.hpp"

namespace polyxform {

ModMatrix materialize(const CirculantSpec& spec, PrimeModulus q) {
  const std::size_t t = spec.dimension();
  ModMatrix m(q, t, t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) m.set(i, j, spec.coeffs[(j + t - i) % t]);
  }
  return m;
}

Residue circulant_det_formula(const CirculantSpec& spec, PrimeModulus q) {
  const std::size_t t = spec.dimension();
  if (t == 0) throw UsageError("circulant needs at least one coefficient");
  const Residue w = find_root_of_order(t, q);
  Residue det(q, 1);
  Residue wj(q, 1);  // w^j
  for (std::size_t j = 0; j < t; ++j) {
    Residue eigen(q, 0);
    Residue wjl(q, 1);  // w^(jl)
    for (std::size_t l = 0; l < t; ++l) {
      eigen = eigen + Residue(q, spec.coeffs[l]) * wjl;
      wjl = wjl * wj;
    }
    det = det * eigen;
    wj = wj * w;
  }
  return det;
}

namespace {

constexpr std::size_t kBlocks = 64;

}  // namespace

SingularityMeasurement singularity_experiment(PrimeModulus q, u64 trials, u64 seed, std::size_t dimension) {
  if (trials == 0) throw UsageError("singularity experiment needs at least one trial");
  if (dimension == 0) throw UsageError("circulant dimension must be positive");
  std::vector<u64> singular_per_block(kBlocks, 0);
  parallel_for(kBlocks, [&](std::size_t block) {
    const u64 share = trials / kBlocks + (block < trials % kBlocks ? 1 : 0);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<u64> coeff(0, q.value() - 1);
    CirculantSpec spec{std::vector<u64>(dimension)};
    u64 singular = 0;
    for (u64 i = 0; i < share; ++i) {
      for (auto& c : spec.coeffs) c = coeff(rng);
      if (determinant_mod(materialize(spec, q)).is_zero()) ++singular;
    }
    singular_per_block[block] = singular;
  });
  SingularityMeasurement m{q.value(), dimension, trials, 0, false};
  for (u64 s : singular_per_block) m.singular += s;
  return m;
}

SingularityMeasurement singularity_exhaustive(PrimeModulus q, std::size_t dimension) {
  if (dimension == 0) throw UsageError("circulant dimension must be positive");
  u64 total = 1;
  for (std::size_t i = 0; i < dimension; ++i) {
    if (total > (1ULL << 32) / q.value()) throw UsageError("exhaustive enumeration is too large");
    total *= q.value();
  }
  SingularityMeasurement m{q.value(), dimension, total, 0, true};
  CirculantSpec spec{std::vector<u64>(dimension, 0)};
  for (u64 code = 0; code < total; ++code) {
    u64 rest = code;
    for (auto& c : spec.coeffs) {
      c = rest % q.value();
      rest /= q.value();
    }
    if (determinant_mod(materialize(spec, q)).is_zero()) ++m.singular;
  }
  return m;
}

}  // namespace polyxform
