#pragma once

#include <vector>

#include "polyxform/linalg.hpp"
#include "polyxform/modular.hpp"

namespace polyxform {

// First row of a t x t circulant; row i is the first row rotated right by i,
// so entry (i, j) is coeffs[(j - i) mod t].
struct CirculantSpec {
  std::vector<u64> coeffs;

  std::size_t dimension() const noexcept { return coeffs.size(); }
};

ModMatrix materialize(const CirculantSpec& spec, PrimeModulus q);

// prod_{j<t} sum_{l<t} c_l w^(jl) with w the smallest element of order t
// modulo q. Throws NoSuchRoot unless t divides q - 1.
Residue circulant_det_formula(const CirculantSpec& spec, PrimeModulus q);

struct SingularityMeasurement {
  u64 q = 0;
  std::size_t dimension = 0;
  u64 trials = 0;
  u64 singular = 0;
  bool exhaustive = false;

  double fraction() const noexcept { return trials == 0 ? 0.0 : static_cast<double>(singular) / trials; }
  double reference_one_over_q() const noexcept { return 1.0 / static_cast<double>(q); }
};

// Fraction of uniformly random circulants whose elimination determinant is
// zero. Trials are split into fixed blocks with their own generators, so the
// result does not depend on the number of worker threads. trials == 0 is a
// UsageError.
SingularityMeasurement singularity_experiment(PrimeModulus q, u64 trials, u64 seed, std::size_t dimension = 3);

// Every coefficient vector in [0, q)^dimension; q^dimension must be modest.
SingularityMeasurement singularity_exhaustive(PrimeModulus q, std::size_t dimension = 3);

}  // namespace polyxform
