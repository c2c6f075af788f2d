#pragma once

/**
 * @file transform.hpp
 * @brief The polynomial transform pipeline and its oracle comparison.
 *
 * For every slot of a plan the input is folded modulo the slot period,
 * evaluated with a short DFT at each of the three reduced omegas, and the
 * three evaluations at each index are turned back into components by the
 * slot's recovery matrix. Output j then takes index (j mod period_k) from
 * slot k, CRT-combines the slots and reduces modulo p.
 *
 * Whether that reproduces sum_k x[k] omega^(jk) over F_{p^3} is not assumed
 * anywhere: spot_check compares the two and reports what it finds.
 */

#include <array>
#include <span>
#include <vector>

#include "polyxform/plan.hpp"

namespace polyxform {

// Exact fold sums reduced modulo the slot prime: entry t collects every
// x[k] with k = t (mod period). Input length must equal plan n.
std::vector<Residue> fold_coefficients(std::span<const u64> x, const PTPrimeSlot& slot);

struct TransformStats {
  u64 fold_additions = 0;
  u64 dft_multiplications = 0;
  u64 recovery_multiplications = 0;
  u64 crt_combinations = 0;  // one per (output, component)
};

// Per-slot spectra for one input; individual outputs are assembled on demand.
// Holds a reference to the plan, which must outlive it.
class PTEvaluation {
 public:
  // Throws UsageError for a wrong input length and PlanNotCertified when an
  // input exceeds the plan's coefficient bound.
  PTEvaluation(const PTPlan& plan, std::span<const u64> x, std::size_t workers = 0);

  ExtensionElement value_at(u64 index);
  std::vector<ExtensionElement> all();

  // Recovered components for slot k at index j < period_k.
  const std::array<u64, 3>& components(std::size_t slot, u64 j) const { return spectra_[slot][j]; }
  const TransformStats& stats() const noexcept { return stats_; }

 private:
  const PTPlan& plan_;
  std::vector<std::vector<std::array<u64, 3>>> spectra_;
  TransformStats stats_;
};

std::vector<ExtensionElement> transform(std::span<const u64> x, const PTPlan& plan, std::size_t workers = 0);

// The pipeline extended linearly to inputs with three components:
// sum_t t^t * transform(component_t).
std::vector<ExtensionElement> transform_components(std::span<const ExtensionElement> x, const PTPlan& plan,
                                                   std::size_t workers = 0);

// n^-1 * transform_components under a plan whose omega is inverted (see
// invert_plan).
std::vector<ExtensionElement> inverse_transform(std::span<const ExtensionElement> spectrum, const PTPlan& inverse_plan,
                                                std::size_t workers = 0);

// sum_k x[k] omega^(index k) computed directly in F_{p^3}; O(n).
ExtensionElement oracle_value(std::span<const u64> x, const PTPlan& plan, u64 index);

struct SampleVerdict {
  u64 index = 0;
  std::array<u64, 3> pipeline{};
  std::array<u64, 3> oracle{};
  bool match = false;
};

struct TransformReport {
  u64 p = 0;
  u64 n = 0;
  u64 seed = 0;
  u64 requested_sample = 0;
  std::vector<SampleVerdict> samples;  // ascending index
  u64 matches = 0;
  u64 mismatches = 0;
  TransformStats stats;

  bool all_match() const noexcept { return mismatches == 0 && !samples.empty(); }
};

// Compares pipeline and oracle at `sample` distinct indices drawn with the
// seed (every index when sample >= n). Deterministic for a fixed seed.
TransformReport spot_check(std::span<const u64> x, const PTPlan& plan, u64 sample, u64 seed, std::size_t workers = 0);

// The sorted distinct indices spot_check would use.
std::vector<u64> sample_indices(u64 n, u64 sample, u64 seed);

}  // namespace polyxform
