#pragma once

/**
 * @file plan.hpp
 * @brief Preprocessing for the polynomial transform.
 *
 * A plan fixes a prime p = 1 (mod 3), a non-cube y so that
 * F = F_p[t]/(t^3 - y) is the field of p^3 elements, a generator omega of
 * F* (transform length n = p^3 - 1), and a set of auxiliary primes q_k.
 * Modulo each q_k the cube roots of y exist, so omega "reduces" to an
 * ordinary residue at each root; each such slot is later used to evaluate
 * the transform with a short DFT.
 *
 * Auxiliary primes are drawn from below p first (largest first) and then
 * from above p, up to a supply limit (p^2 unless overridden), until their
 * product exceeds the bound required by the plan's mode:
 *
 *   strict-9p6    product > 9 p^6
 *   input-aware   product > n * B * (p - 1), B the declared input bound
 */

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polyxform/crt.hpp"
#include "polyxform/dft.hpp"
#include "polyxform/extension.hpp"
#include "polyxform/residues.hpp"

namespace polyxform {

enum class BoundMode { strict_9p6, input_aware };

std::string_view to_string(BoundMode mode) noexcept;
// Accepts "strict", "strict-9p6" and "input-aware".
BoundMode parse_bound_mode(std::string_view text);

struct PTPrimeSlot {
  PrimeModulus q;
  std::array<Residue, 3> roots;           // cube roots of y modulo q, ascending
  std::array<Residue, 3> reduced_omegas;  // a0 + a1 r + a2 r^2 at each root
  std::array<u64, 3> orders;              // multiplicative order of each reduced omega
  u64 period;                             // lcm of the orders; the folding period
  RecoveryMatrix recovery;
};

struct PlanOptions {
  BoundMode bound_mode = BoundMode::strict_9p6;
  // Largest input coefficient the plan must handle. 0 selects p - 1, which
  // is also the only value strict mode accepts.
  u64 coeff_bound = 0;
  // Seed for the non-cube search (0: deterministic scan from 2).
  u64 seed = 0;
  // Auxiliary primes are taken strictly below this; 0 selects p^2.
  u64 supply_limit = 0;
};

// Why candidate primes were passed over during selection.
struct SelectionStats {
  u64 examined = 0;
  u64 wrong_congruence = 0;   // q != 1 (mod 3)
  u64 y_not_cube = 0;         // y has no three distinct nonzero cube roots
  u64 omega_vanishes = 0;     // omega reduces to zero at some root
  u64 singular_recovery = 0;
};

struct PTPlan {
  CubicExtension field;
  Residue y;
  u64 n;
  ExtensionElement omega;
  BoundMode bound_mode;
  u64 coeff_bound;
  u64 supply_limit;
  u64 seed;
  std::vector<PTPrimeSlot> slots;
  CrtBasis basis;
  Natural target;  // the product of the q_k must exceed this
  SelectionStats selection;

  PrimeModulus p() const noexcept { return field.p(); }
  const Natural& modulus_product() const noexcept { return basis.product(); }
};

Natural strict_bound(u64 p);  // 9 p^6

// Worst-case magnitudes along the pipeline for inputs in [0, coeff_bound].
struct ValueBoundReport {
  u64 coeff_bound = 0;
  Natural fold_max;       // largest exact fold sum before reduction
  Natural component_max;  // largest integer any output component can take
  Natural crt_capacity;   // product of the q_k
  Natural strict_bound;   // 9 p^6, for comparison
  bool fold_fits_word = false;
  bool certified = false;
  bool strict_dominates = false;  // 9 p^6 >= component_max
};

ValueBoundReport describe_value_bound(const PTPlan& plan, u64 coeff_bound);

// component_max from describe_value_bound, or PlanNotCertified naming the
// failing stage ("fold" or "crt").
Natural certify_value_bound(const PTPlan& plan, u64 coeff_bound);

// p = smallest prime >= doubling_estimate(n_target) with p = 1 (mod 3).
PTPlan preprocess(u64 n_target, const PlanOptions& options);

// Throws UsageError unless p = 1 (mod 3); PrimeSupplyExhausted when the
// bound cannot be met from the supply.
PTPlan preprocess_for_prime(PrimeModulus p, const PlanOptions& options);

// Same field and options, omega replaced by its inverse, slots re-selected.
PTPlan invert_plan(const PTPlan& plan);

// Slot for q, or nullopt when q fails a slot invariant.
std::optional<PTPrimeSlot> try_build_slot(PrimeModulus q, const ExtensionElement& omega, SelectionStats* stats = nullptr);

// Every plan invariant that does not hold, as readable messages.
std::vector<std::string> plan_violations(const PTPlan& plan);

inline constexpr int kPlanFormatVersion = 1;

nlohmann::json plan_to_json(const PTPlan& plan);
// Rebuilds and re-verifies the plan; SchemaError on any inconsistency.
PTPlan plan_from_json(const nlohmann::json& doc);

}  // namespace polyxform
