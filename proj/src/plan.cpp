#include "polyxform/plan.hpp"

#include <algorithm>
#include <numeric>
#include <limits>
#include <sstream>

#include "polyxform/primes.hpp"

namespace polyxform {

std::string_view to_string(BoundMode mode) noexcept {
  return mode == BoundMode::strict_9p6 ? "strict-9p6" : "input-aware";
}

BoundMode parse_bound_mode(std::string_view text) {
  if (text == "strict" || text == "strict-9p6") return BoundMode::strict_9p6;
  if (text == "input-aware") return BoundMode::input_aware;
  throw UsageError("unknown bound mode '" + std::string(text) + "'");
}

Natural strict_bound(u64 p) {
  Natural p3 = Natural(p) * p * p;
  return 9 * p3 * p3;
}

namespace {

Natural component_bound(u64 p, u64 n, u64 coeff_bound) { return Natural(n) * coeff_bound * (p - 1); }

Natural target_for(BoundMode mode, u64 p, u64 n, u64 coeff_bound) {
  return mode == BoundMode::strict_9p6 ? strict_bound(p) : component_bound(p, n, coeff_bound);
}

u64 resolve_coeff_bound(BoundMode mode, u64 p, u64 requested) {
  if (mode == BoundMode::strict_9p6) {
    if (requested != 0 && requested != p - 1) {
      throw UsageError("strict mode fixes the coefficient bound at p - 1");
    }
    return p - 1;
  }
  return requested == 0 ? p - 1 : requested;
}

u64 resolve_supply_limit(u64 p, u64 requested) { return requested == 0 ? p * p : requested; }

std::string to_decimal(const Natural& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Candidates below p (largest first), then above p (smallest first).
std::vector<PTPrimeSlot> select_slots(const ExtensionElement& omega, const Natural& target, u64 supply_limit,
                                      SelectionStats& stats) {
  const u64 p = omega.p();
  std::vector<PTPrimeSlot> slots;
  Natural product = 1;
  auto done = [&] { return !slots.empty() && product > target; };
  auto consider = [&](u64 q) {
    if (auto slot = try_build_slot(PrimeModulus(q), omega, &stats)) {
      product *= q;
      slots.push_back(std::move(*slot));
    }
  };
  for (PrimeModulus q : descending_primes(std::min(p, supply_limit))) {
    if (done()) break;
    consider(q.value());
  }
  for (u64 q = p + 1; q < supply_limit && !done(); ++q) {
    if (is_prime(q)) consider(q);
  }
  if (!done()) throw PrimeSupplyExhausted(to_decimal(product), to_decimal(target));
  return slots;
}

PTPlan assemble(const CubicExtension& field, const ExtensionElement& omega, BoundMode mode, u64 coeff_bound,
                u64 supply_limit, u64 seed) {
  const u64 p = field.p().value();
  const u64 n = field.unit_group_order();
  Natural target = target_for(mode, p, n, coeff_bound);
  SelectionStats stats;
  auto slots = select_slots(omega, target, supply_limit, stats);
  std::vector<u64> moduli;
  for (const auto& s : slots) moduli.push_back(s.q.value());
  PTPlan plan{field,     Residue(field.p(), field.y()), n,    omega,          mode,  coeff_bound, supply_limit, seed,
              std::move(slots), CrtBasis(std::move(moduli)), std::move(target), stats};
  if (mode == BoundMode::input_aware) certify_value_bound(plan, coeff_bound);
  return plan;
}

}  // namespace

std::optional<PTPrimeSlot> try_build_slot(PrimeModulus q, const ExtensionElement& omega, SelectionStats* stats) {
  SelectionStats scratch;
  SelectionStats& s = stats ? *stats : scratch;
  ++s.examined;
  const u64 m = q.value();
  if (m % 3 != 1 || m == omega.p()) {
    ++s.wrong_congruence;
    return std::nullopt;
  }
  const u64 y = omega.y() % m;
  if (y == 0) {
    ++s.y_not_cube;
    return std::nullopt;
  }
  const CubeTable table(q);
  const auto& roots = table.roots_of(y).roots;
  if (roots.size() != 3) {
    ++s.y_not_cube;
    return std::nullopt;
  }
  const auto& a = omega.coefficients();
  std::array<Residue, 3> reduced{roots[0], roots[1], roots[2]};
  std::array<u64, 3> orders{};
  u64 period = 1;
  for (std::size_t i = 0; i < 3; ++i) {
    reduced[i] = Residue(q, evaluate_components(a, roots[i].value(), m));
    if (reduced[i].is_zero()) {
      ++s.omega_vanishes;
      return std::nullopt;
    }
    orders[i] = multiplicative_order(reduced[i]);
    period = std::lcm(period, orders[i]);
  }
  try {
    RecoveryMatrix recovery = build_recovery(roots);
    return PTPrimeSlot{q, {roots[0], roots[1], roots[2]}, reduced, orders, period, std::move(recovery)};
  } catch (const Singular&) {
    ++s.singular_recovery;
    return std::nullopt;
  }
}

ValueBoundReport describe_value_bound(const PTPlan& plan, u64 coeff_bound) {
  ValueBoundReport r;
  const u64 p = plan.p().value();
  r.coeff_bound = coeff_bound;
  u64 min_period = plan.n;
  for (const auto& s : plan.slots) min_period = std::min(min_period, s.period);
  const u64 per_residue_class = (plan.n + min_period - 1) / min_period;
  r.fold_max = Natural(per_residue_class) * coeff_bound;
  r.component_max = component_bound(p, plan.n, coeff_bound);
  r.crt_capacity = plan.modulus_product();
  r.strict_bound = strict_bound(p);
  r.fold_fits_word = r.fold_max <= Natural(std::numeric_limits<u64>::max());
  r.certified = r.fold_fits_word && r.component_max < r.crt_capacity;
  r.strict_dominates = r.strict_bound >= r.component_max;
  return r;
}

Natural certify_value_bound(const PTPlan& plan, u64 coeff_bound) {
  auto r = describe_value_bound(plan, coeff_bound);
  if (!r.fold_fits_word) {
    throw PlanNotCertified("fold", "fold sums up to " + to_decimal(r.fold_max) + " exceed a 64-bit accumulator");
  }
  if (r.component_max >= r.crt_capacity) {
    throw PlanNotCertified("crt", "components up to " + to_decimal(r.component_max) +
                                      " do not fit below the modulus product " + to_decimal(r.crt_capacity));
  }
  return std::move(r.component_max);
}

PTPlan preprocess(u64 n_target, const PlanOptions& options) {
  if (n_target < 2) throw UsageError("n_target must be at least 2");
  u64 candidate = std::max<u64>(doubling_estimate(n_target), 2);
  for (;;) {
    const PrimeModulus p = next_prime_at_or_above(candidate);
    if (p.value() % 3 == 1) return preprocess_for_prime(p, options);
    candidate = p.value() + 1;
  }
}

PTPlan preprocess_for_prime(PrimeModulus p, const PlanOptions& options) {
  const u64 pv = p.value();
  if (pv % 3 != 1) throw UsageError("the plan prime must be 1 (mod 3); got " + std::to_string(pv));
  const Residue y = find_noncube(p, options.seed);
  const CubicExtension field(p, y.value());
  const ExtensionElement omega = find_root_of_order(field.unit_group_order(), field);
  return assemble(field, omega, options.bound_mode, resolve_coeff_bound(options.bound_mode, pv, options.coeff_bound),
                  resolve_supply_limit(pv, options.supply_limit), options.seed);
}

PTPlan invert_plan(const PTPlan& plan) {
  return assemble(plan.field, ext_inv(plan.omega), plan.bound_mode, plan.coeff_bound, plan.supply_limit, plan.seed);
}

std::vector<std::string> plan_violations(const PTPlan& plan) {
  std::vector<std::string> out;
  const u64 p = plan.p().value();
  if (p % 3 != 1) out.push_back("p is not 1 (mod 3)");
  if (!plan.field.is_field()) out.push_back("y is a cube modulo p");
  if (plan.y.value() != plan.field.y()) out.push_back("y disagrees with the field");
  if (plan.n != plan.field.unit_group_order()) out.push_back("n is not p^3 - 1");
  if (!plan.omega.same_ring(ExtensionElement::one(plan.field))) {
    out.push_back("omega lives in a different ring");
    return out;
  }
  if (plan.omega.is_zero() || multiplicative_order(plan.omega, plan.field) != plan.n) {
    out.push_back("omega does not have order n");
  } else if (!check_principal_root(plan.omega, plan.n).passed()) {
    out.push_back("omega fails the principal-root check");
  }
  if (plan.slots.empty()) out.push_back("plan has no slots");
  if (!(plan.modulus_product() > plan.target)) out.push_back("modulus product does not exceed the target bound");
  if (plan.target != target_for(plan.bound_mode, p, plan.n, plan.coeff_bound)) out.push_back("target bound is stale");
  if (plan.basis.size() != plan.slots.size()) out.push_back("CRT basis does not match the slots");

  for (std::size_t k = 0; k < plan.slots.size(); ++k) {
    const auto& s = plan.slots[k];
    const std::string where = "slot q=" + std::to_string(s.q.value()) + ": ";
    const u64 q = s.q.value();
    if (k < plan.basis.size() && plan.basis.moduli()[k] != q) out.push_back(where + "CRT modulus out of order");
    if (q % 3 != 1) out.push_back(where + "q is not 1 (mod 3)");
    if (q == p) out.push_back(where + "q equals p");
    u64 lcm = 1;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& r = s.roots[i];
      if (r.modulus() != s.q) out.push_back(where + "root has wrong modulus");
      if (raw::pow(r.value(), 3, q) != plan.field.y() % q) out.push_back(where + "root is not a cube root of y");
      if (i > 0 && !(s.roots[i - 1].value() < r.value())) out.push_back(where + "roots not strictly ascending");
      const u64 expected = evaluate_components(plan.omega.coefficients(), r.value(), q);
      if (s.reduced_omegas[i].value() != expected) out.push_back(where + "reduced omega mismatch");
      if (s.reduced_omegas[i].is_zero() || multiplicative_order(s.reduced_omegas[i]) != s.orders[i]) {
        out.push_back(where + "recorded order mismatch");
      }
      lcm = std::lcm(lcm, s.orders[i]);
    }
    if (s.period != lcm) out.push_back(where + "period is not the lcm of the orders");
    if (s.recovery.matrix * s.recovery.inverse != ModMatrix::identity(s.q, 3)) {
      out.push_back(where + "recovery inverse is wrong");
    }
  }
  if (plan.bound_mode == BoundMode::input_aware && !describe_value_bound(plan, plan.coeff_bound).certified) {
    out.push_back("input-aware plan is not certified for its coefficient bound");
  }
  return out;
}

}  // namespace polyxform
