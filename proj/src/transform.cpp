#include "polyxform/transform.hpp"

#include <random>
#include <set>
#include <string>

#include "polyxform/parallel.hpp"

namespace polyxform {

namespace {

void check_input(std::span<const u64> x, const PTPlan& plan) {
  if (x.size() != plan.n) {
    throw UsageError("input length " + std::to_string(x.size()) + " does not match transform length " +
                     std::to_string(plan.n));
  }
  for (u64 v : x) {
    if (v > plan.coeff_bound) {
      throw PlanNotCertified("input", "coefficient " + std::to_string(v) + " exceeds the plan bound " +
                                          std::to_string(plan.coeff_bound));
    }
  }
}

}  // namespace

std::vector<Residue> fold_coefficients(std::span<const u64> x, const PTPrimeSlot& slot) {
  std::vector<u64> sums(slot.period, 0);
  u64 t = 0;
  for (u64 v : x) {
    const u64 before = sums[t];
    sums[t] += v;
    if (sums[t] < before) throw PlanNotCertified("fold", "fold sum overflowed 64 bits");
    if (++t == slot.period) t = 0;
  }
  std::vector<Residue> folded;
  folded.reserve(sums.size());
  for (u64 s : sums) folded.emplace_back(slot.q, s);
  return folded;
}

PTEvaluation::PTEvaluation(const PTPlan& plan, std::span<const u64> x, std::size_t workers)
    : plan_(plan), spectra_(plan.slots.size()) {
  check_input(x, plan);
  const std::size_t slots = plan.slots.size();
  std::vector<std::vector<Residue>> folded(slots);
  parallel_for(slots, [&](std::size_t k) { folded[k] = fold_coefficients(x, plan.slots[k]); }, workers);

  // One task per (slot, root).
  std::vector<std::vector<Residue>> evals(slots * 3);
  parallel_for(
      slots * 3,
      [&](std::size_t task) {
        const auto& slot = plan.slots[task / 3];
        const auto& f = folded[task / 3];
        evals[task] = vandermonde_eval(std::span<const Residue>(f), slot.reduced_omegas[task % 3], slot.period);
      },
      workers);

  parallel_for(
      slots,
      [&](std::size_t k) {
        const auto& slot = plan.slots[k];
        auto& out = spectra_[k];
        out.resize(slot.period);
        for (u64 j = 0; j < slot.period; ++j) {
          const std::array<Residue, 3> at_roots{evals[3 * k][j], evals[3 * k + 1][j], evals[3 * k + 2][j]};
          const auto c = recover_components(at_roots, slot.recovery);
          out[j] = {c[0].value(), c[1].value(), c[2].value()};
        }
      },
      workers);

  for (const auto& slot : plan.slots) {
    stats_.fold_additions += plan.n;
    stats_.dft_multiplications += 3 * slot.period * slot.period;
    stats_.recovery_multiplications += 9 * slot.period;
  }
}

ExtensionElement PTEvaluation::value_at(u64 index) {
  if (index >= plan_.n) throw UsageError("output index out of range");
  const u64 p = plan_.p().value();
  std::vector<u64> residues(plan_.slots.size());
  std::array<u64, 3> out{};
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t k = 0; k < plan_.slots.size(); ++k) {
      residues[k] = spectra_[k][index % plan_.slots[k].period][t];
    }
    out[t] = crt_reduce(residues, plan_.basis, p);
    ++stats_.crt_combinations;
  }
  return ExtensionElement(plan_.field, out);
}

std::vector<ExtensionElement> PTEvaluation::all() {
  std::vector<ExtensionElement> out;
  out.reserve(plan_.n);
  for (u64 j = 0; j < plan_.n; ++j) out.push_back(value_at(j));
  return out;
}

std::vector<ExtensionElement> transform(std::span<const u64> x, const PTPlan& plan, std::size_t workers) {
  PTEvaluation eval(plan, x, workers);
  return eval.all();
}

std::vector<ExtensionElement> transform_components(std::span<const ExtensionElement> x, const PTPlan& plan,
                                                   std::size_t workers) {
  if (x.size() != plan.n) throw UsageError("input length does not match transform length");
  std::vector<ExtensionElement> out(plan.n, ExtensionElement::zero(plan.field));
  ExtensionElement t_power = ExtensionElement::one(plan.field);
  const ExtensionElement t = ExtensionElement::generator_t(plan.field);
  std::vector<u64> component(plan.n);
  for (std::size_t c = 0; c < 3; ++c) {
    for (u64 k = 0; k < plan.n; ++k) component[k] = x[k][c];
    const auto partial = transform(component, plan, workers);
    for (u64 j = 0; j < plan.n; ++j) out[j] = out[j] + t_power * partial[j];
    t_power = t_power * t;
  }
  return out;
}

std::vector<ExtensionElement> inverse_transform(std::span<const ExtensionElement> spectrum, const PTPlan& inverse_plan,
                                                std::size_t workers) {
  auto out = transform_components(spectrum, inverse_plan, workers);
  const u64 p = inverse_plan.p().value();
  const u64 n_inv = raw::inv(inverse_plan.n % p, p);
  for (auto& v : out) v = ext_scale(v, n_inv);
  return out;
}

ExtensionElement oracle_value(std::span<const u64> x, const PTPlan& plan, u64 index) {
  if (x.size() != plan.n) throw UsageError("input length does not match transform length");
  const ExtensionElement step = ext_pow(plan.omega, index);
  ExtensionElement acc = ExtensionElement::zero(plan.field);
  ExtensionElement cur = ExtensionElement::one(plan.field);
  for (u64 v : x) {
    if (v != 0) acc = acc + ext_scale(cur, v);
    cur = cur * step;
  }
  return acc;
}

std::vector<u64> sample_indices(u64 n, u64 sample, u64 seed) {
  std::vector<u64> out;
  if (sample >= n) {
    out.resize(n);
    for (u64 i = 0; i < n; ++i) out[i] = i;
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> pick(0, n - 1);
  std::set<u64> chosen;
  while (chosen.size() < sample) chosen.insert(pick(rng));
  return {chosen.begin(), chosen.end()};
}

TransformReport spot_check(std::span<const u64> x, const PTPlan& plan, u64 sample, u64 seed, std::size_t workers) {
  if (sample == 0) throw UsageError("spot_check needs at least one sample");
  TransformReport report;
  report.p = plan.p().value();
  report.n = plan.n;
  report.seed = seed;
  report.requested_sample = sample;
  PTEvaluation eval(plan, x, workers);
  for (u64 index : sample_indices(plan.n, sample, seed)) {
    SampleVerdict v;
    v.index = index;
    v.pipeline = eval.value_at(index).coefficients();
    v.oracle = oracle_value(x, plan, index).coefficients();
    v.match = v.pipeline == v.oracle;
    (v.match ? report.matches : report.mismatches) += 1;
    report.samples.push_back(v);
  }
  report.stats = eval.stats();
  return report;
}

}  // namespace polyxform
