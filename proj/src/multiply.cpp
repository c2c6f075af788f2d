#include "polyxform/multiply.hpp"

#include <algorithm>
#include <bit>

#include "polyxform/ntt.hpp"
#include "polyxform/transform.hpp"

namespace polyxform {

namespace {

using Limbs = std::vector<u64>;

struct LimbContext {
  unsigned bits;
  u64 mask;
  MulStats* stats;

  void count_mul(u64 k) const {
    if (stats) stats->limb_multiplications += k;
  }
  void count_add(u64 k) const {
    if (stats) stats->limb_additions += k;
  }
};

void trim(Limbs& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

Limbs school(std::span<const u64> a, std::span<const u64> b, const LimbContext& ctx) {
  if (a.empty() || b.empty()) return {};
  Limbs r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    u128 carry = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const u128 t = static_cast<u128>(a[i]) * b[j] + r[i + j] + carry;
      r[i + j] = static_cast<u64>(t) & ctx.mask;
      carry = t >> ctx.bits;
    }
    r[i + b.size()] = static_cast<u64>(carry);
  }
  ctx.count_mul(static_cast<u64>(a.size()) * b.size());
  ctx.count_add(static_cast<u64>(a.size()) * b.size());
  trim(r);
  return r;
}

Limbs add(std::span<const u64> a, std::span<const u64> b, const LimbContext& ctx) {
  const std::size_t len = std::max(a.size(), b.size());
  Limbs r(len + 1, 0);
  u64 carry = 0;
  for (std::size_t i = 0; i < len; ++i) {
    u128 t = carry;
    if (i < a.size()) t += a[i];
    if (i < b.size()) t += b[i];
    r[i] = static_cast<u64>(t) & ctx.mask;
    carry = static_cast<u64>(t >> ctx.bits);
  }
  r[len] = carry;
  ctx.count_add(len);
  trim(r);
  return r;
}

// a -= b, requires a >= b.
void sub_in_place(Limbs& a, std::span<const u64> b, const LimbContext& ctx) {
  const u128 base = static_cast<u128>(ctx.mask) + 1;
  u64 borrow = 0;
  for (std::size_t i = 0; i < a.size() && (i < b.size() || borrow); ++i) {
    const u128 t = static_cast<u128>(a[i]) + base - (i < b.size() ? b[i] : 0) - borrow;
    borrow = t < base ? 1 : 0;
    a[i] = static_cast<u64>(borrow ? t : t - base);
  }
  ctx.count_add(b.size());
  trim(a);
}

// acc += x << (shift limbs).
void add_shifted(Limbs& acc, std::span<const u64> x, std::size_t shift, const LimbContext& ctx) {
  if (x.empty()) return;
  if (acc.size() < shift + x.size() + 1) acc.resize(shift + x.size() + 1, 0);
  u64 carry = 0;
  std::size_t i = 0;
  for (; i < x.size() || carry; ++i) {
    if (shift + i >= acc.size()) acc.push_back(0);
    u128 t = static_cast<u128>(acc[shift + i]) + carry;
    if (i < x.size()) t += x[i];
    acc[shift + i] = static_cast<u64>(t) & ctx.mask;
    carry = static_cast<u64>(t >> ctx.bits);
  }
  ctx.count_add(i);
}

Limbs karatsuba(std::span<const u64> a, std::span<const u64> b, std::size_t threshold, const LimbContext& ctx) {
  if (a.empty() || b.empty()) return {};
  const std::size_t longest = std::max(a.size(), b.size());
  if (std::min(a.size(), b.size()) < threshold || longest < 4) return school(a, b, ctx);
  const std::size_t h = longest / 2;
  auto low = [h](std::span<const u64> v) {
    auto part = v.first(std::min(h, v.size()));
    while (!part.empty() && part.back() == 0) part = part.first(part.size() - 1);
    return part;
  };
  auto high = [h](std::span<const u64> v) { return v.size() > h ? v.subspan(h) : std::span<const u64>{}; };
  const auto a0 = low(a), a1 = high(a), b0 = low(b), b1 = high(b);
  const Limbs z0 = karatsuba(a0, b0, threshold, ctx);
  const Limbs z2 = karatsuba(a1, b1, threshold, ctx);
  const Limbs sa = add(a0, a1, ctx), sb = add(b0, b1, ctx);
  Limbs z1 = karatsuba(sa, sb, threshold, ctx);
  sub_in_place(z1, z0, ctx);
  sub_in_place(z1, z2, ctx);
  Limbs r(a.size() + b.size() + 1, 0);
  add_shifted(r, z0, 0, ctx);
  add_shifted(r, z1, h, ctx);
  add_shifted(r, z2, 2 * h, ctx);
  trim(r);
  return r;
}

LimbContext context_for(const BigNat& a, MulStats* stats) { return {a.limb_bits(), a.limb_mask(), stats}; }

u64 coefficients_for(u64 bits, unsigned limb_bits) {
  return std::max<u64>(1, (bits + limb_bits - 1) / limb_bits);
}

std::vector<ExtensionElement> lift(std::span<const u64> coeffs, const CubicExtension& field) {
  std::vector<ExtensionElement> out;
  out.reserve(coeffs.size());
  for (u64 c : coeffs) out.emplace_back(field, ExtensionElement::Coefficients{c, 0, 0});
  return out;
}

u64 pipeline_multiplications(const PTPlan& plan) {
  u64 total = 0;
  for (const auto& s : plan.slots) total += 3 * s.period * s.period + 9 * s.period;
  return total;
}

MulReport ntt_mul(const BigNat& a, const BigNat& b) {
  MulReport report;
  const Natural modulus(ntt::kModulus);
  const unsigned bits = choose_limb_bits(a.bit_length(), b.bit_length(), modulus, u64{1} << ntt::kMaxLog2);
  const u64 la = coefficients_for(a.bit_length(), bits), lb = coefficients_for(b.bit_length(), bits);
  const u64 terms = std::min(la, lb);
  const auto xa = pack(a, bits, la, modulus, terms);
  const auto xb = pack(b, bits, lb, modulus, terms);
  const auto conv = ntt::convolve(xa, xb, &report.stats.limb_multiplications);
  report.product = carry_propagate(conv, bits).rebase(a.limb_bits());
  report.limb_bits = bits;
  report.used_coefficients = la + lb - 1;
  report.transform_length = std::bit_ceil(report.used_coefficients);
  return report;
}

MulReport pt_mul(const BigNat& a, const BigNat& b, const MulBackend& backend) {
  if (!backend.forward_plan || (!backend.oracle_transform && !backend.inverse_plan)) {
    throw UsageError("the polynomial-transform backend needs a forward and an inverse plan");
  }
  const PTPlan& fwd = *backend.forward_plan;
  if (backend.inverse_plan && !(backend.inverse_plan->field == fwd.field &&
                                backend.inverse_plan->omega == ext_inv(fwd.omega))) {
    throw UsageError("inverse plan does not invert the forward plan");
  }
  const u64 p = fwd.p().value();
  const Natural modulus(p);

  MulReport report;
  // Largest limb width that certifies, keeps the product inside one period
  // and keeps packed coefficients within the plan's input bound.
  unsigned bits = 0;
  for (unsigned cand = 64; cand >= 1; --cand) {
    const u64 la = coefficients_for(a.bit_length(), cand), lb = coefficients_for(b.bit_length(), cand);
    const u64 top = cand == 64 ? ~u64{0} : (u64{1} << cand) - 1;
    if (la + lb - 1 <= fwd.n && top <= fwd.coeff_bound && packing_fits(cand, std::min(la, lb), modulus)) {
      bits = cand;
      break;
    }
  }
  if (bits == 0) {
    throw OverflowRisk("no limb width keeps the convolution below p = " + std::to_string(p) +
                       " for these operand sizes");
  }
  const u64 la = coefficients_for(a.bit_length(), bits), lb = coefficients_for(b.bit_length(), bits);
  const u64 terms = std::min(la, lb);
  const auto xa = pack(a, bits, fwd.n, modulus, terms);
  const auto xb = pack(b, bits, fwd.n, modulus, terms);

  std::vector<ExtensionElement> fa, fb;
  u64& muls = report.stats.limb_multiplications;
  if (backend.oracle_transform) {
    fa = naive_dft(lift(xa, fwd.field), fwd.omega);
    fb = naive_dft(lift(xb, fwd.field), fwd.omega);
    muls += 2 * fwd.n * fwd.n;
  } else {
    fa = transform(xa, fwd, backend.workers);
    fb = transform(xb, fwd, backend.workers);
    muls += 2 * pipeline_multiplications(fwd);
  }
  for (u64 j = 0; j < fwd.n; ++j) fa[j] = fa[j] * fb[j];
  muls += fwd.n;

  std::vector<ExtensionElement> out;
  if (backend.oracle_transform) {
    out = naive_inverse_dft(fa, fwd.omega);
    muls += fwd.n * fwd.n + fwd.n;
  } else {
    out = inverse_transform(fa, *backend.inverse_plan, backend.workers);
    muls += 3 * pipeline_multiplications(*backend.inverse_plan) + fwd.n;
  }

  std::vector<u64> coeffs(out.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    coeffs[k] = out[k][0];
    if (out[k][1] != 0 || out[k][2] != 0) ++report.stray_components;
  }
  report.product = carry_propagate(coeffs, bits).rebase(a.limb_bits());
  report.limb_bits = bits;
  report.used_coefficients = la + lb - 1;
  report.transform_length = fwd.n;
  return report;
}

}  // namespace

BigNat schoolbook_mul(const BigNat& a, const BigNat& b, MulStats* stats) {
  const BigNat rhs = b.rebase(a.limb_bits());
  return BigNat::from_limbs(school(a.limbs(), rhs.limbs(), context_for(a, stats)), a.limb_bits());
}

BigNat karatsuba_mul(const BigNat& a, const BigNat& b, std::size_t threshold, MulStats* stats) {
  if (threshold < 2) throw UsageError("karatsuba threshold must be at least 2 limbs");
  const BigNat rhs = b.rebase(a.limb_bits());
  return BigNat::from_limbs(karatsuba(a.limbs(), rhs.limbs(), threshold, context_for(a, stats)), a.limb_bits());
}

bool packing_fits(unsigned limb_bits, u64 terms, const Natural& modulus) {
  check_limb_bits(limb_bits);
  const Natural top = (Natural(1) << limb_bits) - 1;
  return Natural(terms) * top * top < modulus;
}

void certify_packing(unsigned limb_bits, u64 terms, const Natural& modulus) {
  if (!packing_fits(limb_bits, terms, modulus)) {
    throw OverflowRisk(std::to_string(terms) + " terms of " + std::to_string(limb_bits) +
                       "-bit limbs can reach the transform modulus");
  }
}

std::vector<u64> pack(const BigNat& a, unsigned limb_bits, std::size_t length, const Natural& modulus, u64 terms) {
  certify_packing(limb_bits, terms == 0 ? length : terms, modulus);
  auto coeffs = a.rebase(limb_bits).limbs();
  if (coeffs.size() > length) {
    throw UsageError("value needs " + std::to_string(coeffs.size()) + " coefficients but only " +
                     std::to_string(length) + " are available");
  }
  coeffs.resize(length, 0);
  return coeffs;
}

BigNat carry_propagate(std::span<const u64> coeffs, unsigned limb_bits) {
  check_limb_bits(limb_bits);
  const u64 mask = limb_bits == 64 ? ~u64{0} : (u64{1} << limb_bits) - 1;
  std::vector<u64> out;
  out.reserve(coeffs.size() + 3);
  u128 acc = 0;
  for (u64 c : coeffs) {
    acc += c;
    out.push_back(static_cast<u64>(acc) & mask);
    acc >>= limb_bits;
  }
  while (acc != 0) {
    out.push_back(static_cast<u64>(acc) & mask);
    acc >>= limb_bits;
  }
  return BigNat::from_limbs(std::move(out), limb_bits);
}

BigNat carry_propagate(std::span<const Natural> coeffs, unsigned limb_bits) {
  check_limb_bits(limb_bits);
  const Natural mask = (Natural(1) << limb_bits) - 1;
  std::vector<u64> out;
  Natural acc = 0;
  for (const auto& c : coeffs) {
    acc += c;
    out.push_back(static_cast<u64>(acc & mask));
    acc >>= limb_bits;
  }
  while (acc != 0) {
    out.push_back(static_cast<u64>(acc & mask));
    acc >>= limb_bits;
  }
  return BigNat::from_limbs(std::move(out), limb_bits);
}

unsigned choose_limb_bits(u64 a_bits, u64 b_bits, const Natural& modulus, u64 max_length) {
  for (unsigned bits = 64; bits >= 1; --bits) {
    const u64 la = coefficients_for(a_bits, bits), lb = coefficients_for(b_bits, bits);
    if (la + lb - 1 <= max_length && packing_fits(bits, std::min(la, lb), modulus)) return bits;
  }
  throw OverflowRisk("no limb width certifies against the transform modulus");
}

std::string_view to_string(MulBackendKind kind) noexcept {
  switch (kind) {
    case MulBackendKind::schoolbook: return "schoolbook";
    case MulBackendKind::karatsuba: return "karatsuba";
    case MulBackendKind::oracle_ntt: return "oracle-ntt";
    case MulBackendKind::polynomial_transform: return "polynomial-transform";
  }
  return "?";
}

MulBackendKind parse_backend(std::string_view text) {
  for (auto k : {MulBackendKind::schoolbook, MulBackendKind::karatsuba, MulBackendKind::oracle_ntt,
                 MulBackendKind::polynomial_transform}) {
    if (text == to_string(k)) return k;
  }
  if (text == "pt") return MulBackendKind::polynomial_transform;
  throw UsageError("unknown backend '" + std::string(text) + "'");
}

MulReport transform_mul(const BigNat& a, const BigNat& b, const MulBackend& backend) {
  MulReport report;
  switch (backend.kind) {
    case MulBackendKind::oracle_ntt: report = ntt_mul(a, b); break;
    case MulBackendKind::polynomial_transform: report = pt_mul(a, b, backend); break;
    default: throw UsageError("transform_mul needs a transform backend");
  }
  report.backend = backend.kind;
  report.utilization = static_cast<double>(report.used_coefficients) / static_cast<double>(report.transform_length);
  report.reference = schoolbook_mul(a, b);
  report.matches = report.product == report.reference;
  return report;
}

MulReport multiply(const BigNat& a, const BigNat& b, const MulBackend& backend) {
  if (backend.kind == MulBackendKind::oracle_ntt || backend.kind == MulBackendKind::polynomial_transform) {
    return transform_mul(a, b, backend);
  }
  MulReport report;
  report.backend = backend.kind;
  report.product = backend.kind == MulBackendKind::schoolbook
                       ? schoolbook_mul(a, b, &report.stats)
                       : karatsuba_mul(a, b, backend.karatsuba_threshold, &report.stats);
  report.reference = backend.kind == MulBackendKind::schoolbook ? report.product : schoolbook_mul(a, b);
  report.matches = report.product == report.reference;
  return report;
}

}  // namespace polyxform
