#include "polyxform/dft.hpp"

#include <numeric>
#include <optional>

namespace polyxform {

namespace {

// Smallest-index generator of a cyclic unit group, then the smallest-index
// element among its powers of exact order n.
template <class F, class ElementAt, class IndexOf>
F smallest_root_of_order(u64 n, u64 group_order, std::span<const u64> factors, ElementAt element_at, IndexOf index_of) {
  std::optional<F> generator;
  for (u64 idx = 1; idx <= group_order; ++idx) {
    F candidate = element_at(idx);
    if (candidate == zero_like(candidate)) continue;
    bool generates = true;
    for (u64 f : factors) {
      if (power(candidate, group_order / f) == one_like(candidate)) {
        generates = false;
        break;
      }
    }
    if (generates) {
      generator = candidate;
      break;
    }
  }
  if (!generator) throw NoSuchRoot("unit group has no generator");
  if (n == group_order) return *generator;

  // Elements of exact order n are root^k with gcd(k, n) = 1.
  const F root = power(*generator, group_order / n);
  F best = root;
  F cur = root;
  for (u64 k = 2; k <= n; ++k) {
    cur = cur * root;
    if (std::gcd(k, n) == 1 && index_of(cur) < index_of(best)) best = cur;
  }
  return best;
}

template <class F>
void validate_root(const F& root, u64 n) {
  if (!check_principal_root(root, n).passed()) throw Error("root of unity failed the principal-root check");
}

}  // namespace

u64 multiplicative_order(const Residue& e) {
  const u64 q = e.modulus().value();
  if (e.is_zero()) throw UsageError("zero has no multiplicative order");
  const auto factors = prime_factors(q - 1);
  return multiplicative_order(e, q - 1, std::span<const u64>(factors));
}

u64 multiplicative_order(const ExtensionElement& e, const CubicExtension& field) {
  if (!field.is_field()) throw UsageError("extension is not a field");
  if (e.is_zero()) throw UsageError("zero has no multiplicative order");
  return multiplicative_order(e, field.unit_group_order(), std::span<const u64>(field.unit_group_order_factors()));
}

Residue find_root_of_order(u64 n, PrimeModulus q) {
  const u64 group = q.value() - 1;
  if (n == 0 || group % n != 0) {
    throw NoSuchRoot("no element of order " + std::to_string(n) + " modulo " + std::to_string(q.value()));
  }
  const auto factors = prime_factors(group);
  Residue root = smallest_root_of_order<Residue>(
      n, group, factors, [q](u64 idx) { return Residue(q, idx); }, [](const Residue& r) { return r.value(); });
  validate_root(root, n);
  return root;
}

ExtensionElement find_root_of_order(u64 n, const CubicExtension& field) {
  if (!field.is_field()) throw UsageError("extension is not a field (y is a cube modulo p)");
  const u64 group = field.unit_group_order();
  if (n == 0 || group % n != 0) {
    throw NoSuchRoot("no element of order " + std::to_string(n) + " in the extension of " +
                     std::to_string(field.p().value()));
  }
  ExtensionElement root = smallest_root_of_order<ExtensionElement>(
      n, group, field.unit_group_order_factors(),
      [&field](u64 idx) { return ExtensionElement::from_index(field, idx); },
      [](const ExtensionElement& e) { return e.canonical_index(); });
  validate_root(root, n);
  return root;
}

}  // namespace polyxform
