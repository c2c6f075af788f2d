#pragma once

#include <cstddef>
#include <iterator>
#include <optional>
#include <vector>

#include "polyxform/modular.hpp"

namespace polyxform {

struct PrimeTable {
  u64 limit = 0;
  std::vector<u64> primes;  // ascending, every prime <= limit
};

// Sieve of Atkin: flips candidates by the three quadratic forms
// 4x^2+y^2, 3x^2+y^2, 3x^2-y^2 and then strikes multiples of squares of
// primes. limit < 2 yields an empty table.
PrimeTable sieve_atkin(u64 limit);

// Trial-division table; a slow independent reference for the sieve.
PrimeTable trial_division_table(u64 limit);

// Smallest power of two p0 with p0^3 >= n, found by doubling p0 while the
// matching cube estimate is multiplied by 8 (shifts only).
u64 doubling_estimate(u64 n);

PrimeModulus next_prime_at_or_above(u64 x);

// Primes strictly below `start`, largest first.
class DescendingPrimes {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = PrimeModulus;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    explicit iterator(u64 below);

    PrimeModulus operator*() const { return PrimeModulus(current_); }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& other) const { return current_ == other.current_; }

   private:
    u64 current_ = 0;  // 0 marks exhaustion
  };

  explicit DescendingPrimes(u64 start) : start_(start) {}
  iterator begin() const { return iterator(start_); }
  iterator end() const { return iterator(); }

 private:
  u64 start_;
};

inline DescendingPrimes descending_primes(u64 start) { return DescendingPrimes(start); }

// Distinct prime factors in ascending order, by trial division.
std::vector<u64> prime_factors(u64 n);

struct CostEstimate {
  u64 bound = 0;
  std::size_t prime_count = 0;
  double sum_q_log_q = 0;   // sum of q ln q over primes q < bound
  Natural sum_q_squared;    // exact sum of q^2 over primes q < bound
  // The growth forms these sums are compared against, evaluated at bound.
  double reference_p2_log2 = 0;        // bound^2 ln^2 bound
  double reference_p3_over_log3 = 0;   // bound^3 / ln(bound^3)
};

// Relative error of sum_q_log_q is below 1e-9 (compensated summation).
CostEstimate cost_model(u64 bound);

}  // namespace polyxform
