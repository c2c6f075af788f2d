#include "polyxform/primes.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace polyxform {

PrimeTable sieve_atkin(u64 limit) {
  PrimeTable table{limit, {}};
  if (limit < 2) return table;
  std::vector<bool> candidate(limit + 1, false);

  // 2x^2 + 2x - 1 is the smallest value 3x^2 - y^2 takes with y < x.
  for (u64 x = 1; 2 * x * x + 2 * x - 1 <= limit; ++x) {
    const u64 xx = x * x;
    for (u64 y = 1; y * y <= limit; ++y) {
      const u64 yy = y * y;
      u64 n = 4 * xx + yy;
      if (n <= limit && (n % 12 == 1 || n % 12 == 5)) candidate[n] = !candidate[n];
      n = 3 * xx + yy;
      if (n <= limit && n % 12 == 7) candidate[n] = !candidate[n];
      if (x > y) {
        n = 3 * xx - yy;
        if (n <= limit && n % 12 == 11) candidate[n] = !candidate[n];
      }
    }
  }
  // The forms only catch squarefree numbers with an odd number of
  // representations; clear multiples of prime squares.
  for (u64 r = 5; r * r <= limit; ++r) {
    if (!candidate[r]) continue;
    for (u64 m = r * r; m <= limit; m += r * r) candidate[m] = false;
  }

  table.primes.push_back(2);
  if (limit >= 3) table.primes.push_back(3);
  for (u64 n = 5; n <= limit; ++n) {
    if (candidate[n]) table.primes.push_back(n);
  }
  return table;
}

PrimeTable trial_division_table(u64 limit) {
  PrimeTable table{limit, {}};
  for (u64 n = 2; n <= limit; ++n) {
    bool prime = true;
    for (u64 p : table.primes) {
      if (p * p > n) break;
      if (n % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) table.primes.push_back(n);
  }
  return table;
}

u64 doubling_estimate(u64 n) {
  u64 p0 = 1;
  u64 cube = 1;
  while (cube < n) {
    p0 <<= 1;
    if (cube > (std::numeric_limits<u64>::max() >> 3)) break;  // (2 p0)^3 exceeds every u64
    cube <<= 3;
  }
  return p0;
}

PrimeModulus next_prime_at_or_above(u64 x) {
  if (x < 2) throw UsageError("next_prime_at_or_above requires x >= 2");
  for (u64 c = x;; ++c) {
    if (c == 0) throw UsageError("no 64-bit prime at or above " + std::to_string(x));
    if (is_prime(c)) return PrimeModulus(c);
  }
}

DescendingPrimes::iterator::iterator(u64 below) {
  current_ = below;
  ++*this;
}

DescendingPrimes::iterator& DescendingPrimes::iterator::operator++() {
  while (current_ > 2) {
    --current_;
    if (is_prime(current_)) return *this;
  }
  current_ = 0;
  return *this;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> factors;
  for (u64 d = 2; d <= n / d; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    factors.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

CostEstimate cost_model(u64 bound) {
  if (bound < 2) throw UsageError("cost_model requires bound >= 2");
  CostEstimate est;
  est.bound = bound;
  const auto table = sieve_atkin(bound - 1);
  est.prime_count = table.primes.size();

  // Neumaier summation keeps the floating error far below 1e-9 relative.
  long double sum = 0, compensation = 0;
  for (u64 q : table.primes) {
    const long double term = static_cast<long double>(q) * std::log(static_cast<long double>(q));
    const long double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
    est.sum_q_squared += Natural(q) * q;
  }
  est.sum_q_log_q = static_cast<double>(sum + compensation);

  const double b = static_cast<double>(bound);
  const double ln_b = std::log(b);
  est.reference_p2_log2 = b * b * ln_b * ln_b;
  est.reference_p3_over_log3 = b * b * b / (3.0 * ln_b);
  return est;
}

}  // namespace polyxform
