#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "polyxform/errors.hpp"
#include "polyxform/primes.hpp"

using namespace polyxform;

namespace {

std::vector<u64> take(DescendingPrimes range, std::size_t count) {
  std::vector<u64> out;
  for (PrimeModulus q : range) {
    if (out.size() == count) break;
    out.push_back(q.value());
  }
  return out;
}

}  // namespace

TEST_CASE("sieve_atkin examples") {
  CHECK(sieve_atkin(30).primes == std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(sieve_atkin(2).primes == std::vector<u64>{2});
  CHECK(sieve_atkin(3).primes == std::vector<u64>{2, 3});
  CHECK(sieve_atkin(1).primes.empty());
  CHECK(sieve_atkin(0).primes.empty());
}

TEST_CASE("sieve_atkin matches trial division at every limit up to 2000") {
  const auto reference = oracle::primes_up_to(2000);
  for (u64 limit = 2; limit <= 2000; ++limit) {
    std::vector<u64> expected;
    for (u64 p : reference) {
      if (p <= limit) expected.push_back(p);
    }
    REQUIRE(sieve_atkin(limit).primes == expected);
  }
}

TEST_CASE("sieve_atkin matches trial division at 100 random limits up to 10^5") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const u64 limit = 2 + rng() % 99999;
    CHECK(sieve_atkin(limit).primes == trial_division_table(limit).primes);
  }
}

TEST_CASE("sieve_atkin at 10^6") {
  const auto table = sieve_atkin(1000000);
  CHECK(table.primes.size() == 78498);
  CHECK(table.primes == trial_division_table(1000000).primes);
}

TEST_CASE("trial_division_table is itself sound") {
  CHECK(trial_division_table(5000).primes == oracle::primes_up_to(5000));
}

TEST_CASE("doubling_estimate examples") {
  CHECK(doubling_estimate(1000) == 16);
  CHECK(doubling_estimate(1) == 1);
  CHECK(doubling_estimate(8) == 2);
  CHECK(doubling_estimate(9) == 4);
}

TEST_CASE("doubling_estimate brackets the cube root") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10000; ++i) {
    const u64 n = 1 + rng() % ((u64{1} << 40) - 1);
    const u64 e = doubling_estimate(n);
    CHECK((e & (e - 1)) == 0);
    CHECK(Natural(e) * e * e >= n);
    if (e > 1) CHECK(Natural(e / 2) * (e / 2) * (e / 2) < n);
  }
}

TEST_CASE("next_prime_at_or_above examples") {
  CHECK(next_prime_at_or_above(16).value() == 17);
  CHECK(next_prime_at_or_above(17).value() == 17);
  CHECK(next_prime_at_or_above(90).value() == 97);
  CHECK(next_prime_at_or_above(2).value() == 2);
  CHECK_THROWS_AS(next_prime_at_or_above(1), UsageError);
}

TEST_CASE("next_prime_at_or_above agrees with a scan") {
  for (u64 x = 2; x < 3000; ++x) {
    u64 expected = x;
    while (!oracle::is_prime(expected)) ++expected;
    CHECK(next_prime_at_or_above(x).value() == expected);
  }
}

TEST_CASE("descending_primes examples") {
  CHECK(take(descending_primes(12), 10) == std::vector<u64>{11, 7, 5, 3, 2});
  CHECK(take(descending_primes(3), 10) == std::vector<u64>{2});
  CHECK(take(descending_primes(100), 3) == std::vector<u64>{97, 89, 83});
  CHECK(take(descending_primes(2), 10).empty());
}

TEST_CASE("descending_primes never yields its start and lists every smaller prime") {
  for (u64 start : {5ULL, 13ULL, 97ULL, 101ULL, 1000ULL, 7919ULL}) {
    auto got = take(descending_primes(start), 100000);
    std::vector<u64> expected;
    for (u64 p : oracle::primes_up_to(start - 1)) expected.insert(expected.begin(), p);
    CHECK(got == expected);
  }
}

TEST_CASE("prime_factors") {
  CHECK(prime_factors(1).empty());
  CHECK(prime_factors(360) == std::vector<u64>{2, 3, 5});
  CHECK(prime_factors(97) == std::vector<u64>{97});
  CHECK(prime_factors(1092726) == std::vector<u64>{2, 3, 17, 3571});  // 103^3 - 1
}

TEST_CASE("cost_model examples") {
  CHECK(cost_model(10).sum_q_squared == 87);
  CHECK(cost_model(10).prime_count == 4);
  CHECK(cost_model(3).sum_q_squared == 4);
  CHECK(cost_model(11).sum_q_squared == 87);  // the bound itself is excluded
  CHECK_THROWS_AS(cost_model(1), UsageError);
}

TEST_CASE("cost_model sums match a direct recomputation") {
  for (u64 bound : {100ULL, 1000ULL, 10000ULL}) {
    const auto e = cost_model(bound);
    long double s1 = 0;
    Natural s2 = 0;
    for (u64 q : oracle::primes_up_to(bound - 1)) {
      s1 += static_cast<long double>(q) * std::log(static_cast<long double>(q));
      s2 += Natural(q) * q;
    }
    CHECK(e.sum_q_squared == s2);
    CHECK(std::fabs(e.sum_q_log_q - static_cast<double>(s1)) / static_cast<double>(s1) < 1e-9);
  }
}

TEST_CASE("sum of squared primes grows like p^3 / ln p^3 between 10^3 and 10^4") {
  const auto small = cost_model(1000), large = cost_model(10000);
  const double observed = large.sum_q_squared.convert_to<double>() / small.sum_q_squared.convert_to<double>();
  const double predicted = 1000.0 * std::log(1e9) / std::log(1e12);
  CHECK(observed < 2 * predicted);
  CHECK(observed > predicted / 2);
}
