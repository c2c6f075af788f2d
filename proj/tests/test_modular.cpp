#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "polyxform/crt.hpp"
#include "polyxform/errors.hpp"
#include "polyxform/linalg.hpp"
#include "polyxform/modular.hpp"

using namespace polyxform;

TEST_CASE("prime modulus rejects composites") {
  CHECK_THROWS_AS(PrimeModulus(1), UsageError);
  CHECK_THROWS_AS(PrimeModulus(15), UsageError);
  CHECK_NOTHROW(PrimeModulus(2));
  CHECK(PrimeModulus(18446744073709551557ULL).value() == 18446744073709551557ULL);
}

TEST_CASE("miller-rabin agrees with trial division below 20000") {
  for (u64 n = 0; n < 20000; ++n) CHECK(is_prime(n) == oracle::is_prime(n));
}

TEST_CASE("miller-rabin on strong pseudoprimes and large primes") {
  CHECK_FALSE(is_prime(3215031751ULL));          // spsp to bases 2, 3, 5, 7
  CHECK_FALSE(is_prime(3825123056546413051ULL)); // spsp to bases up to 23
  CHECK(is_prime(0xffffffff00000001ULL));
  CHECK_FALSE(is_prime(4294967297ULL));  // 641 * 6700417
}

TEST_CASE("residues are canonical at construction") {
  const PrimeModulus q(7);
  CHECK(Residue(q, 23).value() == 2);
  CHECK(Residue(q, 7).is_zero());
}

TEST_CASE("mul_mod examples") {
  const PrimeModulus five(5);
  CHECK(mul_mod(Residue(five, 3), Residue(five, 4)) == Residue(five, 2));
  const PrimeModulus q(101);
  for (u64 x = 0; x < 101; ++x) {
    CHECK(mul_mod(Residue(q, 0), Residue(q, x)).is_zero());
    CHECK(mul_mod(Residue(q, 1), Residue(q, x)) == Residue(q, x));
  }
}

TEST_CASE("mul_mod exhaustive over Z/5") {
  const PrimeModulus five(5);
  for (u64 a = 0; a < 5; ++a) {
    for (u64 b = 0; b < 5; ++b) CHECK(mul_mod(Residue(five, a), Residue(five, b)).value() == (a * b) % 5);
  }
}

TEST_CASE("mixed moduli are a usage error") {
  const Residue a(PrimeModulus(5), 1), b(PrimeModulus(7), 1);
  CHECK_THROWS_AS(mul_mod(a, b), UsageError);
  CHECK_THROWS_AS(add_mod(a, b), UsageError);
  CHECK_THROWS_AS(sub_mod(a, b), UsageError);
}

TEST_CASE("pow_mod examples") {
  const PrimeModulus eleven(11);
  CHECK(pow_mod(Residue(eleven, 2), 10).value() == 1);
  for (u64 a = 0; a < 11; ++a) {
    CHECK(pow_mod(Residue(eleven, a), 0).value() == 1);
    CHECK(pow_mod(Residue(eleven, a), 1).value() == a);
  }
}

TEST_CASE("pow_mod matches repeated multiplication") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const u64 q = oracle::primes_up_to(1000)[rng() % 168];
    const u64 a = rng() % q, e = rng() % 300;
    CHECK(pow_mod(Residue(PrimeModulus(q), a), e).value() == oracle::power_by_repetition(a, e, q));
  }
}

TEST_CASE("fermat's little theorem, exhaustive for q < 200") {
  for (u64 q : oracle::primes_up_to(199)) {
    const PrimeModulus m(q);
    for (u64 a = 1; a < q; ++a) CHECK(pow_mod(Residue(m, a), q - 1).value() == 1);
  }
}

TEST_CASE("inv_mod examples and errors") {
  const PrimeModulus five(5);
  CHECK(inv_mod(Residue(five, 2)) == Residue(five, 3));
  CHECK_THROWS_AS(inv_mod(Residue(five, 0)), NotInvertible);
  for (u64 q : {7ULL, 13ULL, 101ULL}) {
    const PrimeModulus m(q);
    CHECK(inv_mod(Residue(m, 1)).value() == 1);
    CHECK(inv_mod(Residue(m, q - 1)).value() == q - 1);
  }
}

TEST_CASE("inverses are exact, exhaustive for q < 200") {
  for (u64 q : oracle::primes_up_to(199)) {
    const PrimeModulus m(q);
    for (u64 a = 1; a < q; ++a) {
      const auto inv = inv_mod(Residue(m, a));
      CHECK(inv.value() == *oracle::inverse_by_scan(a, q));
      CHECK(mul_mod(inv, Residue(m, a)).value() == 1);
    }
  }
}

TEST_CASE("raw arithmetic near 2^64") {
  const u64 m = 18446744073709551557ULL;
  CHECK(raw::add(m - 1, m - 1, m) == m - 2);
  CHECK(raw::sub(0, 1, m) == m - 1);
  CHECK(raw::mul(m - 1, m - 1, m) == 1);
  CHECK(raw::mul(raw::inv(123456789, m), 123456789, m) == 1);
}

TEST_CASE("crt_reconstruct examples") {
  const CrtBasis basis({3, 5});
  const std::vector<u64> r{2, 3};
  CHECK(crt_reconstruct(r, basis) == 8);
  const std::vector<u64> zeros{0, 0};
  CHECK(crt_reconstruct(zeros, basis) == 0);
  const CrtBasis single({97});
  const std::vector<u64> one{42};
  CHECK(crt_reconstruct(one, single) == 42);
}

TEST_CASE("crt basis rejects shared factors and tiny moduli") {
  CHECK_THROWS_AS(CrtBasis({6, 9}), UsageError);
  CHECK_THROWS_AS(CrtBasis({1, 5}), UsageError);
  CHECK_THROWS_AS(CrtBasis({}), UsageError);
}

TEST_CASE("crt round-trips exhaustively for a product below 10^6") {
  const std::vector<u64> moduli{7, 11, 13, 16, 25};  // 400400
  const CrtBasis basis(moduli);
  CHECK(basis.product() == 400400);
  std::vector<u64> r(moduli.size());
  for (u64 x = 0; x < 400400; ++x) {
    for (std::size_t k = 0; k < moduli.size(); ++k) r[k] = x % moduli[k];
    REQUIRE(crt_reconstruct(r, basis) == x);
  }
}

TEST_CASE("crt agrees with a scan on small bases") {
  std::mt19937_64 rng(2);
  const std::vector<u64> moduli{5, 7, 9, 11};
  const CrtBasis basis(moduli);
  for (int i = 0; i < 100; ++i) {
    std::vector<u64> r;
    for (u64 m : moduli) r.push_back(rng() % m);
    CHECK(crt_reconstruct(r, basis) == oracle::crt_by_scan(r, moduli));
  }
}

TEST_CASE("crt_reduce matches reconstruction for large random bases") {
  std::mt19937_64 rng(3);
  const std::vector<u64> moduli{1000003, 998244353, 1000000007, 2305843009213693951ULL, 4294967291ULL};
  const CrtBasis basis(moduli);
  for (int i = 0; i < 500; ++i) {
    Natural v = 0;
    for (int w = 0; w < 3; ++w) v = (v << 64) + rng();
    v %= basis.product();
    std::vector<u64> r;
    for (u64 m : moduli) r.push_back(static_cast<u64>(v % m));
    CHECK(crt_reconstruct(r, basis) == v);
    for (u64 target : {13ULL, 1000003ULL, 18446744073709551557ULL}) {
      CHECK(crt_reduce(r, basis, target) == static_cast<u64>(v % target));
    }
  }
}

TEST_CASE("solve_linear_mod examples") {
  const PrimeModulus five(5);
  const auto a = ModMatrix::from_rows(five, {{1, 2}, {1, 3}});
  const std::vector<Residue> b{Residue(five, 0), Residue(five, 1)};
  const auto sol = solve_linear_mod(a, b);
  CHECK(sol.x[0].value() == 3);
  CHECK(sol.x[1].value() == 1);
  CHECK(sol.determinant.value() == 1);

  const std::vector<Residue> any{Residue(five, 4), Residue(five, 2)};
  CHECK(solve_linear_mod(ModMatrix::identity(five, 2), any).x == any);

  const auto singular = ModMatrix::from_rows(five, {{1, 1}, {2, 2}});
  const std::vector<Residue> zeros{Residue(five, 0), Residue(five, 0)};
  CHECK_THROWS_AS(solve_linear_mod(singular, zeros), Singular);
  try {
    solve_linear_mod(singular, zeros);
  } catch (const Singular& e) {
    CHECK(e.determinant() == 0);
  }
}

TEST_CASE("solve_linear_mod inverts A x for random systems up to 6x6") {
  std::mt19937_64 rng(11);
  const auto primes = oracle::primes_up_to(1000);
  int solved = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const PrimeModulus q(primes[rng() % primes.size()]);
    const std::size_t n = 1 + rng() % 6;
    ModMatrix a(q, n, n);
    std::vector<std::vector<long long>> plain(n, std::vector<long long>(n));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        a.set(r, c, rng() % q.value());
        plain[r][c] = static_cast<long long>(a.value(r, c));
      }
    }
    const auto det = static_cast<u64>(oracle::det_laplace(plain, static_cast<long long>(q.value())));
    CHECK(determinant_mod(a).value() == det);
    std::vector<Residue> x;
    for (std::size_t i = 0; i < n; ++i) x.emplace_back(q, rng() % q.value());
    const auto b = a.apply(x);
    if (det == 0) {
      CHECK_THROWS_AS(solve_linear_mod(a, b), Singular);
      continue;
    }
    const auto sol = solve_linear_mod(a, b);
    CHECK(sol.x == x);
    CHECK(sol.determinant.value() == det);
    CHECK(a * inverse_mod(a) == ModMatrix::identity(q, n));
    ++solved;
  }
  CHECK(solved > 250);
}
