#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "polyxform/errors.hpp"
#include "polyxform/multiply.hpp"
#include "polyxform/ntt.hpp"

using namespace polyxform;

namespace {

oracle::Big to_big(const BigNat& a) {
  oracle::Big v = 0;
  for (std::size_t i = a.size(); i-- > 0;) v = (v << a.limb_bits()) + a.limbs()[i];
  return v;
}

BigNat from_big(oracle::Big v, unsigned limb_bits = 64) {
  std::vector<u64> limbs;
  const oracle::Big base = oracle::Big(1) << limb_bits;
  while (v > 0) {
    limbs.push_back(static_cast<u64>(v % base));
    v /= base;
  }
  return BigNat::from_limbs(limbs, limb_bits);
}

struct PtPlans {
  PTPlan forward;
  PTPlan inverse;
};

const PtPlans& plans13() {
  static const PtPlans plans = [] {
    PlanOptions o;
    o.bound_mode = BoundMode::input_aware;
    auto fwd = preprocess_for_prime(PrimeModulus(13), o);
    auto inv = invert_plan(fwd);
    return PtPlans{std::move(fwd), std::move(inv)};
  }();
  return plans;
}

}  // namespace

TEST_CASE("BigNat construction and hex") {
  CHECK(BigNat::from_hex("0x3039").limbs() == std::vector<u64>{12345});
  CHECK(BigNat::from_hex("ABCdef").to_hex() == "0xabcdef");
  CHECK(BigNat::from_hex("0").to_hex() == "0x0");
  CHECK(BigNat::from_hex("0x000").is_zero());
  CHECK(BigNat::from_hex("0x10000000000000000").limbs() == std::vector<u64>{0, 1});
  CHECK_THROWS_AS(BigNat::from_hex(""), UsageError);
  CHECK_THROWS_AS(BigNat::from_hex("0x"), UsageError);
  CHECK_THROWS_AS(BigNat::from_hex("12g4"), UsageError);
  CHECK_THROWS_AS(BigNat(0), UsageError);
  CHECK_THROWS_AS(BigNat(65), UsageError);
  CHECK_THROWS_AS(BigNat::from_limbs({4}, 2), UsageError);
  CHECK(BigNat::from_limbs({5, 0, 0}).size() == 1);
  CHECK(BigNat::from_u64(255).bit_length() == 8);
}

TEST_CASE("rebase preserves the value") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_bignat(1 + rng() % 700, rng);
    for (unsigned w : {1u, 3u, 7u, 16u, 31u, 64u}) {
      const auto r = a.rebase(w);
      CHECK(r.limb_bits() == w);
      CHECK(r == a);
      CHECK(to_big(r) == to_big(a));
      CHECK(r.bit_length() == a.bit_length());
    }
  }
}

TEST_CASE("addition across limb widths") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_bignat(1 + rng() % 300, rng, 16), b = random_bignat(1 + rng() % 300, rng, 64);
    CHECK(to_big(a + b) == to_big(a) + to_big(b));
  }
}

TEST_CASE("product examples") {
  const auto a = BigNat::from_u64(12345), b = BigNat::from_u64(6789);
  CHECK(schoolbook_mul(a, b) == BigNat::from_u64(83810205));
  CHECK(karatsuba_mul(a, b) == BigNat::from_u64(83810205));
  MulBackend ntt_backend{MulBackendKind::oracle_ntt};
  CHECK(multiply(a, b, ntt_backend).product == BigNat::from_u64(83810205));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto x = random_bignat(1 + rng() % 2000, rng);
    for (auto kind : {MulBackendKind::schoolbook, MulBackendKind::karatsuba, MulBackendKind::oracle_ntt}) {
      MulBackend backend{kind};
      CHECK(multiply(x, BigNat(), backend).product.is_zero());
      CHECK(multiply(x, BigNat::from_u64(1), backend).product == x);
    }
  }
  CHECK_THROWS_AS(karatsuba_mul(a, b, 1), UsageError);
}

TEST_CASE("karatsuba and schoolbook agree with big-integer multiplication on 1000 random pairs") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_bignat(1 + rng() % 4000, rng), b = random_bignat(1 + rng() % 4000, rng);
    const auto expected = to_big(a) * to_big(b);
    const auto k = karatsuba_mul(a, b, 2 + rng() % 40);
    CHECK(to_big(k) == expected);
    CHECK(to_big(schoolbook_mul(a, b)) == expected);
  }
}

TEST_CASE("karatsuba on all-ones operands and narrow limbs") {
  for (u64 bits : {1ULL, 63ULL, 64ULL, 65ULL, 1000ULL, 4096ULL, 5000ULL}) {
    const auto a = all_ones(bits);
    const oracle::Big ones = (oracle::Big(1) << bits) - 1;
    CHECK(to_big(a) == ones);
    CHECK(to_big(karatsuba_mul(a, a, 4)) == ones * ones);
  }
  std::mt19937_64 rng(5);
  for (unsigned w : {8u, 17u, 32u}) {
    const auto a = random_bignat(3000, rng, w), b = random_bignat(2500, rng, w);
    CHECK(to_big(karatsuba_mul(a, b, 4)) == to_big(a) * to_big(b));
    CHECK(to_big(schoolbook_mul(a, b)) == to_big(a) * to_big(b));
  }
}

TEST_CASE("multiplication is commutative and distributes over addition") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_bignat(1 + rng() % 1500, rng), b = random_bignat(1 + rng() % 1500, rng),
               c = random_bignat(1 + rng() % 1500, rng);
    CHECK(karatsuba_mul(a, b, 8) == karatsuba_mul(b, a, 8));
    CHECK(karatsuba_mul(a, b + c, 8) == karatsuba_mul(a, b, 8) + karatsuba_mul(a, c, 8));
  }
}

TEST_CASE("pack and unpack round-trip") {
  std::mt19937_64 rng(7);
  const Natural modulus(ntt::kModulus);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_bignat(1 + rng() % 3000, rng);
    const unsigned bits = 1 + rng() % 16;
    const std::size_t need = (a.bit_length() + bits - 1) / bits;
    const auto packed = pack(a, bits, need + rng() % 5, modulus);
    for (u64 v : packed) CHECK(v < (u64{1} << bits));
    CHECK(unpack(packed, bits) == a);
  }
  CHECK_THROWS_AS(pack(BigNat::from_u64(0xffff), 4, 3, modulus), UsageError);
  CHECK(pack(BigNat(), 8, 4, modulus) == std::vector<u64>(4, 0));
}

TEST_CASE("packing certification") {
  const Natural thirteen(13);
  CHECK(packing_fits(1, 12, thirteen));
  CHECK_FALSE(packing_fits(1, 13, thirteen));
  CHECK_FALSE(packing_fits(2, 2, thirteen));  // 2 * 9 = 18
  CHECK(packing_fits(2, 1, thirteen));
  CHECK_THROWS_AS(certify_packing(1, 13, thirteen), OverflowRisk);
  CHECK_THROWS_AS(pack(BigNat::from_u64(1), 1, 13, thirteen), OverflowRisk);
  CHECK_NOTHROW(pack(BigNat::from_u64(1), 1, 13, thirteen, 12));

  const Natural goldilocks(ntt::kModulus);
  CHECK(choose_limb_bits(64, 64, goldilocks, 1 << 20) == 31);  // 3 * (2^31 - 1)^2 < P <= 2 * (2^32 - 1)^2
  CHECK_THROWS_AS(choose_limb_bits(64, 64, thirteen, 4), OverflowRisk);
  for (u64 bits : {100ULL, 5000ULL, 100000ULL}) {
    const unsigned b = choose_limb_bits(bits, bits, goldilocks, u64{1} << 32);
    const u64 terms = (bits + b - 1) / b;
    CHECK(packing_fits(b, terms, goldilocks));
    for (unsigned wider = b + 1; wider <= 64; ++wider) {
      CHECK_FALSE(packing_fits(wider, (bits + wider - 1) / wider, goldilocks));
    }
  }
}

TEST_CASE("carry_propagate examples") {
  CHECK(carry_propagate(std::vector<u64>{3, 2, 1}, 4) == BigNat::from_u64(0x123));
  CHECK(carry_propagate(std::vector<u64>{17, 0}, 4) == BigNat::from_u64(17));
  CHECK(carry_propagate(std::vector<u64>{0xff, 0xff, 0xff}, 8) == BigNat::from_u64(0xff + 0xff00 + 0xff0000));
  CHECK(carry_propagate(std::vector<u64>{}, 8).is_zero());
  const std::vector<Natural> big{Natural(1) << 100, 0, 1};
  CHECK(to_big(carry_propagate(big, 16)) == (oracle::Big(1) << 100) + (oracle::Big(1) << 32));
  CHECK(carry_propagate(std::vector<u64>{~u64{0}, ~u64{0}}, 64).to_hex() == "0xffffffffffffffffffffffffffffffff");
}

TEST_CASE("Goldilocks NTT agrees with a direct DFT and convolves exactly") {
  using namespace polyxform::ntt;
  CHECK(oracle::power_by_repetition(root_of_unity(4), 16, kModulus) == 1);
  CHECK(oracle::power_by_repetition(root_of_unity(4), 8, kModulus) == kModulus - 1);
  CHECK_THROWS_AS(root_of_unity(33), NoSuchRoot);

  std::mt19937_64 rng(8);
  for (unsigned lg : {0u, 1u, 3u, 6u}) {
    const std::size_t n = std::size_t{1} << lg;
    std::vector<u64> x(n);
    for (auto& v : x) v = rng() % kModulus;
    auto y = x;
    forward(y);
    CHECK(y == oracle::dft_direct(x, root_of_unity(lg), kModulus, n));
    inverse(y);
    CHECK(y == x);
  }
  for (int i = 0; i < 50; ++i) {
    const std::size_t la = 1 + rng() % 40, lb = 1 + rng() % 40;
    std::vector<u64> a(la), b(lb);
    for (auto& v : a) v = rng() % 65536;
    for (auto& v : b) v = rng() % 65536;
    std::vector<u64> expected(la + lb - 1, 0);
    for (std::size_t s = 0; s < la; ++s) {
      for (std::size_t t = 0; t < lb; ++t) expected[s + t] += a[s] * b[t];
    }
    CHECK(convolve(a, b) == expected);
  }
}

TEST_CASE("oracle-ntt backend is exact on random operands") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_bignat(1 + rng() % 20000, rng), b = random_bignat(1 + rng() % 20000, rng);
    const auto report = multiply(a, b, MulBackend{MulBackendKind::oracle_ntt});
    CHECK(report.matches);
    CHECK(to_big(report.product) == to_big(a) * to_big(b));
    CHECK(report.limb_bits >= 1);
    CHECK(report.used_coefficients <= report.transform_length);
  }
}

TEST_CASE("operation counts grow with operand size") {
  std::mt19937_64 rng(10);
  u64 prev_school = 0, prev_kara = 0;
  for (u64 bits : {256ULL, 1024ULL, 4096ULL, 16384ULL}) {
    const auto a = random_bignat(bits, rng), b = random_bignat(bits, rng);
    MulStats s, k;
    schoolbook_mul(a, b, &s);
    karatsuba_mul(a, b, 8, &k);
    const u64 limbs = bits / 64;
    CHECK(s.limb_multiplications == limbs * limbs);
    CHECK(s.limb_multiplications > prev_school);
    CHECK(k.limb_multiplications > prev_kara);
    CHECK(k.limb_multiplications <= s.limb_multiplications);
    prev_school = s.limb_multiplications;
    prev_kara = k.limb_multiplications;
  }
  CHECK(prev_kara < prev_school / 4);
}

TEST_CASE("backend names") {
  CHECK(parse_backend("karatsuba") == MulBackendKind::karatsuba);
  CHECK(parse_backend("pt") == MulBackendKind::polynomial_transform);
  CHECK(parse_backend("polynomial-transform") == MulBackendKind::polynomial_transform);
  CHECK(to_string(MulBackendKind::oracle_ntt) == "oracle-ntt");
  CHECK_THROWS_AS(parse_backend("fft"), UsageError);
  CHECK_THROWS_AS(transform_mul(BigNat::from_u64(1), BigNat::from_u64(1), MulBackend{MulBackendKind::schoolbook}),
                  UsageError);
  CHECK_THROWS_AS(multiply(BigNat::from_u64(1), BigNat::from_u64(1), MulBackend{MulBackendKind::polynomial_transform}),
                  UsageError);
}

TEST_CASE("polynomial-transform backend with the direct transform in its place is exact") {
  const auto& plans = plans13();
  MulBackend backend{MulBackendKind::polynomial_transform};
  backend.forward_plan = &plans.forward;
  backend.inverse_plan = &plans.inverse;
  backend.oracle_transform = true;
  CHECK(backend.asserts_exactness());
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3; ++i) {
    const auto a = random_bignat(12, rng), b = random_bignat(1 + rng() % 800, rng);
    const auto report = multiply(a, b, backend);
    CHECK(report.limb_bits == 1);
    CHECK(report.transform_length == 2196);
    CHECK(report.stray_components == 0);
    CHECK(report.matches);
    CHECK(to_big(report.product) == to_big(a) * to_big(b));
  }
  CHECK_THROWS_AS(multiply(random_bignat(13, rng), random_bignat(13, rng), backend), OverflowRisk);

  MulBackend mismatched = backend;
  mismatched.inverse_plan = &plans.forward;
  CHECK_THROWS_AS(multiply(BigNat::from_u64(3), BigNat::from_u64(5), mismatched), UsageError);
}

TEST_CASE("polynomial-transform backend through the pipeline") {
  const auto& plans = plans13();
  MulBackend backend{MulBackendKind::polynomial_transform};
  backend.forward_plan = &plans.forward;
  backend.inverse_plan = &plans.inverse;
  CHECK_FALSE(backend.asserts_exactness());
  const auto a = from_big(0xabc), b = from_big(0x5a5a5);
  const auto report = multiply(a, b, backend);
  CHECK(report.reference == schoolbook_mul(a, b));
  CHECK(report.matches == (report.product == report.reference));
  MESSAGE("pipeline product " << report.product.to_hex() << " vs reference " << report.reference.to_hex()
                              << ", stray components " << report.stray_components);
}
