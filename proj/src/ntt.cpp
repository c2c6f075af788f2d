#include "polyxform/ntt.hpp"

#include <bit>
#include <utility>

#include "polyxform/errors.hpp"

namespace polyxform::ntt {

namespace {

u64 mulm(u64 a, u64 b) { return raw::mul(a, b, kModulus); }

void check_size(std::size_t n) {
  if (n == 0 || !std::has_single_bit(n) || std::countr_zero(n) > static_cast<int>(kMaxLog2)) {
    throw UsageError("transform size must be a power of two up to 2^32");
  }
}

void bit_reverse(std::span<u64> v) {
  const std::size_t n = v.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
}

void transform(std::span<u64> v, bool invert, u64* multiplications) {
  check_size(v.size());
  bit_reverse(v);
  for (std::size_t len = 2; len <= v.size(); len <<= 1) {
    u64 w_len = root_of_unity(static_cast<unsigned>(std::countr_zero(len)));
    if (invert) w_len = raw::inv(w_len, kModulus);
    for (std::size_t i = 0; i < v.size(); i += len) {
      u64 w = 1;
      for (std::size_t j = 0; j < len / 2; ++j) {
        const u64 u = v[i + j];
        const u64 t = mulm(v[i + j + len / 2], w);
        v[i + j] = raw::add(u, t, kModulus);
        v[i + j + len / 2] = raw::sub(u, t, kModulus);
        w = mulm(w, w_len);
      }
      if (multiplications) *multiplications += len / 2;
    }
  }
  if (invert) {
    const u64 n_inv = raw::inv(v.size() % kModulus, kModulus);
    for (auto& x : v) x = mulm(x, n_inv);
    if (multiplications) *multiplications += v.size();
  }
}

}  // namespace

u64 root_of_unity(unsigned log2) {
  if (log2 > kMaxLog2) throw NoSuchRoot("no root of order 2^" + std::to_string(log2) + " in this field");
  return raw::pow(kGenerator, (kModulus - 1) >> log2, kModulus);
}

void forward(std::span<u64> values, u64* multiplications) { transform(values, false, multiplications); }

void inverse(std::span<u64> values, u64* multiplications) { transform(values, true, multiplications); }

std::vector<u64> convolve(std::span<const u64> a, std::span<const u64> b, u64* multiplications) {
  if (a.empty() || b.empty()) return {};
  const std::size_t need = a.size() + b.size() - 1;
  const std::size_t n = std::bit_ceil(need);
  std::vector<u64> fa(n, 0), fb(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i] % kModulus;
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i] % kModulus;
  forward(fa, multiplications);
  forward(fb, multiplications);
  for (std::size_t i = 0; i < n; ++i) fa[i] = mulm(fa[i], fb[i]);
  if (multiplications) *multiplications += n;
  inverse(fa, multiplications);
  fa.resize(need);
  return fa;
}

}  // namespace polyxform::ntt
