#pragma once

// Radix-2 number theoretic transform over the prime 2^64 - 2^32 + 1.

#include <span>
#include <vector>

#include "polyxform/modular.hpp"

namespace polyxform::ntt {

inline constexpr u64 kModulus = 0xffffffff00000001ULL;
inline constexpr u64 kGenerator = 7;  // generates the full unit group
inline constexpr unsigned kMaxLog2 = 32;

// Root of order 2^log2 (log2 <= 32).
u64 root_of_unity(unsigned log2);

// In-place cyclic transform; size must be a power of two up to 2^32.
// Counts one multiplication per butterfly in `multiplications` if given.
void forward(std::span<u64> values, u64* multiplications = nullptr);
// Inverse of forward, including the 1/N scaling.
void inverse(std::span<u64> values, u64* multiplications = nullptr);

// Exact cyclic convolution modulo kModulus of two sequences, zero-padded to
// the smallest power of two >= a.size() + b.size() - 1.
std::vector<u64> convolve(std::span<const u64> a, std::span<const u64> b, u64* multiplications = nullptr);

}  // namespace polyxform::ntt
