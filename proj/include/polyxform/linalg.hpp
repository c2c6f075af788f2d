#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "polyxform/modular.hpp"

namespace polyxform {

// Dense row-major matrix over Z/qZ. Entries are stored canonical.
class ModMatrix {
 public:
  ModMatrix(PrimeModulus modulus, std::size_t rows, std::size_t cols);

  static ModMatrix identity(PrimeModulus modulus, std::size_t n);
  static ModMatrix from_rows(PrimeModulus modulus, const std::vector<std::vector<u64>>& rows);
  static ModMatrix from_rows(PrimeModulus modulus, std::initializer_list<std::initializer_list<u64>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  PrimeModulus modulus() const noexcept { return modulus_; }

  u64 value(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Residue at(std::size_t r, std::size_t c) const { return Residue(modulus_, value(r, c)); }
  void set(std::size_t r, std::size_t c, u64 v) { data_[r * cols_ + c] = v % modulus_.value(); }
  void set(std::size_t r, std::size_t c, const Residue& v);

  ModMatrix operator*(const ModMatrix& rhs) const;
  std::vector<Residue> apply(std::span<const Residue> x) const;

  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;

 private:
  PrimeModulus modulus_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<u64> data_;
};

struct LinearSolution {
  std::vector<Residue> x;
  Residue determinant;
};

// Gaussian elimination over the prime field. Throws Singular (determinant 0)
// when A has no inverse, UsageError on shape or modulus mismatch.
LinearSolution solve_linear_mod(const ModMatrix& a, std::span<const Residue> b);

// Zero for singular matrices; never throws for square input.
Residue determinant_mod(const ModMatrix& a);

// Throws Singular.
ModMatrix inverse_mod(const ModMatrix& a);

}  // namespace polyxform
