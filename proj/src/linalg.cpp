#include "polyxform/linalg.hpp"

#include <string>
#include <utility>

namespace polyxform {

ModMatrix::ModMatrix(PrimeModulus modulus, std::size_t rows, std::size_t cols)
    : modulus_(modulus), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

ModMatrix ModMatrix::identity(PrimeModulus modulus, std::size_t n) {
  ModMatrix m(modulus, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

ModMatrix ModMatrix::from_rows(PrimeModulus modulus, const std::vector<std::vector<u64>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ModMatrix m(modulus, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw UsageError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

ModMatrix ModMatrix::from_rows(PrimeModulus modulus, std::initializer_list<std::initializer_list<u64>> rows) {
  std::vector<std::vector<u64>> v;
  for (const auto& row : rows) v.emplace_back(row);
  return from_rows(modulus, v);
}

void ModMatrix::set(std::size_t r, std::size_t c, const Residue& v) {
  if (v.modulus() != modulus_) throw UsageError("matrix entry has a different modulus");
  data_[r * cols_ + c] = v.value();
}

ModMatrix ModMatrix::operator*(const ModMatrix& rhs) const {
  if (modulus_ != rhs.modulus_ || cols_ != rhs.rows_) throw UsageError("incompatible matrix product");
  const u64 q = modulus_.value();
  ModMatrix out(modulus_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
      u64 acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) acc = raw::add(acc, raw::mul(value(i, k), rhs.value(k, j), q), q);
      out.data_[i * out.cols_ + j] = acc;
    }
  }
  return out;
}

std::vector<Residue> ModMatrix::apply(std::span<const Residue> x) const {
  if (x.size() != cols_) throw UsageError("vector length does not match matrix width");
  const u64 q = modulus_.value();
  std::vector<Residue> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    u64 acc = 0;
    for (std::size_t k = 0; k < cols_; ++k) {
      if (x[k].modulus() != modulus_) throw UsageError("vector entry has a different modulus");
      acc = raw::add(acc, raw::mul(value(i, k), x[k].value(), q), q);
    }
    out.emplace_back(modulus_, acc);
  }
  return out;
}

namespace {

// Reduces `work` (n x (n + extra)) to reduced row echelon form in place.
// Returns the determinant of the leading n x n block, zero if singular (in
// which case the reduction stops early).
u64 eliminate(std::vector<std::vector<u64>>& work, std::size_t n, u64 q) {
  u64 det = 1 % q;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(work[pivot], work[col]);
      det = raw::sub(0, det, q);
    }
    const u64 p = work[col][col];
    det = raw::mul(det, p, q);
    const u64 p_inv = raw::inv(p, q);
    for (auto& v : work[col]) v = raw::mul(v, p_inv, q);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work[r][col] == 0) continue;
      const u64 factor = work[r][col];
      for (std::size_t c = col; c < work[r].size(); ++c) {
        work[r][c] = raw::sub(work[r][c], raw::mul(factor, work[col][c], q), q);
      }
    }
  }
  return det;
}

std::vector<std::vector<u64>> augmented(const ModMatrix& a, std::size_t extra) {
  std::vector<std::vector<u64>> work(a.rows(), std::vector<u64>(a.cols() + extra, 0));
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) work[r][c] = a.value(r, c);
  }
  return work;
}

void require_square(const ModMatrix& a) {
  if (!a.is_square()) throw UsageError("matrix is not square");
}

}  // namespace

LinearSolution solve_linear_mod(const ModMatrix& a, std::span<const Residue> b) {
  require_square(a);
  const std::size_t n = a.rows();
  if (b.size() != n) throw UsageError("right-hand side length does not match matrix");
  auto work = augmented(a, 1);
  for (std::size_t r = 0; r < n; ++r) {
    if (b[r].modulus() != a.modulus()) throw UsageError("right-hand side has a different modulus");
    work[r][n] = b[r].value();
  }
  const u64 det = eliminate(work, n, a.modulus().value());
  if (det == 0) throw Singular(0);
  LinearSolution out{{}, Residue(a.modulus(), det)};
  out.x.reserve(n);
  for (std::size_t r = 0; r < n; ++r) out.x.emplace_back(a.modulus(), work[r][n]);
  return out;
}

Residue determinant_mod(const ModMatrix& a) {
  require_square(a);
  auto work = augmented(a, 0);
  return Residue(a.modulus(), eliminate(work, a.rows(), a.modulus().value()));
}

ModMatrix inverse_mod(const ModMatrix& a) {
  require_square(a);
  const std::size_t n = a.rows();
  auto work = augmented(a, n);
  for (std::size_t r = 0; r < n; ++r) work[r][n + r] = 1 % a.modulus().value();
  if (eliminate(work, n, a.modulus().value()) == 0) throw Singular(0);
  ModMatrix inv(a.modulus(), n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv.set(r, c, work[r][n + c]);
  }
  return inv;
}

}  // namespace polyxform
