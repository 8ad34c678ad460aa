#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rht/rational.hpp"

namespace rht {

struct Entry {
  int32_t index;
  Rational value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse vector: entries sorted by index, no stored zeros.
using SparseVector = std::vector<Entry>;

/// Sorts by index, merges duplicates and drops zeros.
void normalize(SparseVector& v);
/// y += a * x.
void axpy(SparseVector& y, const Rational& a, const SparseVector& x);
SparseVector scaled(const SparseVector& x, const Rational& a);
Rational coefficient(const SparseVector& v, int32_t index);
Rational dot(const SparseVector& a, const SparseVector& b);
SparseVector unit_vector(int32_t index, Rational value = Rational(1));

/// Column-major sparse matrix over Q.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows);
  /// Columns need not be normalized.
  static SparseMatrix from_columns(std::size_t rows, std::vector<SparseVector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  std::size_t nnz() const noexcept;
  bool is_zero() const noexcept;

  const SparseVector& column(std::size_t c) const { return columns_.at(c); }
  const std::vector<SparseVector>& columns() const noexcept { return columns_; }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& v);
  void add(std::size_t r, std::size_t c, const Rational& v);

  SparseMatrix transpose() const;
  SparseVector apply(const SparseVector& v) const;
  std::vector<std::vector<Rational>> to_dense() const;

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVector> columns_;
};

}  // namespace rht
