#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "rht/sparse_matrix.hpp"

namespace rht {

/// Rank over Q, exact.
std::size_t rank(const SparseMatrix& m);

/// Basis of the right null space, read off the reduced row echelon form:
/// one vector per free column, in increasing column order.
std::vector<SparseVector> kernel_basis(const SparseMatrix& m);

/// Canonical basis of the column space (nonzero rows of rref(m^T)).
std::vector<SparseVector> image_basis(const SparseMatrix& m);

/// Reduced row echelon form, rows listed by increasing pivot column.
struct RowEchelon {
  std::vector<SparseVector> rows;
  std::vector<int32_t> pivots;
};
RowEchelon row_echelon(const SparseMatrix& m);

/// Incrementally grown echelon basis of a subspace of Q^n.
class EchelonSpan {
 public:
  EchelonSpan() = default;

  /// Fully reduces v against the stored rows.
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  /// Adds v when it is independent of the span; returns whether it was added.
  bool insert(const SparseVector& v);
  std::size_t dim() const noexcept { return rows_.size(); }

 private:
  std::map<int32_t, SparseVector> rows_;  // pivot -> row with leading coefficient 1
};

/// H = ker(d_out) / im(d_in) with explicit bases.
class Subquotient {
 public:
  std::size_t ambient_dim = 0;
  std::vector<SparseVector> cycle_basis;
  std::vector<SparseVector> boundary_basis;
  std::vector<SparseVector> quotient_basis;

  std::size_t dim() const noexcept { return quotient_basis.size(); }

  /// Coordinates of the class of a cycle in quotient_basis.
  /// Throws DimensionMismatch when v is not a cycle.
  std::vector<Rational> coordinates(const SparseVector& v) const;

  /// Builds the tracked echelon used by coordinates(); called by cohomology_at.
  void index();

 private:
  struct TrackedRow {
    SparseVector row;
    std::vector<Rational> coords;  // class coordinates of this row
  };
  std::map<int32_t, TrackedRow> tracked_;
};

/// Cohomology at the middle of C_in --d_in--> C --d_out--> C_out.
/// Throws CompositionNonzero when d_out * d_in != 0.
Subquotient cohomology_at(const SparseMatrix& d_in, const SparseMatrix& d_out);

}  // namespace rht
