#pragma once

#include <cstddef>
#include <vector>

#include "rht/sparse_matrix.hpp"

namespace rht {

/// Cochain complex C^{t0} -> C^{t0+1} -> ... given by its differentials.
/// d[i] maps C^{t0+i} to C^{t0+i+1}; the space before C^{t0} is taken as 0.
struct GradedComplex {
  int t0 = 0;
  std::vector<SparseMatrix> d;

  int first_degree() const noexcept { return t0; }
  /// Last degree whose outgoing differential is known.
  int last_degree() const noexcept { return t0 + int(d.size()) - 1; }
  std::size_t dim(int t) const;
  const SparseMatrix& differential(int t) const;
};

/// Cohomology of a GradedComplex by exhaustive elimination of invertible
/// matrix entries (sparse Gaussian elimination on the complex itself).
///
/// Each level D^t is reduced to zero in increasing t, restricted to the
/// columns that survived level t-1. The surviving basis vectors of C^t span
/// a complex with zero differential, homotopy equivalent to the input, so
/// they index H^t directly. Eliminated rows and columns are logged so that
/// survivors can be lifted to genuine cocycles and cocycles projected back.
class ReducedComplex {
 public:
  explicit ReducedComplex(const GradedComplex& complex);

  int first_degree() const noexcept { return t0_; }
  int last_degree() const noexcept { return t0_ + int(levels_.size()) - 1; }

  std::size_t betti(int t) const;
  /// Basis vectors of C^t that survive; H^t has one class per survivor.
  const std::vector<int32_t>& survivors(int t) const;

  /// Cocycle representatives, one per survivor, in survivor order.
  std::vector<SparseVector> representatives(int t) const;
  /// Coordinates of the class of a cocycle z in the representative basis.
  std::vector<Rational> classify(int t, const SparseVector& z) const;

  /// Total number of eliminated pairs (for diagnostics and benchmarks).
  std::size_t eliminated() const noexcept;

 private:
  struct Pivot {
    int32_t col;  // sigma in C^t
    int32_t row;  // tau in C^{t+1}
    Rational value;
    SparseVector row_at_elimination;  // over C^t, excluding sigma
    SparseVector col_at_elimination;  // over C^{t+1}, including tau
  };
  struct Level {
    std::size_t dim = 0;
    std::vector<Pivot> pivots;       // steps of D^t, in elimination order
    std::vector<int32_t> survivors;  // of C^t
  };

  const Level& level(int t) const;
  void reduce_level(int t, const SparseMatrix& d, const std::vector<char>& dead_cols);

  int t0_;
  std::vector<Level> levels_;
};

}  // namespace rht
