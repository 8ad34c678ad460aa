#include <doctest.h>

#include <random>
#include <vector>

#include "rht/errors.hpp"
#include "rht/linalg.hpp"
#include "rht/rational.hpp"
#include "rht/reduction.hpp"
#include "rht/sparse_matrix.hpp"

using namespace rht;

namespace {

using Dense = std::vector<std::vector<Rational>>;

// Textbook Gaussian elimination on a dense copy.
std::size_t dense_rank(Dense a) {
  std::size_t r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

Dense random_dense(std::mt19937& rng, std::size_t rows, std::size_t cols, int density_pct, int range) {
  std::uniform_int_distribution<int> pct(0, 99), val(-range, range);
  Dense a(rows, std::vector<Rational>(cols));
  for (auto& row : a)
    for (auto& x : row)
      if (pct(rng) < density_pct) x = Rational(val(rng), 1 + (pct(rng) % 3));
  return a;
}

// Product of a low-rank pair, so the rank is known up front.
Dense low_rank(std::mt19937& rng, std::size_t rows, std::size_t cols, std::size_t k) {
  Dense u = random_dense(rng, rows, k, 80, 5), v = random_dense(rng, k, cols, 80, 5), out(rows, std::vector<Rational>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t l = 0; l < k; ++l) out[i][j] += u[i][l] * v[l][j];
  return out;
}

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational::parse("-6/8") == Rational(-3, 4));
  CHECK(Rational::parse("7").is_integer());
  CHECK((Rational(0) * Rational(5, 7)).is_zero());
  CHECK(Rational(3, 7).to_string() == "3/7");

  // Overflow into the wide representation and back.
  Rational big(INT64_MAX);
  Rational sq = big * big;
  CHECK(sq / big == big);
  CHECK((sq - sq).is_zero());
  CHECK(Rational::parse("123456789012345678901234567890/3").to_string() == "41152263004115226300411522630");
}

TEST_CASE("rank matches dense elimination and is transpose invariant") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 12;
    Dense a = random_dense(rng, rows, cols, 30 + int(rng() % 60), 4);
    SparseMatrix m = SparseMatrix::from_dense(a);
    const std::size_t r = rank(m);
    CHECK(r == dense_rank(a));
    CHECK(r == rank(m.transpose()));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = rng() % 5;
    Dense a = low_rank(rng, 9, 11, k);
    CHECK(rank(SparseMatrix::from_dense(a)) == dense_rank(a));
    CHECK(rank(SparseMatrix::from_dense(a)) <= k);
  }
}

TEST_CASE("kernel basis spans the null space") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 10;
    SparseMatrix m = SparseMatrix::from_dense(random_dense(rng, rows, cols, 50, 3));
    auto ker = kernel_basis(m);
    CHECK(ker.size() == cols - rank(m));
    for (const auto& v : ker) CHECK(m.apply(v).empty());
    CHECK(rank(SparseMatrix::from_columns(cols, ker)) == ker.size());
  }
}

TEST_CASE("image basis has the rank of the matrix") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    SparseMatrix m = SparseMatrix::from_dense(random_dense(rng, 7, 6, 40, 3));
    auto im = image_basis(m);
    CHECK(im.size() == rank(m));
    EchelonSpan span;
    for (const auto& c : m.columns()) span.insert(c);
    for (const auto& v : im) CHECK(span.contains(v));
  }
}

TEST_CASE("cohomology at a point of a chain complex") {
  // C^0 = Q -> C^1 = Q^2 -> C^2 = Q, d0 = (1,1)^T, d1 = (1,-1).
  SparseMatrix d0 = SparseMatrix::from_dense({{Rational(1)}, {Rational(1)}});
  SparseMatrix d1 = SparseMatrix::from_dense({{Rational(1), Rational(-1)}});
  Subquotient h = cohomology_at(d0, d1);
  CHECK(h.dim() == 0);

  SparseMatrix zero_in(2, 0);
  SparseMatrix d1b = SparseMatrix::from_dense({{Rational(1), Rational(0)}});
  Subquotient h2 = cohomology_at(zero_in, d1b);
  REQUIRE(h2.dim() == 1);
  auto coords = h2.coordinates(unit_vector(1, Rational(3)));
  CHECK(coords[0] != Rational(0));
  CHECK_THROWS_AS(h2.coordinates(unit_vector(0)), DimensionMismatch);

  CHECK_THROWS_AS(cohomology_at(d0, SparseMatrix::from_dense({{Rational(1), Rational(0)}})), CompositionNonzero);
  CHECK_THROWS_AS(cohomology_at(d0, SparseMatrix(1, 3)), DimensionMismatch);
}

TEST_CASE("reduced complex betti numbers agree with ranks") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    // Build d1 * d0 = 0 by taking d0 from the kernel of a random d1.
    const std::size_t n1 = 3 + rng() % 6, n2 = 1 + rng() % 5;
    SparseMatrix d1 = SparseMatrix::from_dense(random_dense(rng, n2, n1, 50, 3));
    auto ker = kernel_basis(d1);
    std::vector<SparseVector> cols;
    for (std::size_t j = 0; j < 4; ++j) {
      SparseVector v;
      for (const auto& k : ker)
        if (rng() % 2) axpy(v, Rational(int(rng() % 5) - 2), k);
      cols.push_back(v);
    }
    SparseMatrix d0 = SparseMatrix::from_columns(n1, cols);
    GradedComplex c{0, {d0, d1}};
    ReducedComplex red(c);
    const std::size_t r0 = rank(d0), r1 = rank(d1);
    CHECK(red.betti(0) == 4 - r0);
    CHECK(red.betti(1) == n1 - r1 - r0);
    auto reps = red.representatives(1);
    REQUIRE(reps.size() == red.betti(1));
    for (std::size_t i = 0; i < reps.size(); ++i) {
      CHECK(d1.apply(reps[i]).empty());
      auto coords = red.classify(1, reps[i]);
      for (std::size_t j = 0; j < coords.size(); ++j) CHECK(coords[j] == Rational(i == j ? 1 : 0));
      // Adding a boundary does not change the class.
      SparseVector shifted = reps[i];
      if (!cols.empty()) axpy(shifted, Rational(3), d0.apply(unit_vector(0)));
      CHECK(red.classify(1, shifted) == coords);
    }
  }
}
