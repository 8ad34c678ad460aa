#include <doctest.h>

#include <vector>

#include "rht/cdga.hpp"
#include "rht/errors.hpp"
#include "rht/sullivan.hpp"

using namespace rht;

namespace {

FreeCDGA two_sphere() {
  FreeCDGA shell("S2", {{"x", 2}, {"y", 3}}, {});
  return FreeCDGA("S2", shell.generators(), {Polynomial(), power(shell, shell.generator("x"), 2)});
}

// Number of monomials of degree k in a free graded-commutative algebra,
// counted by the generating function prod (1 + t^odd) / (1 - t^even).
std::size_t count_monomials(const std::vector<int>& degrees, int k) {
  std::vector<std::size_t> series(std::size_t(k) + 1, 0);
  series[0] = 1;
  for (int d : degrees) {
    if (d % 2) {
      for (int i = k; i >= d; --i) series[i] += series[i - d];
    } else {
      for (int i = d; i <= k; ++i) series[i] += series[i - d];
    }
  }
  return series[k];
}

}  // namespace

TEST_CASE("odd generators anticommute and square to zero") {
  FreeCDGA A("W", {{"a", 3}, {"b", 3}, {"c", 2}}, {});
  Polynomial a = A.generator("a"), b = A.generator("b"), c = A.generator("c");
  CHECK(koszul_multiply(A, b, a) == -koszul_multiply(A, a, b));
  CHECK(koszul_multiply(A, a, a).is_zero());
  CHECK(koszul_multiply(A, c, a) == koszul_multiply(A, a, c));
  CHECK(power(A, c, 3).terms().begin()->first.exps == std::vector<int>{0, 0, 3});
}

TEST_CASE("Leibniz extension squares to zero on a valid presentation") {
  FreeCDGA S2 = two_sphere();
  Polynomial xy = koszul_multiply(S2, S2.generator("x"), S2.generator("y"));
  Polynomial d = extend_differential(S2, xy);
  // d(xy) = x * x^2 = x^3 (|x| even).
  CHECK(d == power(S2, S2.generator("x"), 3));
  CHECK(extend_differential(S2, d).is_zero());
}

TEST_CASE("presentation checks") {
  CHECK_NOTHROW(check_presentation(two_sphere(), 10));
  FreeCDGA shell("B", {{"x", 2}, {"y", 3}}, {});
  FreeCDGA bad_degree("B", shell.generators(), {Polynomial(), shell.generator("x")});
  CHECK_THROWS_AS(check_presentation(bad_degree, 10), DegreeRuleViolation);

  FreeCDGA sq("D", {{"a", 2}, {"b", 3}, {"c", 4}}, {});
  // db = a^2, dc = a b has degree 5 and d(ab) = a^3 != 0.
  FreeCDGA not_square_zero("D", sq.generators(),
                           {Polynomial(), power(sq, sq.generator("a"), 2), koszul_multiply(sq, sq.generator("a"), sq.generator("b"))});
  CHECK_THROWS_AS(check_presentation(not_square_zero, 10), DifferentialSquareNonzero);

  FreeCDGA degree_one("E", {{"t", 1}}, {});
  CHECK_THROWS_AS(check_presentation(degree_one, 10), NotSimplyConnected);
  CHECK_NOTHROW(check_presentation(degree_one, 10, false));
  CHECK_THROWS_AS(FreeCDGA("F", {{"x", 2}, {"x", 4}}, {}), InvalidPresentation);
  CHECK_THROWS_AS(shell.index_of("q"), UnknownGenerator);
}

TEST_CASE("truncated algebra dimensions match the counting oracle") {
  FreeCDGA A("W", {{"x", 2}, {"y", 3}, {"z", 4}, {"u", 5}}, {});
  TruncatedDGA T(A, 14);
  for (int k = 0; k <= 14; ++k) CHECK(T.dim(k) == count_monomials({2, 3, 4, 5}, k));
}

TEST_CASE("products in a truncation respect signs and the cutoff") {
  FreeCDGA A("W", {{"a", 3}, {"b", 3}}, {});
  TruncatedDGA T(A, 5);
  auto a = *T.index_of(A.generator_monomial(0)), b = *T.index_of(A.generator_monomial(1));
  CHECK(T.mult(a, b).sign == -T.mult(b, a).sign);
  CHECK(T.mult(a, a).sign == 0);
  // ab has degree 6 > 5.
  CHECK(T.mult(a, b).sign == 0);
  TruncatedDGA T6(A, 6);
  CHECK(T6.mult(a, b).sign != 0);
}

TEST_CASE("cohomology of standard models") {
  // S^2: 1,0,1,0,0,...
  auto h = cohomology(TruncatedDGA(two_sphere(), 12), 11);
  std::vector<std::size_t> s2 = {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  for (int k = 0; k <= 11; ++k) CHECK(h.dim(k) == s2[k]);

  // CP^2: Q[x]/x^3.
  auto cp2 = cohomology(TruncatedDGA(standard_model(SpaceDescriptor::complex_projective(2)), 12), 11);
  for (int k = 0; k <= 11; ++k) CHECK(cp2.dim(k) == ((k == 0 || k == 2 || k == 4) ? 1u : 0u));

  // Odd sphere with zero differential.
  auto s3 = cohomology(TruncatedDGA(standard_model(SpaceDescriptor::sphere(3)), 10), 9);
  for (int k = 0; k <= 9; ++k) CHECK(s3.dim(k) == ((k == 0 || k == 3) ? 1u : 0u));

  CHECK_THROWS_AS(cohomology(TruncatedDGA(two_sphere(), 6), 6), CutoffTooSmall);
  CHECK(check_connected(TruncatedDGA(two_sphere(), 6)));
}

TEST_CASE("monomial ideals cut down the algebra") {
  FreeCDGA A("P", {{"x", 2}}, {});
  TruncatedDGA T(A, 10, {Monomial{{3}}});
  auto h = cohomology(T, 9);
  for (int k = 0; k <= 9; ++k) CHECK(h.dim(k) == ((k == 0 || k == 2 || k == 4) ? 1u : 0u));

  // (y) is not stable under dy = x.
  FreeCDGA B("Q", {{"x", 4}, {"y", 3}}, {});
  FreeCDGA Bd("Q", B.generators(), {Polynomial(), B.generator("x")});
  CHECK_THROWS_AS(TruncatedDGA(Bd, 10, {Monomial{{0, 1}}}), InvalidPresentation);
}

TEST_CASE("tensor products rename clashing generators") {
  FreeCDGA S3 = standard_model(SpaceDescriptor::sphere(3));
  FreeCDGA P = tensor_product(S3, S3);
  REQUIRE(P.num_generators() == 2);
  CHECK(P.generator_spec(0).name != P.generator_spec(1).name);
  auto h = cohomology(TruncatedDGA(P, 8), 7);
  for (int k = 0; k <= 7; ++k) CHECK(h.dim(k) == (k == 0 || k == 6 ? 1u : k == 3 ? 2u : 0u));
}

TEST_CASE("morphisms validate degree and commutation") {
  FreeCDGA S2 = two_sphere();
  TruncatedDGA T(S2, 10);
  CHECK_NOTHROW(DGAMorphism::identity(T).validate());
  // x -> 2x forces y -> 4y.
  auto good = DGAMorphism::from_polynomials(S2, T, {Rational(2) * S2.generator("x"), Rational(4) * S2.generator("y")});
  CHECK_NOTHROW(good.validate());
  auto bad = DGAMorphism::from_polynomials(S2, T, {Rational(2) * S2.generator("x"), S2.generator("y")});
  CHECK_THROWS_AS(bad.validate(), InvalidMorphism);
  auto wrong_degree = DGAMorphism::from_polynomials(S2, T, {S2.generator("y"), Polynomial()});
  CHECK_THROWS_AS(wrong_degree.validate(), InvalidMorphism);
  CHECK_NOTHROW(DGAMorphism::constant(S2, T).validate());

  auto qi = is_quasi_iso(DGAMorphism::identity(T), T, 9);
  for (bool b : qi) CHECK(b);
}
