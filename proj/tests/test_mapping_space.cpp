#include <doctest.h>

#include <vector>

#include "rht/errors.hpp"
#include "rht/mapping_space.hpp"
#include "rht/sullivan.hpp"

using namespace rht;

namespace {

FreeCDGA model(const char* name) { return standard_model(SpaceDescriptor::parse(name)); }

// sum_i dim V^i dim H^{i-n}(X), evaluated from hand-written tables.
std::size_t formula(const std::vector<int>& v_degrees, const std::vector<std::size_t>& hx, int n) {
  std::size_t s = 0;
  for (int d : v_degrees) {
    const int j = d - n;
    if (j >= 0 && j < int(hx.size())) s += hx[j];
  }
  return s;
}

}  // namespace

TEST_CASE("derivation complex blocks") {
  // S3 -> point: a single derivation x -> 1 in degree -3.
  FreeCDGA s3 = model("S3");
  TruncatedDGA pt(standard_model(SpaceDescriptor::point()), 4);
  DerivationComplex a(DGAMorphism::constant(s3, pt), 3);
  for (int k = a.min_degree(); k <= 0; ++k) CHECK(a.dim(k) == (k == -3 ? 1u : 0u));

  // S3 -> S3 identity: degrees -3 (x -> 1) and 0 (x -> x).
  TruncatedDGA t3(s3, 6);
  DerivationComplex b(DGAMorphism::identity(t3), 3);
  for (int k = b.min_degree(); k <= 0; ++k) CHECK(b.dim(k) == ((k == -3 || k == 0) ? 1u : 0u));

  // S3 -> S2 constant: degree -n block is the degree 3 - n part of the S2 model.
  TruncatedDGA t2(model("S2"), 6);
  DerivationComplex c(DGAMorphism::constant(s3, t2), 3);
  for (int n = 0; n <= 3; ++n) CHECK(c.dim(-n) == t2.dim(3 - n));
  CHECK(c.squares_to_zero());
}

TEST_CASE("aq examples") {
  FreeCDGA s3 = model("S3"), s2 = model("S2");
  auto id3 = aq(DGAMorphism::identity(TruncatedDGA(s3, 8)), 3);
  CHECK(id3.dim(-1) == 0);
  CHECK(id3.dim(-2) == 0);
  CHECK(id3.dim(-3) == 1);
  CHECK(id3.dim(-4) == 0);

  auto c = aq(DGAMorphism::constant(s3, TruncatedDGA(s2, 8)), 2);
  CHECK(c.dim(-1) == 1);
  CHECK(c.dim(-2) == 0);
  CHECK(c.dim(-3) == 1);

  // S2 identity: y -> x is exact, so H^{-1} = 0.
  auto id2 = aq(DGAMorphism::identity(TruncatedDGA(s2, 8)), 3);
  CHECK(id2.dim(-1) == 0);
  CHECK(id2.dim(-3) == 1);
}

TEST_CASE("aq errors") {
  FreeCDGA cp2 = model("CP2");
  CHECK_THROWS_AS(DerivationComplex(DGAMorphism::identity(TruncatedDGA(cp2, 4)), 2), CutoffTooSmall);
  FreeCDGA s2 = model("S2");
  TruncatedDGA T(s2, 8);
  auto bad = DGAMorphism::from_polynomials(s2, T, {Rational(2) * s2.generator(0), s2.generator(1)});
  CHECK_THROWS_AS(aq(bad, 2), InvalidMorphism);
}

TEST_CASE("constant map formula") {
  FreeCDGA s3 = model("S3"), s2 = model("S2"), cp2 = model("CP2");
  TruncatedDGA pt(standard_model(SpaceDescriptor::point()), 6);
  auto a = constant_map_formula(cp2, pt, 5);
  for (int n = 1; n <= 5; ++n) CHECK(a.dim(n) == formula({2, 5}, {1}, n));

  TruncatedDGA x2(s2, 8);
  auto b = constant_map_formula(s3, x2, 3);
  CHECK(b.dim(1) == 1);
  CHECK(b.dim(2) == 0);
  CHECK(b.dim(3) == 1);

  auto c = constant_map_formula(s2, x2, 3);
  CHECK(c.dim(1) == 1);
  CHECK(c.dim(2) == 1);

  FreeCDGA shell("L", {{"b", 2}, {"a", 3}}, {});
  FreeCDGA linear("L", shell.generators(), {shell.generator("a"), Polynomial()});
  CHECK_THROWS_AS(constant_map_formula(linear, x2, 3), NotMinimal);
}

TEST_CASE("constant maps: derivations agree with the formula") {
  for (const char* y : {"S2", "S3", "CP2", "S2xS3"})
    for (const char* x : {"pt", "S2", "S3", "CP2"}) {
      CAPTURE(y);
      CAPTURE(x);
      FreeCDGA Y = model(y);
      TruncatedDGA X(model(x), 10);
      auto der = aq(DGAMorphism::constant(Y, X), 4);
      auto f = constant_map_formula(Y, X, 5);
      for (int n = 1; n <= 5; ++n) CHECK(der.dim(-n) == f.dim(n));
    }
}

TEST_CASE("verification cases pass") {
  for (const char* name : {"s3-id", "cp2-id", "s2-to-s3-const", "point-to-s3", "point-to-s2", "point-to-cp2", "s3xs3-id"}) {
    CAPTURE(name);
    auto r = verify_case(corpus_case(name), 3, 10);
    CHECK(r.pass);
    CHECK(r.first_failure.empty());
    CHECK_NOTHROW(enforce(r));
  }
  auto r = verify_case(corpus_case("s3-id"), 4, 12);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.rows[1].pi_map == 1);
  CHECK(r.rows[1].hh_weight1 == 1);
  CHECK(r.rows[1].hh_total == 1);
  REQUIRE(r.pi1.has_value());
  CHECK(r.pi1->der == 0);
  CHECK(r.pi1->n == 0);
  CHECK_THROWS_AS(corpus_case("s4-id"), UnsupportedDescriptor);
}

TEST_CASE("a mislabeled model fails verification") {
  auto c = corpus_case("s2-id");
  FreeCDGA bad("S2", {{"x", 2}, {"y", 3}}, {});
  c.X_model = bad;
  c.Y_model = bad;
  auto r = verify_case(c, 3, 10);
  CHECK(!r.pass);
  CHECK(!r.first_failure.empty());
  CHECK_THROWS_AS(enforce(r), VerificationFailed);
}

TEST_CASE("explicit maps") {
  // S2 -> S2 of degree 2 on H^2.
  VerificationCase c{"s2-deg2", SpaceDescriptor::sphere(2), SpaceDescriptor::sphere(2),
                     VerificationCase::MapKind::explicit_images, {}, {}, {}};
  FreeCDGA s2 = model("S2");
  c.images = {Rational(2) * s2.generator(0), Rational(4) * s2.generator(1)};
  auto r = verify_case(c, 3, 10);
  CHECK(r.pass);
}

TEST_CASE("free loop model") {
  FreeCDGA s2 = model("S2");
  FreeCDGA L = free_loop_model(s2);
  REQUIRE(L.num_generators() == 4);
  CHECK(L.generator_spec(2).degree == 1);
  CHECK(L.generator_spec(3).degree == 2);
  CHECK_NOTHROW(check_presentation(L, 10, false));

  // H_*(LS^3) = Q[u2] ⊗ Λ(x3): dims 1,0,1,1,1,1,...
  auto s3 = loop_homology_dims(model("S3"), 3, 6);
  for (auto d : s3) CHECK(d == 1);
  // Kunneth for S3 x S3.
  auto s33 = loop_homology_dims(model("S3xS3"), 6, 3);
  std::vector<std::size_t> single = {1, 0, 1, 1, 1, 1, 1, 1, 1, 1};
  for (int n = 0; n <= 3; ++n) {
    std::size_t k = 0;
    for (int i = 0; i <= n + 6; ++i) k += single[i] * single[n + 6 - i];
    CHECK(s33[n] == k);
  }
}

TEST_CASE("loop space check") {
  auto r = loop_space_check(model("S3"), 3, 5, 14, std::vector<std::size_t>(6, 1));
  CHECK(r.pass);
  CHECK_NOTHROW(enforce(r));
  auto bad = loop_space_check(model("S3"), 3, 3, 12, {1, 2, 1, 1});
  CHECK(!bad.pass);
  CHECK_THROWS_AS(enforce(bad), MismatchedExpectation);
  CHECK_THROWS_AS(loop_space_check(model("S3"), 3, 3, 12, {1, 1}), MismatchedExpectation);

  auto pt = loop_space_check(standard_model(SpaceDescriptor::point()), 0, 3, 8, {1, 0, 0, 0});
  CHECK(pt.pass);
}
