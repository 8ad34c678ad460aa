#include <doctest.h>

#include <numeric>
#include <random>
#include <vector>

#include "rht/errors.hpp"
#include "rht/hochschild.hpp"
#include "rht/hodge.hpp"
#include "rht/sullivan.hpp"

using namespace rht;

namespace {

Rational binom(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Rational r(1);
  for (int i = 1; i <= k; ++i) r = r * Rational(n - k + i) / Rational(i);
  return r;
}

std::size_t factorial(std::size_t p) { return p <= 1 ? 1 : p * factorial(p - 1); }

FreeCDGA model(const char* name) { return standard_model(SpaceDescriptor::parse(name)); }

}  // namespace

TEST_CASE("descents and permutation helpers") {
  CHECK(descents({0, 1, 2}) == 0);
  CHECK(descents({1, 0}) == 1);
  CHECK(descents({2, 0, 1}) == 1);
  CHECK(descents({3, 2, 1, 0}) == 3);
  for (std::size_t p = 1; p <= 5; ++p)
    for (std::size_t r = 0; r < factorial(p); ++r) {
      Permutation s = permutation_unrank(p, r);
      CHECK(permutation_rank(s) == r);
      CHECK(compose(s, inverse(s)) == permutation_unrank(p, 0));
    }
}

TEST_CASE("small arity idempotents") {
  auto f1 = eulerian_idempotents(1);
  CHECK(f1->e(1) == PermAlgebraElement::identity(1));

  // e1 = (id - tau)/2, e2 = (id + tau)/2.
  auto f2 = eulerian_idempotents(2);
  const Permutation id{0, 1}, tau{1, 0};
  CHECK(f2->e(1).coeff(id) == Rational(1, 2));
  CHECK(f2->e(1).coeff(tau) == Rational(-1, 2));
  CHECK(f2->e(2).coeff(id) == Rational(1, 2));
  CHECK(f2->e(2).coeff(tau) == Rational(1, 2));
  PermAlgebraElement shuffle = PermAlgebraElement::identity(2);
  shuffle.add(tau, Rational(1));
  CHECK((f2->e(1) * shuffle).is_zero());
}

TEST_CASE("Eulerian idempotent identities for p <= 5") {
  for (std::size_t p = 1; p <= 5; ++p) {
    CAPTURE(p);
    auto f = eulerian_idempotents(p);
    PermAlgebraElement sum(p);
    for (std::size_t i = 1; i <= p; ++i) {
      sum += f->e(i);
      for (std::size_t j = 1; j <= p; ++j) {
        PermAlgebraElement prod = f->e(i) * f->e(j);
        CHECK(prod == (i == j ? f->e(i) : PermAlgebraElement(p)));
      }
      for (int k = 1; k <= int(p); ++k) {
        Rational ki(1);
        for (std::size_t m = 0; m < i; ++m) ki *= Rational(k);
        CHECK(adams_operation(p, k) * f->e(i) == ki * f->e(i));
      }
    }
    CHECK(sum == PermAlgebraElement::identity(p));
  }
}

TEST_CASE("first idempotent against its closed form") {
  // The k-linear coefficient of C(p + k - 1 - d, p) is (-1)^d / (p C(p-1, d)).
  for (std::size_t p = 1; p <= 6; ++p) {
    auto f = eulerian_idempotents(p);
    for (std::size_t r = 0; r < factorial(p); ++r) {
      const Permutation s = permutation_unrank(p, r);
      const int d = descents(s);
      Rational expect = Rational(d % 2 ? -1 : 1) / (Rational(int(p)) * binom(int(p) - 1, d));
      CHECK(f->e(1).coeff(s) == expect);
    }
  }
}

TEST_CASE("Adams operations compose multiplicatively") {
  for (std::size_t p = 1; p <= 4; ++p)
    for (int k = 1; k <= 3; ++k)
      for (int l = 1; l <= 3; ++l) CHECK(adams_operation(p, k) * adams_operation(p, l) == adams_operation(p, k * l));
  // lambda_1 is the identity.
  CHECK(adams_operation(4, 1) == PermAlgebraElement::identity(4));
}

TEST_CASE("arity limits") {
  CHECK_THROWS_AS(eulerian_idempotents(kMaxArity + 1), ArityTooLarge);
  CHECK_THROWS_AS(PermAlgebraElement(9), ArityTooLarge);
  std::vector<Letter> w{1, 2};
  std::vector<int> deg{3, 5};
  CHECK_THROWS_AS(signed_action({0, 1, 2}, w, deg), ArityMismatch);
}

TEST_CASE("signed action on words") {
  const Permutation tau{1, 0};
  std::vector<Letter> w{7, 9};
  std::vector<int> even_odd{2, 3}, odd_odd{3, 5};
  auto a = signed_action(tau, w, even_odd);
  CHECK(a.word == std::vector<Letter>{9, 7});
  CHECK(a.sign == 1);
  auto b = signed_action(tau, w, odd_odd);
  CHECK(b.sign == -1);

  // Action axiom on random words.
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t p = 1 + rng() % 5;
    std::vector<Letter> word(p);
    std::vector<int> degs(p);
    for (std::size_t i = 0; i < p; ++i) {
      word[i] = Letter(rng() % 50);
      degs[i] = int(rng() % 4);
    }
    Permutation s = permutation_unrank(p, rng() % factorial(p));
    Permutation t = permutation_unrank(p, rng() % factorial(p));
    auto tw = signed_action(t, word, degs);
    // Degrees travel with their letters.
    std::vector<int> tdegs(p);
    for (std::size_t j = 0; j < p; ++j) tdegs[t[j]] = degs[j];
    auto stw = signed_action(s, tw.word, tdegs);
    auto direct = signed_action(compose(s, t), word, degs);
    CHECK(direct.word == stw.word);
    CHECK(direct.sign == tw.sign * stw.sign);
  }
}

TEST_CASE("weights of the three-sphere") {
  HochschildCohomology h(self_bimodule(model("S3"), 10, 4), 4, 10);
  auto w = weight_decomposition(h);
  CHECK(w.weight(0, 0) == 1);
  CHECK(w.weight(-1, 2) == 1);
  CHECK(w.weight(-1, 1) == 0);
  CHECK(w.weight(-2, 1) == 1);
  CHECK(w.dim(-2) == 1);
  auto harr = harrison(h);
  CHECK(harr.dim(-2) == 1);
  CHECK(harr.dim(-1) == 0);
}

TEST_CASE("weights sum to the total and agree with explicit projectors") {
  struct Case {
    const char* name;
    int cutoff;
  };
  for (Case c : {Case{"S2", 6}, Case{"CP2", 6}, Case{"S3xS3", 6}, Case{"S3", 8}}) {
    CAPTURE(c.name);
    const int n_max = 2;
    auto coeffs = self_bimodule(model(c.name), c.cutoff, n_max);
    HochschildCohomology h(coeffs, n_max, c.cutoff);
    auto lam = weight_decomposition(h);
    auto cx = BarCochainComplex::build(coeffs, n_max, c.cutoff, {false});
    if (cx.max_arity(cx.min_degree()) > kMaxArity) continue;
    auto expl = weight_decomposition_explicit(cx);
    for (int t = -n_max; t <= 0; ++t) {
      const auto& row = lam.at(t);
      CHECK(std::accumulate(row.weights.begin(), row.weights.end(), std::size_t(0)) == row.dim);
      const std::size_t cols = std::max(lam.max_weight_columns(), expl.max_weight_columns());
      for (std::size_t w = 0; w < cols; ++w) CHECK(lam.weight(t, w) == expl.weight(t, w));
    }
  }
}

TEST_CASE("point algebra has no Harrison cohomology in negative degrees") {
  HochschildCohomology h(self_bimodule(standard_model(SpaceDescriptor::point()), 6, 3), 3, 6);
  auto harr = harrison(h);
  for (int n = 1; n <= 3; ++n) CHECK(harr.dim(-n) == 0);
}
