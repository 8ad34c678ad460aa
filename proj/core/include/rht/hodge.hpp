#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "rht/cohomology_table.hpp"
#include "rht/hochschild.hpp"
#include "rht/rational.hpp"

namespace rht {

/// One-line notation, 0-based: sigma[j] is the image of j.
using Permutation = std::vector<int>;

/// Number of j with sigma(j) > sigma(j+1).
int descents(const Permutation& sigma);
Permutation compose(const Permutation& sigma, const Permutation& tau);  // sigma o tau
Permutation inverse(const Permutation& sigma);
/// Lexicographic rank in S_p and its inverse.
std::size_t permutation_rank(const Permutation& sigma);
Permutation permutation_unrank(std::size_t p, std::size_t rank);

inline constexpr std::size_t kMaxArity = 8;

/// Element of Q[S_p], stored densely by permutation rank.
class PermAlgebraElement {
 public:
  explicit PermAlgebraElement(std::size_t p);
  static PermAlgebraElement identity(std::size_t p);

  std::size_t arity() const noexcept { return p_; }
  const Rational& coeff(std::size_t rank) const { return coeffs_.at(rank); }
  Rational coeff(const Permutation& sigma) const { return coeffs_.at(permutation_rank(sigma)); }
  void add(const Permutation& sigma, const Rational& c);
  std::size_t support_size() const noexcept;

  PermAlgebraElement& operator+=(const PermAlgebraElement& o);
  PermAlgebraElement& operator-=(const PermAlgebraElement& o);
  friend PermAlgebraElement operator+(PermAlgebraElement a, const PermAlgebraElement& b) { return a += b; }
  friend PermAlgebraElement operator-(PermAlgebraElement a, const PermAlgebraElement& b) { return a -= b; }
  friend PermAlgebraElement operator*(const Rational& c, const PermAlgebraElement& a);
  /// Product in Q[S_p]: (sum a_s s)(sum b_t t) = sum a_s b_t (s o t).
  friend PermAlgebraElement operator*(const PermAlgebraElement& a, const PermAlgebraElement& b);
  friend bool operator==(const PermAlgebraElement&, const PermAlgebraElement&) = default;

  bool is_zero() const noexcept { return support_size() == 0; }

 private:
  std::size_t p_;
  std::vector<Rational> coeffs_;
};

/// lambda_k = sum of all k-shuffles = sum_sigma C(p + k - 1 - des(sigma), p) sigma.
PermAlgebraElement adams_operation(std::size_t p, int k);

struct EulerianIdempotentFamily {
  std::size_t p = 0;
  std::vector<PermAlgebraElement> idempotents;  // idempotents[i-1] = e^{(i)}
  const PermAlgebraElement& e(std::size_t i) const { return idempotents.at(i - 1); }
};

/// Solves lambda_k = sum_i k^i e^{(i)}, k = 1..p. Memoized per arity.
/// Throws ArityTooLarge for p > kMaxArity.
std::shared_ptr<const EulerianIdempotentFamily> eulerian_idempotents(std::size_t p);

/// sigma . (w_1 ... w_p): w_j moves to position sigma(j); the sign is the
/// product of (-1)^{deg_j deg_k} over pairs whose order is reversed.
struct SignedWord {
  std::vector<Letter> word;
  int sign = 1;
};
SignedWord signed_action(const Permutation& sigma, std::span<const Letter> word, std::span<const int> degrees);

/// Dual action of x in Q[S_p] on a cochain: (phi . x)(w) = phi(x . w), with
/// Koszul signs on bar degrees. Entries of other arities are dropped.
SparseVector act_on_cochain(const BarCochainComplex& c, int t, const SparseVector& phi, const PermAlgebraElement& x);

/// Dual of lambda_2 (sum over deshuffles w|S ++ w|S^c) applied to any cochain.
SparseVector adams2_on_cochain(const BarCochainComplex& c, int t, const SparseVector& phi);

/// HH^t per weight: HH^t_(w) is the 2^w eigenspace of lambda_2 on HH^t.
/// Throws ProjectionNotSubcomplex if lambda_2 fails to carry a cocycle to a cocycle.
CohomologyTable weight_decomposition(const HochschildCohomology& hh);

/// Weight-w dims computed from explicit Eulerian projectors on the cochains,
/// for complexes whose arities all stay <= kMaxArity. Asserts that every
/// projector commutes with the differential (ProjectionNotSubcomplex).
CohomologyTable weight_decomposition_explicit(const BarCochainComplex& c);

/// The weight-1 column.
CohomologyTable harrison(const HochschildCohomology& hh);

}  // namespace rht
