#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rht/cdga.hpp"
#include "rht/cohomology_table.hpp"
#include "rht/reduction.hpp"

namespace rht {

/// M viewed as an A-bimodule through f: a.m = f(a)m, m.a = m f(a).
struct BimoduleViaMorphism {
  TruncatedDGA algebra;
  TruncatedDGA module;
  DGAMorphism map;
};

/// Truncates the source algebra high enough (module cutoff + n_max + 2) that
/// no tensor word entry of a cochain in degrees >= -n_max-1 is lost.
BimoduleViaMorphism make_bimodule(const DGAMorphism& f, int n_max);
/// Coefficients (A, A, id) with the module truncated at `cutoff`.
BimoduleViaMorphism self_bimodule(const FreeCDGA& A, int cutoff, int n_max);

using Letter = uint16_t;

/// Normalized Hochschild cochains Hom(Ā^{⊗p}, M) in total degrees
/// t in [-n_max-1, 1], with bases of dual pairs (word, output).
///
/// A word a_1|...|a_p of Ā basis elements has bar degree Σ(|a_i| - 1); the
/// cochain dual to (word, m) has total degree |m| - bar degree. Within a
/// degree, basis elements are ordered by p, then word, then m, so each
/// bar degree p occupies a contiguous block.
class BarCochainComplex {
 public:
  struct Options {
    bool keep_split = true;  // also store b and delta separately
  };

  static BarCochainComplex build(const BimoduleViaMorphism& coeffs, int n_max, int cutoff, Options opt);
  static BarCochainComplex build(const BimoduleViaMorphism& coeffs, int n_max, int cutoff) {
    return build(coeffs, n_max, cutoff, Options{});
  }

  int n_max() const noexcept { return n_max_; }
  int cutoff() const noexcept { return cutoff_; }
  int min_degree() const noexcept { return -n_max_ - 1; }
  int max_degree() const noexcept { return 1; }
  const BimoduleViaMorphism& coefficients() const noexcept { return *coeffs_; }

  std::size_t dim(int t) const { return space(t).outputs.size(); }
  std::span<const Letter> word(int t, std::size_t i) const;
  int32_t output(int t, std::size_t i) const { return space(t).outputs.at(i); }
  std::size_t arity(int t, std::size_t i) const { return word(t, i).size(); }
  /// Index of the dual pair (word, m) in degree t, if present.
  std::optional<int32_t> index_of(int t, std::span<const Letter> word, int32_t m) const;
  /// [begin, end) of the bar degree p block in degree t; BlockMissing when empty.
  std::pair<std::size_t, std::size_t> block(int t, std::size_t p) const;
  std::size_t max_arity(int t) const { return space(t).block_start.size() - 2; }

  /// Differentials out of degree t, for min_degree() <= t <= 0.
  const SparseMatrix& total(int t) const;
  const SparseMatrix& hochschild_part(int t) const;  // b: raises p
  const SparseMatrix& internal_part(int t) const;    // delta: keeps p
  bool has_split() const noexcept { return !b_.empty(); }

  GradedComplex graded() const;

  /// Bar degree (Σ(|a|-1)) of letters, shared with the Hodge action.
  int bar_degree(Letter a) const { return bar_degree_.at(a); }

 private:
  struct Space {
    std::vector<Letter> pool;
    std::vector<uint32_t> word_start;  // size n + 1
    std::vector<int32_t> outputs;
    std::vector<std::size_t> block_start;  // by arity, size max_p + 2
    std::unordered_map<std::string, int32_t> index;
  };
  const Space& space(int t) const;
  static std::string key(std::span<const Letter> word, int32_t m);

  std::shared_ptr<const BimoduleViaMorphism> coeffs_;
  int n_max_ = 0;
  int cutoff_ = 0;
  std::vector<int> bar_degree_;
  std::vector<Space> spaces_;     // degrees min_degree()..1
  std::vector<SparseMatrix> d_;   // degrees min_degree()..0
  std::vector<SparseMatrix> b_;
  std::vector<SparseMatrix> delta_;

  friend class BarBuilder;
};

/// D(phi) for a cochain of degree t. Throws BlockMissing outside the stored window.
SparseVector hochschild_differential(const BarCochainComplex& complex, int t, const SparseVector& phi);

struct ComplexInvariants {
  bool b_squared_zero = true;
  bool delta_squared_zero = true;
  bool anticommute = true;  // b delta + delta b = 0
  bool total_squared_zero = true;
  std::size_t checked_cochains = 0;
  bool ok() const noexcept { return b_squared_zero && delta_squared_zero && anticommute && total_squared_zero; }
};
/// Exact check on every stored basis cochain (needs the split differentials).
ComplexInvariants check_invariants(const BarCochainComplex& complex);

/// Rule for trusting HH^t at a truncation: D >= 2|t| + 4.
bool certified_degree(int t, int cutoff);

/// Cohomology of the total complex with cocycle representatives.
class HochschildCohomology {
 public:
  HochschildCohomology(const BimoduleViaMorphism& coeffs, int n_max, int cutoff,
                       BarCochainComplex::Options opt = {false});

  const BarCochainComplex& complex() const noexcept { return complex_; }
  const ReducedComplex& reduced() const noexcept { return *reduced_; }
  std::size_t dim(int t) const { return reduced_->betti(t); }
  std::vector<SparseVector> representatives(int t) const { return reduced_->representatives(t); }
  std::vector<Rational> classify(int t, const SparseVector& z) const { return reduced_->classify(t, z); }
  /// HH^t for t in [-n_max, 0] with certification flags.
  CohomologyTable table() const;

 private:
  BarCochainComplex complex_;
  std::shared_ptr<ReducedComplex> reduced_;
};

CohomologyTable hh(const BimoduleViaMorphism& coeffs, int n_max, int cutoff);

/// Cup product of cochains: (phi ∪ psi)(w1|w2) = (-1)^{|psi| bar(w1)} phi(w1) psi(w2).
SparseVector cup_product(const BarCochainComplex& complex, int t1, const SparseVector& phi, int t2,
                         const SparseVector& psi);

struct HH0Algebra {
  std::size_t dim_hh0 = 0;
  std::size_t dim_n = 0;              // kernel of HH^0 -> H^0(A) = Q
  std::optional<int> nilpotency;      // least e with N^e = 0; empty when not nilpotent
  bool nilpotent() const noexcept { return nilpotency.has_value(); }
};
/// Requires coefficients (A, A, id); throws InvalidMorphism otherwise.
HH0Algebra hh0_algebra(const HochschildCohomology& hh);

}  // namespace rht
