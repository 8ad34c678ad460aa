#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rht/cohomology_table.hpp"
#include "rht/linalg.hpp"
#include "rht/rational.hpp"
#include "rht/sparse_matrix.hpp"

namespace rht {

struct GeneratorSpec {
  std::string name;
  int degree = 1;

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Exponent vector in generator declaration order. Odd generators carry
/// exponent 0 or 1; the factors of a monomial are read in declaration order.
struct Monomial {
  std::vector<int> exps;

  bool is_unit() const noexcept;
  int total_exponent() const noexcept;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Descending lexicographic order on exponent vectors (x^2 before x y before y).
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const { return a.exps > b.exps; }
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, MonomialOrder>;

  Polynomial() = default;
  static Polynomial monomial(Monomial m, Rational c = Rational(1));

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  void add_term(const Monomial& m, const Rational& c);
  Rational coefficient(const Monomial& m) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator-() const;
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  Terms terms_;
};

/// Free graded-commutative algebra on finitely many generators with a
/// differential prescribed on generators. The default value is the ground field.
class FreeCDGA {
 public:
  FreeCDGA() = default;
  /// Checks names, degrees and the shape of the differential values; the
  /// degree rule and d^2 = 0 are left to check_presentation.
  FreeCDGA(std::string name, std::vector<GeneratorSpec> generators, std::vector<Polynomial> differential);

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  std::size_t num_generators() const noexcept { return gens_.size(); }
  const std::vector<GeneratorSpec>& generators() const noexcept { return gens_; }
  const GeneratorSpec& generator_spec(std::size_t i) const { return gens_.at(i); }
  const Polynomial& differential_of(std::size_t i) const { return diff_.at(i); }
  const std::vector<Polynomial>& differential() const noexcept { return diff_; }

  /// Throws UnknownGenerator.
  std::size_t index_of(std::string_view name) const;
  bool has_generator(std::string_view name) const noexcept;
  bool is_odd(std::size_t i) const { return gens_.at(i).degree % 2 != 0; }
  int max_generator_degree() const noexcept;

  Monomial unit_monomial() const { return Monomial{std::vector<int>(gens_.size(), 0)}; }
  Monomial generator_monomial(std::size_t i) const;
  Polynomial one() const { return Polynomial::monomial(unit_monomial()); }
  Polynomial generator(std::size_t i) const { return Polynomial::monomial(generator_monomial(i)); }
  Polynomial generator(std::string_view name) const { return generator(index_of(name)); }

  /// Throws UnknownGenerator when the monomial does not belong to this algebra.
  int degree(const Monomial& m) const;
  /// Degree of a homogeneous polynomial; nullopt for zero; throws DegreeRuleViolation if mixed.
  std::optional<int> degree(const Polynomial& p) const;

  friend bool operator==(const FreeCDGA&, const FreeCDGA&) = default;

 private:
  std::string name_ = "Q";
  std::vector<GeneratorSpec> gens_;
  std::vector<Polynomial> diff_;
};

/// Product of monomials: the canonical monomial and the Koszul sign picked up
/// by sorting factors, or sign 0 when an odd generator repeats.
struct SignedMonomial {
  Monomial monomial;
  int sign = 0;
};
SignedMonomial multiply_monomials(const FreeCDGA& A, const Monomial& u, const Monomial& v);

Polynomial koszul_multiply(const FreeCDGA& A, const Polynomial& a, const Polynomial& b);
Polynomial power(const FreeCDGA& A, const Polynomial& a, int e);

/// Leibniz extension d(uv) = d(u)v + (-1)^{|u|} u d(v).
Polynomial extend_differential(const FreeCDGA& A, const Polynomial& p);

struct PresentationReport {
  int cutoff = 0;
  std::vector<std::string> checked;  // generators whose d^2 was verified
  std::vector<std::string> skipped;  // d^2 lands above cutoff + 2
};
/// Throws DegreeRuleViolation, DifferentialSquareNonzero, NotSimplyConnected.
PresentationReport check_presentation(const FreeCDGA& A, int cutoff, bool simply_connected = true);

FreeCDGA tensor_product(const FreeCDGA& A, const FreeCDGA& B);

/// Degree-truncated realization of a free CDGA, optionally divided by a
/// monomial ideal stable under d. Basis elements are monomials, indexed
/// globally by degree and then by the monomial order.
class TruncatedDGA {
 public:
  TruncatedDGA() : TruncatedDGA(FreeCDGA(), 0) {}
  TruncatedDGA(const FreeCDGA& presentation, int cutoff, std::vector<Monomial> relations = {});

  int cutoff() const noexcept { return data_->cutoff; }
  const FreeCDGA& presentation() const noexcept { return data_->pres; }
  const std::vector<Monomial>& relations() const noexcept { return data_->relations; }

  std::size_t size() const noexcept { return data_->monomials.size(); }
  std::size_t dim(int degree) const;
  std::size_t offset(int degree) const;
  int degree_of(std::size_t index) const { return data_->degree.at(index); }
  const Monomial& monomial(std::size_t index) const { return data_->monomials.at(index); }
  std::optional<std::size_t> index_of(const Monomial& m) const;
  static constexpr std::size_t unit() noexcept { return 0; }

  struct Product {
    int32_t index = -1;
    int sign = 0;  // 0: the product is zero (truncated, in the ideal, or an odd square)
  };
  Product mult(std::size_t a, std::size_t b) const { return data_->mult[a * size() + b]; }
  SparseVector multiply(const SparseVector& a, const SparseVector& b) const;

  struct Factorization {
    int32_t left;
    int32_t right;
    int sign;
  };
  /// All (a, b) of positive degree with a * b = sign * c.
  const std::vector<Factorization>& factorizations(std::size_t c) const {
    return data_->factorizations.at(c);
  }

  /// d of a basis element in global coordinates.
  const SparseVector& d_of(std::size_t index) const { return data_->d.at(index); }
  SparseVector apply_d(const SparseVector& v) const;
  /// d restricted to degree k, in local coordinates (degree k+1 rows; 0 rows past the cutoff).
  SparseMatrix differential(int k) const;

  SparseVector from_polynomial(const Polynomial& p) const;
  Polynomial to_polynomial(const SparseVector& v) const;
  Rational augmentation(const SparseVector& v) const;

 private:
  struct Data {
    FreeCDGA pres;
    int cutoff = 0;
    std::vector<Monomial> relations;
    std::vector<Monomial> monomials;
    std::vector<int> degree;
    std::vector<std::size_t> offsets;  // offsets[k] = first index of degree k; size cutoff+2
    std::map<Monomial, std::size_t> index;
    std::vector<Product> mult;
    std::vector<std::vector<Factorization>> factorizations;
    std::vector<SparseVector> d;
  };
  std::shared_ptr<const Data> data_;
};

/// Monomials of a given degree in declaration order, descending lex.
std::vector<Monomial> monomials_of_degree(const FreeCDGA& A, int degree);
bool divisible_by(const Monomial& m, const Monomial& r);

Subquotient cohomology_subquotient(const TruncatedDGA& A, int degree);
/// dims of H^i for 0 <= i <= max_degree. Throws CutoffTooSmall if max_degree + 1 > cutoff.
CohomologyTable cohomology(const TruncatedDGA& A, int max_degree);
bool check_connected(const TruncatedDGA& A);

/// Multiplicative map from a free CDGA into a truncated one, fixed by the
/// images of the generators.
class DGAMorphism {
 public:
  DGAMorphism(FreeCDGA source, TruncatedDGA target, std::vector<SparseVector> images);

  static DGAMorphism identity(const TruncatedDGA& A);
  static DGAMorphism constant(const FreeCDGA& source, const TruncatedDGA& target);
  /// Images given as polynomials in the target presentation.
  static DGAMorphism from_polynomials(const FreeCDGA& source, const TruncatedDGA& target,
                                      const std::vector<Polynomial>& images);

  const FreeCDGA& source() const noexcept { return source_; }
  const TruncatedDGA& target() const noexcept { return target_; }
  const SparseVector& image(std::size_t generator) const { return images_.at(generator); }
  const std::vector<SparseVector>& images() const noexcept { return images_; }

  SparseVector apply(const Monomial& m) const;
  SparseVector apply(const Polynomial& p) const;

  /// Degree preservation and phi(d g) = d phi(g) for every generator whose
  /// differential lands within the target cutoff. Throws InvalidMorphism.
  void validate() const;
  bool commutes() const;

  /// Matrix of the map on degree k from a truncation of the source.
  SparseMatrix matrix(const TruncatedDGA& source_truncation, int k) const;

 private:
  FreeCDGA source_;
  TruncatedDGA target_;
  std::vector<SparseVector> images_;
};

/// For each i <= up_to, whether H^i(phi) is an isomorphism. Throws
/// CutoffTooSmall unless both sides are truncated at up_to + 1 or above.
std::vector<bool> is_quasi_iso(const DGAMorphism& phi, const TruncatedDGA& source_truncation, int up_to);

}  // namespace rht
