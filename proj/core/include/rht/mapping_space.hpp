#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rht/cdga.hpp"
#include "rht/cohomology_table.hpp"
#include "rht/hochschild.hpp"
#include "rht/sullivan.hpp"

namespace rht {

/// f-derivations ΛV -> T of degree k, determined by their values on V.
/// Degree k has basis pairs (v, e) with |e| = |v| + k; D theta =
/// d_T theta - (-1)^k theta d.
class DerivationComplex {
 public:
  /// Degrees from -n_max-2 to 0. Throws CutoffTooSmall, InvalidMorphism.
  DerivationComplex(const DGAMorphism& f, int n_max);

  const DGAMorphism& basepoint() const noexcept { return f_; }
  int n_max() const noexcept { return n_max_; }
  int min_degree() const noexcept { return -n_max_ - 2; }
  std::size_t dim(int k) const;
  /// D out of degree k, for min_degree() <= k <= -1.
  const SparseMatrix& differential(int k) const;
  /// Basis element (generator index, target basis index) in degree k.
  std::pair<std::size_t, std::size_t> basis(int k, std::size_t i) const { return bases_.at(k - min_degree()).at(i); }

  /// dim H^k for min_degree() < k <= -1.
  std::size_t cohomology_dim(int k) const;
  bool squares_to_zero() const;

 private:
  DGAMorphism f_;
  int n_max_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> bases_;
  std::vector<SparseMatrix> d_;
};

/// dims of H^{-n}(Der) for 1 <= n <= n_max + 1, rows at degree -n.
CohomologyTable aq(const DGAMorphism& f, int n_max);

/// pi_n = sum_i dim V^i dim H^{i-n}(X) for 1 <= n <= n_max, rows at degree n.
/// Throws NotMinimal.
CohomologyTable constant_map_formula(const FreeCDGA& Y_model, const TruncatedDGA& X_target, int n_max);

struct VerificationCase {
  enum class MapKind { identity, constant, explicit_images };
  std::string name;
  SpaceDescriptor X;  // source space; its model is the module
  SpaceDescriptor Y;  // target space; its model is the algebra
  MapKind map = MapKind::identity;
  std::optional<FreeCDGA> X_model;  // overrides standard_model(X)
  std::optional<FreeCDGA> Y_model;
  std::vector<Polynomial> images;  // explicit_images: one per Y generator, over X generators
};

/// s3-id, s2-id, cp2-id, s2-to-s3-const, s3xs3-id, point-to-s3, point-to-s2, point-to-cp2.
std::vector<std::string> corpus_case_names();
/// Throws UnsupportedDescriptor for unknown names.
VerificationCase corpus_case(const std::string& name);

struct VerificationReport {
  struct ModelRow {
    std::string space;
    std::vector<std::size_t> computed;
    std::vector<std::size_t> expected;
    bool ok = true;
  };
  struct Row {
    int n = 0;
    bool certified = true;
    std::size_t pi_map = 0;      // dim H^{-n-1}(Der) = dim pi_{n+1} Map
    std::size_t hh_weight1 = 0;  // dim HH^{-n}_(1)
    std::size_t hh_total = 0;
    std::size_t weight_sum = 0;
    std::vector<std::size_t> weights;
    bool main2 = true;       // pi_map == hh_weight1
    bool injective = true;   // hh_weight1 <= hh_total and weight_sum == hh_total
  };
  struct Pi1 {
    std::size_t der = 0;  // dim H^{-1}(Der)
    std::size_t hh0 = 0;
    std::size_t n = 0;    // dim ker(HH^0 -> Q)
    std::optional<int> nilpotency;
    bool ok = true;       // der <= n
  };
  struct ConstantRow {
    int n = 0;
    std::size_t aq = 0;
    std::size_t formula = 0;
    bool ok = true;
  };

  std::string case_name;
  int n_max = 0;
  int cutoff = 0;
  std::vector<ModelRow> models;
  bool complex_ok = true;  // b^2 = delta^2 = b delta + delta b = D^2 = 0 and Der D^2 = 0
  std::size_t cochains_checked = 0;
  std::vector<Row> rows;
  std::optional<Pi1> pi1;
  std::vector<ConstantRow> constant_rows;
  bool pass = true;
  std::string first_failure;
};

VerificationReport verify_case(const VerificationCase& c, int n_max, int cutoff);
/// Throws VerificationFailed carrying the first failure.
void enforce(const VerificationReport& r);

/// Sullivan model of the free loop space: ΛV ⊗ ΛsV, d(sv) = -s(dv).
FreeCDGA free_loop_model(const FreeCDGA& M);
/// dim H_{n+d}(LM; Q) for 0 <= n <= n_max from the free loop model.
std::vector<std::size_t> loop_homology_dims(const FreeCDGA& M, int formal_dimension, int n_max);

struct LoopReport {
  struct Row {
    int n = 0;
    bool certified = true;
    std::size_t hh = 0;        // dim HH^{-n}(M, M)
    std::size_t expected = 0;  // dim H_{n+d}(LM)
    std::optional<std::size_t> der;  // dim H^{-n}(Der(M, M, id)), n >= 1
    bool ok = true;
  };
  std::string model;
  int formal_dimension = 0;
  int cutoff = 0;
  std::vector<Row> rows;
  bool pass = true;
  std::string first_failure;
};

/// Compares HH^{-n}(M, M) with the expected loop homology dims (index n).
LoopReport loop_space_check(const FreeCDGA& M_model, int formal_dimension, int n_max, int cutoff,
                            const std::vector<std::size_t>& expected);
/// Throws MismatchedExpectation.
void enforce(const LoopReport& r);

}  // namespace rht
