#pragma once

#include <cstddef>
#include <vector>

namespace rht {

/// Degree-indexed dimensions, optionally refined by weight.
struct CohomologyTable {
  struct Row {
    int degree = 0;
    std::size_t dim = 0;
    bool certified = true;
    std::vector<std::size_t> weights;  // weights[w] = dim of the weight-w part; may be empty
  };
  std::vector<Row> rows;

  /// Row for a degree; throws DimensionMismatch when absent.
  const Row& at(int degree) const;
  bool has(int degree) const noexcept;
  std::size_t dim(int degree) const { return at(degree).dim; }
  /// Weight-w dimension, 0 when w is beyond the stored weights.
  std::size_t weight(int degree, std::size_t w) const;
  std::size_t max_weight_columns() const noexcept;
};

}  // namespace rht
