#include "rht/cohomology_table.hpp"

#include <algorithm>
#include <string>

#include "rht/errors.hpp"

namespace rht {

const CohomologyTable::Row& CohomologyTable::at(int degree) const {
  for (const auto& r : rows)
    if (r.degree == degree) return r;
  throw DimensionMismatch("no cohomology row for degree " + std::to_string(degree));
}

bool CohomologyTable::has(int degree) const noexcept {
  return std::any_of(rows.begin(), rows.end(), [&](const Row& r) { return r.degree == degree; });
}

std::size_t CohomologyTable::weight(int degree, std::size_t w) const {
  const Row& r = at(degree);
  return w < r.weights.size() ? r.weights[w] : 0;
}

std::size_t CohomologyTable::max_weight_columns() const noexcept {
  std::size_t m = 0;
  for (const auto& r : rows) m = std::max(m, r.weights.size());
  return m;
}

}  // namespace rht
