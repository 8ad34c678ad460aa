#include "rht/linalg.hpp"

#include <algorithm>
#include <set>

#include "rht/errors.hpp"

namespace rht {

namespace {

// Row-major working copy; rows are SparseVectors indexed by column.
std::vector<SparseVector> rows_of(const SparseMatrix& m) {
  return m.transpose().columns();
}

}  // namespace

RowEchelon row_echelon(const SparseMatrix& m) {
  std::vector<SparseVector> rows = rows_of(m);
  const std::size_t n_rows = rows.size();

  // Non-pivot rows bucketed by leading column. Rows reduced against every
  // earlier pivot column have leading index >= the column being processed.
  std::map<int32_t, std::set<std::size_t>> by_lead;
  for (std::size_t r = 0; r < n_rows; ++r)
    if (!rows[r].empty()) by_lead[rows[r].front().index].insert(r);

  RowEchelon out;
  std::vector<std::size_t> pivot_rows;
  while (!by_lead.empty()) {
    auto it = by_lead.begin();
    const int32_t col = it->first;
    std::set<std::size_t> candidates = std::move(it->second);
    by_lead.erase(it);

    // Smallest bit length wins; ties go to the lowest row index.
    std::size_t best = *candidates.begin();
    unsigned best_bits = rows[best].front().value.bit_length();
    for (std::size_t r : candidates) {
      unsigned b = rows[r].front().value.bit_length();
      if (b < best_bits) {
        best = r;
        best_bits = b;
      }
    }
    candidates.erase(best);

    SparseVector pivot = std::move(rows[best]);
    const Rational inv = Rational(1) / pivot.front().value;
    for (auto& e : pivot) e.value *= inv;

    for (std::size_t r : candidates) {
      Rational f = -rows[r].front().value;
      axpy(rows[r], f, pivot);
      if (!rows[r].empty()) by_lead[rows[r].front().index].insert(r);
    }
    for (std::size_t p : pivot_rows) {
      Rational f = coefficient(rows[p], col);
      if (!f.is_zero()) axpy(rows[p], -f, pivot);
    }
    rows[best] = std::move(pivot);
    pivot_rows.push_back(best);
    out.pivots.push_back(col);
  }
  out.rows.reserve(pivot_rows.size());
  for (std::size_t p : pivot_rows) out.rows.push_back(std::move(rows[p]));
  return out;
}

std::size_t rank(const SparseMatrix& m) {
  // Rank is invariant under transposition; eliminate along the shorter side.
  if (m.rows() < m.cols()) return row_echelon(m.transpose()).pivots.size();
  return row_echelon(m).pivots.size();
}

std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
  RowEchelon e = row_echelon(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (int32_t p : e.pivots) is_pivot[p] = 1;
  std::vector<SparseVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    SparseVector v;
    v.push_back(Entry{int32_t(f), Rational(1)});
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      Rational c = coefficient(e.rows[i], int32_t(f));
      if (!c.is_zero()) v.push_back(Entry{e.pivots[i], -c});
    }
    normalize(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<SparseVector> image_basis(const SparseMatrix& m) {
  return row_echelon(m.transpose()).rows;
}

SparseVector EchelonSpan::reduce(SparseVector v) const {
  std::size_t k = 0;
  while (k < v.size()) {
    auto it = rows_.find(v[k].index);
    if (it == rows_.end()) {
      ++k;
      continue;
    }
    Rational f = -v[k].value;
    axpy(v, f, it->second);  // removes index v[k].index; earlier entries untouched
  }
  return v;
}

bool EchelonSpan::insert(const SparseVector& v) {
  SparseVector r = reduce(v);
  if (r.empty()) return false;
  const Rational inv = Rational(1) / r.front().value;
  for (auto& e : r) e.value *= inv;
  const int32_t lead = r.front().index;
  // Keep rows fully reduced against the new pivot.
  for (auto& [p, row] : rows_) {
    Rational c = coefficient(row, lead);
    if (!c.is_zero()) axpy(row, -c, r);
  }
  rows_.emplace(lead, std::move(r));
  return true;
}

void Subquotient::index() {
  tracked_.clear();
  const std::size_t q = quotient_basis.size();
  auto reduce_tracked = [&](SparseVector v, std::vector<Rational> coords) {
    std::size_t k = 0;
    while (k < v.size()) {
      auto it = tracked_.find(v[k].index);
      if (it == tracked_.end()) {
        ++k;
        continue;
      }
      Rational f = -v[k].value;
      axpy(v, f, it->second.row);
      for (std::size_t j = 0; j < q; ++j) coords[j] += f * it->second.coords[j];
    }
    return std::make_pair(std::move(v), std::move(coords));
  };
  auto add = [&](const SparseVector& v, std::vector<Rational> coords) {
    auto [r, c] = reduce_tracked(v, std::move(coords));
    if (r.empty()) throw Error("Subquotient::index: dependent basis vector");
    const Rational inv = Rational(1) / r.front().value;
    for (auto& e : r) e.value *= inv;
    for (auto& x : c) x *= inv;
    const int32_t pivot = r.front().index;
    tracked_.emplace(pivot, TrackedRow{std::move(r), std::move(c)});
  };
  for (const auto& b : boundary_basis) add(b, std::vector<Rational>(q));
  for (std::size_t j = 0; j < q; ++j) {
    std::vector<Rational> c(q);
    c[j] = Rational(1);
    add(quotient_basis[j], std::move(c));
  }
}

std::vector<Rational> Subquotient::coordinates(const SparseVector& v) const {
  const std::size_t q = quotient_basis.size();
  std::vector<Rational> coords(q);
  SparseVector w = v;
  while (!w.empty()) {
    auto it = tracked_.find(w.front().index);
    if (it == tracked_.end())
      throw DimensionMismatch("Subquotient::coordinates: vector is not a cycle");
    Rational f = w.front().value;
    axpy(w, -f, it->second.row);
    for (std::size_t j = 0; j < q; ++j) coords[j] += f * it->second.coords[j];
  }
  return coords;
}

Subquotient cohomology_at(const SparseMatrix& d_in, const SparseMatrix& d_out) {
  if (d_in.rows() != d_out.cols())
    throw DimensionMismatch("cohomology_at: d_in targets a space of dimension " +
                            std::to_string(d_in.rows()) + " but d_out starts from " +
                            std::to_string(d_out.cols()));
  if (!(d_out * d_in).is_zero()) throw CompositionNonzero("cohomology_at: d_out * d_in != 0");

  Subquotient h;
  h.ambient_dim = d_out.cols();
  h.cycle_basis = kernel_basis(d_out);
  h.boundary_basis = image_basis(d_in);

  EchelonSpan span;
  for (const auto& b : h.boundary_basis) span.insert(b);
  for (const auto& z : h.cycle_basis)
    if (span.insert(z)) h.quotient_basis.push_back(z);
  h.index();
  return h;
}

}  // namespace rht
