#include "rht/sparse_matrix.hpp"

#include <algorithm>

#include "rht/errors.hpp"

namespace rht {

void normalize(SparseVector& v) {
  std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    int32_t idx = v[i].index;
    Rational sum = std::move(v[i].value);
    std::size_t j = i + 1;
    for (; j < v.size() && v[j].index == idx; ++j) sum += v[j].value;
    if (!sum.is_zero()) v[out++] = Entry{idx, std::move(sum)};
    i = j;
  }
  v.resize(out);
}

void axpy(SparseVector& y, const Rational& a, const SparseVector& x) {
  if (a.is_zero() || x.empty()) return;
  SparseVector out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].index < x[j].index)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[j].index < y[i].index) {
      out.push_back(Entry{x[j].index, a * x[j].value});
      ++j;
    } else {
      Rational v = std::move(y[i].value);
      v += a * x[j].value;
      if (!v.is_zero()) out.push_back(Entry{x[j].index, std::move(v)});
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

SparseVector scaled(const SparseVector& x, const Rational& a) {
  SparseVector out;
  if (a.is_zero()) return out;
  out.reserve(x.size());
  for (const auto& e : x) out.push_back(Entry{e.index, e.value * a});
  return out;
}

Rational coefficient(const SparseVector& v, int32_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const Entry& e, int32_t i) { return e.index < i; });
  if (it != v.end() && it->index == index) return it->value;
  return Rational(0);
}

Rational dot(const SparseVector& a, const SparseVector& b) {
  Rational s;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].index < b[j].index) {
      ++i;
    } else if (b[j].index < a[i].index) {
      ++j;
    } else {
      s += a[i].value * b[j].value;
      ++i;
      ++j;
    }
  }
  return s;
}

SparseVector unit_vector(int32_t index, Rational value) {
  SparseVector v;
  if (!value.is_zero()) v.push_back(Entry{index, std::move(value)});
  return v;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i].push_back(Entry{int32_t(i), Rational(1)});
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows[0].size() : 0;
  SparseMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("from_dense: ragged rows");
    for (std::size_t j = 0; j < c; ++j)
      if (!rows[i][j].is_zero()) m.columns_[j].push_back(Entry{int32_t(i), rows[i][j]});
  }
  return m;
}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, std::vector<SparseVector> columns) {
  SparseMatrix m;
  m.rows_ = rows;
  m.columns_ = std::move(columns);
  for (auto& col : m.columns_) {
    normalize(col);
    if (!col.empty() && (col.front().index < 0 || std::size_t(col.back().index) >= rows))
      throw DimensionMismatch("from_columns: row index out of range");
  }
  return m;
}

std::size_t SparseMatrix::nnz() const noexcept {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

bool SparseMatrix::is_zero() const noexcept {
  for (const auto& c : columns_)
    if (!c.empty()) return false;
  return true;
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols()) throw DimensionMismatch("SparseMatrix::at out of range");
  return coefficient(columns_[c], int32_t(r));
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols()) throw DimensionMismatch("SparseMatrix::set out of range");
  auto& col = columns_[c];
  auto it = std::lower_bound(col.begin(), col.end(), int32_t(r),
                             [](const Entry& e, int32_t i) { return e.index < i; });
  if (it != col.end() && it->index == int32_t(r)) {
    if (v.is_zero()) {
      col.erase(it);
    } else {
      it->value = v;
    }
  } else if (!v.is_zero()) {
    col.insert(it, Entry{int32_t(r), v});
  }
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  set(r, c, at(r, c) + v);
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols(), rows_);
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& e : columns_[c]) t.columns_[e.index].push_back(Entry{int32_t(c), e.value});
  return t;
}

SparseVector SparseMatrix::apply(const SparseVector& v) const {
  SparseVector out;
  for (const auto& e : v) {
    if (e.index < 0 || std::size_t(e.index) >= cols())
      throw DimensionMismatch("SparseMatrix::apply: vector index out of range");
    for (const auto& m : columns_[e.index]) out.push_back(Entry{m.index, m.value * e.value});
  }
  normalize(out);
  return out;
}

std::vector<std::vector<Rational>> SparseMatrix::to_dense() const {
  std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols()));
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& e : columns_[c]) d[e.index][c] = e.value;
  return d;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
  SparseMatrix out(a.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) out.columns_[c] = a.apply(b.columns_[c]);
  return out;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix sum: shapes differ");
  SparseMatrix out = a;
  for (std::size_t c = 0; c < b.cols(); ++c) axpy(out.columns_[c], Rational(1), b.columns_[c]);
  return out;
}

}  // namespace rht
