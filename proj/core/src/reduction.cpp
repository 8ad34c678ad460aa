#include "rht/reduction.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "rht/errors.hpp"

namespace rht {

std::size_t GradedComplex::dim(int t) const {
  if (d.empty()) throw DimensionMismatch("GradedComplex::dim: empty complex");
  if (t < t0 || t > last_degree() + 1)
    throw DimensionMismatch("GradedComplex::dim: degree " + std::to_string(t) + " outside complex");
  if (t == last_degree() + 1) return d.back().rows();
  return d[t - t0].cols();
}

const SparseMatrix& GradedComplex::differential(int t) const {
  if (t < t0 || t > last_degree())
    throw DimensionMismatch("GradedComplex::differential: degree " + std::to_string(t) +
                            " outside complex");
  return d[t - t0];
}

namespace {

void erase_value(std::vector<int32_t>& v, int32_t x) {
  auto it = std::find(v.begin(), v.end(), x);
  if (it != v.end()) {
    *it = v.back();
    v.pop_back();
  }
}

}  // namespace

ReducedComplex::ReducedComplex(const GradedComplex& complex) : t0_(complex.t0) {
  for (std::size_t i = 0; i + 1 < complex.d.size(); ++i)
    if (complex.d[i].rows() != complex.d[i + 1].cols())
      throw DimensionMismatch("ReducedComplex: consecutive differentials do not compose");
  levels_.resize(complex.d.size());
  std::vector<char> dead;
  for (std::size_t i = 0; i < complex.d.size(); ++i) {
    const SparseMatrix& d = complex.d[i];
    if (i == 0) dead.assign(d.cols(), 0);
    reduce_level(t0_ + int(i), d, dead);
    // Rows of D^t used as pivots are gone from C^{t+1}.
    dead.assign(d.rows(), 0);
    for (const auto& p : levels_[i].pivots) dead[p.row] = 1;
  }
}

void ReducedComplex::reduce_level(int t, const SparseMatrix& d, const std::vector<char>& dead_cols) {
  Level& lv = levels_[t - t0_];
  lv.dim = d.cols();
  const std::size_t n_cols = d.cols();

  std::vector<SparseVector> cols(n_cols);
  std::vector<std::vector<int32_t>> rows(d.rows());
  std::set<std::pair<std::size_t, int32_t>> queue;  // (nnz, column)
  std::vector<char> eliminated(n_cols, 0);

  for (std::size_t c = 0; c < n_cols; ++c) {
    if (dead_cols[c]) continue;
    cols[c] = d.column(c);
    for (const auto& e : cols[c]) rows[e.index].push_back(int32_t(c));
    if (!cols[c].empty()) queue.emplace(cols[c].size(), int32_t(c));
  }

  while (!queue.empty()) {
    const int32_t sigma = queue.begin()->second;
    queue.erase(queue.begin());
    SparseVector& pc = cols[sigma];

    // Markowitz-style choice inside the sparsest column: small entries first,
    // then short rows, then the lowest row index.
    std::size_t best = 0;
    auto key = [&](std::size_t k) {
      const Entry& e = pc[k];
      return std::make_tuple(e.value.bit_length(), rows[e.index].size(), e.index);
    };
    for (std::size_t k = 1; k < pc.size(); ++k)
      if (key(k) < key(best)) best = k;
    const int32_t tau = pc[best].index;
    const Rational c = pc[best].value;

    Pivot piv{sigma, tau, c, {}, pc};
    std::vector<int32_t> others = rows[tau];
    erase_value(others, sigma);
    std::sort(others.begin(), others.end());
    piv.row_at_elimination.reserve(others.size());
    for (int32_t k : others) piv.row_at_elimination.push_back(Entry{k, coefficient(cols[k], tau)});

    for (const auto& [kappa, a] : piv.row_at_elimination) {
      queue.erase({cols[kappa].size(), kappa});
      SparseVector old = std::move(cols[kappa]);
      SparseVector updated = old;
      axpy(updated, -(a / c), pc);
      // Keep the row incidence lists in sync with the new sparsity pattern.
      std::size_t i = 0, j = 0;
      while (i < old.size() || j < updated.size()) {
        if (j == updated.size() || (i < old.size() && old[i].index < updated[j].index)) {
          erase_value(rows[old[i].index], kappa);
          ++i;
        } else if (i == old.size() || updated[j].index < old[i].index) {
          rows[updated[j].index].push_back(kappa);
          ++j;
        } else {
          ++i;
          ++j;
        }
      }
      cols[kappa] = std::move(updated);
      if (!cols[kappa].empty()) queue.emplace(cols[kappa].size(), kappa);
    }
    for (const auto& e : pc) erase_value(rows[e.index], sigma);
    cols[sigma].clear();
    cols[sigma].shrink_to_fit();
    eliminated[sigma] = 1;
    lv.pivots.push_back(std::move(piv));
  }

  for (std::size_t c = 0; c < n_cols; ++c)
    if (!dead_cols[c] && !eliminated[c]) lv.survivors.push_back(int32_t(c));
}

const ReducedComplex::Level& ReducedComplex::level(int t) const {
  if (t < first_degree() || t > last_degree())
    throw DimensionMismatch("ReducedComplex: degree " + std::to_string(t) + " not reduced");
  return levels_[t - t0_];
}

std::size_t ReducedComplex::betti(int t) const { return level(t).survivors.size(); }

const std::vector<int32_t>& ReducedComplex::survivors(int t) const { return level(t).survivors; }

std::vector<SparseVector> ReducedComplex::representatives(int t) const {
  const Level& lv = level(t);
  std::vector<SparseVector> out;
  out.reserve(lv.survivors.size());
  std::vector<Rational> v(lv.dim);
  std::vector<int32_t> touched;
  for (int32_t s : lv.survivors) {
    v[s] = Rational(1);
    touched.assign(1, s);
    for (auto it = lv.pivots.rbegin(); it != lv.pivots.rend(); ++it) {
      Rational acc;
      for (const auto& e : it->row_at_elimination)
        if (!v[e.index].is_zero()) acc += e.value * v[e.index];
      if (acc.is_zero()) continue;
      v[it->col] = -acc / it->value;
      touched.push_back(it->col);
    }
    SparseVector z;
    for (int32_t i : touched) {
      if (!v[i].is_zero()) z.push_back(Entry{i, v[i]});
      v[i] = Rational();
    }
    normalize(z);
    out.push_back(std::move(z));
  }
  return out;
}

std::vector<Rational> ReducedComplex::classify(int t, const SparseVector& z) const {
  const Level& lv = level(t);
  std::vector<Rational> v(lv.dim);
  for (const auto& e : z) {
    if (e.index < 0 || std::size_t(e.index) >= lv.dim)
      throw DimensionMismatch("ReducedComplex::classify: index out of range");
    v[e.index] = e.value;
  }
  if (t > first_degree()) {
    for (const auto& p : level(t - 1).pivots) {
      if (v[p.row].is_zero()) continue;
      Rational f = v[p.row] / p.value;
      for (const auto& e : p.col_at_elimination) v[e.index] -= f * e.value;
    }
  }
  std::vector<Rational> coords;
  coords.reserve(lv.survivors.size());
  for (int32_t s : lv.survivors) coords.push_back(v[s]);
  return coords;
}

std::size_t ReducedComplex::eliminated() const noexcept {
  std::size_t n = 0;
  for (const auto& lv : levels_) n += lv.pivots.size();
  return n;
}

}  // namespace rht
