#include "rht/hodge.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "rht/errors.hpp"
#include "rht/linalg.hpp"

namespace rht {

int descents(const Permutation& sigma) {
  int d = 0;
  for (std::size_t j = 0; j + 1 < sigma.size(); ++j)
    if (sigma[j] > sigma[j + 1]) ++d;
  return d;
}

Permutation compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size()) throw ArityMismatch("composing permutations of different arity");
  Permutation out(sigma.size());
  for (std::size_t i = 0; i < tau.size(); ++i) out[i] = sigma[tau[i]];
  return out;
}

Permutation inverse(const Permutation& sigma) {
  Permutation out(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) out[sigma[i]] = int(i);
  return out;
}

namespace {

std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

int64_t binomial(int64_t n, int64_t k) {
  if (k < 0 || n < k) return 0;
  int64_t r = 1;
  for (int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::size_t permutation_rank(const Permutation& sigma) {
  const std::size_t p = sigma.size();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < p; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < p; ++j)
      if (sigma[j] < sigma[i]) ++smaller;
    rank = rank * (p - i) + smaller;
  }
  return rank;
}

Permutation permutation_unrank(std::size_t p, std::size_t rank) {
  std::vector<int> digits(p);
  for (std::size_t i = p; i-- > 0;) {
    const std::size_t base = p - i;
    digits[i] = int(rank % base);
    rank /= base;
  }
  std::vector<int> pool(p);
  std::iota(pool.begin(), pool.end(), 0);
  Permutation out;
  out.reserve(p);
  for (std::size_t i = 0; i < p; ++i) {
    out.push_back(pool[digits[i]]);
    pool.erase(pool.begin() + digits[i]);
  }
  return out;
}

PermAlgebraElement::PermAlgebraElement(std::size_t p) : p_(p) {
  if (p > kMaxArity) throw ArityTooLarge("Q[S_p] supported for p <= " + std::to_string(kMaxArity));
  coeffs_.resize(factorial(p));
}

PermAlgebraElement PermAlgebraElement::identity(std::size_t p) {
  PermAlgebraElement e(p);
  e.coeffs_[0] = Rational(1);
  return e;
}

void PermAlgebraElement::add(const Permutation& sigma, const Rational& c) {
  if (sigma.size() != p_) throw ArityMismatch("permutation of wrong arity");
  coeffs_[permutation_rank(sigma)] += c;
}

std::size_t PermAlgebraElement::support_size() const noexcept {
  return std::size_t(std::count_if(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return !c.is_zero(); }));
}

PermAlgebraElement& PermAlgebraElement::operator+=(const PermAlgebraElement& o) {
  if (o.p_ != p_) throw ArityMismatch("adding elements of different arity");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

PermAlgebraElement& PermAlgebraElement::operator-=(const PermAlgebraElement& o) {
  if (o.p_ != p_) throw ArityMismatch("subtracting elements of different arity");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

PermAlgebraElement operator*(const Rational& c, const PermAlgebraElement& a) {
  PermAlgebraElement out(a.p_);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    if (!a.coeffs_[i].is_zero()) out.coeffs_[i] = c * a.coeffs_[i];
  return out;
}

PermAlgebraElement operator*(const PermAlgebraElement& a, const PermAlgebraElement& b) {
  if (a.p_ != b.p_) throw ArityMismatch("multiplying elements of different arity");
  const std::size_t n = a.coeffs_.size();
  std::vector<Permutation> perms(n);
  for (std::size_t i = 0; i < n; ++i) perms[i] = permutation_unrank(a.p_, i);
  PermAlgebraElement out(a.p_);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      out.coeffs_[permutation_rank(compose(perms[i], perms[j]))] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

PermAlgebraElement adams_operation(std::size_t p, int k) {
  PermAlgebraElement out(p);
  const std::size_t n = factorial(p);
  for (std::size_t r = 0; r < n; ++r) {
    const int64_t c = binomial(int64_t(p) + k - 1 - descents(permutation_unrank(p, r)), int64_t(p));
    if (c) out.add(permutation_unrank(p, r), Rational(c));
  }
  return out;
}

namespace {

std::shared_ptr<const EulerianIdempotentFamily> solve_family(std::size_t p) {
  // V[k-1][i-1] = k^i; e = V^{-1} lambda.
  std::vector<std::vector<Rational>> inv(p, std::vector<Rational>(p));
  std::vector<std::vector<Rational>> v(p, std::vector<Rational>(p));
  for (std::size_t k = 1; k <= p; ++k) {
    Rational pw(1);
    for (std::size_t i = 1; i <= p; ++i) {
      pw *= Rational(int64_t(k));
      v[k - 1][i - 1] = pw;
    }
    inv[k - 1][k - 1] = Rational(1);
  }
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t piv = col;
    while (v[piv][col].is_zero()) ++piv;
    std::swap(v[piv], v[col]);
    std::swap(inv[piv], inv[col]);
    const Rational s = Rational(1) / v[col][col];
    for (std::size_t j = 0; j < p; ++j) {
      v[col][j] *= s;
      inv[col][j] *= s;
    }
    for (std::size_t r = 0; r < p; ++r) {
      if (r == col || v[r][col].is_zero()) continue;
      const Rational f = v[r][col];
      for (std::size_t j = 0; j < p; ++j) {
        v[r][j] -= f * v[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  std::vector<PermAlgebraElement> lambdas;
  for (std::size_t k = 1; k <= p; ++k) lambdas.push_back(adams_operation(p, int(k)));
  auto fam = std::make_shared<EulerianIdempotentFamily>();
  fam->p = p;
  for (std::size_t i = 0; i < p; ++i) {
    PermAlgebraElement e(p);
    for (std::size_t k = 0; k < p; ++k)
      if (!inv[i][k].is_zero()) e += inv[i][k] * lambdas[k];
    fam->idempotents.push_back(std::move(e));
  }
  return fam;
}

}  // namespace

std::shared_ptr<const EulerianIdempotentFamily> eulerian_idempotents(std::size_t p) {
  if (p == 0) throw ArityMismatch("Eulerian idempotents need p >= 1");
  if (p > kMaxArity) throw ArityTooLarge("Eulerian idempotents supported for p <= " + std::to_string(kMaxArity));
  static std::mutex mu;
  static std::map<std::size_t, std::shared_ptr<const EulerianIdempotentFamily>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[p];
  if (!slot) slot = solve_family(p);
  return slot;
}

SignedWord signed_action(const Permutation& sigma, std::span<const Letter> word, std::span<const int> degrees) {
  const std::size_t p = sigma.size();
  if (word.size() != p || degrees.size() != p)
    throw ArityMismatch("permutation of arity " + std::to_string(p) + " applied to a word of length " +
                        std::to_string(word.size()));
  SignedWord out;
  out.word.resize(p);
  int parity = 0;
  for (std::size_t j = 0; j < p; ++j) {
    out.word[sigma[j]] = word[j];
    for (std::size_t k = j + 1; k < p; ++k)
      if (sigma[j] > sigma[k]) parity += (degrees[j] % 2) * (degrees[k] % 2);
  }
  out.sign = (parity % 2) ? -1 : 1;
  return out;
}

SparseVector act_on_cochain(const BarCochainComplex& c, int t, const SparseVector& phi, const PermAlgebraElement& x) {
  const std::size_t p = x.arity();
  const std::size_t n = factorial(p);
  std::vector<Permutation> inv_perms;
  std::vector<std::size_t> ranks;
  for (std::size_t r = 0; r < n; ++r)
    if (!x.coeff(r).is_zero()) {
      inv_perms.push_back(inverse(permutation_unrank(p, r)));
      ranks.push_back(r);
    }
  SparseVector out;
  std::vector<int> degs(p);
  for (const auto& e : phi) {
    auto w = c.word(t, e.index);
    if (w.size() != p) continue;
    for (std::size_t j = 0; j < p; ++j) degs[j] = c.bar_degree(w[j]);
    const int32_t m = c.output(t, e.index);
    for (std::size_t s = 0; s < inv_perms.size(); ++s) {
      // phi . sigma picks up phi(sigma . u) at u = sigma^{-1} . w.
      SignedWord u = signed_action(inv_perms[s], w, degs);
      auto idx = c.index_of(t, u.word, m);
      if (!idx) throw BlockMissing("permuted word missing from the basis");
      Rational v = e.value * x.coeff(ranks[s]);
      out.push_back(Entry{*idx, u.sign > 0 ? v : -v});
    }
  }
  normalize(out);
  return out;
}

SparseVector adams2_on_cochain(const BarCochainComplex& c, int t, const SparseVector& phi) {
  std::unordered_map<int32_t, Rational> acc;
  std::vector<Letter> u;
  for (const auto& e : phi) {
    auto w = c.word(t, e.index);
    const std::size_t p = w.size();
    if (p > 30) throw ArityTooLarge("deshuffle sum over more than 2^30 subsets");
    const int32_t m = c.output(t, e.index);
    std::vector<int> odd(p);
    for (std::size_t j = 0; j < p; ++j) odd[j] = c.bar_degree(w[j]) % 2;
    for (uint32_t mask = 0; mask < (uint32_t(1) << p); ++mask) {
      u.clear();
      int parity = 0, odd_outside = 0;
      for (std::size_t j = 0; j < p; ++j) {
        if (mask >> j & 1) {
          u.push_back(w[j]);
          if (odd[j]) parity += odd_outside;
        } else if (odd[j]) {
          ++odd_outside;
        }
      }
      for (std::size_t j = 0; j < p; ++j)
        if (!(mask >> j & 1)) u.push_back(w[j]);
      auto idx = c.index_of(t, u, m);
      if (!idx) throw BlockMissing("deshuffled word missing from the basis");
      Rational& slot = acc[*idx];
      if (parity % 2) slot -= e.value;
      else slot += e.value;
    }
  }
  SparseVector out;
  out.reserve(acc.size());
  for (auto& [i, v] : acc)
    if (!v.is_zero()) out.push_back(Entry{i, std::move(v)});
  normalize(out);
  return out;
}

namespace {

std::size_t eigenspace_dim(const std::vector<std::vector<Rational>>& T, const Rational& lambda) {
  const std::size_t h = T.size();
  auto m = T;
  for (std::size_t i = 0; i < h; ++i) m[i][i] -= lambda;
  return h - rank(SparseMatrix::from_dense(m));
}

void trim(std::vector<std::size_t>& w) {
  while (w.size() > 2 && w.back() == 0) w.pop_back();
}

}  // namespace

CohomologyTable weight_decomposition(const HochschildCohomology& hh) {
  const BarCochainComplex& c = hh.complex();
  CohomologyTable table = hh.table();
  for (auto& row : table.rows) {
    const int t = row.degree;
    const std::size_t h = row.dim;
    const auto reps = hh.representatives(t);
    std::vector<std::vector<Rational>> T(h, std::vector<Rational>(h));
    for (std::size_t j = 0; j < h; ++j) {
      SparseVector s = adams2_on_cochain(c, t, reps[j]);
      if (!c.total(t).apply(s).empty())
        throw ProjectionNotSubcomplex("lambda_2 sends a cocycle of degree " + std::to_string(t) +
                                      " to a non-cocycle");
      auto coords = hh.classify(t, s);
      for (std::size_t i = 0; i < h; ++i) T[i][j] = coords[i];
    }
    const std::size_t max_w = c.max_arity(t);
    row.weights.assign(std::max<std::size_t>(max_w + 1, 2), 0);
    Rational lambda(1);
    for (std::size_t w = 0; w <= max_w; ++w) {
      if (h) row.weights[w] = eigenspace_dim(T, lambda);
      lambda *= Rational(2);
    }
    trim(row.weights);
  }
  return table;
}

CohomologyTable weight_decomposition_explicit(const BarCochainComplex& c) {
  std::size_t max_p = 0;
  for (int t = c.min_degree(); t <= c.max_degree(); ++t) max_p = std::max(max_p, c.max_arity(t));
  if (max_p > kMaxArity)
    throw ArityTooLarge("explicit projectors need arities <= " + std::to_string(kMaxArity) + ", complex reaches " +
                        std::to_string(max_p));
  // P[w][t - min]: projector onto weight w in degree t.
  const int t_lo = c.min_degree(), t_hi = c.max_degree();
  std::vector<std::vector<SparseMatrix>> P(max_p + 1);
  for (std::size_t w = 0; w <= max_p; ++w) {
    for (int t = t_lo; t <= t_hi; ++t) {
      std::vector<SparseVector> cols(c.dim(t));
      for (std::size_t i = 0; i < c.dim(t); ++i) {
        const std::size_t p = c.arity(t, i);
        SparseVector unit = unit_vector(int32_t(i));
        if (p == 0) {
          if (w == 0) cols[i] = unit;
        } else if (w >= 1 && w <= p) {
          cols[i] = act_on_cochain(c, t, unit, eulerian_idempotents(p)->e(w));
        }
      }
      // Column i of the matrix is the image of basis cochain i.
      P[w].push_back(SparseMatrix::from_columns(c.dim(t), std::move(cols)));
    }
  }
  for (std::size_t w = 0; w <= max_p; ++w)
    for (int t = t_lo; t <= 0; ++t)
      if (!(c.total(t) * P[w][t - t_lo] == P[w][t + 1 - t_lo] * c.total(t)))
        throw ProjectionNotSubcomplex("weight " + std::to_string(w) + " projector does not commute with D in degree " +
                                      std::to_string(t));
  CohomologyTable table;
  for (int t = -c.n_max(); t <= 0; ++t) {
    CohomologyTable::Row row;
    row.degree = t;
    row.certified = certified_degree(t, c.cutoff());
    row.weights.assign(std::max<std::size_t>(max_p + 1, 2), 0);
    for (std::size_t w = 0; w <= max_p; ++w) {
      const SparseMatrix& Pt = P[w][t - t_lo];
      const std::size_t z = rank(Pt) - rank(c.total(t) * Pt);
      const std::size_t b = rank(c.total(t - 1) * P[w][t - 1 - t_lo]);
      row.weights[w] = z - b;
      row.dim += z - b;
    }
    trim(row.weights);
    table.rows.push_back(row);
  }
  return table;
}

CohomologyTable harrison(const HochschildCohomology& hh) {
  CohomologyTable w = weight_decomposition(hh);
  for (auto& row : w.rows) {
    row.dim = w.weight(row.degree, 1);
    row.weights.clear();
  }
  return w;
}

}  // namespace rht
