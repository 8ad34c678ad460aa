#include "rht/cdga.hpp"

#include <algorithm>
#include <set>

#include "rht/errors.hpp"

namespace rht {

bool Monomial::is_unit() const noexcept {
  return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
}

int Monomial::total_exponent() const noexcept {
  int s = 0;
  for (int e : exps) s += e;
  return s;
}

Polynomial Polynomial::monomial(Monomial m, Rational c) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational() : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial p;
  for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
  return p;
}

Polynomial operator*(const Rational& c, const Polynomial& p) {
  Polynomial out;
  if (c.is_zero()) return out;
  for (const auto& [m, a] : p.terms_) out.terms_.emplace(m, c * a);
  return out;
}

FreeCDGA::FreeCDGA(std::string name, std::vector<GeneratorSpec> generators,
                   std::vector<Polynomial> differential)
    : name_(std::move(name)), gens_(std::move(generators)), diff_(std::move(differential)) {
  if (diff_.empty()) diff_.resize(gens_.size());
  if (diff_.size() != gens_.size())
    throw InvalidPresentation("differential given for " + std::to_string(diff_.size()) +
                              " of " + std::to_string(gens_.size()) + " generators");
  std::set<std::string> seen;
  for (const auto& g : gens_) {
    if (g.degree < 1)
      throw DegreeRuleViolation("generator " + g.name + " has degree " + std::to_string(g.degree));
    if (!seen.insert(g.name).second) throw InvalidPresentation("duplicate generator " + g.name);
  }
  for (const auto& p : diff_)
    for (const auto& [m, c] : p.terms())
      if (m.exps.size() != gens_.size())
        throw UnknownGenerator("differential value refers to a foreign monomial");
}

std::size_t FreeCDGA::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  throw UnknownGenerator("unknown generator '" + std::string(name) + "'");
}

bool FreeCDGA::has_generator(std::string_view name) const noexcept {
  for (const auto& g : gens_)
    if (g.name == name) return true;
  return false;
}

int FreeCDGA::max_generator_degree() const noexcept {
  int m = 0;
  for (const auto& g : gens_) m = std::max(m, g.degree);
  return m;
}

Monomial FreeCDGA::generator_monomial(std::size_t i) const {
  Monomial m = unit_monomial();
  m.exps.at(i) = 1;
  return m;
}

int FreeCDGA::degree(const Monomial& m) const {
  if (m.exps.size() != gens_.size()) throw UnknownGenerator("monomial does not belong to " + name_);
  int d = 0;
  for (std::size_t i = 0; i < gens_.size(); ++i) d += m.exps[i] * gens_[i].degree;
  return d;
}

std::optional<int> FreeCDGA::degree(const Polynomial& p) const {
  std::optional<int> deg;
  for (const auto& [m, c] : p.terms()) {
    int d = degree(m);
    if (deg && *deg != d) throw DegreeRuleViolation("inhomogeneous polynomial");
    deg = d;
  }
  return deg;
}

SignedMonomial multiply_monomials(const FreeCDGA& A, const Monomial& u, const Monomial& v) {
  const std::size_t n = A.num_generators();
  if (u.exps.size() != n || v.exps.size() != n)
    throw UnknownGenerator("monomial does not belong to " + A.name());
  SignedMonomial out;
  out.monomial.exps.resize(n);
  int swaps = 0;
  int odd_u_after = 0;  // odd factors of u with index > current
  for (std::size_t i = 0; i < n; ++i)
    if (A.is_odd(i) && u.exps[i]) ++odd_u_after;
  for (std::size_t i = 0; i < n; ++i) {
    const int e = u.exps[i] + v.exps[i];
    if (A.is_odd(i)) {
      if (e > 1) return SignedMonomial{};
      if (u.exps[i]) --odd_u_after;
      if (v.exps[i]) swaps += odd_u_after;
    }
    out.monomial.exps[i] = e;
  }
  out.sign = (swaps % 2) ? -1 : 1;
  return out;
}

Polynomial koszul_multiply(const FreeCDGA& A, const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) {
      SignedMonomial p = multiply_monomials(A, u, v);
      if (p.sign == 0) continue;
      out.add_term(p.monomial, p.sign > 0 ? cu * cv : -(cu * cv));
    }
  return out;
}

Polynomial power(const FreeCDGA& A, const Polynomial& a, int e) {
  Polynomial out = A.one();
  for (int k = 0; k < e; ++k) out = koszul_multiply(A, out, a);
  return out;
}

Polynomial extend_differential(const FreeCDGA& A, const Polynomial& p) {
  const std::size_t n = A.num_generators();
  Polynomial out;
  for (const auto& [u, c] : p.terms()) {
    if (u.exps.size() != n) throw UnknownGenerator("polynomial does not belong to " + A.name());
    int prefix_degree = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int e = u.exps[i];
      if (e > 0 && !A.differential_of(i).is_zero()) {
        Monomial left = A.unit_monomial();
        Monomial right = A.unit_monomial();
        for (std::size_t j = 0; j < i; ++j) left.exps[j] = u.exps[j];
        left.exps[i] = e - 1;
        for (std::size_t j = i + 1; j < n; ++j) right.exps[j] = u.exps[j];
        Rational coeff = c * Rational(e);
        if (prefix_degree % 2) coeff = -coeff;
        Polynomial term = koszul_multiply(A, Polynomial::monomial(left, coeff), A.differential_of(i));
        out += koszul_multiply(A, term, Polynomial::monomial(right));
      }
      prefix_degree += e * A.generator_spec(i).degree;
    }
  }
  return out;
}

PresentationReport check_presentation(const FreeCDGA& A, int cutoff, bool simply_connected) {
  PresentationReport report;
  report.cutoff = cutoff;
  for (std::size_t i = 0; i < A.num_generators(); ++i) {
    const auto& g = A.generator_spec(i);
    if (simply_connected && g.degree == 1)
      throw NotSimplyConnected("generator " + g.name + " has degree 1");
    std::optional<int> dd;
    try {
      dd = A.degree(A.differential_of(i));
    } catch (const DegreeRuleViolation&) {
      throw DegreeRuleViolation("d(" + g.name + ") is not homogeneous");
    }
    if (dd && *dd != g.degree + 1)
      throw DegreeRuleViolation("d(" + g.name + ") has degree " + std::to_string(*dd) +
                                ", expected " + std::to_string(g.degree + 1));
    if (g.degree <= cutoff) {
      if (!extend_differential(A, A.differential_of(i)).is_zero())
        throw DifferentialSquareNonzero("d(d(" + g.name + ")) != 0");
      report.checked.push_back(g.name);
    } else {
      report.skipped.push_back(g.name);
    }
  }
  return report;
}

FreeCDGA tensor_product(const FreeCDGA& A, const FreeCDGA& B) {
  if (B.num_generators() == 0) return A;
  if (A.num_generators() == 0) return B;
  const std::size_t na = A.num_generators(), nb = B.num_generators();
  std::vector<GeneratorSpec> gens = A.generators();
  std::set<std::string> used;
  for (const auto& g : gens) used.insert(g.name);
  for (const auto& g : B.generators()) {
    std::string name = g.name;
    for (int k = 2; used.count(name); ++k) name = g.name + "_" + std::to_string(k);
    used.insert(name);
    gens.push_back(GeneratorSpec{name, g.degree});
  }
  auto embed = [&](const Polynomial& p, std::size_t shift) {
    Polynomial out;
    for (const auto& [m, c] : p.terms()) {
      Monomial w{std::vector<int>(na + nb, 0)};
      std::copy(m.exps.begin(), m.exps.end(), w.exps.begin() + std::ptrdiff_t(shift));
      out.add_term(w, c);
    }
    return out;
  };
  std::vector<Polynomial> diff;
  for (std::size_t i = 0; i < na; ++i) diff.push_back(embed(A.differential_of(i), 0));
  for (std::size_t i = 0; i < nb; ++i) diff.push_back(embed(B.differential_of(i), na));
  return FreeCDGA(A.name() + "_" + B.name(), std::move(gens), std::move(diff));
}

namespace {

void enumerate(const FreeCDGA& A, std::size_t i, int remaining, Monomial& cur,
               std::vector<Monomial>& out) {
  if (i == A.num_generators()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  const int deg = A.generator_spec(i).degree;
  int max_e = remaining / deg;
  if (A.is_odd(i)) max_e = std::min(max_e, 1);
  for (int e = max_e; e >= 0; --e) {
    cur.exps[i] = e;
    enumerate(A, i + 1, remaining - e * deg, cur, out);
  }
  cur.exps[i] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(const FreeCDGA& A, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  Monomial cur = A.unit_monomial();
  enumerate(A, 0, degree, cur, out);
  return out;
}

bool divisible_by(const Monomial& m, const Monomial& r) {
  for (std::size_t i = 0; i < m.exps.size(); ++i)
    if (m.exps[i] < r.exps[i]) return false;
  return true;
}

TruncatedDGA::TruncatedDGA(const FreeCDGA& presentation, int cutoff, std::vector<Monomial> relations) {
  if (cutoff < 0) throw CutoffTooSmall("negative cutoff");
  auto data = std::make_shared<Data>();
  data->pres = presentation;
  data->cutoff = cutoff;
  const std::size_t n = presentation.num_generators();
  for (const auto& r : relations) {
    if (r.exps.size() != n) throw UnknownGenerator("relation does not belong to " + presentation.name());
    if (r.is_unit()) throw InvalidPresentation("relation 1 kills the algebra");
  }
  data->relations = std::move(relations);
  const auto& rel = data->relations;
  auto in_ideal = [&](const Monomial& m) {
    return std::any_of(rel.begin(), rel.end(),
                       [&](const Monomial& r) { return divisible_by(m, r); });
  };
  for (const auto& r : rel) {
    Polynomial dr = extend_differential(presentation, Polynomial::monomial(r));
    for (const auto& [m, c] : dr.terms())
      if (!in_ideal(m)) throw InvalidPresentation("relation ideal is not closed under d");
  }

  data->offsets.assign(std::size_t(cutoff) + 2, 0);
  for (int k = 0; k <= cutoff; ++k) {
    data->offsets[k] = data->monomials.size();
    for (auto& m : monomials_of_degree(presentation, k)) {
      if (in_ideal(m)) continue;
      data->index.emplace(m, data->monomials.size());
      data->monomials.push_back(std::move(m));
      data->degree.push_back(k);
    }
  }
  data->offsets[cutoff + 1] = data->monomials.size();

  const std::size_t N = data->monomials.size();
  data->mult.assign(N * N, Product{});
  data->factorizations.assign(N, {});
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      if (data->degree[a] + data->degree[b] > cutoff) continue;
      SignedMonomial p = multiply_monomials(presentation, data->monomials[a], data->monomials[b]);
      if (p.sign == 0) continue;
      auto it = data->index.find(p.monomial);
      if (it == data->index.end()) continue;  // in the ideal
      data->mult[a * N + b] = Product{int32_t(it->second), p.sign};
      if (data->degree[a] > 0 && data->degree[b] > 0)
        data->factorizations[it->second].push_back(Factorization{int32_t(a), int32_t(b), p.sign});
    }
  data_ = data;

  data->d.resize(N);
  for (std::size_t i = 0; i < N; ++i)
    data->d[i] = from_polynomial(extend_differential(presentation, Polynomial::monomial(data->monomials[i])));
}

std::size_t TruncatedDGA::dim(int degree) const {
  if (degree < 0 || degree > cutoff()) return 0;
  return data_->offsets[degree + 1] - data_->offsets[degree];
}

std::size_t TruncatedDGA::offset(int degree) const {
  if (degree < 0) return 0;
  if (degree > cutoff()) return size();
  return data_->offsets[degree];
}

std::optional<std::size_t> TruncatedDGA::index_of(const Monomial& m) const {
  auto it = data_->index.find(m);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

SparseVector TruncatedDGA::multiply(const SparseVector& a, const SparseVector& b) const {
  SparseVector out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Product p = mult(x.index, y.index);
      if (p.sign == 0) continue;
      Rational v = x.value * y.value;
      out.push_back(Entry{p.index, p.sign > 0 ? v : -v});
    }
  normalize(out);
  return out;
}

SparseVector TruncatedDGA::apply_d(const SparseVector& v) const {
  SparseVector out;
  for (const auto& e : v)
    for (const auto& t : d_of(e.index)) out.push_back(Entry{t.index, e.value * t.value});
  normalize(out);
  return out;
}

SparseMatrix TruncatedDGA::differential(int k) const {
  const std::size_t rows = dim(k + 1), cols = dim(k);
  std::vector<SparseVector> columns(cols);
  const int32_t target_offset = int32_t(offset(k + 1));
  for (std::size_t c = 0; c < cols; ++c)
    for (const auto& e : d_of(offset(k) + c))
      columns[c].push_back(Entry{e.index - target_offset, e.value});
  return SparseMatrix::from_columns(rows, std::move(columns));
}

SparseVector TruncatedDGA::from_polynomial(const Polynomial& p) const {
  SparseVector out;
  const FreeCDGA& A = presentation();
  for (const auto& [m, c] : p.terms()) {
    if (A.degree(m) > cutoff()) continue;
    auto idx = index_of(m);
    if (!idx) continue;  // in the ideal
    out.push_back(Entry{int32_t(*idx), c});
  }
  normalize(out);
  return out;
}

Polynomial TruncatedDGA::to_polynomial(const SparseVector& v) const {
  Polynomial p;
  for (const auto& e : v) p.add_term(monomial(e.index), e.value);
  return p;
}

Rational TruncatedDGA::augmentation(const SparseVector& v) const { return coefficient(v, 0); }

Subquotient cohomology_subquotient(const TruncatedDGA& A, int degree) {
  if (degree + 1 > A.cutoff())
    throw CutoffTooSmall("H^" + std::to_string(degree) + " needs cutoff >= " +
                         std::to_string(degree + 1) + ", have " + std::to_string(A.cutoff()));
  SparseMatrix d_in = degree > 0 ? A.differential(degree - 1) : SparseMatrix(A.dim(degree), 0);
  return cohomology_at(d_in, A.differential(degree));
}

CohomologyTable cohomology(const TruncatedDGA& A, int max_degree) {
  CohomologyTable table;
  for (int i = 0; i <= max_degree; ++i) {
    CohomologyTable::Row row;
    row.degree = i;
    row.dim = cohomology_subquotient(A, i).dim();
    table.rows.push_back(row);
  }
  return table;
}

bool check_connected(const TruncatedDGA& A) {
  if (A.cutoff() < 2) throw CutoffTooSmall("connectivity check needs cutoff >= 2");
  return cohomology_subquotient(A, 0).dim() == 1 && cohomology_subquotient(A, 1).dim() == 0;
}

DGAMorphism::DGAMorphism(FreeCDGA source, TruncatedDGA target, std::vector<SparseVector> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.num_generators())
    throw DimensionMismatch("morphism: " + std::to_string(images_.size()) + " images for " +
                            std::to_string(source_.num_generators()) + " generators");
  for (auto& v : images_) {
    normalize(v);
    if (!v.empty() && (v.front().index < 0 || std::size_t(v.back().index) >= target_.size()))
      throw DimensionMismatch("morphism image outside the target basis");
  }
}

DGAMorphism DGAMorphism::identity(const TruncatedDGA& A) {
  const FreeCDGA& P = A.presentation();
  std::vector<SparseVector> images;
  for (std::size_t i = 0; i < P.num_generators(); ++i) images.push_back(A.from_polynomial(P.generator(i)));
  return DGAMorphism(P, A, std::move(images));
}

DGAMorphism DGAMorphism::constant(const FreeCDGA& source, const TruncatedDGA& target) {
  return DGAMorphism(source, target, std::vector<SparseVector>(source.num_generators()));
}

DGAMorphism DGAMorphism::from_polynomials(const FreeCDGA& source, const TruncatedDGA& target,
                                          const std::vector<Polynomial>& images) {
  std::vector<SparseVector> v;
  for (const auto& p : images) v.push_back(target.from_polynomial(p));
  return DGAMorphism(source, target, std::move(v));
}

SparseVector DGAMorphism::apply(const Monomial& m) const {
  if (m.exps.size() != source_.num_generators())
    throw UnknownGenerator("monomial does not belong to " + source_.name());
  SparseVector out = unit_vector(0);
  for (std::size_t i = 0; i < m.exps.size() && !out.empty(); ++i)
    for (int e = 0; e < m.exps[i]; ++e) out = target_.multiply(out, images_[i]);
  return out;
}

SparseVector DGAMorphism::apply(const Polynomial& p) const {
  SparseVector out;
  for (const auto& [m, c] : p.terms()) axpy(out, c, apply(m));
  return out;
}

void DGAMorphism::validate() const {
  for (std::size_t i = 0; i < source_.num_generators(); ++i) {
    const auto& g = source_.generator_spec(i);
    for (const auto& e : images_[i])
      if (target_.degree_of(e.index) != g.degree)
        throw InvalidMorphism("image of " + g.name + " is not of degree " + std::to_string(g.degree));
    if (g.degree + 1 > target_.cutoff()) continue;
    if (apply(source_.differential_of(i)) != target_.apply_d(images_[i]))
      throw InvalidMorphism("map does not commute with d on " + g.name);
  }
}

bool DGAMorphism::commutes() const {
  try {
    validate();
    return true;
  } catch (const InvalidMorphism&) {
    return false;
  }
}

SparseMatrix DGAMorphism::matrix(const TruncatedDGA& source_truncation, int k) const {
  const std::size_t cols = source_truncation.dim(k), rows = target_.dim(k);
  const int32_t off = int32_t(target_.offset(k));
  std::vector<SparseVector> columns(cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (const auto& e : apply(source_truncation.monomial(source_truncation.offset(k) + c)))
      columns[c].push_back(Entry{e.index - off, e.value});
  return SparseMatrix::from_columns(rows, std::move(columns));
}

std::vector<bool> is_quasi_iso(const DGAMorphism& phi, const TruncatedDGA& source_truncation, int up_to) {
  if (source_truncation.cutoff() < up_to + 1 || phi.target().cutoff() < up_to + 1)
    throw CutoffTooSmall("quasi-isomorphism check up to " + std::to_string(up_to) +
                         " needs both cutoffs >= " + std::to_string(up_to + 1));
  if (!(source_truncation.presentation() == phi.source()))
    throw InvalidMorphism("truncation does not match the morphism source");
  std::vector<bool> out;
  for (int i = 0; i <= up_to; ++i) {
    Subquotient hs = cohomology_subquotient(source_truncation, i);
    Subquotient ht = cohomology_subquotient(phi.target(), i);
    if (hs.dim() != ht.dim()) {
      out.push_back(false);
      continue;
    }
    SparseMatrix m = phi.matrix(source_truncation, i);
    std::vector<SparseVector> cols;
    for (const auto& z : hs.quotient_basis) {
      std::vector<Rational> c = ht.coordinates(m.apply(z));
      SparseVector col;
      for (std::size_t j = 0; j < c.size(); ++j)
        if (!c[j].is_zero()) col.push_back(Entry{int32_t(j), c[j]});
      cols.push_back(std::move(col));
    }
    out.push_back(rank(SparseMatrix::from_columns(ht.dim(), std::move(cols))) == hs.dim());
  }
  return out;
}

}  // namespace rht
