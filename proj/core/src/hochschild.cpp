#include "rht/hochschild.hpp"

#include <algorithm>
#include <cstring>

#include "rht/errors.hpp"

namespace rht {

BimoduleViaMorphism make_bimodule(const DGAMorphism& f, int n_max) {
  TruncatedDGA algebra(f.source(), f.target().cutoff() + n_max + 2);
  DGAMorphism map(f.source(), f.target(), f.images());
  return BimoduleViaMorphism{algebra, f.target(), map};
}

BimoduleViaMorphism self_bimodule(const FreeCDGA& A, int cutoff, int n_max) {
  return make_bimodule(DGAMorphism::identity(TruncatedDGA(A, cutoff)), n_max);
}

bool certified_degree(int t, int cutoff) { return cutoff >= 2 * (t < 0 ? -t : t) + 4; }

std::string BarCochainComplex::key(std::span<const Letter> word, int32_t m) {
  std::string k(word.size() * sizeof(Letter) + sizeof(int32_t), '\0');
  if (!word.empty()) std::memcpy(k.data(), word.data(), word.size() * sizeof(Letter));
  std::memcpy(k.data() + word.size() * sizeof(Letter), &m, sizeof(int32_t));
  return k;
}

const BarCochainComplex::Space& BarCochainComplex::space(int t) const {
  if (t < min_degree() || t > max_degree())
    throw BlockMissing("no cochains stored in total degree " + std::to_string(t));
  return spaces_[t - min_degree()];
}

std::span<const Letter> BarCochainComplex::word(int t, std::size_t i) const {
  const Space& s = space(t);
  if (i >= s.outputs.size()) throw BlockMissing("cochain index out of range");
  return std::span<const Letter>(s.pool.data() + s.word_start[i], s.word_start[i + 1] - s.word_start[i]);
}

std::optional<int32_t> BarCochainComplex::index_of(int t, std::span<const Letter> word, int32_t m) const {
  const Space& s = space(t);
  auto it = s.index.find(key(word, m));
  if (it == s.index.end()) return std::nullopt;
  return it->second;
}

std::pair<std::size_t, std::size_t> BarCochainComplex::block(int t, std::size_t p) const {
  const Space& s = space(t);
  if (p + 1 >= s.block_start.size() || s.block_start[p] == s.block_start[p + 1])
    throw BlockMissing("block (p=" + std::to_string(p) + ", q=" + std::to_string(t - int(p)) + ") is empty");
  return {s.block_start[p], s.block_start[p + 1]};
}

const SparseMatrix& BarCochainComplex::total(int t) const {
  if (t < min_degree() || t > 0) throw BlockMissing("no differential out of degree " + std::to_string(t));
  return d_[t - min_degree()];
}

const SparseMatrix& BarCochainComplex::hochschild_part(int t) const {
  if (b_.empty()) throw BlockMissing("complex was built without the split differentials");
  if (t < min_degree() || t > 0) throw BlockMissing("no differential out of degree " + std::to_string(t));
  return b_[t - min_degree()];
}

const SparseMatrix& BarCochainComplex::internal_part(int t) const {
  if (delta_.empty()) throw BlockMissing("complex was built without the split differentials");
  if (t < min_degree() || t > 0) throw BlockMissing("no differential out of degree " + std::to_string(t));
  return delta_[t - min_degree()];
}

GradedComplex BarCochainComplex::graded() const {
  GradedComplex g;
  g.t0 = min_degree();
  g.d = d_;
  return g;
}

class BarBuilder {
 public:
  BarBuilder(BarCochainComplex& c, const BimoduleViaMorphism& co, int cutoff)
      : c_(c), A_(co.algebra), M_(co.module), D_(cutoff) {
    for (std::size_t a = 0; a < A_.size(); ++a)
      if (A_.degree_of(a) > 0) letters_.push_back(Letter(a));
    c_.bar_degree_.resize(A_.size());
    for (std::size_t a = 0; a < A_.size(); ++a) c_.bar_degree_[a] = A_.degree_of(a) - 1;
    d_transpose_.resize(A_.size());
    for (Letter a : letters_)
      for (const auto& e : A_.d_of(a)) d_transpose_[e.index].push_back(Entry{a, e.value});
    f_.resize(A_.size());
    for (std::size_t a = 0; a < A_.size(); ++a) {
      for (const auto& e : co.map.apply(A_.monomial(a)))
        if (M_.degree_of(e.index) <= D_) f_[a].push_back(e);
    }
  }

  void enumerate(int t) {
    auto& s = c_.spaces_.emplace_back();
    s.word_start.push_back(0);
    const int budget = D_ - t;  // maximal bar degree
    // Words of arity p, sorted lexicographically, with their bar degrees.
    std::vector<Letter> words;
    std::vector<int> beta{0};
    std::size_t p = 0;
    std::size_t count = 1;  // the empty word
    while (count > 0) {
      s.block_start.push_back(s.outputs.size());
      for (std::size_t w = 0; w < count; ++w) {
        const int deg = t + beta[w];
        if (deg < 0 || deg > D_) continue;
        for (std::size_t m = M_.offset(deg); m < M_.offset(deg) + M_.dim(deg); ++m) {
          s.pool.insert(s.pool.end(), words.begin() + std::ptrdiff_t(w * p),
                        words.begin() + std::ptrdiff_t((w + 1) * p));
          s.word_start.push_back(uint32_t(s.pool.size()));
          s.outputs.push_back(int32_t(m));
        }
      }
      std::vector<Letter> next;
      std::vector<int> next_beta;
      for (std::size_t w = 0; w < count; ++w)
        for (Letter a : letters_) {
          const int b = beta[w] + c_.bar_degree_[a];
          if (b > budget) continue;
          next.insert(next.end(), words.begin() + std::ptrdiff_t(w * p), words.begin() + std::ptrdiff_t((w + 1) * p));
          next.push_back(a);
          next_beta.push_back(b);
        }
      words = std::move(next);
      beta = std::move(next_beta);
      ++p;
      count = beta.size();
    }
    s.block_start.push_back(s.outputs.size());
    while (s.block_start.size() > 2 && s.block_start[s.block_start.size() - 2] == s.block_start.back())
      s.block_start.pop_back();
    s.index.reserve(s.outputs.size());
    for (std::size_t i = 0; i < s.outputs.size(); ++i)
      s.index.emplace(BarCochainComplex::key(word_of(s, i), s.outputs[i]), int32_t(i));
  }

  // Columns of b and delta out of degree t.
  void differentials(int t, std::vector<SparseVector>& bcols, std::vector<SparseVector>& dcols) {
    const auto& src = c_.spaces_[t - c_.min_degree()];
    const auto& dst = c_.spaces_[t + 1 - c_.min_degree()];
    const std::size_t n = src.outputs.size();
    bcols.assign(n, {});
    dcols.assign(n, {});
    const bool t_odd = (t % 2) != 0;
    std::vector<Letter> w2;
    std::vector<int> eps;
    for (std::size_t i = 0; i < n; ++i) {
      auto w = word_of(src, i);
      const int32_t m = src.outputs[i];
      const std::size_t p = w.size();
      eps.assign(p + 1, 0);
      for (std::size_t j = 0; j < p; ++j) eps[j + 1] = eps[j] + c_.bar_degree_[w[j]];
      SparseVector& bc = bcols[i];
      SparseVector& dc = dcols[i];
      auto put = [&](SparseVector& col, std::span<const Letter> word, int32_t out, Rational v) {
        if (M_.degree_of(out) > D_) return;
        auto it = dst.index.find(BarCochainComplex::key(word, out));
        if (it == dst.index.end())
          throw BlockMissing("differential leaves the stored window (degree " + std::to_string(t + 1) + ")");
        col.push_back(Entry{it->second, std::move(v)});
      };

      // d_M after phi.
      for (const auto& e : M_.d_of(m)) put(dc, w, e.index, e.value);

      // -(-1)^t phi o d_B, internal part: [..|d a_i|..] carries -(-1)^{eps_{i-1}}.
      for (std::size_t j = 0; j < p; ++j) {
        for (const auto& e : d_transpose_[w[j]]) {
          w2.assign(w.begin(), w.end());
          w2[j] = Letter(e.index);
          const bool neg = ((eps[j] % 2) != 0) ^ t_odd;  // -(-1)^t * -(-1)^{eps} = (-1)^{t+eps}
          put(dc, w2, m, neg ? -e.value : e.value);
        }
      }
      // External part: [..|a b|..] carries (-1)^{eps_i} with eps_i counted on the longer word.
      for (std::size_t j = 0; j < p; ++j) {
        for (const auto& fz : A_.factorizations(w[j])) {
          w2.assign(w.begin(), w.begin() + std::ptrdiff_t(j));
          w2.push_back(Letter(fz.left));
          w2.push_back(Letter(fz.right));
          w2.insert(w2.end(), w.begin() + std::ptrdiff_t(j + 1), w.end());
          const int e_i = eps[j] + c_.bar_degree_[fz.left];
          int sign = fz.sign * ((e_i % 2) ? -1 : 1);
          if (!t_odd) sign = -sign;  // -(-1)^t
          put(bc, w2, m, Rational(sign));
        }
      }
      // -tau * phi: a|w -> (-1)^{t(|a|-1)} f(a) m.
      for (Letter a : letters_) {
        if (A_.degree_of(a) + M_.degree_of(m) > D_) continue;
        if (f_[a].empty()) continue;
        w2.assign(1, a);
        w2.insert(w2.end(), w.begin(), w.end());
        const bool flip = t_odd && (c_.bar_degree_[a] % 2 != 0);
        for (const auto& e : f_[a]) {
          auto pr = M_.mult(e.index, m);
          if (pr.sign == 0) continue;
          int sign = -pr.sign * (flip ? -1 : 1);
          put(bc, w2, pr.index, sign > 0 ? e.value : -e.value);
        }
      }
      // (-1)^t phi * tau: w|a -> (-1)^{eps_p} m f(a).
      for (Letter a : letters_) {
        if (A_.degree_of(a) + M_.degree_of(m) > D_) continue;
        if (f_[a].empty()) continue;
        w2.assign(w.begin(), w.end());
        w2.push_back(a);
        const bool flip = t_odd ^ (eps[p] % 2 != 0);
        for (const auto& e : f_[a]) {
          auto pr = M_.mult(m, e.index);
          if (pr.sign == 0) continue;
          int sign = pr.sign * (flip ? -1 : 1);
          put(bc, w2, pr.index, sign > 0 ? e.value : -e.value);
        }
      }
      normalize(bc);
      normalize(dc);
    }
  }

 private:
  static std::span<const Letter> word_of(const BarCochainComplex::Space& s, std::size_t i) {
    return std::span<const Letter>(s.pool.data() + s.word_start[i], s.word_start[i + 1] - s.word_start[i]);
  }

  BarCochainComplex& c_;
  const TruncatedDGA& A_;
  const TruncatedDGA& M_;
  int D_;
  std::vector<Letter> letters_;
  std::vector<SparseVector> d_transpose_;  // a -> {(a', c) : d a' = c a + ...}
  std::vector<SparseVector> f_;            // f(a) in M, truncated at D
};

BarCochainComplex BarCochainComplex::build(const BimoduleViaMorphism& coeffs, int n_max, int cutoff,
                                           Options opt) {
  if (n_max < 0) throw CutoffTooSmall("n_max must be >= 0");
  if (cutoff < 2) throw CutoffTooSmall("cutoff must be >= 2");
  if (coeffs.module.cutoff() < cutoff)
    throw CutoffTooSmall("module truncated at " + std::to_string(coeffs.module.cutoff()) + " < " +
                         std::to_string(cutoff));
  if (coeffs.algebra.cutoff() < cutoff + n_max + 2)
    throw CutoffTooSmall("algebra must be truncated at >= " + std::to_string(cutoff + n_max + 2));
  if (!(coeffs.map.source() == coeffs.algebra.presentation()))
    throw InvalidMorphism("bimodule map does not start at the algebra");
  if (!(coeffs.map.target().presentation() == coeffs.module.presentation()))
    throw InvalidMorphism("bimodule map does not land in the module");
  if (coeffs.algebra.dim(1) != 0) throw NotSimplyConnected("algebra has elements of degree 1");
  if (coeffs.algebra.size() > 65535) throw CutoffTooSmall("algebra basis too large for 16-bit letters");
  coeffs.map.validate();

  BarCochainComplex c;
  c.coeffs_ = std::make_shared<const BimoduleViaMorphism>(coeffs);
  c.n_max_ = n_max;
  c.cutoff_ = cutoff;
  BarBuilder builder(c, *c.coeffs_, cutoff);
  for (int t = c.min_degree(); t <= c.max_degree(); ++t) builder.enumerate(t);
  for (int t = c.min_degree(); t <= 0; ++t) {
    std::vector<SparseVector> bcols, dcols;
    builder.differentials(t, bcols, dcols);
    const std::size_t rows = c.dim(t + 1);
    std::vector<SparseVector> tcols(bcols.size());
    for (std::size_t i = 0; i < bcols.size(); ++i) {
      tcols[i] = bcols[i];
      axpy(tcols[i], Rational(1), dcols[i]);
    }
    c.d_.push_back(SparseMatrix::from_columns(rows, std::move(tcols)));
    if (opt.keep_split) {
      c.b_.push_back(SparseMatrix::from_columns(rows, std::move(bcols)));
      c.delta_.push_back(SparseMatrix::from_columns(rows, std::move(dcols)));
    }
  }
  return c;
}

SparseVector hochschild_differential(const BarCochainComplex& complex, int t, const SparseVector& phi) {
  return complex.total(t).apply(phi);
}

ComplexInvariants check_invariants(const BarCochainComplex& c) {
  ComplexInvariants r;
  for (int t = c.min_degree(); t < 0; ++t) {
    const SparseMatrix& b1 = c.hochschild_part(t);
    const SparseMatrix& d1 = c.internal_part(t);
    const SparseMatrix& b2 = c.hochschild_part(t + 1);
    const SparseMatrix& d2 = c.internal_part(t + 1);
    const SparseMatrix& D1 = c.total(t);
    const SparseMatrix& D2 = c.total(t + 1);
    for (std::size_t i = 0; i < D1.cols(); ++i) {
      const SparseVector& bc = b1.column(i);
      const SparseVector& dc = d1.column(i);
      if (!b2.apply(bc).empty()) r.b_squared_zero = false;
      if (!d2.apply(dc).empty()) r.delta_squared_zero = false;
      SparseVector mixed = b2.apply(dc);
      axpy(mixed, Rational(1), d2.apply(bc));
      if (!mixed.empty()) r.anticommute = false;
      if (!D2.apply(D1.column(i)).empty()) r.total_squared_zero = false;
      ++r.checked_cochains;
    }
  }
  return r;
}

HochschildCohomology::HochschildCohomology(const BimoduleViaMorphism& coeffs, int n_max, int cutoff,
                                           BarCochainComplex::Options opt)
    : complex_(BarCochainComplex::build(coeffs, n_max, cutoff, opt)),
      reduced_(std::make_shared<ReducedComplex>(complex_.graded())) {}

CohomologyTable HochschildCohomology::table() const {
  CohomologyTable table;
  for (int t = -complex_.n_max(); t <= 0; ++t) {
    CohomologyTable::Row row;
    row.degree = t;
    row.dim = dim(t);
    row.certified = certified_degree(t, complex_.cutoff());
    table.rows.push_back(row);
  }
  return table;
}

CohomologyTable hh(const BimoduleViaMorphism& coeffs, int n_max, int cutoff) {
  return HochschildCohomology(coeffs, n_max, cutoff).table();
}

SparseVector cup_product(const BarCochainComplex& c, int t1, const SparseVector& phi, int t2,
                         const SparseVector& psi) {
  const int t = t1 + t2;
  const TruncatedDGA& M = c.coefficients().module;
  SparseVector out;
  std::vector<Letter> w;
  for (const auto& x : phi) {
    auto w1 = c.word(t1, x.index);
    int bar1 = 0;
    for (Letter a : w1) bar1 += c.bar_degree(a);
    const bool flip = (bar1 % 2 != 0) && (t2 % 2 != 0);
    for (const auto& y : psi) {
      auto pr = M.mult(c.output(t1, x.index), c.output(t2, y.index));
      if (pr.sign == 0 || M.degree_of(pr.index) > c.cutoff()) continue;
      auto w2 = c.word(t2, y.index);
      w.assign(w1.begin(), w1.end());
      w.insert(w.end(), w2.begin(), w2.end());
      auto idx = c.index_of(t, w, pr.index);
      if (!idx) throw BlockMissing("cup product leaves the stored window");
      Rational v = x.value * y.value;
      if ((pr.sign < 0) != flip) v = -v;
      out.push_back(Entry{*idx, std::move(v)});
    }
  }
  normalize(out);
  return out;
}

HH0Algebra hh0_algebra(const HochschildCohomology& hh) {
  const BarCochainComplex& c = hh.complex();
  const auto& co = c.coefficients();
  if (!(co.algebra.presentation() == co.module.presentation()))
    throw InvalidMorphism("hh0_algebra needs coefficients in the algebra itself");
  DGAMorphism id = DGAMorphism::identity(co.module);
  if (id.images() != co.map.images()) throw InvalidMorphism("hh0_algebra needs the identity map");

  HH0Algebra out;
  const auto reps = hh.representatives(0);
  out.dim_hh0 = reps.size();
  // Augmentation of a degree-0 class: coefficient of the empty word with output 1.
  const auto unit = c.index_of(0, {}, int32_t(TruncatedDGA::unit()));
  std::vector<Rational> aug;
  for (const auto& r : reps) aug.push_back(unit ? coefficient(r, *unit) : Rational());

  // Kernel of the augmentation, in class coordinates.
  SparseMatrix row(1, reps.size());
  for (std::size_t j = 0; j < reps.size(); ++j) row.set(0, j, aug[j]);
  std::vector<SparseVector> n_basis = kernel_basis(row);
  out.dim_n = n_basis.size();
  if (n_basis.empty()) {
    out.nilpotency = 1;
    return out;
  }
  auto cochain = [&](const SparseVector& coords) {
    SparseVector z;
    for (const auto& e : coords) axpy(z, e.value, reps[e.index]);
    return z;
  };
  // N^k as a span of class coordinate vectors.
  std::vector<SparseVector> power = n_basis;
  for (int e = 2; e <= int(n_basis.size()) + 1; ++e) {
    EchelonSpan next;
    std::vector<SparseVector> next_basis;
    for (const auto& u : power)
      for (const auto& v : n_basis) {
        auto coords = hh.classify(0, cup_product(c, 0, cochain(u), 0, cochain(v)));
        SparseVector cv;
        for (std::size_t j = 0; j < coords.size(); ++j)
          if (!coords[j].is_zero()) cv.push_back(Entry{int32_t(j), coords[j]});
        if (next.insert(cv)) next_basis.push_back(cv);
      }
    if (next_basis.empty()) {
      out.nilpotency = e;
      return out;
    }
    power = std::move(next_basis);
  }
  return out;
}

}  // namespace rht
