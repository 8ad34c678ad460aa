#include "rht/mapping_space.hpp"

#include <algorithm>
#include <span>

#include "rht/errors.hpp"
#include "rht/hodge.hpp"
#include "rht/linalg.hpp"

namespace rht {

namespace {

// Factors of a monomial in declaration order, repeated by exponent.
std::vector<std::size_t> factors_of(const Monomial& m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.exps.size(); ++i)
    for (int e = 0; e < m.exps[i]; ++e) out.push_back(i);
  return out;
}

Monomial monomial_of(std::size_t n, std::span<const std::size_t> factors) {
  Monomial m{std::vector<int>(n, 0)};
  for (auto i : factors) ++m.exps[i];
  return m;
}

}  // namespace

DerivationComplex::DerivationComplex(const DGAMorphism& f, int n_max) : f_(f), n_max_(n_max) {
  if (n_max < 0) throw CutoffTooSmall("n_max must be nonnegative");
  const FreeCDGA& V = f.source();
  const TruncatedDGA& T = f.target();
  if (T.cutoff() < V.max_generator_degree())
    throw CutoffTooSmall("target cutoff " + std::to_string(T.cutoff()) + " is below the top generator degree " +
                         std::to_string(V.max_generator_degree()));
  f.validate();

  const std::size_t g = V.num_generators();
  const int kmin = min_degree();
  bases_.resize(std::size_t(-kmin) + 1);
  // Local index of (v, e) in degree k, keyed by (k, v) -> first index.
  std::vector<std::vector<std::size_t>> first(bases_.size(), std::vector<std::size_t>(g, 0));
  for (int k = kmin; k <= 0; ++k) {
    auto& b = bases_[k - kmin];
    for (std::size_t v = 0; v < g; ++v) {
      first[k - kmin][v] = b.size();
      const int deg = V.generator_spec(v).degree + k;
      if (deg < 0 || deg > T.cutoff()) continue;
      for (std::size_t e = T.offset(deg); e < T.offset(deg) + T.dim(deg); ++e) b.emplace_back(v, e);
    }
  }
  auto local = [&](int k, std::size_t v, std::size_t e) {
    const int deg = V.generator_spec(v).degree + k;
    return int32_t(first[k - kmin][v] + (e - T.offset(deg)));
  };

  // theta(du) for theta = (v, e) of degree k, as a global vector in T.
  auto theta_of_d = [&](std::size_t v, std::size_t e, int k, std::size_t u) {
    SparseVector out;
    const SparseVector ev = unit_vector(int32_t(e));
    for (const auto& [mono, c] : V.differential_of(u).terms()) {
      const auto fs = factors_of(mono);
      int prefix_deg = 0;
      for (std::size_t j = 0; j < fs.size(); ++j) {
        if (fs[j] == v) {
          const std::span<const std::size_t> all(fs);
          SparseVector term = T.multiply(f.apply(monomial_of(g, all.subspan(0, j))), ev);
          term = T.multiply(term, f.apply(monomial_of(g, all.subspan(j + 1))));
          const bool neg = (k * prefix_deg) % 2 != 0;
          axpy(out, neg ? -c : c, term);
        }
        prefix_deg += V.generator_spec(fs[j]).degree;
      }
    }
    return out;
  };

  for (int k = kmin; k <= -1; ++k) {
    const auto& src = bases_[k - kmin];
    std::vector<SparseVector> cols(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
      const auto [v, e] = src[i];
      SparseVector col;
      for (const auto& t : T.d_of(e)) col.push_back(Entry{local(k + 1, v, t.index), t.value});
      const Rational sign = (k % 2 == 0) ? Rational(-1) : Rational(1);  // -(-1)^k
      for (std::size_t u = 0; u < g; ++u) {
        for (const auto& t : theta_of_d(v, e, k, u)) col.push_back(Entry{local(k + 1, u, t.index), sign * t.value});
      }
      cols[i] = std::move(col);
    }
    d_.push_back(SparseMatrix::from_columns(bases_[k + 1 - kmin].size(), std::move(cols)));
  }
}

std::size_t DerivationComplex::dim(int k) const {
  if (k < min_degree() || k > 0) return 0;
  return bases_[k - min_degree()].size();
}

const SparseMatrix& DerivationComplex::differential(int k) const {
  if (k < min_degree() || k > -1) throw BlockMissing("no derivation differential out of degree " + std::to_string(k));
  return d_[k - min_degree()];
}

std::size_t DerivationComplex::cohomology_dim(int k) const {
  if (k <= min_degree() || k > -1) throw BlockMissing("derivation cohomology unavailable in degree " + std::to_string(k));
  return dim(k) - rank(differential(k)) - rank(differential(k - 1));
}

bool DerivationComplex::squares_to_zero() const {
  for (std::size_t i = 0; i + 1 < d_.size(); ++i)
    if (!(d_[i + 1] * d_[i]).is_zero()) return false;
  return true;
}

CohomologyTable aq(const DGAMorphism& f, int n_max) {
  DerivationComplex der(f, n_max);
  if (!der.squares_to_zero()) throw InvalidMorphism("derivation differential does not square to zero");
  CohomologyTable out;
  for (int n = 1; n <= n_max + 1; ++n) out.rows.push_back({-n, der.cohomology_dim(-n), true, {}});
  return out;
}

CohomologyTable constant_map_formula(const FreeCDGA& Y_model, const TruncatedDGA& X_target, int n_max) {
  if (!is_minimal(Y_model)) throw NotMinimal("constant map formula needs a minimal model of the target");
  const int top = Y_model.max_generator_degree();
  std::vector<std::size_t> h(std::size_t(std::max(top, 1)), 0);
  if (top >= 1) {
    const auto table = cohomology(X_target, top - 1);
    for (int j = 0; j < top; ++j) h[j] = table.dim(j);
  }
  CohomologyTable out;
  for (int n = 1; n <= n_max; ++n) {
    std::size_t pi = 0;
    for (const auto& g : Y_model.generators()) {
      const int j = g.degree - n;
      if (j >= 0 && j < top) pi += h[j];
    }
    out.rows.push_back({n, pi, true, {}});
  }
  return out;
}

std::vector<std::string> corpus_case_names() {
  return {"s3-id", "s2-id", "cp2-id", "s2-to-s3-const", "s3xs3-id", "point-to-s3", "point-to-s2", "point-to-cp2"};
}

VerificationCase corpus_case(const std::string& name) {
  using K = VerificationCase::MapKind;
  auto self = [&](SpaceDescriptor s) { return VerificationCase{name, s, s, K::identity, {}, {}, {}}; };
  auto constant = [&](SpaceDescriptor x, SpaceDescriptor y) { return VerificationCase{name, x, y, K::constant, {}, {}, {}}; };
  if (name == "s3-id") return self(SpaceDescriptor::sphere(3));
  if (name == "s2-id") return self(SpaceDescriptor::sphere(2));
  if (name == "cp2-id") return self(SpaceDescriptor::complex_projective(2));
  if (name == "s3xs3-id") return self(SpaceDescriptor::parse("S3xS3"));
  if (name == "s2-to-s3-const") return constant(SpaceDescriptor::sphere(2), SpaceDescriptor::sphere(3));
  if (name == "point-to-s3") return constant(SpaceDescriptor::point(), SpaceDescriptor::sphere(3));
  if (name == "point-to-s2") return constant(SpaceDescriptor::point(), SpaceDescriptor::sphere(2));
  if (name == "point-to-cp2") return constant(SpaceDescriptor::point(), SpaceDescriptor::complex_projective(2));
  throw UnsupportedDescriptor("unknown verification case '" + name + "'");
}

VerificationReport verify_case(const VerificationCase& c, int n_max, int cutoff) {
  VerificationReport r;
  r.case_name = c.name;
  r.n_max = n_max;
  r.cutoff = cutoff;
  auto fail = [&](const std::string& what) {
    if (r.pass) r.first_failure = what;
    r.pass = false;
  };

  const FreeCDGA X = c.X_model ? *c.X_model : standard_model(c.X);
  const FreeCDGA Y = c.Y_model ? *c.Y_model : standard_model(c.Y);

  // The models must realize the cohomology of the spaces they are labeled with.
  auto model_row = [&](const char* side, const SpaceDescriptor& s, const FreeCDGA& m) {
    VerificationReport::ModelRow row;
    row.space = std::string(side) + " " + s.name();
    const auto table = cohomology(TruncatedDGA(m, cutoff), cutoff - 1);
    for (const auto& t : table.rows) row.computed.push_back(t.dim);
    row.expected = s.cohomology_dims(cutoff - 1);
    row.ok = row.computed == row.expected;
    if (!row.ok) fail("model of " + row.space + " has the wrong cohomology");
    r.models.push_back(std::move(row));
  };
  model_row("X", c.X, X);
  model_row("Y", c.Y, Y);

  const TruncatedDGA target(X, cutoff);
  std::optional<DGAMorphism> f;
  switch (c.map) {
    case VerificationCase::MapKind::identity:
      if (!(X == Y)) throw InvalidMorphism("identity case needs equal models");
      f = DGAMorphism::identity(target);
      break;
    case VerificationCase::MapKind::constant:
      f = DGAMorphism::constant(Y, target);
      break;
    case VerificationCase::MapKind::explicit_images:
      f = DGAMorphism::from_polynomials(Y, target, c.images);
      break;
  }
  f->validate();

  HochschildCohomology hh(make_bimodule(*f, n_max), n_max, cutoff, {true});
  const ComplexInvariants inv = check_invariants(hh.complex());
  r.cochains_checked = inv.checked_cochains;
  DerivationComplex der(*f, n_max);
  r.complex_ok = inv.ok() && der.squares_to_zero();
  if (!r.complex_ok) fail("complex invariants violated");

  const CohomologyTable weights = weight_decomposition(hh);
  for (int n = 1; n <= n_max; ++n) {
    VerificationReport::Row row;
    row.n = n;
    row.certified = certified_degree(-n, cutoff);
    row.pi_map = der.cohomology_dim(-n - 1);
    const auto& w = weights.at(-n);
    row.weights = w.weights;
    row.hh_total = w.dim;
    row.hh_weight1 = weights.weight(-n, 1);
    for (auto x : w.weights) row.weight_sum += x;
    row.main2 = row.pi_map == row.hh_weight1;
    row.injective = row.hh_weight1 <= row.hh_total && row.weight_sum == row.hh_total;
    if (row.certified) {
      if (!row.main2)
        fail("n=" + std::to_string(n) + ": dim H^" + std::to_string(-n - 1) + "(Der) = " + std::to_string(row.pi_map) +
             " but dim HH^" + std::to_string(-n) + "_(1) = " + std::to_string(row.hh_weight1));
      if (!row.injective)
        fail("n=" + std::to_string(n) + ": weights sum to " + std::to_string(row.weight_sum) + " of " +
             std::to_string(row.hh_total));
    }
    r.rows.push_back(std::move(row));
  }

  if (c.map == VerificationCase::MapKind::identity) {
    const HH0Algebra a = hh0_algebra(hh);
    VerificationReport::Pi1 p;
    p.der = der.cohomology_dim(-1);
    p.hh0 = a.dim_hh0;
    p.n = a.dim_n;
    p.nilpotency = a.nilpotency;
    p.ok = p.der <= p.n;
    if (!p.ok) fail("pi_1: dim H^-1(Der) = " + std::to_string(p.der) + " exceeds dim N = " + std::to_string(p.n));
    r.pi1 = p;
  }

  if (c.map == VerificationCase::MapKind::constant) {
    const CohomologyTable formula = constant_map_formula(Y, target, n_max + 1);
    for (int n = 1; n <= n_max + 1; ++n) {
      VerificationReport::ConstantRow row;
      row.n = n;
      row.aq = der.cohomology_dim(-n);
      row.formula = formula.dim(n);
      row.ok = row.aq == row.formula;
      if (!row.ok)
        fail("constant map: dim H^" + std::to_string(-n) + "(Der) = " + std::to_string(row.aq) + " but the formula gives " +
             std::to_string(row.formula));
      r.constant_rows.push_back(row);
    }
  }
  return r;
}

void enforce(const VerificationReport& r) {
  if (!r.pass) throw VerificationFailed(r.case_name + ": " + r.first_failure);
}

FreeCDGA free_loop_model(const FreeCDGA& M) {
  const std::size_t g = M.num_generators();
  std::vector<GeneratorSpec> gens = M.generators();
  for (const auto& s : M.generators()) {
    std::string name = "s" + s.name;
    while (M.has_generator(name)) name = "s" + name;
    gens.push_back({name, s.degree - 1});
  }
  if (std::any_of(gens.begin() + std::ptrdiff_t(g), gens.end(), [](const GeneratorSpec& s) { return s.degree < 1; }))
    throw NotSimplyConnected("free loop model needs generators of degree >= 2");
  auto lift = [&](const Monomial& m) {
    Monomial out{std::vector<int>(2 * g, 0)};
    std::copy(m.exps.begin(), m.exps.end(), out.exps.begin());
    return out;
  };
  std::vector<Polynomial> diff(2 * g);
  for (std::size_t i = 0; i < g; ++i) {
    for (const auto& [mono, c] : M.differential_of(i).terms()) diff[i].add_term(lift(mono), c);
  }
  FreeCDGA shell(M.name() + "_loop", gens, std::vector<Polynomial>(2 * g));
  // d(sv) = -s(dv), s the degree -1 derivation with s(v) = sv.
  for (std::size_t i = 0; i < g; ++i) {
    Polynomial s_dv;
    for (const auto& [mono, c] : M.differential_of(i).terms()) {
      const auto fs = factors_of(mono);
      int prefix_deg = 0;
      for (std::size_t j = 0; j < fs.size(); ++j) {
        const std::span<const std::size_t> all(fs);
        Polynomial term = Polynomial::monomial(lift(monomial_of(g, all.subspan(0, j))));
        term = koszul_multiply(shell, term, shell.generator(g + fs[j]));
        term = koszul_multiply(shell, term, Polynomial::monomial(lift(monomial_of(g, all.subspan(j + 1)))));
        s_dv += (prefix_deg % 2 != 0 ? -c : c) * term;
        prefix_deg += M.generator_spec(fs[j]).degree;
      }
    }
    diff[g + i] = -s_dv;
  }
  return FreeCDGA(M.name() + "_loop", gens, diff);
}

std::vector<std::size_t> loop_homology_dims(const FreeCDGA& M, int formal_dimension, int n_max) {
  const int top = n_max + formal_dimension;
  const auto table = cohomology(TruncatedDGA(free_loop_model(M), top + 1), top);
  std::vector<std::size_t> out;
  for (int n = 0; n <= n_max; ++n) out.push_back(n + formal_dimension >= 0 ? table.dim(n + formal_dimension) : 0);
  return out;
}

LoopReport loop_space_check(const FreeCDGA& M_model, int formal_dimension, int n_max, int cutoff,
                            const std::vector<std::size_t>& expected) {
  if (expected.size() < std::size_t(n_max) + 1)
    throw MismatchedExpectation("need " + std::to_string(n_max + 1) + " expected dims, got " +
                                std::to_string(expected.size()));
  LoopReport r;
  r.model = M_model.name();
  r.formal_dimension = formal_dimension;
  r.cutoff = cutoff;
  const TruncatedDGA T(M_model, cutoff);
  const DGAMorphism id = DGAMorphism::identity(T);
  HochschildCohomology hh(make_bimodule(id, n_max), n_max, cutoff);
  std::optional<DerivationComplex> der;
  if (M_model.num_generators() > 0) der.emplace(id, n_max);
  for (int n = 0; n <= n_max; ++n) {
    LoopReport::Row row;
    row.n = n;
    row.certified = certified_degree(-n, cutoff);
    row.hh = hh.dim(-n);
    row.expected = expected[n];
    row.ok = row.hh == row.expected;
    if (n >= 1) {
      row.der = der ? der->cohomology_dim(-n) : 0;
      // pi_n of the identity component injects into HH^{-n+1}.
      const std::size_t bound = hh.dim(-n + 1);
      if (*row.der > bound) {
        row.ok = false;
        if (row.certified && r.pass)
          r.first_failure = "n=" + std::to_string(n) + ": dim H^" + std::to_string(-n) + "(Der) = " +
                            std::to_string(*row.der) + " exceeds dim HH^" + std::to_string(-n + 1) + " = " +
                            std::to_string(bound);
        if (row.certified) r.pass = false;
      }
    }
    if (row.certified && row.hh != row.expected) {
      if (r.pass)
        r.first_failure = "n=" + std::to_string(n) + ": dim HH^" + std::to_string(-n) + " = " + std::to_string(row.hh) +
                          " but expected " + std::to_string(row.expected);
      r.pass = false;
    }
    r.rows.push_back(row);
  }
  return r;
}

void enforce(const LoopReport& r) {
  if (!r.pass) throw MismatchedExpectation(r.model + ": " + r.first_failure);
}

}  // namespace rht
