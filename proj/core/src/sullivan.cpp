#include "rht/sullivan.hpp"

#include <cctype>
#include <charconv>

#include "rht/errors.hpp"

namespace rht {

SpaceDescriptor SpaceDescriptor::sphere(int n) {
  SpaceDescriptor s;
  s.kind = Kind::sphere;
  s.parameter = n;
  s.validate();
  return s;
}

SpaceDescriptor SpaceDescriptor::complex_projective(int n) {
  SpaceDescriptor s;
  s.kind = Kind::complex_projective;
  s.parameter = n;
  s.validate();
  return s;
}

SpaceDescriptor SpaceDescriptor::eilenberg_maclane(int degree) {
  SpaceDescriptor s;
  s.kind = Kind::eilenberg_maclane_even;
  s.parameter = degree;
  s.validate();
  return s;
}

SpaceDescriptor SpaceDescriptor::product(SpaceDescriptor a, SpaceDescriptor b) {
  SpaceDescriptor s;
  s.kind = Kind::product;
  s.factors = {std::move(a), std::move(b)};
  s.validate();
  return s;
}

SpaceDescriptor SpaceDescriptor::point() { return SpaceDescriptor{}; }

void SpaceDescriptor::validate() const {
  switch (kind) {
    case Kind::sphere:
      if (parameter < 2) throw UnsupportedDescriptor("sphere dimension must be >= 2");
      break;
    case Kind::complex_projective:
      if (parameter < 1) throw UnsupportedDescriptor("CP^n needs n >= 1");
      break;
    case Kind::eilenberg_maclane_even:
      if (parameter < 2 || parameter % 2)
        throw UnsupportedDescriptor("K(Q, n) is supported for even n >= 2");
      break;
    case Kind::product:
      if (factors.size() < 2) throw UnsupportedDescriptor("product needs two factors");
      for (const auto& f : factors) f.validate();
      break;
    case Kind::point:
      break;
  }
}

SpaceDescriptor SpaceDescriptor::parse(std::string_view text) {
  auto number = [&](std::string_view digits) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
      throw UnsupportedDescriptor("bad space descriptor '" + std::string(text) + "'");
    return v;
  };
  std::vector<SpaceDescriptor> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('x', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(start, end - start);
    if (tok == "pt") {
      parts.push_back(point());
    } else if (tok.size() > 2 && tok.substr(0, 2) == "CP") {
      parts.push_back(complex_projective(number(tok.substr(2))));
    } else if (tok.size() > 1 && tok[0] == 'S') {
      parts.push_back(sphere(number(tok.substr(1))));
    } else if (tok.size() > 1 && tok[0] == 'K') {
      parts.push_back(eilenberg_maclane(number(tok.substr(1))));
    } else {
      throw UnsupportedDescriptor("bad space descriptor '" + std::string(text) + "'");
    }
    start = end + 1;
  }
  SpaceDescriptor s = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) s = product(s, parts[i]);
  return s;
}

std::string SpaceDescriptor::name() const {
  switch (kind) {
    case Kind::sphere: return "S" + std::to_string(parameter);
    case Kind::complex_projective: return "CP" + std::to_string(parameter);
    case Kind::eilenberg_maclane_even: return "K" + std::to_string(parameter);
    case Kind::product: return factors[0].name() + "x" + factors[1].name();
    case Kind::point: return "pt";
  }
  return "?";
}

int SpaceDescriptor::formal_dimension() const {
  switch (kind) {
    case Kind::sphere: return parameter;
    case Kind::complex_projective: return 2 * parameter;
    case Kind::eilenberg_maclane_even:
      throw UnsupportedDescriptor("K(Q, n) has no top cohomology class");
    case Kind::product: return factors[0].formal_dimension() + factors[1].formal_dimension();
    case Kind::point: return 0;
  }
  return 0;
}

std::vector<std::size_t> SpaceDescriptor::cohomology_dims(int up_to) const {
  std::vector<std::size_t> h(std::size_t(up_to) + 1, 0);
  switch (kind) {
    case Kind::sphere:
      h[0] = 1;
      if (parameter <= up_to) h[parameter] = 1;
      break;
    case Kind::complex_projective:
      for (int i = 0; i <= parameter && 2 * i <= up_to; ++i) h[2 * i] = 1;
      break;
    case Kind::eilenberg_maclane_even:
      for (int i = 0; i <= up_to; i += parameter) h[i] = 1;
      break;
    case Kind::product: {
      auto a = factors[0].cohomology_dims(up_to), b = factors[1].cohomology_dims(up_to);
      for (int i = 0; i <= up_to; ++i)
        for (int j = 0; i + j <= up_to; ++j) h[i + j] += a[i] * b[j];
      break;
    }
    case Kind::point:
      h[0] = 1;
      break;
  }
  return h;
}

FreeCDGA standard_model(const SpaceDescriptor& s) {
  s.validate();
  switch (s.kind) {
    case SpaceDescriptor::Kind::sphere:
      if (s.parameter % 2) return FreeCDGA(s.name(), {{"x", s.parameter}}, {});
      [[fallthrough]];
    case SpaceDescriptor::Kind::complex_projective: {
      const bool sphere = s.kind == SpaceDescriptor::Kind::sphere;
      const int xdeg = sphere ? s.parameter : 2;
      const int power_e = sphere ? 2 : s.parameter + 1;
      Polynomial dy = Polynomial::monomial(Monomial{{power_e, 0}});
      return FreeCDGA(s.name(), {{"x", xdeg}, {"y", xdeg * power_e - 1}}, {Polynomial(), dy});
    }
    case SpaceDescriptor::Kind::eilenberg_maclane_even:
      return FreeCDGA(s.name(), {{"x", s.parameter}}, {});
    case SpaceDescriptor::Kind::product: {
      FreeCDGA m = tensor_product(standard_model(s.factors[0]), standard_model(s.factors[1]));
      m.set_name(s.name());
      return m;
    }
    case SpaceDescriptor::Kind::point: {
      FreeCDGA q;
      q.set_name("pt");
      return q;
    }
  }
  throw UnsupportedDescriptor("unknown descriptor");
}

bool is_minimal(const FreeCDGA& A) {
  for (const auto& p : A.differential())
    for (const auto& [m, c] : p.terms())
      if (m.total_exponent() <= 1) return false;
  return true;
}

namespace {

Polynomial pad(const Polynomial& p, std::size_t n) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Monomial w = m;
    w.exps.resize(n, 0);
    out.add_term(w, c);
  }
  return out;
}

// Global coordinates of a local degree-k vector.
SparseVector globalize(const TruncatedDGA& A, int k, const SparseVector& local) {
  SparseVector out = local;
  const int32_t off = int32_t(A.offset(k));
  for (auto& e : out) e.index += off;
  return out;
}

SparseVector from_coords(const std::vector<Rational>& c) {
  SparseVector v;
  for (std::size_t j = 0; j < c.size(); ++j)
    if (!c[j].is_zero()) v.push_back(Entry{int32_t(j), c[j]});
  return v;
}

}  // namespace

MinimalModelResult minimal_model(const TruncatedDGA& A, int up_to) {
  if (up_to > A.cutoff() - 1)
    throw CutoffTooSmall("minimal model up to degree " + std::to_string(up_to) + " needs cutoff >= " +
                         std::to_string(up_to + 1));
  if (!check_connected(A)) throw NotConnected("input is not connected (H^0 != Q or H^1 != 0)");

  std::vector<GeneratorSpec> gens;
  std::vector<Polynomial> diffs;
  std::vector<SparseVector> images;  // global coordinates in A
  std::vector<int> next_index(std::size_t(up_to) + 1, 0);

  auto add_generator = [&](int degree, const Polynomial& d, SparseVector image) {
    const std::size_t n = gens.size() + 1;
    for (auto& p : diffs) p = pad(p, n);
    gens.push_back(GeneratorSpec{"v" + std::to_string(degree) + "_" + std::to_string(next_index[degree]++),
                                 degree});
    diffs.push_back(pad(d, n));
    images.push_back(std::move(image));
  };
  auto current = [&] {
    FreeCDGA model("minimal", gens, diffs);
    return DGAMorphism(model, A, images);
  };

  for (int n = 2; n <= up_to; ++n) {
    // Surject onto H^n(A) with closed generators.
    {
      DGAMorphism phi = current();
      TruncatedDGA M(phi.source(), n + 1);
      Subquotient hm = cohomology_subquotient(M, n);
      Subquotient ha = cohomology_subquotient(A, n);
      SparseMatrix f = phi.matrix(M, n);
      EchelonSpan span;
      for (const auto& z : hm.quotient_basis) span.insert(from_coords(ha.coordinates(f.apply(z))));
      for (std::size_t j = 0; j < ha.dim(); ++j) {
        std::vector<Rational> e(ha.dim());
        e[j] = Rational(1);
        if (span.insert(from_coords(e)))
          add_generator(n, Polynomial(), globalize(A, n, ha.quotient_basis[j]));
      }
    }
    // Kill the kernel of H^{n+1} with degree-n generators w, dw = z, w -> a, da = phi(z).
    {
      DGAMorphism phi = current();
      TruncatedDGA M(phi.source(), n + 2);
      Subquotient hm = cohomology_subquotient(M, n + 1);
      if (hm.dim() == 0) continue;
      SparseMatrix f = phi.matrix(M, n + 1);
      SparseMatrix dA = A.differential(n);
      const std::size_t h = hm.dim();
      std::vector<SparseVector> cols;
      for (const auto& z : hm.quotient_basis) cols.push_back(f.apply(z));
      for (const auto& c : dA.columns()) cols.push_back(c);
      SparseMatrix combined = SparseMatrix::from_columns(A.dim(n + 1), std::move(cols));
      EchelonSpan chosen;
      for (const auto& k : kernel_basis(combined)) {
        SparseVector lambda, mu;
        for (const auto& e : k) {
          if (std::size_t(e.index) < h) lambda.push_back(e);
          else mu.push_back(Entry{int32_t(e.index - h), -e.value});
        }
        if (!chosen.insert(lambda)) continue;
        SparseVector z;
        for (const auto& e : lambda) axpy(z, e.value, hm.quotient_basis[e.index]);
        Polynomial dz = M.to_polynomial(globalize(M, n + 1, z));
        add_generator(n, dz, globalize(A, n, mu));
      }
    }
  }

  FreeCDGA model("minimal", gens, diffs);
  MinimalModelResult result{model, DGAMorphism(model, A, images), up_to};
  result.comparison.validate();
  return result;
}

}  // namespace rht
