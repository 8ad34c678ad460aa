// rht: command-line front end for the rht library.
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rht/cdga.hpp"
#include "rht/errors.hpp"
#include "rht/hochschild.hpp"
#include "rht/hodge.hpp"
#include "rht/mapping_space.hpp"
#include "rht/sullivan.hpp"
#include "rht/text_format.hpp"

namespace {

using namespace rht;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;

// Raised for bad flag combinations detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int default_truncation() {
  const char* env = std::getenv("RHT_TRUNCATE_DEFAULT");
  if (!env || !*env) return 12;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1000) throw UsageError("RHT_TRUNCATE_DEFAULT must be a positive integer");
  return int(v);
}

struct Common {
  std::string format;  // tsv or report; empty picks the command default
  std::string out;
  int truncate = 0;
  int n_max = 4;
};

struct Input {
  std::string file;
  std::string space;
};

AlgebraFile load(const Input& in, const char* what) {
  if (!in.file.empty() && !in.space.empty())
    throw UsageError(std::string("give either a file or a space for the ") + what + ", not both");
  if (!in.file.empty()) return load_algebra(in.file);
  if (!in.space.empty()) {
    auto d = SpaceDescriptor::parse(in.space);
    d.validate();
    return AlgebraFile{standard_model(d), {}};
  }
  throw UsageError(std::string("missing ") + what);
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + c.out + "'");
  f << text;
}

std::string join(const std::vector<std::size_t>& v, char sep = ',') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

const char* yn(bool b) { return b ? "yes" : "no"; }
const char* ok(bool b) { return b ? "ok" : "FAIL"; }

// The morphism f: algebra -> module that defines the coefficients.
struct Coefficients {
  AlgebraFile algebra;
  AlgebraFile module;
  std::optional<DGAMorphism> f;
  bool self = true;
  bool constant = false;
};

Coefficients coefficients(const Input& alg, const Input& mod, const std::string& map_file, int cutoff) {
  Coefficients c;
  c.algebra = load(alg, "algebra (--algebra or --space)");
  c.self = mod.file.empty() && mod.space.empty();
  c.module = c.self ? c.algebra : load(mod, "module");
  if (c.self && !map_file.empty()) c.self = false;
  const TruncatedDGA target(c.module.algebra, cutoff, c.module.relations);
  if (!map_file.empty()) {
    MapFile m = parse_map(read_text_file(map_file), c.algebra.algebra, c.module.algebra, cutoff);
    c.f = DGAMorphism::from_polynomials(c.algebra.algebra, target, m.images);
    c.constant = std::all_of(m.images.begin(), m.images.end(), [](const Polynomial& p) { return p.is_zero(); });
  } else if (c.self) {
    c.f = DGAMorphism::identity(target);
  } else {
    c.f = DGAMorphism::constant(c.algebra.algebra, target);
    c.constant = true;
  }
  c.f->validate();
  return c;
}

int cmd_cohomology(const Common& c, const Input& in, int up_to) {
  AlgebraFile a = load(in, "algebra (--algebra or --space)");
  if (up_to < 0) up_to = c.truncate - 1;
  const auto table = cohomology(TruncatedDGA(a.algebra, c.truncate, a.relations), up_to);
  std::ostringstream os;
  if (c.format == "tsv") {
    os << "degree\tdim\n";
    for (const auto& r : table.rows) os << r.degree << '\t' << r.dim << '\n';
  } else {
    os << "cohomology:\n  algebra: " << a.algebra.name() << "\n  cutoff: " << c.truncate << "\n  degrees:\n";
    for (const auto& r : table.rows) os << "    " << r.degree << ": " << r.dim << '\n';
  }
  emit(c, os.str());
  return kExitOk;
}

int cmd_model(const Common& c, const Input& in, int up_to) {
  AlgebraFile a = load(in, "algebra (--algebra or --space)");
  if (up_to < 0) up_to = c.truncate - 2;
  const TruncatedDGA A(a.algebra, c.truncate, a.relations);
  MinimalModelResult m = minimal_model(A, up_to);
  const TruncatedDGA source(m.model, c.truncate);
  const auto qi = is_quasi_iso(m.comparison, source, up_to);
  const auto hm = cohomology(source, up_to);
  const auto ha = cohomology(A, up_to);
  std::vector<std::size_t> gens(std::size_t(up_to) + 1, 0);
  for (const auto& g : m.model.generators())
    if (g.degree <= up_to) ++gens[g.degree];
  bool all = true;
  std::ostringstream os;
  if (c.format == "tsv") {
    os << "degree\tgenerators\tdim_model\tdim_input\tquasi_iso\n";
    for (int k = 0; k <= up_to; ++k)
      os << k << '\t' << gens[k] << '\t' << hm.dim(k) << '\t' << ha.dim(k) << '\t' << yn(qi[k]) << '\n';
  } else {
    os << serialize_algebra(AlgebraFile{m.model, {}});
    os << "comparison:\n";
    for (std::size_t i = 0; i < m.model.num_generators(); ++i)
      os << "  f " << m.model.generator_spec(i).name << " = "
         << format_polynomial(a.algebra, A.to_polynomial(m.comparison.image(i))) << '\n';
    os << "degrees:\n";
    for (int k = 0; k <= up_to; ++k)
      os << "  " << k << ": generators=" << gens[k] << " dim_model=" << hm.dim(k) << " dim_input=" << ha.dim(k)
         << " quasi_iso=" << yn(qi[k]) << '\n';
  }
  for (bool b : qi) all = all && b;
  emit(c, os.str());
  return all ? kExitOk : kExitFailed;
}

int cmd_hh(const Common& c, const Input& alg, const Input& mod, const std::string& map_file, bool hodge) {
  Coefficients co = coefficients(alg, mod, map_file, c.truncate);
  HochschildCohomology h(make_bimodule(*co.f, c.n_max), c.n_max, c.truncate);
  const CohomologyTable table = hodge ? weight_decomposition(h) : h.table();
  const std::size_t w = hodge ? table.max_weight_columns() : 0;
  std::ostringstream os;
  if (c.format == "tsv") {
    os << "n\tdim_total";
    for (std::size_t k = 0; k < w; ++k) os << "\tdim_w" << k;
    os << "\tcertified\n";
    for (int n = 0; n <= c.n_max; ++n) {
      const auto& r = table.at(-n);
      os << n << '\t' << r.dim;
      for (std::size_t k = 0; k < w; ++k) os << '\t' << table.weight(-n, k);
      os << '\t' << yn(r.certified) << '\n';
    }
  } else {
    os << "hochschild:\n  algebra: " << co.algebra.algebra.name() << "\n  module: " << co.module.algebra.name()
       << "\n  map: " << (map_file.empty() ? (co.self ? "identity" : "constant") : map_file) << "\n  cutoff: " << c.truncate
       << "\n  n_max: " << c.n_max << "\n  degrees:\n";
    for (int n = 0; n <= c.n_max; ++n) {
      const auto& r = table.at(-n);
      os << "    HH^" << -n << ": dim=" << r.dim;
      if (hodge) {
        std::vector<std::size_t> ws;
        for (std::size_t k = 0; k < w; ++k) ws.push_back(table.weight(-n, k));
        os << " weights=" << join(ws);
      }
      os << " certified=" << yn(r.certified) << '\n';
    }
  }
  emit(c, os.str());
  return kExitOk;
}

int cmd_aq(const Common& c, const Input& alg, const Input& mod, const std::string& map_file) {
  Coefficients co = coefficients(alg, mod, map_file, c.truncate);
  const CohomologyTable t = aq(*co.f, c.n_max);
  std::ostringstream os;
  if (c.format == "tsv") {
    os << "n\tdim\n";
    for (const auto& r : t.rows) os << -r.degree << '\t' << r.dim << '\n';
  } else {
    os << "aq:\n  algebra: " << co.algebra.algebra.name() << "\n  module: " << co.module.algebra.name()
       << "\n  cutoff: " << c.truncate << "\n  degrees:\n";
    for (const auto& r : t.rows) os << "    H^" << r.degree << "(Der): " << r.dim << '\n';
  }
  emit(c, os.str());
  return kExitOk;
}

int cmd_map_homotopy(const Common& c, const Input& alg, const Input& mod, const std::string& map_file) {
  Coefficients co = coefficients(alg, mod, map_file, c.truncate);
  const CohomologyTable t = aq(*co.f, c.n_max);
  std::optional<CohomologyTable> formula;
  if (co.constant)
    formula = constant_map_formula(co.algebra.algebra, co.f->target(), c.n_max + 1);
  bool all = true;
  std::ostringstream os;
  if (c.format == "tsv") {
    os << "n\tdim_pi\tdim_formula\tagree\n";
  } else {
    os << "map_homotopy:\n  target: " << co.algebra.algebra.name() << "\n  source: " << co.module.algebra.name()
       << "\n  map: " << (co.constant ? "constant" : co.self ? "identity" : "explicit") << "\n  cutoff: " << c.truncate
       << "\n  groups:\n";
  }
  for (int n = 1; n <= c.n_max + 1; ++n) {
    const std::size_t d = t.dim(-n);
    std::string f = "-", agree = "-";
    if (formula) {
      f = std::to_string(formula->dim(n));
      agree = yn(formula->dim(n) == d);
      all = all && formula->dim(n) == d;
    }
    if (c.format == "tsv")
      os << n << '\t' << d << '\t' << f << '\t' << agree << '\n';
    else
      os << "    pi_" << n << ": dim=" << d << " formula=" << f << " agree=" << agree << '\n';
  }
  emit(c, os.str());
  return all ? kExitOk : kExitFailed;
}

int cmd_loop(const Common& c, const Input& in, int dim) {
  AlgebraFile a = load(in, "manifold model (--algebra or --space)");
  if (!a.relations.empty()) throw UsageError("loop needs a free model without relations");
  if (dim < 0) {
    if (in.space.empty()) throw UsageError("--dim is required with --algebra");
    dim = SpaceDescriptor::parse(in.space).formal_dimension();
  }
  const auto expected = loop_homology_dims(a.algebra, dim, c.n_max);
  const LoopReport r = loop_space_check(a.algebra, dim, c.n_max, c.truncate, expected);
  std::ostringstream os;
  if (c.format == "tsv") {
    os << "n\tdim_hh\tdim_loop\tdim_der\tcertified\tok\n";
    for (const auto& row : r.rows)
      os << row.n << '\t' << row.hh << '\t' << row.expected << '\t' << (row.der ? std::to_string(*row.der) : "-") << '\t'
         << yn(row.certified) << '\t' << yn(row.ok) << '\n';
  } else {
    os << "loop:\n  model: " << r.model << "\n  formal_dimension: " << r.formal_dimension << "\n  cutoff: " << r.cutoff
       << "\n  degrees:\n";
    for (const auto& row : r.rows) {
      os << "    n=" << row.n << ": HH=" << row.hh << " H_" << row.n + r.formal_dimension << "(L)=" << row.expected;
      if (row.der) os << " Der=" << *row.der;
      os << " certified=" << yn(row.certified) << ' ' << ok(row.ok) << '\n';
    }
    os << "  result: " << (r.pass ? "pass" : "fail: " + r.first_failure) << '\n';
  }
  emit(c, os.str());
  return r.pass ? kExitOk : kExitFailed;
}

void write_report(std::ostream& os, const VerificationReport& r, const std::string& format) {
  if (format == "tsv") {
    for (const auto& row : r.rows) {
      os << r.case_name << '\t' << row.n << '\t' << row.pi_map << '\t' << row.hh_weight1 << '\t' << row.hh_total << '\t'
         << row.weight_sum << '\t' << join(row.weights) << '\t' << yn(row.main2) << '\t' << yn(row.injective) << '\t'
         << yn(row.certified) << '\n';
    }
    return;
  }
  os << "case: " << r.case_name << "\n  n_max: " << r.n_max << "\n  cutoff: " << r.cutoff << "\n  models:\n";
  for (const auto& m : r.models)
    os << "    " << m.space << ": cohomology=" << join(m.computed) << ' ' << ok(m.ok) << '\n';
  os << "  complex: cochains_checked=" << r.cochains_checked << ' ' << ok(r.complex_ok) << '\n';
  os << "  rows:\n";
  for (const auto& row : r.rows)
    os << "    n=" << row.n << ": pi_" << row.n + 1 << "=" << row.pi_map << " HH_w1=" << row.hh_weight1
       << " HH_total=" << row.hh_total << " weights=" << join(row.weights) << " main2=" << ok(row.main2)
       << " injective=" << ok(row.injective) << " certified=" << yn(row.certified) << '\n';
  if (r.pi1)
    os << "  pi_1: der=" << r.pi1->der << " hh0=" << r.pi1->hh0 << " N=" << r.pi1->n
       << " nilpotency=" << (r.pi1->nilpotency ? std::to_string(*r.pi1->nilpotency) : "none") << ' ' << ok(r.pi1->ok) << '\n';
  if (!r.constant_rows.empty()) {
    os << "  constant_map:\n";
    for (const auto& row : r.constant_rows)
      os << "    pi_" << row.n << ": aq=" << row.aq << " formula=" << row.formula << ' ' << ok(row.ok) << '\n';
  }
  os << "  result: " << (r.pass ? "pass" : "fail: " + r.first_failure) << '\n';
}

int cmd_verify(const Common& c, const std::string& name, bool all) {
  if (all == !name.empty()) throw UsageError("give exactly one of --case and --all");
  const std::vector<std::string> names = all ? corpus_case_names() : std::vector<std::string>{name};
  std::ostringstream os;
  if (c.format == "tsv") os << "case\tn\tdim_pi\tdim_w1\tdim_total\tweight_sum\tweights\tmain2\tinjective\tcertified\n";
  bool pass = true;
  for (const auto& n : names) {
    const VerificationReport r = verify_case(corpus_case(n), c.n_max, c.truncate);
    write_report(os, r, c.format);
    if (!r.pass) {
      pass = false;
      std::cerr << "rht: " << r.case_name << ": " << r.first_failure << '\n';
    }
  }
  emit(c, os.str());
  return pass ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational homotopy of mapping spaces via Hochschild cohomology"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  Input alg, mod;
  std::string map_file, case_name;
  int up_to = -1, dim = -1;
  bool hodge = false, all = false;
  int truncate = 0;

  auto add_common = [&](CLI::App* sub, bool with_n) {
    sub->add_option("--truncate,-D", truncate, "Degree cutoff (default RHT_TRUNCATE_DEFAULT or 12)")->check(CLI::Range(1, 1000));
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"tsv", "report"}));
    sub->add_option("--out,-o", common.out, "Write output to this path");
    if (with_n) sub->add_option("--n-max", common.n_max, "Largest n")->check(CLI::Range(0, 64));
  };
  auto add_algebra = [&](CLI::App* sub) {
    sub->add_option("--algebra", alg.file, "Algebra file");
    sub->add_option("--space", alg.space, "Standard space: S3, CP2, K4, pt, S2xS3");
  };
  auto add_coefficients = [&](CLI::App* sub) {
    add_algebra(sub);
    sub->add_option("--module", mod.file, "Algebra file for the module C*(X)");
    sub->add_option("--module-space", mod.space, "Standard space for the module");
    sub->add_option("--map", map_file, "Map file from the algebra to the module");
  };

  auto* cohom = app.add_subcommand("cohomology", "Cohomology of a CDGA");
  add_common(cohom, false);
  add_algebra(cohom);
  cohom->add_option("--up-to", up_to, "Top degree (default cutoff - 1)");

  auto* model = app.add_subcommand("model", "Sullivan minimal model");
  add_common(model, false);
  add_algebra(model);
  model->add_option("--up-to", up_to, "Top degree (default cutoff - 2)");

  auto* hh_cmd = app.add_subcommand("hh", "Hochschild cohomology HH^{-n}(A, M)");
  add_common(hh_cmd, true);
  add_coefficients(hh_cmd);
  hh_cmd->add_flag("--hodge", hodge, "Split into Hodge weights");

  auto* aq_cmd = app.add_subcommand("aq", "Cohomology of the derivation complex");
  add_common(aq_cmd, true);
  add_coefficients(aq_cmd);

  auto* mh = app.add_subcommand("map-homotopy", "pi_n of the mapping space, with the constant-map formula");
  add_common(mh, true);
  add_coefficients(mh);

  auto* loop = app.add_subcommand("loop", "HH of a manifold model against free loop space homology");
  add_common(loop, true);
  add_algebra(loop);
  loop->add_option("--dim", dim, "Formal dimension (implied by --space)");

  auto* verify = app.add_subcommand("verify", "Run corpus verification cases");
  add_common(verify, true);
  verify->add_option("--case", case_name, "Case name");
  verify->add_flag("--all", all, "Run every case");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    common.truncate = truncate > 0 ? truncate : default_truncation();
    if (common.format.empty()) common.format = verify->parsed() ? "report" : "tsv";
    if (cohom->parsed()) return cmd_cohomology(common, alg, up_to);
    if (model->parsed()) return cmd_model(common, alg, up_to);
    if (hh_cmd->parsed()) return cmd_hh(common, alg, mod, map_file, hodge);
    if (aq_cmd->parsed()) return cmd_aq(common, alg, mod, map_file);
    if (mh->parsed()) return cmd_map_homotopy(common, alg, mod, map_file);
    if (loop->parsed()) return cmd_loop(common, alg, dim);
    if (verify->parsed()) return cmd_verify(common, case_name, all);
  } catch (const UsageError& e) {
    std::cerr << "rht: " << e.what() << '\n';
    return kExitInput;
  } catch (const VerificationFailed& e) {
    std::cerr << "rht: " << e.what() << '\n';
    return kExitFailed;
  } catch (const MismatchedExpectation& e) {
    std::cerr << "rht: " << e.what() << '\n';
    return kExitFailed;
  } catch (const rht::Error& e) {
    std::cerr << "rht: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
