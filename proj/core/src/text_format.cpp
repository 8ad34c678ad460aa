#include "rht/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "rht/errors.hpp"

namespace rht {

namespace {

// Cursor over one line; columns are 1-based and absolute within the line.
struct Cursor {
  std::string_view s;
  std::size_t pos = 0;
  int line = 1;
  int col0 = 1;  // column of s[0]

  int col() const { return col0 + int(pos); }
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line, col(), what); }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  std::string ident() {
    skip_ws();
    if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos]))) fail("expected an identifier");
    std::size_t b = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    return std::string(s.substr(b, pos - b));
  }
  std::string digits() {
    skip_ws();
    std::size_t b = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (b == pos) fail("expected an unsigned integer");
    return std::string(s.substr(b, pos - b));
  }
  int small_uint() {
    const int c = col();
    std::string d = digits();
    if (d.size() > 6) throw ParseError(line, c, "integer too large");
    return std::stoi(d);
  }
};

Polynomial parse_poly(const FreeCDGA& A, Cursor& cur) {
  if (cur.peek() == '0') {
    // "0" alone is the zero polynomial; 0 as a coefficient is also accepted.
    Cursor probe = cur;
    probe.skip_ws();
    ++probe.pos;
    if (probe.done()) {
      cur = probe;
      return Polynomial();
    }
  }
  Polynomial out;
  bool first = true;
  while (true) {
    bool neg = false;
    char c = cur.peek();
    if (c == '+' || c == '-') {
      neg = c == '-';
      ++cur.pos;
    } else if (!first) {
      cur.fail("expected '+' or '-'");
    }
    first = false;

    Rational coeff(1);
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      std::string num = cur.digits();
      if (cur.peek() == '/') {
        ++cur.pos;
        const int at = cur.col();
        std::string den = cur.digits();
        if (den.find_first_not_of('0') == std::string::npos) throw ParseError(cur.line, at, "zero denominator");
        num += "/" + den;
      }
      coeff = Rational::parse(num);
      have_coeff = true;
      if (cur.peek() == '*') ++cur.pos;
    }
    Polynomial term = Polynomial::monomial(A.unit_monomial(), coeff);
    bool have_factor = false;
    while (std::isalpha(static_cast<unsigned char>(cur.peek()))) {
      const int at = cur.col();
      std::string name = cur.ident();
      if (!A.has_generator(name)) throw ParseError(cur.line, at, "unknown generator '" + name + "'");
      int e = 1;
      if (cur.peek() == '^') {
        ++cur.pos;
        e = cur.small_uint();
      }
      term = koszul_multiply(A, term, power(A, A.generator(name), e));
      have_factor = true;
      if (cur.peek() != '*') break;
      ++cur.pos;
      if (!std::isalpha(static_cast<unsigned char>(cur.peek()))) cur.fail("expected a generator after '*'");
    }
    if (!have_coeff && !have_factor) cur.fail("expected a term");
    out += neg ? -term : term;
    if (cur.done()) break;
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct Line {
  int number;
  std::string_view text;  // comment stripped
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int n = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view l = text.substr(start, end - start);
    if (auto h = l.find('#'); h != std::string_view::npos) l = l.substr(0, h);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    out.push_back({++n, l});
    start = end + 1;
  }
  return out;
}

// "key: rest" -> cursor positioned after the colon; empty key when absent.
std::string key_of(const Line& l, Cursor& cur) {
  cur = Cursor{l.text, 0, l.number, 1};
  std::size_t colon = l.text.find(':');
  std::size_t eq = l.text.find('=');
  if (colon == std::string_view::npos || (eq != std::string_view::npos && eq < colon)) return {};
  std::string k = trim(l.text.substr(0, colon));
  cur.pos = colon + 1;
  return k;
}

// Rejects a second occurrence of a single-valued key.
void once(std::set<std::string>& seen, const std::string& key, int line) {
  if (!seen.insert(key).second) throw ParseError(line, 1, "duplicate '" + key + ":' line");
}

}  // namespace

Polynomial parse_polynomial(const FreeCDGA& A, std::string_view text) {
  Cursor cur{text, 0, 1, 1};
  if (cur.done()) cur.fail("empty polynomial");
  return parse_poly(A, cur);
}

std::string format_polynomial(const FreeCDGA& A, const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool neg = c.sign() < 0;
    const Rational a = neg ? -c : c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string factors;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      if (m.exps[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += A.generator_spec(i).name;
      if (m.exps[i] > 1) factors += "^" + std::to_string(m.exps[i]);
    }
    if (factors.empty())
      out += a.to_string();
    else if (a.is_one())
      out += factors;
    else
      out += a.to_string() + "*" + factors;
  }
  return out;
}

AlgebraFile parse_algebra(std::string_view text) {
  std::string name;
  std::vector<GeneratorSpec> gens;
  std::vector<std::pair<Line, std::size_t>> d_lines;  // line, position of the leading d
  std::vector<Line> relation_lines;
  std::set<std::string> seen;
  bool have_generators = false;

  for (const Line& l : split_lines(text)) {
    if (trim(l.text).empty()) continue;
    Cursor cur;
    std::string key = key_of(l, cur);
    if (key == "name") {
      once(seen, key, l.number);
      name = cur.ident();
      if (!cur.done()) cur.fail("unexpected text after the name");
    } else if (key == "generators") {
      once(seen, key, l.number);
      have_generators = true;
      while (!cur.done()) {
        const int at = (cur.skip_ws(), cur.col());
        std::string g = cur.ident();
        for (const auto& s : gens)
          if (s.name == g) throw ParseError(l.number, at, "duplicate generator '" + g + "'");
        cur.expect(':');
        const int deg = cur.small_uint();
        gens.push_back({g, deg});
        if (cur.done()) break;
        cur.expect(',');
      }
    } else if (key == "relations") {
      once(seen, key, l.number);
      relation_lines.push_back(l);
    } else if (key.empty()) {
      cur.skip_ws();
      if (cur.pos < l.text.size() && l.text[cur.pos] == 'd' &&
          (cur.pos + 1 == l.text.size() || std::isspace(static_cast<unsigned char>(l.text[cur.pos + 1])))) {
        d_lines.push_back({l, cur.pos});
      } else {
        cur.fail("expected 'key:' or 'd <generator> = <polynomial>'");
      }
    } else {
      throw ParseError(l.number, 1, "unknown key '" + key + "'");
    }
  }
  if (!have_generators) throw ParseError(1, 1, "missing 'generators:' line");
  for (const auto& g : gens)
    if (g.degree < 1) throw ValidationError("generator " + g.name + " must have positive degree");

  FreeCDGA shell(name.empty() ? "A" : name, gens, {});
  std::vector<Polynomial> diff(gens.size());
  std::vector<bool> given(gens.size(), false);
  for (const auto& [l, at] : d_lines) {
    Cursor cur{l.text, at + 1, l.number, 1};
    const int gcol = (cur.skip_ws(), cur.col());
    std::string g = cur.ident();
    if (!shell.has_generator(g)) throw ParseError(l.number, gcol, "unknown generator '" + g + "'");
    const std::size_t i = shell.index_of(g);
    if (given[i]) throw ParseError(l.number, gcol, "second differential for '" + g + "'");
    given[i] = true;
    cur.expect('=');
    if (cur.done()) cur.fail("missing polynomial");
    diff[i] = parse_poly(shell, cur);
  }

  AlgebraFile out;
  out.algebra = FreeCDGA(shell.name(), gens, diff);
  try {
    check_presentation(out.algebra, out.algebra.max_generator_degree(), true);
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }

  int top = 0;
  for (const auto& l : relation_lines) {
    Cursor cur;
    key_of(l, cur);
    while (!cur.done()) {
      Monomial m = out.algebra.unit_monomial();
      while (true) {
        const int at = (cur.skip_ws(), cur.col());
        std::string g = cur.ident();
        if (!out.algebra.has_generator(g)) throw ParseError(l.number, at, "unknown generator '" + g + "'");
        int e = 1;
        if (cur.peek() == '^') {
          ++cur.pos;
          e = cur.small_uint();
        }
        m.exps[out.algebra.index_of(g)] += e;
        if (cur.peek() != '*') break;
        ++cur.pos;
      }
      if (m.is_unit()) cur.fail("empty relation");
      top = std::max(top, out.algebra.degree(m));
      out.relations.push_back(m);
      if (cur.done()) break;
      cur.expect(',');
    }
  }
  if (!out.relations.empty()) {
    try {
      TruncatedDGA(out.algebra, top + out.algebra.max_generator_degree() + 1, out.relations);
    } catch (const Error& e) {
      throw ValidationError(e.what());
    }
  }
  return out;
}

std::string serialize_algebra(const AlgebraFile& file) {
  const FreeCDGA& A = file.algebra;
  std::ostringstream os;
  os << "name: " << A.name() << "\n";
  os << "generators:";
  for (std::size_t i = 0; i < A.num_generators(); ++i)
    os << (i ? ", " : " ") << A.generator_spec(i).name << ":" << A.generator_spec(i).degree;
  os << "\n";
  for (std::size_t i = 0; i < A.num_generators(); ++i)
    if (!A.differential_of(i).is_zero())
      os << "d " << A.generator_spec(i).name << " = " << format_polynomial(A, A.differential_of(i)) << "\n";
  if (!file.relations.empty()) {
    os << "relations:";
    for (std::size_t r = 0; r < file.relations.size(); ++r)
      os << (r ? ", " : " ") << format_polynomial(A, Polynomial::monomial(file.relations[r]));
    os << "\n";
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

AlgebraFile load_algebra(const std::string& path) { return parse_algebra(read_text_file(path)); }

MapFile parse_map(std::string_view text, const FreeCDGA& source, const FreeCDGA& target, int cutoff) {
  MapFile out;
  out.images.assign(source.num_generators(), Polynomial());
  std::vector<bool> given(source.num_generators(), false);
  std::set<std::string> seen;
  for (const Line& l : split_lines(text)) {
    if (trim(l.text).empty()) continue;
    Cursor cur;
    std::string key = key_of(l, cur);
    if (key == "source" || key == "target") {
      once(seen, key, l.number);
      const int at = (cur.skip_ws(), cur.col());
      std::string name = cur.ident();
      if (!cur.done()) cur.fail("unexpected text after the name");
      const std::string& want = key == "source" ? source.name() : target.name();
      if (name != want) throw ParseError(l.number, at, key + " is '" + name + "' but the loaded algebra is '" + want + "'");
      (key == "source" ? out.source : out.target) = name;
    } else if (key.empty()) {
      cur.skip_ws();
      if (!(cur.pos < l.text.size() && l.text[cur.pos] == 'f' &&
            (cur.pos + 1 == l.text.size() || std::isspace(static_cast<unsigned char>(l.text[cur.pos + 1])))))
        cur.fail("expected 'key:' or 'f <generator> = <polynomial>'");
      ++cur.pos;
      const int gcol = (cur.skip_ws(), cur.col());
      std::string g = cur.ident();
      if (!source.has_generator(g)) throw ParseError(l.number, gcol, "unknown source generator '" + g + "'");
      const std::size_t i = source.index_of(g);
      if (given[i]) throw ParseError(l.number, gcol, "second image for '" + g + "'");
      given[i] = true;
      cur.expect('=');
      if (cur.done()) cur.fail("missing polynomial");
      out.images[i] = parse_poly(target, cur);
    } else {
      throw ParseError(l.number, 1, "unknown key '" + key + "'");
    }
  }
  if (out.source.empty()) throw ParseError(1, 1, "missing 'source:' line");
  if (out.target.empty()) throw ParseError(1, 1, "missing 'target:' line");
  try {
    DGAMorphism::from_polynomials(source, TruncatedDGA(target, cutoff), out.images).validate();
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
  return out;
}

std::string serialize_map(const MapFile& file, const FreeCDGA& source, const FreeCDGA& target) {
  std::ostringstream os;
  os << "source: " << source.name() << "\n";
  os << "target: " << target.name() << "\n";
  for (std::size_t i = 0; i < source.num_generators(); ++i)
    os << "f " << source.generator_spec(i).name << " = " << format_polynomial(target, file.images.at(i)) << "\n";
  return os.str();
}

}  // namespace rht
