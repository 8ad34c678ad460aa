#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rht/cdga.hpp"

namespace rht {

/// Algebra files:
///
///   name: S2
///   generators: x:2, y:3
///   d y = x^2
///   relations: x^3        (optional monomial ideal)
///
/// '#' starts a comment. Generators without a `d` line are closed.
struct AlgebraFile {
  FreeCDGA algebra;
  std::vector<Monomial> relations;
};

/// poly := term (('+'|'-') term)* | "0"; term := [rational '*'?] factor ('*' factor)*;
/// factor := ident ('^' uint)?. Throws ParseError.
Polynomial parse_polynomial(const FreeCDGA& A, std::string_view text);
/// Canonical form: terms in monomial order, factors in declaration order.
std::string format_polynomial(const FreeCDGA& A, const Polynomial& p);

/// Throws ParseError for syntax, duplicate or unknown names; ValidationError
/// when the degree rule, d^2 = 0 or simple connectivity fails.
AlgebraFile parse_algebra(std::string_view text);
std::string serialize_algebra(const AlgebraFile& file);
/// Reads a file from disk; an unreadable path is a ValidationError.
AlgebraFile load_algebra(const std::string& path);

/// Map files:
///
///   source: S3
///   target: S2
///   f x = 0
///
/// Generators of the source without an `f` line map to 0.
struct MapFile {
  std::string source;
  std::string target;
  std::vector<Polynomial> images;  // over the target generators, one per source generator
};

/// Names are checked against the given algebras; images are checked for
/// degree and commutation with d up to `cutoff` (ValidationError).
MapFile parse_map(std::string_view text, const FreeCDGA& source, const FreeCDGA& target, int cutoff);
std::string serialize_map(const MapFile& file, const FreeCDGA& source, const FreeCDGA& target);
std::string read_text_file(const std::string& path);

}  // namespace rht
