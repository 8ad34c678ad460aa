#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rht/cdga.hpp"

namespace rht {

struct SpaceDescriptor {
  enum class Kind { sphere, complex_projective, eilenberg_maclane_even, product, point };

  Kind kind = Kind::point;
  int parameter = 0;  // sphere dimension, projective dimension n of CP^n, or degree of K(Q, 2m)
  std::vector<SpaceDescriptor> factors;  // product only

  static SpaceDescriptor sphere(int n);
  static SpaceDescriptor complex_projective(int n);
  static SpaceDescriptor eilenberg_maclane(int degree);
  static SpaceDescriptor product(SpaceDescriptor a, SpaceDescriptor b);
  static SpaceDescriptor point();
  /// "S3", "CP2", "K4", "pt", and products joined by 'x' ("S2xS3").
  static SpaceDescriptor parse(std::string_view text);

  std::string name() const;
  /// Throws UnsupportedDescriptor for invalid parameters.
  void validate() const;
  /// Top degree of the cohomology ring; UnsupportedDescriptor for K(Q, 2m).
  int formal_dimension() const;
  /// dim H^i(X; Q) for 0 <= i <= up_to, from the closed-form cohomology ring.
  std::vector<std::size_t> cohomology_dims(int up_to) const;

  friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;
};

/// Odd spheres Λ(x), even spheres Λ(x, y; dy = x^2), CP^n Λ(x, y; dy = x^{n+1}),
/// K(Q, 2m) Λ(x), point Q, products by tensor product.
FreeCDGA standard_model(const SpaceDescriptor& s);

struct MinimalModelResult {
  FreeCDGA model;
  DGAMorphism comparison;  // model -> input
  int certified_degree = 0;
};

/// Inductive Sullivan minimal model up to degree D. New generators are named
/// v{degree}_{index}. Throws NotConnected and CutoffTooSmall (needs D <= cutoff - 1).
MinimalModelResult minimal_model(const TruncatedDGA& A, int up_to);

/// True when no generator differential has a linear term.
bool is_minimal(const FreeCDGA& A);

}  // namespace rht
