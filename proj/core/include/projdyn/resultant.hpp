#pragma once

// Sylvester and Macaulay resultants, discriminants of binary forms, and the
// evaluation/interpolation strategy for resultants with parameters.
//
// A system of k forms lives in a polynomial ring whose first k variables are
// the eliminated ones; any further variables are parameters. Results are
// polynomials in the same ring that do not involve the first k variables.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "projdyn/mpoly.hpp"

namespace projdyn {

class MacaulaySystem {
 public:
  /// Validates that every form is nonzero and homogeneous of degree >= 1 in
  /// x0..x{k-1}, k = forms.size(), with all forms in one ring.
  explicit MacaulaySystem(std::vector<Polynomial> forms);

  const std::vector<Polynomial>& forms() const { return forms_; }
  const std::vector<unsigned>& degrees() const { return degrees_; }
  std::size_t num_eliminated() const { return forms_.size(); }
  /// D = sum(d_i - 1) + 1.
  unsigned critical_degree() const;
  /// Product of the degrees.
  std::uint64_t degree_product() const;
  bool has_parameters() const;

 private:
  std::vector<Polynomial> forms_;
  std::vector<unsigned> degrees_;
};

enum class ResultantMode {
  kAuto,
  /// det M / det M'; a singular reduced minor is an error.
  kDirectRatio,
  /// Direct ratio, retrying with up to 5 seeded linear coordinate changes.
  kCoordinateChange,
  /// Evaluate at grid points modulo word-size primes, interpolate, combine by
  /// CRT and reconstruct rationals.
  kModularInterpolation,
};

std::string to_string(ResultantMode mode);

struct ResultantStrategy {
  ResultantMode mode = ResultantMode::kAuto;
  std::uint64_t seed = 0;
  /// Dehomogenize parameter groups in which every form is homogeneous.
  bool exploit_homogeneity = true;
  /// Ring indices of parameter groups. Empty means: try all parameters as one group.
  std::vector<std::vector<std::size_t>> homogeneous_groups;
};

struct ResultantResult {
  Polynomial value;
  ResultantMode mode_used = ResultantMode::kAuto;
  unsigned coordinate_changes = 0;
  std::size_t primes_used = 0;
  std::size_t grid_points = 0;
};

/// Determinant of the Sylvester matrix of two binary forms in x0, x1.
/// Agrees with macaulay_resultant for two forms, including the normalization
/// Res(x0^a, x1^b) = 1.
Polynomial sylvester_resultant(const Polynomial& p, const Polynomial& q);

/// Normalized so that Res(x0^d0, ..., xn^dn) = 1. Throws DegeneracyError
/// (detail "reduced-minor-singular") when det M' vanishes and the strategy
/// allows no fallback.
ResultantResult macaulay_resultant(const MacaulaySystem& system, const ResultantStrategy& strategy = {});

/// Macaulay resultant of the coordinate forms of a map.
ResultantResult map_resultant(std::span<const Polynomial> forms, const ResultantStrategy& strategy = {});

/// The discriminant of a binary form of degree m >= 2:
///   (-1)^(m(m-1)/2) * Res(dPhi/dx0, dPhi/dx1) / m^(m-2),
/// which is b^2 - 4ac for a*x0^2 + b*x0*x1 + c*x1^2.
Polynomial discriminant_binary(const Polynomial& phi);

/// Macaulay resultant of the partial derivatives of a form in x0..x{k-1},
/// where k is given explicitly (the remaining ring variables are parameters).
ResultantResult gradient_resultant(const Polynomial& p, std::size_t num_form_vars,
                                   const ResultantStrategy& strategy = {});

}  // namespace projdyn
