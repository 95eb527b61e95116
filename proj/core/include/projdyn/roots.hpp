#pragma once

// Roots of univariate polynomials over the coefficient field.

#include <vector>

#include "projdyn/mpoly.hpp"

namespace projdyn {

/// Distinct rational roots, ascending. p must involve no variable except
/// `var`. Roots are found modulo a word-size prime, Hensel-lifted and
/// rationally reconstructed, then verified exactly.
std::vector<Rational> rational_roots(const Polynomial& p, std::size_t var);

/// Distinct roots in F_p, ascending by residue.
std::vector<Scalar> prime_field_roots(const Polynomial& p, std::size_t var);

/// rational_roots or prime_field_roots depending on the field of p.
std::vector<Scalar> roots_in_field(const Polynomial& p, std::size_t var);

}  // namespace projdyn
