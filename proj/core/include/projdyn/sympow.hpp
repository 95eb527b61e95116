#pragma once

// Binary forms as points of projective space and the maps that rational maps
// of P^1 induce on them.
//
// Chart: the binary form c0*x^n + c1*x^(n-1)*y + ... + cn*y^n is the point
// (c0 : ... : cn) of P^n. A point (a : b) of P^1 corresponds to the root x/y =
// a/b and contributes the linear factor b*x - a*y.

#include <cstdint>
#include <optional>
#include <vector>

#include "projdyn/dynamics.hpp"

namespace projdyn {

class SymForm {
 public:
  SymForm() = default;
  /// Coefficients c0..cn, not all zero. Stored primitive with a positive
  /// first nonzero coefficient over QQ, and with first nonzero coefficient 1
  /// over F_p.
  explicit SymForm(std::vector<Scalar> coefficients);
  /// A binary form in x0, x1 (the ring may have further, unused variables).
  static SymForm from_polynomial(const Polynomial& binary_form);

  const std::vector<Scalar>& coefficients() const { return c_; }
  std::size_t degree() const { return c_.size() - 1; }
  Field field() const { return c_.front().field(); }
  /// The form as a polynomial in x0, x1 inside a ring of num_vars variables.
  Polynomial polynomial(std::size_t num_vars = 2) const;
  /// The same coefficients as a point of P^n.
  ProjectivePoint point() const { return ProjectivePoint(c_); }
  friend bool operator==(const SymForm&, const SymForm&) = default;

 private:
  std::vector<Scalar> c_;
};

std::string to_string(const SymForm& s);

using PointTuple = std::vector<ProjectivePoint>;

/// prod (b_i x - a_i y) over the points (a_i : b_i).
SymForm vieta(const PointTuple& points);

/// The map s_n(f) of P^n with F(vieta(P)) = vieta(f(P)), of the same degree
/// as f. Computed from Res_(x,y)(c0 x^n + ... + cn y^n, u f1 - v f0): its
/// coefficient of u^(n-i) v^i is the i-th component, a form of degree d in
/// c. Common scalar content removed.
Endomorphism symmetric_power(const Endomorphism& f, std::size_t n);

/// The linear form c -> Phi_c(P) on P^m, as a polynomial in m + 1 variables.
/// Its coefficients are the degree-m Veronese monomials of P.
Polynomial hyperplane_of_point(const ProjectivePoint& p, std::size_t m);

/// Image of a binary form under a map of P^n in the coefficient chart.
SymForm apply(const Endomorphism& big_f, const SymForm& phi);

/// Whether big_f maps sampled points of H_P into H_f(P). Samples are seeded.
bool check_fhp(const Endomorphism& big_f, const Endomorphism& f, const ProjectivePoint& p, unsigned samples,
               std::uint64_t seed = 0);
/// Same with big_f = symmetric_power(f, n).
bool check_fhp(const Endomorphism& f, const ProjectivePoint& p, std::size_t n, unsigned samples,
               std::uint64_t seed = 0);

/// True iff two different points of the tuple have the same image.
bool collision_locus_member(const Endomorphism& f, const PointTuple& points);

struct CriticalLocusReport {
  /// J_F vanishes on sampled points of H_P for every critical point P.
  bool hyperplanes = true;
  /// J_F vanishes at Vieta images of sampled tuples with a collision.
  bool collisions = true;
  /// J_F is nonzero at sampled tuples that are neither critical nor colliding.
  bool complement = true;
  /// F(Phi) has vanishing discriminant for Phi from a colliding tuple.
  bool discriminant = true;
  unsigned hyperplane_samples = 0;
  unsigned collision_samples = 0;
  unsigned complement_samples = 0;
  unsigned discriminant_samples = 0;
  bool all() const { return hyperplanes && collisions && complement && discriminant; }
};

/// Sampled check that the critical locus of s_n(f) is the collision locus
/// together with the hyperplanes H_P over the critical points P of f.
/// Throws Unsupported when the critical points of f are not all rational
/// over the field.
CriticalLocusReport critical_locus_structure_check(const Endomorphism& f, std::size_t n, unsigned samples,
                                                   std::uint64_t seed = 0);

/// {t >= 1 : t divides m*s for some 1 <= m <= n}, ascending.
std::vector<unsigned> admissible_periods(unsigned s, unsigned n);

/// vieta(P, f^s(P), ..., f^((m-1)s)(P), Q, ..., Q) with n points in total,
/// for a critical point P with f^(ms)(P) = P and a fixed point Q. Checks the
/// preconditions exactly, and verifies that the result is a critical point
/// of F = s_n(f) fixed by F^s (DegeneracyError otherwise).
SymForm periodic_critical_form(const Endomorphism& f, const ProjectivePoint& p, const ProjectivePoint& q, unsigned s,
                               unsigned m, std::size_t n);

/// Numerator of f^s(0) for f(z) = z^-d + c.
struct PeriodPolynomial {
  unsigned d = 0;
  unsigned s = 0;
  /// Integer coefficients, lowest degree first; content 1, positive leading
  /// coefficient.
  std::vector<BigInt> coefficients;
  /// The polynomial in x0 over the given field.
  Polynomial polynomial(const Field& field = Field::rationals()) const;
  std::size_t degree() const { return coefficients.size() - 1; }
};

/// Runs (N, D) -> (D^d + c N^d, N^d) from (0, 1) for s steps. Degree
/// 1 + d + ... + d^(s-2).
PeriodPolynomial period_polynomial(unsigned d, unsigned s);

/// z^-d + c as the map (x1^d + c x0^d : x0^d).
Endomorphism inverse_power_map(unsigned d, const Scalar& c);

/// The smallest root c (ascending rationals or residues) of
/// period_polynomial(d, p) in the field for which 0 has exact period p under
/// z^-d + c, verified by computing the orbit. p must be prime.
std::optional<Scalar> find_pcf_parameter(unsigned d, unsigned p, const Field& field);

/// 1 + (zeta - 1)/z^d as the map (x0^d + (zeta - 1) x1^d : x0^d). Checks
/// zeta^d = 1, zeta != 1, the orbit 0 -> oo -> 1 -> zeta -> zeta, and that
/// the critical points are strictly preperiodic (so none is periodic).
Endomorphism bicritical_wanderer(unsigned d, const Scalar& zeta);
/// Picks zeta: -1 over QQ for even d, otherwise the smallest residue of
/// multiplicative order d. Throws InvalidInput when there is none.
Endomorphism bicritical_wanderer(unsigned d, const Field& field);

}  // namespace projdyn
