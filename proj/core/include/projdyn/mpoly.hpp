#pragma once

// Sparse distributed multivariate polynomials over QQ or F_p.
//
// Terms are kept in descending graded-lex order (x0 > x1 > ...), without
// zero coefficients, so structural equality is polynomial equality.
// Parametric objects are encoded by putting the parameters in extra ring
// variables: a "form in the first k variables" is a polynomial homogeneous in
// x0..x{k-1} whose coefficients are polynomials in the remaining variables.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "projdyn/coeff.hpp"

namespace projdyn {

inline constexpr std::size_t kMaxVariables = 16;

/// Degree reported for the zero polynomial.
inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

class Monomial {
 public:
  Monomial() = default;
  Monomial(std::initializer_list<unsigned> exponents);
  explicit Monomial(std::span<const unsigned> exponents);

  static Monomial unit(std::size_t var, unsigned exponent = 1);

  unsigned operator[](std::size_t i) const { return e_[i]; }
  void set(std::size_t i, unsigned exponent);
  unsigned degree() const { return deg_; }
  /// Sum of exponents over the given variables.
  unsigned degree_in(std::span<const std::size_t> vars) const;

  bool divides(const Monomial& other) const;
  Monomial& operator*=(const Monomial& other);
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
  /// Requires `other` to divide *this.
  Monomial operator/(const Monomial& other) const;

  friend Monomial gcd(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::array<std::uint16_t, kMaxVariables> e_{};
  std::uint32_t deg_ = 0;
};

/// Graded lexicographic comparison with x0 > x1 > ...; negative, zero or
/// positive like strcmp.
int grlex_compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial monomial;
  Scalar coeff;
};

class Polynomial {
 public:
  /// The zero polynomial of the empty ring over QQ (placeholder value).
  Polynomial() = default;
  Polynomial(std::size_t num_vars, const Field& field);

  static Polynomial constant(std::size_t num_vars, const Scalar& c);
  static Polynomial constant(std::size_t num_vars, const Field& field, long c);
  static Polynomial variable(std::size_t num_vars, const Field& field, std::size_t index);
  static Polynomial monomial(std::size_t num_vars, const Scalar& c, const Monomial& m);
  /// Sorts, merges equal monomials and drops zeros.
  static Polynomial from_terms(std::size_t num_vars, const Field& field, std::vector<Term> terms);

  std::size_t num_vars() const { return nvars_; }
  const Field& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Throws InvalidInput unless the polynomial is constant.
  Scalar constant_value() const;
  /// Throws on the zero polynomial.
  const Term& leading_term() const;
  Scalar coefficient(const Monomial& m) const;

  /// kZeroDegree for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;
  int degree_in(std::span<const std::size_t> vars) const;
  bool is_homogeneous() const;
  /// Homogeneous in x0..x{k-1}, any dependence on the remaining variables.
  bool is_homogeneous_in(std::size_t k) const;
  bool involves(std::size_t var) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  void check_same_ring(const Polynomial& o) const;

 private:
  std::size_t nvars_ = 0;
  Field field_;
  std::vector<Term> terms_;
};

Polynomial pow(const Polynomial& p, unsigned k);

Polynomial partial_derivative(const Polynomial& p, std::size_t var);

/// Replaces variable i by images[i]. The images share one ring, which
/// becomes the ring of the result.
Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images);

Scalar evaluate(const Polynomial& p, std::span<const Scalar> point);

/// Sets the listed variables to scalars; the ring is unchanged.
Polynomial specialize(const Polynomial& p, std::span<const std::pair<std::size_t, Scalar>> values);

/// Moves variable i to target[i] in a ring with new_num_vars variables.
Polynomial remap_variables(const Polynomial& p, std::size_t new_num_vars,
                           std::span<const std::size_t> target);

/// Reduces a QQ polynomial into F_p (throws if a denominator vanishes), or
/// returns p unchanged when the fields agree.
Polynomial change_field(const Polynomial& p, const Field& field);

/// coefficients[k] multiplies var^k; the coefficients do not involve var.
std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var);
Polynomial from_coefficients_in(std::span<const Polynomial> coefficients, std::size_t var);

/// The largest monomial dividing every term (1 for the zero polynomial).
Monomial monomial_content(const Polynomial& p);
Polynomial divide_by_monomial(const Polynomial& p, const Monomial& m);

struct ContentPrimitive {
  Scalar content;
  Polynomial primitive;
};

/// Over QQ: primitive has coprime integer coefficients and a positive
/// leading coefficient. Over F_p: primitive is monic. content * primitive == p.
/// Throws InvalidInput on zero.
ContentPrimitive content_primitive(const Polynomial& p);

/// Primitive part (QQ) or monic associate (F_p); zero maps to zero.
Polynomial normalized(const Polynomial& p);

/// True iff p = lambda * q for a nonzero scalar lambda (or both are zero).
bool equal_up_to_scalar(const Polynomial& p, const Polynomial& q);

/// The exact quotient p / q, or nullopt if q does not divide p.
std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& q);

/// Normalized greatest common divisor; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& p, const Polynomial& q);

/// Product of the distinct irreducible factors of p, normalized.
/// Over F_p this assumes the characteristic exceeds every partial degree.
Polynomial squarefree_part(const Polynomial& p);

// ---------------------------------------------------------------------------
// Text form: terms in descending graded-lex order joined by +/-, coefficients
// `*`-separated from power products, e.g. `x0^2-1/2*x0*x1+3`.

std::string to_string(const Polynomial& p);

/// Parses an arithmetic expression in + - * / ^ and parentheses over integer
/// constants and the variables x0..xN (x, y, z are aliases of x0, x1, x2).
/// Division is only allowed by nonzero constants. num_vars == 0 infers the
/// ring size from the highest variable index used.
Polynomial parse_polynomial(std::string_view text, std::size_t num_vars, const Field& field);

/// Parses `[p0, p1, ...]`. num_vars == 0 means one variable per entry.
std::vector<Polynomial> parse_polynomial_list(std::string_view text, std::size_t num_vars,
                                              const Field& field);

// ---------------------------------------------------------------------------

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, const Polynomial& fill);
  PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Polynomial& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Polynomial> entries_;
};

/// Cofactor expansion up to 4x4, fraction-free Bareiss elimination beyond.
/// Throws InvalidInput for non-square or empty matrices.
Polynomial determinant(const PolyMatrix& m);
Polynomial determinant_cofactor(const PolyMatrix& m);
Polynomial determinant_bareiss(const PolyMatrix& m);

// ---------------------------------------------------------------------------

struct Sample {
  std::vector<Scalar> point;
  Scalar value;
};

/// The unique polynomial of total degree <= degree_bound in num_vars
/// variables matching every sample. Throws InterpolationError when there are
/// fewer samples than unknowns, the samples are inconsistent, or they do not
/// determine the polynomial.
Polynomial interpolate(std::span<const Sample> samples, unsigned degree_bound,
                       std::size_t num_vars, const Field& field);

/// All monomials of total degree exactly `degree` in the first `num_vars`
/// variables, descending graded-lex.
std::vector<Monomial> monomials_of_degree(std::size_t num_vars, unsigned degree);

}  // namespace projdyn
