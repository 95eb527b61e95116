#pragma once

// Endomorphisms of projective space: iteration, orbits, Jacobians, images of
// hypersurfaces, bounded improperness searches and periodic points.
//
// A map on P^n is given by n+1 forms in the first n+1 ring variables. Further
// ring variables are parameters. Hypersurface forms follow the same
// convention, so a symbolic hypersurface such as a*x0 + b*x1 + c*x2 puts a, b
// and c in ring variables 3, 4 and 5.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "projdyn/mpoly.hpp"
#include "projdyn/resultant.hpp"

namespace projdyn {

/// Coordinates over the field with the last nonzero coordinate equal to 1.
class ProjectivePoint {
 public:
  ProjectivePoint() = default;
  /// Normalizes; throws InvalidInput when every coordinate is zero.
  explicit ProjectivePoint(std::vector<Scalar> coords);
  static ProjectivePoint of(const Field& field, std::initializer_list<long> coords);

  const std::vector<Scalar>& coords() const { return coords_; }
  std::size_t dimension() const { return coords_.size() - 1; }
  const Field& field() const { return field_; }
  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;

 private:
  Field field_;
  std::vector<Scalar> coords_;
};

/// `(c0:c1:...)`.
std::string to_string(const ProjectivePoint& p);

/// A nonzero form, homogeneous of degree m in the first k ring variables,
/// stored primitive-normalized.
class HypersurfaceForm {
 public:
  HypersurfaceForm() = default;
  HypersurfaceForm(const Polynomial& form, std::size_t num_form_vars);

  const Polynomial& form() const { return form_; }
  unsigned degree() const { return m_; }
  std::size_t num_form_vars() const { return k_; }
  friend bool operator==(const HypersurfaceForm&, const HypersurfaceForm&) = default;

 private:
  Polynomial form_;
  unsigned m_ = 0;
  std::size_t k_ = 0;
};

class Endomorphism {
 public:
  Endomorphism() = default;
  /// n + 1 = forms.size(); forms share a ring with at least n + 1 variables,
  /// are homogeneous in x0..xn of one degree d >= 1, and are not all zero.
  explicit Endomorphism(std::vector<Polynomial> forms);

  std::size_t n() const { return forms_.size() - 1; }
  unsigned degree() const { return d_; }
  const std::vector<Polynomial>& forms() const { return forms_; }
  const Field& field() const { return forms_.front().field(); }
  std::size_t num_vars() const { return forms_.front().num_vars(); }
  bool has_parameters() const;

  /// Macaulay resultant of the forms, computed on first use.
  const Polynomial& resultant() const;
  bool is_morphism() const { return !resultant().is_zero(); }

 private:
  struct Cache;
  std::vector<Polynomial> forms_;
  unsigned d_ = 0;
  std::shared_ptr<Cache> cache_;
};

std::string to_string(const Endomorphism& f);

/// Same as the constructor; rejects mixed degrees, degree 0 and the zero map.
Endomorphism endo_make(std::vector<Polynomial> forms);

/// f^s by repeated substitution. The components are divided by their common
/// scalar content and nothing else.
Endomorphism iterate(const Endomorphism& f, unsigned s);

/// Throws BasePointError when every component vanishes at p. The map must be
/// free of parameters.
ProjectivePoint apply(const Endomorphism& f, const ProjectivePoint& p);

struct OrbitRecord {
  /// p, f(p), ...; when a repeat is found the repeated point is included
  /// last, so points[tail + period] == points[tail].
  std::vector<ProjectivePoint> points;
  std::optional<std::size_t> tail;
  std::optional<std::size_t> period;
};

inline constexpr std::size_t kDefaultOrbitSteps = 64;

OrbitRecord orbit(const Endomorphism& f, const ProjectivePoint& p, std::size_t max_steps = kDefaultOrbitSteps);

/// A f A^{-1} for an invertible (n+1)x(n+1) matrix A (row-major, rows of
/// scalars) acting on column vectors.
Endomorphism conjugate(const Endomorphism& f, const std::vector<std::vector<Scalar>>& a);

/// det(d f_i / d x_j), not normalized.
Polynomial jacobian_determinant(const Endomorphism& f);

/// The critical locus as a hypersurface of degree (n+1)(d-1). Throws
/// DegeneracyError("jacobian-vanishes") when the determinant is identically
/// zero and InvalidInput when it is a nonzero constant (d = 1).
HypersurfaceForm jacobian(const Endomorphism& f);

/// Macaulay resultant of the forms of f.
ResultantResult endo_resultant(const Endomorphism& f, const ResultantStrategy& strategy = {});

// ---------------------------------------------------------------------------
// Images of hypersurfaces.

struct PushforwardOptions {
  ResultantStrategy strategy;
  /// Sampled F_p points of V(Phi) whose images are checked against the result.
  unsigned certify_samples = 4;
  std::uint64_t seed = 0;
};

struct PushforwardResult {
  /// The reduced defining form of f(V(Phi)).
  HypersurfaceForm form;
  /// The elimination output before taking the squarefree part: the image
  /// cycle f_*[V(Phi)], i.e. form^e with e the degree of V(Phi) -> f(V(Phi)).
  Polynomial raw;
  /// True when raw is not squarefree, so the reduced and cycle-theoretic
  /// answers differ.
  bool multiplicity_dropped = false;
  unsigned samples_checked = 0;
};

/// The image of V(phi) under a morphism f. phi may live in a larger ring than
/// f (extra variables are parameters of phi); the result lives in the larger
/// of the two rings.
///
/// n = 1: the squarefree part of Res_x(phi, y1*f0 - y0*f1) as a form in y.
/// n >= 2: for a base index j the Macaulay resultant of phi and
/// y_j*f_k - y_k*f_j (k != j) is a power of y_j times the image cycle. The gcd
/// of the outputs for two base indices drops the y_j factors, and the
/// squarefree part of that gcd is returned.
///
/// Throws NotMorphism, DegeneracyError("zero-elimination") when an
/// elimination vanishes identically, and DegeneracyError
/// ("pushforward-certification-failed") when a sampled image point is not a
/// zero of the result.
PushforwardResult pushforward_full(const Endomorphism& f, const HypersurfaceForm& phi,
                                   const PushforwardOptions& options = {});

HypersurfaceForm pushforward(const Endomorphism& f, const HypersurfaceForm& phi,
                             const PushforwardOptions& options = {});

/// Strictly increasing indices i0 < ... < in.
class IndexTuple {
 public:
  IndexTuple() = default;
  /// Throws InvalidInput unless strictly increasing.
  explicit IndexTuple(std::vector<unsigned> indices);
  const std::vector<unsigned>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  unsigned operator[](std::size_t i) const { return indices_[i]; }
  friend bool operator==(const IndexTuple&, const IndexTuple&) = default;
  friend auto operator<=>(const IndexTuple&, const IndexTuple&) = default;

 private:
  std::vector<unsigned> indices_;
};

std::string to_string(const IndexTuple& t);

/// Memoizes f^i_* phi = f_*(f^(i-1)_* phi).
class PushforwardChain {
 public:
  PushforwardChain(Endomorphism f, HypersurfaceForm phi, PushforwardOptions options = {});
  const HypersurfaceForm& at(unsigned i);
  const Endomorphism& map() const { return f_; }

 private:
  Endomorphism f_;
  PushforwardOptions options_;
  std::vector<HypersurfaceForm> images_;
};

/// Macaulay resultant of f^{i0}_* phi, ..., f^{in}_* phi. Zero iff the
/// images share a point over the algebraic closure. A polynomial in the
/// parameters of phi when phi has any.
ResultantResult improper_certificate(const Endomorphism& f, const HypersurfaceForm& phi, const IndexTuple& indices,
                                     const ResultantStrategy& strategy = {});
ResultantResult improper_certificate(PushforwardChain& chain, const IndexTuple& indices,
                                     const ResultantStrategy& strategy = {});

struct WitnessSearch {
  std::optional<IndexTuple> witness;
  unsigned bound = 0;
  std::size_t tuples_checked = 0;
};

/// The lexicographically least tuple with i_n <= bound whose certificate
/// vanishes. Requires phi without parameters.
WitnessSearch search_improper_witness(const Endomorphism& f, const HypersurfaceForm& phi, unsigned bound);

// ---------------------------------------------------------------------------
// Periodic points (period dividing s).

/// x0*f^s_1 - x1*f^s_0 for a map of P^1, primitive. Its zeros are Fix(f^s).
HypersurfaceForm fixed_form(const Endomorphism& f, unsigned s);

struct PeriodicPoints {
  std::vector<ProjectivePoint> points;
  /// "rational-roots" (QQ, n = 1), "prime-field-roots" (F_p, n = 1) or
  /// "exhaustive-scan" (F_p).
  std::string scope;
};

/// Throws Unsupported for n >= 2 over QQ, or for scans over more than
/// kMaxScanPoints points.
PeriodicPoints periodic_points(const Endomorphism& f, unsigned s);

inline constexpr std::uint64_t kMaxScanPoints = 5'000'000;

/// Every point of P^n(F_p), in a fixed order.
std::vector<ProjectivePoint> enumerate_points(const Field& field, std::size_t n);

struct ScopedVerdict {
  bool value = false;
  /// "resultant" (n = 1 over QQ: decided over the algebraic closure) or
  /// "exhaustive-scan" (F_p-rational points only).
  std::string scope;
  std::optional<ProjectivePoint> witness;
};

/// Whether f has a critical point of period dividing s. Throws Unsupported
/// for n >= 2 over QQ.
ScopedVerdict has_periodic_critical_point(const Endomorphism& f, unsigned s);

// ---------------------------------------------------------------------------
// Counting formulas.

/// Dimension of the projective space of degree-m forms on P^n: C(n+m, m) - 1.
BigInt dim_forms(unsigned n, unsigned m);
/// Dimension of the space of degree-d maps of P^n: (n+1) C(n+d, d) - 1.
BigInt dim_end(unsigned n, unsigned d);
/// m^n d^((n-1)(i0+...+in)) (d^i0 + ... + d^in).
BigInt generic_cert_degree(unsigned n, unsigned m, unsigned d, const IndexTuple& indices);

}  // namespace projdyn
