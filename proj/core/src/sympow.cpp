#include "projdyn/sympow.hpp"

#include <algorithm>
#include <random>

#include "binary_zeros.hpp"
#include "projdyn/error.hpp"
#include "projdyn/roots.hpp"

namespace projdyn {

// ---------------------------------------------------------------------------
// SymForm

SymForm::SymForm(std::vector<Scalar> coefficients) : c_(std::move(coefficients)) {
  if (c_.empty()) throw InvalidInput("binary form needs at least one coefficient");
  const Field field = c_.front().field();
  bool nonzero = false;
  for (const auto& c : c_) {
    if (c.field() != field) throw RingMismatch("binary form mixes fields");
    nonzero = nonzero || !c.is_zero();
  }
  if (!nonzero) throw InvalidInput("binary form with all coefficients zero");
  const Polynomial p = normalized(polynomial());
  const std::size_t n = c_.size() - 1;
  for (std::size_t i = 0; i <= n; ++i) c_[i] = p.coefficient(Monomial{unsigned(n - i), unsigned(i)});
}

SymForm SymForm::from_polynomial(const Polynomial& binary_form) {
  if (binary_form.is_zero()) throw InvalidInput("binary form is zero");
  if (!binary_form.is_homogeneous_in(2)) throw InvalidInput("not a binary form: " + to_string(binary_form));
  for (std::size_t v = 2; v < binary_form.num_vars(); ++v) {
    if (binary_form.involves(v)) throw InvalidInput("binary form involves x" + std::to_string(v));
  }
  const unsigned n = binary_form.leading_term().monomial.degree();
  std::vector<Scalar> c;
  for (unsigned i = 0; i <= n; ++i) {
    Monomial m;
    m.set(0, n - i);
    m.set(1, i);
    c.push_back(binary_form.coefficient(m));
  }
  return SymForm(std::move(c));
}

Polynomial SymForm::polynomial(std::size_t num_vars) const {
  const std::size_t n = c_.size() - 1;
  std::vector<Term> terms;
  for (std::size_t i = 0; i <= n; ++i) {
    Monomial m;
    m.set(0, unsigned(n - i));
    m.set(1, unsigned(i));
    terms.push_back(Term{m, c_[i]});
  }
  return Polynomial::from_terms(num_vars, c_.front().field(), std::move(terms));
}

std::string to_string(const SymForm& s) { return to_string(s.polynomial()); }

SymForm vieta(const PointTuple& points) {
  if (points.empty()) throw InvalidInput("vieta needs at least one point");
  const Field field = points.front().field();
  Polynomial prod = Polynomial::constant(2, Scalar::one(field));
  for (const auto& p : points) {
    if (p.dimension() != 1) throw InvalidInput("vieta takes points of P^1");
    const Scalar& a = p.coords()[0];
    const Scalar& b = p.coords()[1];
    prod *= Polynomial::monomial(2, b, Monomial::unit(0)) - Polynomial::monomial(2, a, Monomial::unit(1));
  }
  return SymForm::from_polynomial(prod);
}

// ---------------------------------------------------------------------------
// Symmetric powers

Endomorphism symmetric_power(const Endomorphism& f, std::size_t n) {
  if (f.n() != 1) throw InvalidInput("symmetric_power takes a map of P^1");
  if (f.has_parameters()) throw InvalidInput("symmetric_power needs a map without parameters");
  if (n < 1) throw InvalidInput("symmetric_power needs n >= 1");
  // Ring: x, y, c0..cn, u, v.
  const std::size_t nv = n + 5;
  if (nv > kMaxVariables) throw Unsupported("symmetric power too large for the variable limit");
  const Field field = f.field();
  const std::size_t u = n + 3, v = n + 4;
  std::vector<Term> generic;
  for (std::size_t i = 0; i <= n; ++i) {
    Monomial m;
    m.set(0, unsigned(n - i));
    m.set(1, unsigned(i));
    m.set(2 + i, 1);
    generic.push_back(Term{m, Scalar::one(field)});
  }
  const Polynomial phi = Polynomial::from_terms(nv, field, std::move(generic));
  std::vector<std::size_t> same(f.num_vars());
  for (std::size_t i = 0; i < same.size(); ++i) same[i] = i;
  const Polynomial f0 = remap_variables(f.forms()[0], nv, same);
  const Polynomial f1 = remap_variables(f.forms()[1], nv, same);
  const Polynomial g = Polynomial::variable(nv, field, u) * f1 - Polynomial::variable(nv, field, v) * f0;
  const Polynomial r = sylvester_resultant(phi, g);

  std::vector<std::vector<Term>> components(n + 1);
  for (const auto& t : r.terms()) {
    const unsigned j = t.monomial[v];
    if (t.monomial[u] + j != n) throw DegeneracyError("symmetric-power", "resultant is not a form of degree n in (u, v)");
    Monomial m;
    for (std::size_t i = 0; i <= n; ++i) m.set(i, t.monomial[2 + i]);
    components[j].push_back(Term{m, t.coeff});
  }
  std::vector<Polynomial> forms;
  for (auto& terms : components) forms.push_back(Polynomial::from_terms(n + 1, field, std::move(terms)));
  if (field.is_rationals()) {
    BigInt num = 0, den = 1;
    for (const auto& fi : forms) {
      for (const auto& t : fi.terms()) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.rational().get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.rational().get_den_mpz_t());
      }
    }
    if (num != 0) {
      const Scalar scale(field, Rational(den, num));
      for (auto& fi : forms) fi *= scale;
    }
  }
  return Endomorphism(std::move(forms));
}

Polynomial hyperplane_of_point(const ProjectivePoint& p, std::size_t m) {
  if (p.dimension() != 1) throw InvalidInput("hyperplane_of_point takes a point of P^1");
  const Scalar& a = p.coords()[0];
  const Scalar& b = p.coords()[1];
  std::vector<Term> terms;
  for (std::size_t i = 0; i <= m; ++i) terms.push_back(Term{Monomial::unit(i), a.pow(long(m - i)) * b.pow(long(i))});
  return Polynomial::from_terms(m + 1, p.field(), std::move(terms));
}

SymForm apply(const Endomorphism& big_f, const SymForm& phi) {
  if (big_f.n() != phi.degree()) throw InvalidInput("map and binary form have different dimensions");
  return SymForm(apply(big_f, phi.point()).coords());
}

namespace {

std::vector<Scalar> evaluate_all(const std::vector<Polynomial>& forms, const std::vector<Scalar>& x) {
  std::vector<Scalar> y;
  for (const auto& f : forms) y.push_back(evaluate(f, x));
  return y;
}

Scalar dot(const Polynomial& linear, const std::vector<Scalar>& x) { return evaluate(linear, x); }

// A seeded random nonzero point of the hyperplane {c : h(c) = 0}.
std::vector<Scalar> sample_hyperplane(const Polynomial& h, std::mt19937_64& rng) {
  const std::size_t k = h.num_vars();
  const Field field = h.field();
  std::size_t pivot = k;
  for (std::size_t i = 0; i < k && pivot == k; ++i) {
    if (!h.coefficient(Monomial::unit(i)).is_zero()) pivot = i;
  }
  while (true) {
    std::vector<Scalar> c;
    for (std::size_t i = 0; i < k; ++i) c.push_back(random_element(field, rng()));
    c[pivot] = Scalar::zero(field);
    c[pivot] = -dot(h, c) / h.coefficient(Monomial::unit(pivot));
    for (const auto& x : c) {
      if (!x.is_zero()) return c;
    }
  }
}

ProjectivePoint random_line_point(const Field& field, std::mt19937_64& rng) {
  return ProjectivePoint(std::vector<Scalar>{random_element(field, rng()), Scalar::one(field)});
}

Scalar jacobian_at(const Polynomial& jac, const SymForm& phi) { return evaluate(jac, phi.coefficients()); }

}  // namespace

bool check_fhp(const Endomorphism& big_f, const Endomorphism& f, const ProjectivePoint& p, unsigned samples,
               std::uint64_t seed) {
  const std::size_t n = big_f.n();
  const Polynomial source = hyperplane_of_point(p, n);
  const Polynomial target = hyperplane_of_point(apply(f, p), n);
  std::mt19937_64 rng(seed);
  for (unsigned i = 0; i < samples; ++i) {
    const auto c = sample_hyperplane(source, rng);
    const auto image = evaluate_all(big_f.forms(), c);
    bool zero = true;
    for (const auto& x : image) zero = zero && x.is_zero();
    if (zero || !dot(target, image).is_zero()) return false;
  }
  return true;
}

bool check_fhp(const Endomorphism& f, const ProjectivePoint& p, std::size_t n, unsigned samples, std::uint64_t seed) {
  return check_fhp(symmetric_power(f, n), f, p, samples, seed);
}

bool collision_locus_member(const Endomorphism& f, const PointTuple& points) {
  std::vector<ProjectivePoint> images;
  for (const auto& p : points) images.push_back(apply(f, p));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] != points[j] && images[i] == images[j]) return true;
    }
  }
  return false;
}

CriticalLocusReport critical_locus_structure_check(const Endomorphism& f, std::size_t n, unsigned samples,
                                                   std::uint64_t seed) {
  if (n < 2) throw InvalidInput("critical_locus_structure_check needs n >= 2");
  const Polynomial jf = jacobian_determinant(f);
  if (jf.is_zero()) throw DegeneracyError("jacobian-vanishes", "the Jacobian determinant vanishes identically");
  const auto critical = detail::binary_zeros(jf);
  if (critical.empty() || std::size_t(squarefree_part(jf).degree()) != critical.size()) {
    throw Unsupported("the critical points of f are not all rational over " + f.field().to_string());
  }
  const Endomorphism big_f = symmetric_power(f, n);
  const Polynomial jac = jacobian_determinant(big_f);
  const Field field = f.field();
  std::mt19937_64 rng(seed);
  CriticalLocusReport report;

  auto is_critical = [&](const ProjectivePoint& p) {
    return std::find(critical.begin(), critical.end(), p) != critical.end();
  };

  // (a) hyperplanes over critical points.
  for (unsigned i = 0; i < samples; ++i) {
    const auto c = sample_hyperplane(hyperplane_of_point(critical[i % critical.size()], n), rng);
    report.hyperplanes = report.hyperplanes && evaluate(jac, c).is_zero();
    ++report.hyperplane_samples;
  }

  // (b) and (d): tuples containing two points with one image.
  for (unsigned attempt = 0; report.collision_samples < samples && attempt < 50 * samples; ++attempt) {
    const ProjectivePoint p1 = random_line_point(field, rng);
    const ProjectivePoint y = apply(f, p1);
    const Polynomial fiber = y.coords()[1] * f.forms()[0] - y.coords()[0] * f.forms()[1];
    std::optional<ProjectivePoint> p2;
    for (const auto& q : detail::binary_zeros(fiber)) {
      if (q != p1) p2 = q;
    }
    if (!p2) continue;
    PointTuple tuple{p1, *p2};
    while (tuple.size() < n) tuple.push_back(random_line_point(field, rng));
    const SymForm phi = vieta(tuple);
    report.collisions = report.collisions && jacobian_at(jac, phi).is_zero();
    ++report.collision_samples;
    report.discriminant = report.discriminant && discriminant_binary(apply(big_f, phi).polynomial()).is_zero();
    ++report.discriminant_samples;
  }
  if (report.collision_samples == 0) {
    throw Unsupported("no colliding tuple with rational points found over " + field.to_string());
  }

  // (c) tuples of distinct noncritical points with distinct images.
  for (unsigned attempt = 0; report.complement_samples < samples && attempt < 50 * samples; ++attempt) {
    PointTuple tuple;
    while (tuple.size() < n) tuple.push_back(random_line_point(field, rng));
    bool generic = true;
    for (std::size_t i = 0; i < n && generic; ++i) {
      generic = !is_critical(tuple[i]);
      for (std::size_t j = i + 1; j < n && generic; ++j) generic = tuple[i] != tuple[j];
    }
    if (!generic || collision_locus_member(f, tuple)) continue;
    report.complement = report.complement && !jacobian_at(jac, vieta(tuple)).is_zero();
    ++report.complement_samples;
  }
  return report;
}

std::vector<unsigned> admissible_periods(unsigned s, unsigned n) {
  if (s < 1 || n < 1) throw InvalidInput("admissible_periods needs s, n >= 1");
  std::vector<unsigned> out;
  for (unsigned t = 1; t <= s * n; ++t) {
    for (unsigned m = 1; m <= n; ++m) {
      if ((m * s) % t == 0) {
        out.push_back(t);
        break;
      }
    }
  }
  return out;
}

SymForm periodic_critical_form(const Endomorphism& f, const ProjectivePoint& p, const ProjectivePoint& q, unsigned s,
                               unsigned m, std::size_t n) {
  if (f.n() != 1) throw InvalidInput("periodic_critical_form takes a map of P^1");
  if (s < 1 || m < 1 || m > n) throw InvalidInput("periodic_critical_form needs s >= 1 and 1 <= m <= n");
  std::vector<Scalar> pc(p.coords());
  if (!evaluate(jacobian_determinant(f), pc).is_zero()) throw InvalidInput(to_string(p) + " is not a critical point");
  ProjectivePoint r = p;
  for (unsigned i = 0; i < m * s; ++i) r = apply(f, r);
  if (r != p) throw InvalidInput(to_string(p) + " does not have period dividing " + std::to_string(m * s));
  if (apply(f, q) != q) throw InvalidInput(to_string(q) + " is not a fixed point");

  PointTuple tuple;
  ProjectivePoint cur = p;
  for (unsigned i = 0; i < m; ++i) {
    tuple.push_back(cur);
    for (unsigned k = 0; k < s; ++k) cur = apply(f, cur);
  }
  while (tuple.size() < n) tuple.push_back(q);
  const SymForm phi = vieta(tuple);

  const Endomorphism big_f = symmetric_power(f, n);
  if (!jacobian_at(jacobian_determinant(big_f), phi).is_zero()) {
    throw DegeneracyError("postcondition-failed", "constructed form is not a critical point of the symmetric power");
  }
  SymForm image = phi;
  for (unsigned i = 0; i < s; ++i) image = apply(big_f, image);
  if (image != phi) throw DegeneracyError("postcondition-failed", "constructed form is not fixed by F^s");
  return phi;
}

// ---------------------------------------------------------------------------
// Period polynomials

Polynomial PeriodPolynomial::polynomial(const Field& field) const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] != 0) terms.push_back(Term{Monomial::unit(0, unsigned(i)), Scalar(field, coefficients[i])});
  }
  return Polynomial::from_terms(1, field, std::move(terms));
}

PeriodPolynomial period_polynomial(unsigned d, unsigned s) {
  if (d < 2) throw InvalidInput("period_polynomial needs d >= 2");
  if (s < 2) throw InvalidInput("period_polynomial needs s >= 2");
  const Field QQ = Field::rationals();
  const Polynomial c = Polynomial::variable(1, QQ, 0);
  Polynomial num(1, QQ), den = Polynomial::constant(1, QQ, 1);
  for (unsigned k = 0; k < s; ++k) {
    const Polynomial nd = pow(num, d);
    Polynomial next = pow(den, d) + c * nd;
    den = nd;
    num = std::move(next);
  }
  const Polynomial g = normalized(num);
  PeriodPolynomial out;
  out.d = d;
  out.s = s;
  out.coefficients.assign(std::size_t(g.degree()) + 1, 0);
  for (const auto& t : g.terms()) out.coefficients[t.monomial[0]] = t.coeff.rational().get_num();
  return out;
}

Endomorphism inverse_power_map(unsigned d, const Scalar& c) {
  const Field field = c.field();
  return Endomorphism({Polynomial::monomial(2, Scalar::one(field), Monomial::unit(1, d)) +
                           Polynomial::monomial(2, c, Monomial::unit(0, d)),
                       Polynomial::monomial(2, Scalar::one(field), Monomial::unit(0, d))});
}

std::optional<Scalar> find_pcf_parameter(unsigned d, unsigned p, const Field& field) {
  if (p < 2 || !is_prime(p)) throw InvalidInput("find_pcf_parameter needs a prime period");
  const Polynomial g = period_polynomial(d, p).polynomial(field);
  if (g.is_zero() || g.degree() == 0) return std::nullopt;
  const ProjectivePoint zero(std::vector<Scalar>{Scalar::zero(field), Scalar::one(field)});
  for (const auto& c : roots_in_field(g, 0)) {
    const OrbitRecord o = orbit(inverse_power_map(d, c), zero, p + 1);
    if (o.tail && *o.tail == 0 && o.period && *o.period == p) return c;
  }
  return std::nullopt;
}

Endomorphism bicritical_wanderer(unsigned d, const Scalar& zeta) {
  const Field field = zeta.field();
  if (d < 2) throw InvalidInput("bicritical_wanderer needs d >= 2");
  if (!zeta.pow(long(d)).is_one() || zeta.is_one()) {
    throw InvalidInput(zeta.to_string() + " is not a d-th root of unity other than 1");
  }
  const Endomorphism f({Polynomial::monomial(2, Scalar::one(field), Monomial::unit(0, d)) +
                            Polynomial::monomial(2, zeta - Scalar::one(field), Monomial::unit(1, d)),
                        Polynomial::monomial(2, Scalar::one(field), Monomial::unit(0, d))});
  const auto o = orbit(f, ProjectivePoint(std::vector<Scalar>{Scalar::zero(field), Scalar::one(field)}));
  const ProjectivePoint zeta_point(std::vector<Scalar>{zeta, Scalar::one(field)});
  const bool orbit_ok = o.points.size() == 5 && o.tail == 3u && o.period == 1u &&
                        o.points[1] == ProjectivePoint(std::vector<Scalar>{Scalar::one(field), Scalar::zero(field)}) &&
                        o.points[2] == ProjectivePoint(std::vector<Scalar>{Scalar::one(field), Scalar::one(field)}) &&
                        o.points[3] == zeta_point;
  if (!orbit_ok) throw DegeneracyError("postcondition-failed", "orbit of 0 is not 0 -> oo -> 1 -> zeta -> zeta");
  // Both critical points are strictly preperiodic, so no s works.
  const Polynomial jac = jacobian_determinant(f);
  const auto critical = detail::binary_zeros(jac);
  if (critical.size() != std::size_t(squarefree_part(jac).degree())) {
    throw DegeneracyError("postcondition-failed", "critical points are not all rational");
  }
  for (const auto& c : critical) {
    const auto co = orbit(f, c);
    if (!co.tail || *co.tail == 0) {
      throw DegeneracyError("postcondition-failed", "critical point " + to_string(c) + " is periodic");
    }
  }
  return f;
}

Endomorphism bicritical_wanderer(unsigned d, const Field& field) {
  if (d < 2) throw InvalidInput("bicritical_wanderer needs d >= 2");
  if (field.is_rationals()) {
    if (d % 2) throw InvalidInput("QQ has no d-th root of unity other than 1 for odd d");
    return bicritical_wanderer(d, Scalar(field, -1L));
  }
  const std::uint64_t p = field.characteristic();
  if ((p - 1) % d) throw InvalidInput("F_" + std::to_string(p) + " has no primitive " + std::to_string(d) +
                                      "-th root of unity");
  std::vector<unsigned> prime_factors;
  for (unsigned q = 2, r = d; r > 1; ++q) {
    if (r % q == 0) {
      prime_factors.push_back(q);
      while (r % q == 0) r /= q;
    }
  }
  auto has_order_d = [&](std::uint64_t g) {
    if (pow_mod(g, d, p) != 1) return false;
    for (unsigned q : prime_factors) {
      if (pow_mod(g, d / q, p) == 1) return false;
    }
    return true;
  };
  constexpr std::uint64_t kLinearSearch = 1u << 20;
  for (std::uint64_t g = 2; g < std::min(p, kLinearSearch); ++g) {
    if (has_order_d(g)) return bicritical_wanderer(d, Scalar::from_residue(field, g));
  }
  for (std::uint64_t h = 2;; ++h) {
    const std::uint64_t g = pow_mod(h, (p - 1) / d, p);
    if (has_order_d(g)) return bicritical_wanderer(d, Scalar::from_residue(field, g));
  }
}

}  // namespace projdyn
