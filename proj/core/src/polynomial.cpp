#include <algorithm>
#include <numeric>

#include "projdyn/error.hpp"
#include "projdyn/mpoly.hpp"

namespace projdyn {

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::initializer_list<unsigned> exponents)
    : Monomial(std::span<const unsigned>(exponents.begin(), exponents.size())) {}

Monomial::Monomial(std::span<const unsigned> exponents) {
  if (exponents.size() > kMaxVariables) throw InvalidInput("too many variables in monomial");
  for (std::size_t i = 0; i < exponents.size(); ++i) set(i, exponents[i]);
}

Monomial Monomial::unit(std::size_t var, unsigned exponent) {
  Monomial m;
  m.set(var, exponent);
  return m;
}

void Monomial::set(std::size_t i, unsigned exponent) {
  if (i >= kMaxVariables) throw InvalidInput("variable index out of range");
  if (exponent > 0xFFFF) throw InvalidInput("exponent overflow");
  deg_ = deg_ - e_[i] + exponent;
  e_[i] = static_cast<std::uint16_t>(exponent);
}

unsigned Monomial::degree_in(std::span<const std::size_t> vars) const {
  unsigned d = 0;
  for (std::size_t v : vars) d += e_[v];
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  if (deg_ > other.deg_) return false;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (e_[i] > other.e_[i]) return false;
  }
  return true;
}

Monomial& Monomial::operator*=(const Monomial& other) {
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    unsigned s = unsigned(e_[i]) + other.e_[i];
    if (s > 0xFFFF) throw InvalidInput("exponent overflow");
    e_[i] = static_cast<std::uint16_t>(s);
  }
  deg_ += other.deg_;
  return *this;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial m = *this;
  for (std::size_t i = 0; i < kMaxVariables; ++i) m.e_[i] = static_cast<std::uint16_t>(e_[i] - other.e_[i]);
  m.deg_ = deg_ - other.deg_;
  return m;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    m.e_[i] = std::min(a.e_[i], b.e_[i]);
    m.deg_ += m.e_[i];
  }
  return m;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

namespace {

bool term_before(const Term& a, const Term& b) { return grlex_compare(a.monomial, b.monomial) > 0; }

void check_vars(std::size_t nvars) {
  if (nvars > kMaxVariables) {
    throw InvalidInput("rings are limited to " + std::to_string(kMaxVariables) + " variables");
  }
}

// Merges two descending term lists; sign = -1 subtracts b.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) c = -1;
    else if (j == b.size()) c = 1;
    else c = grlex_compare(a[i].monomial, b[j].monomial);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(subtract ? Term{b[j].monomial, -b[j].coeff} : b[j]);
      ++j;
    } else {
      Scalar s = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!s.is_zero()) out.push_back(Term{a[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::size_t num_vars, const Field& field) : nvars_(num_vars), field_(field) {
  check_vars(num_vars);
}

Polynomial Polynomial::constant(std::size_t num_vars, const Scalar& c) {
  Polynomial p(num_vars, c.field());
  if (!c.is_zero()) p.terms_.push_back(Term{Monomial(), c});
  return p;
}

Polynomial Polynomial::constant(std::size_t num_vars, const Field& field, long c) {
  return constant(num_vars, Scalar(field, c));
}

Polynomial Polynomial::variable(std::size_t num_vars, const Field& field, std::size_t index) {
  if (index >= num_vars) throw InvalidInput("variable index out of range");
  return monomial(num_vars, Scalar::one(field), Monomial::unit(index));
}

Polynomial Polynomial::monomial(std::size_t num_vars, const Scalar& c, const Monomial& m) {
  Polynomial p(num_vars, c.field());
  for (std::size_t i = num_vars; i < kMaxVariables; ++i) {
    if (m[i]) throw InvalidInput("monomial uses a variable outside the ring");
  }
  if (!c.is_zero()) p.terms_.push_back(Term{m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t num_vars, const Field& field, std::vector<Term> terms) {
  Polynomial p(num_vars, field);
  if (!std::is_sorted(terms.begin(), terms.end(), term_before)) {
    std::sort(terms.begin(), terms.end(), term_before);
  }
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (t.coeff.field() != field) throw RingMismatch("term coefficient lies in a different field");
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
  for (const auto& t : out) {
    for (std::size_t i = num_vars; i < kMaxVariables; ++i) {
      if (t.monomial[i]) throw InvalidInput("term uses a variable outside the ring");
    }
  }
  p.terms_ = std::move(out);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.degree() == 0);
}

Scalar Polynomial::constant_value() const {
  if (!is_constant()) throw InvalidInput("polynomial is not constant: " + to_string(*this));
  return terms_.empty() ? Scalar::zero(field_) : terms_[0].coeff;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw InvalidInput("zero polynomial has no leading term");
  return terms_.front();
}

Scalar Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return grlex_compare(t.monomial, key) > 0; });
  if (it != terms_.end() && it->monomial == m) return it->coeff;
  return Scalar::zero(field_);
}

int Polynomial::degree() const { return terms_.empty() ? kZeroDegree : int(terms_.front().monomial.degree()); }

int Polynomial::degree_in(std::size_t var) const {
  if (terms_.empty()) return kZeroDegree;
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial[var]);
  return int(d);
}

int Polynomial::degree_in(std::span<const std::size_t> vars) const {
  if (terms_.empty()) return kZeroDegree;
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree_in(vars));
  return int(d);
}

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_) {
    if (t.monomial.degree() != terms_.front().monomial.degree()) return false;
  }
  return true;
}

bool Polynomial::is_homogeneous_in(std::size_t k) const {
  std::vector<std::size_t> vars(k);
  std::iota(vars.begin(), vars.end(), 0);
  std::optional<unsigned> d;
  for (const auto& t : terms_) {
    unsigned e = t.monomial.degree_in(vars);
    if (d && *d != e) return false;
    d = e;
  }
  return true;
}

bool Polynomial::involves(std::size_t var) const {
  for (const auto& t : terms_) {
    if (t.monomial[var]) return true;
  }
  return false;
}

void Polynomial::check_same_ring(const Polynomial& o) const {
  if (nvars_ != o.nvars_ || field_ != o.field_) {
    throw RingMismatch("ring mismatch: (" + std::to_string(nvars_) + " vars, " + field_.to_string() + ") vs (" +
                       std::to_string(o.nvars_) + " vars, " + o.field_.to_string() + ")");
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same_ring(o);
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_same_ring(o);
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c.field() != field_) throw RingMismatch("scalar field differs from polynomial field");
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same_ring(b);
  Polynomial out(a.nvars_, a.field_);
  if (a.is_zero() || b.is_zero()) return out;
  if (a.size() == 1 || b.size() == 1) {
    const Polynomial& single = a.size() == 1 ? a : b;
    const Polynomial& other = a.size() == 1 ? b : a;
    const Term& s = single.terms_[0];
    out.terms_.reserve(other.size());
    // Multiplying by a monomial preserves the order.
    for (const auto& t : other.terms_) out.terms_.push_back(Term{t.monomial * s.monomial, t.coeff * s.coeff});
    return out;
  }
  std::vector<Term> products;
  products.reserve(a.size() * b.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) products.push_back(Term{s.monomial * t.monomial, s.coeff * t.coeff});
  }
  return Polynomial::from_terms(a.nvars_, a.field_, std::move(products));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_ || a.field_ != b.field_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].monomial == b.terms_[i].monomial) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Polynomial pow(const Polynomial& p, unsigned k) {
  Polynomial result = Polynomial::constant(p.num_vars(), Scalar::one(p.field()));
  Polynomial base = p;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.num_vars()) throw InvalidInput("partial_derivative: variable index out of range");
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    unsigned e = t.monomial[var];
    if (!e) continue;
    Monomial m = t.monomial;
    m.set(var, e - 1);
    Scalar c = t.coeff * Scalar(p.field(), long(e));
    if (!c.is_zero()) out.push_back(Term{m, c});
  }
  return Polynomial::from_terms(p.num_vars(), p.field(), std::move(out));
}

Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images) {
  if (images.size() != p.num_vars()) {
    throw InvalidInput("substitute: expected " + std::to_string(p.num_vars()) + " images, got " +
                       std::to_string(images.size()));
  }
  if (images.empty()) return p;
  for (const auto& img : images) img.check_same_ring(images[0]);
  const std::size_t n = images[0].num_vars();
  const Field field = images[0].field();
  if (field != p.field()) throw RingMismatch("substitute: images live over a different field");

  // Cache powers of each image on demand.
  std::vector<std::vector<Polynomial>> powers(p.num_vars());
  auto power = [&](std::size_t var, unsigned e) -> const Polynomial& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(Polynomial::constant(n, Scalar::one(field)));
    while (cache.size() <= e) cache.push_back(cache.back() * images[var]);
    return cache[e];
  };

  Polynomial result(n, field);
  std::vector<Term> acc;
  for (const auto& t : p.terms()) {
    Polynomial prod = Polynomial::constant(n, t.coeff);
    for (std::size_t v = 0; v < p.num_vars(); ++v) {
      if (t.monomial[v]) prod *= power(v, t.monomial[v]);
    }
    acc.insert(acc.end(), prod.terms().begin(), prod.terms().end());
  }
  return Polynomial::from_terms(n, field, std::move(acc));
}

Scalar evaluate(const Polynomial& p, std::span<const Scalar> point) {
  if (point.size() != p.num_vars()) {
    throw InvalidInput("evaluate: expected " + std::to_string(p.num_vars()) + " coordinates, got " +
                       std::to_string(point.size()));
  }
  for (const auto& s : point) {
    if (s.field() != p.field()) throw RingMismatch("evaluate: point lies over a different field");
  }
  std::vector<std::vector<Scalar>> powers(p.num_vars());
  Scalar total = Scalar::zero(p.field());
  for (const auto& t : p.terms()) {
    Scalar term = t.coeff;
    for (std::size_t v = 0; v < p.num_vars(); ++v) {
      unsigned e = t.monomial[v];
      if (!e) continue;
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(Scalar::one(p.field()));
      while (cache.size() <= e) cache.push_back(cache.back() * point[v]);
      term *= cache[e];
    }
    total += term;
  }
  return total;
}

Polynomial specialize(const Polynomial& p, std::span<const std::pair<std::size_t, Scalar>> values) {
  std::vector<Polynomial> images;
  images.reserve(p.num_vars());
  for (std::size_t v = 0; v < p.num_vars(); ++v) images.push_back(Polynomial::variable(p.num_vars(), p.field(), v));
  for (const auto& [var, value] : values) {
    if (var >= p.num_vars()) throw InvalidInput("specialize: variable index out of range");
    images[var] = Polynomial::constant(p.num_vars(), value);
  }
  return substitute(p, images);
}

Polynomial remap_variables(const Polynomial& p, std::size_t new_num_vars, std::span<const std::size_t> target) {
  if (target.size() != p.num_vars()) throw InvalidInput("remap_variables: target size mismatch");
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t v = 0; v < p.num_vars(); ++v) {
      if (!t.monomial[v]) continue;
      if (target[v] >= new_num_vars) throw InvalidInput("remap_variables: target index out of range");
      m.set(target[v], m[target[v]] + t.monomial[v]);
    }
    out.push_back(Term{m, t.coeff});
  }
  return Polynomial::from_terms(new_num_vars, p.field(), std::move(out));
}

Polynomial change_field(const Polynomial& p, const Field& field) {
  if (p.field() == field) return p;
  if (!p.field().is_rationals() || !field.is_prime_field()) {
    throw InvalidInput("change_field only reduces QQ polynomials modulo a prime");
  }
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back(Term{t.monomial, Scalar(field, t.coeff.rational())});
  return Polynomial::from_terms(p.num_vars(), field, std::move(out));
}

std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var) {
  if (p.is_zero()) return {};
  std::vector<std::vector<Term>> buckets(std::size_t(p.degree_in(var)) + 1);
  for (const auto& t : p.terms()) {
    Monomial m = t.monomial;
    unsigned e = m[var];
    m.set(var, 0);
    buckets[e].push_back(Term{m, t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  // Removing a fixed variable exponent may reorder terms, so re-sort.
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(p.num_vars(), p.field(), std::move(b)));
  return out;
}

Polynomial from_coefficients_in(std::span<const Polynomial> coefficients, std::size_t var) {
  if (coefficients.empty()) return Polynomial();
  const std::size_t n = coefficients[0].num_vars();
  const Field field = coefficients[0].field();
  std::vector<Term> out;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    coefficients[k].check_same_ring(coefficients[0]);
    for (const auto& t : coefficients[k].terms()) {
      Monomial m = t.monomial;
      m.set(var, m[var] + unsigned(k));
      out.push_back(Term{m, t.coeff});
    }
  }
  return Polynomial::from_terms(n, field, std::move(out));
}

Monomial monomial_content(const Polynomial& p) {
  if (p.is_zero()) return Monomial();
  Monomial m = p.terms()[0].monomial;
  for (const auto& t : p.terms()) {
    m = gcd(m, t.monomial);
    if (m.degree() == 0) break;
  }
  return m;
}

Polynomial divide_by_monomial(const Polynomial& p, const Monomial& m) {
  if (m.degree() == 0) return p;
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    if (!m.divides(t.monomial)) throw InvalidInput("divide_by_monomial: monomial does not divide every term");
    out.push_back(Term{t.monomial / m, t.coeff});
  }
  // Division by a common monomial preserves graded-lex order.
  return Polynomial::from_terms(p.num_vars(), p.field(), std::move(out));
}

ContentPrimitive content_primitive(const Polynomial& p) {
  if (p.is_zero()) throw InvalidInput("content_primitive of the zero polynomial");
  const Field field = p.field();
  if (field.is_prime_field()) {
    Scalar lc = p.leading_term().coeff;
    return {lc, p * lc.inverse()};
  }
  BigInt num_gcd = 0;
  BigInt den_lcm = 1;
  for (const auto& t : p.terms()) {
    const Rational& q = t.coeff.rational();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
  }
  Rational content(num_gcd, den_lcm);
  content.canonicalize();
  if (p.leading_term().coeff.sign() < 0) content = -content;
  Scalar c(field, content);
  return {c, p * c.inverse()};
}

Polynomial normalized(const Polynomial& p) {
  if (p.is_zero()) return p;
  return content_primitive(p).primitive;
}

bool equal_up_to_scalar(const Polynomial& p, const Polynomial& q) {
  if (p.num_vars() != q.num_vars() || p.field() != q.field()) return false;
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  if (p.size() != q.size()) return false;
  Scalar ratio = p.terms()[0].coeff / q.terms()[0].coeff;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p.terms()[i].monomial == q.terms()[i].monomial)) return false;
    if (p.terms()[i].coeff != ratio * q.terms()[i].coeff) return false;
  }
  return true;
}

std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& q) {
  p.check_same_ring(q);
  if (q.is_zero()) throw InvalidInput("divide_exact: division by zero");
  if (p.is_zero()) return p;
  if (q.degree() > p.degree()) return std::nullopt;
  for (std::size_t v = 0; v < p.num_vars(); ++v) {
    if (q.degree_in(v) > p.degree_in(v)) return std::nullopt;
  }
  const Term& lead = q.leading_term();
  const Scalar lead_inv = lead.coeff.inverse();
  std::vector<Term> quotient;
  Polynomial remainder = p;
  while (!remainder.is_zero()) {
    const Term& r = remainder.leading_term();
    if (!lead.monomial.divides(r.monomial)) return std::nullopt;
    Term t{r.monomial / lead.monomial, r.coeff * lead_inv};
    remainder -= Polynomial::monomial(p.num_vars(), t.coeff, t.monomial) * q;
    quotient.push_back(std::move(t));
  }
  return Polynomial::from_terms(p.num_vars(), p.field(), std::move(quotient));
}

std::vector<Monomial> monomials_of_degree(std::size_t num_vars, unsigned degree) {
  std::vector<Monomial> out;
  if (num_vars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  // Descending graded-lex within a fixed degree is descending lex.
  std::vector<unsigned> e(num_vars, 0);
  auto rec = [&](auto&& self, std::size_t var, unsigned remaining) -> void {
    if (var + 1 == num_vars) {
      e[var] = remaining;
      out.emplace_back(std::span<const unsigned>(e));
      return;
    }
    for (unsigned k = remaining + 1; k-- > 0;) {
      e[var] = k;
      self(self, var + 1, remaining - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

}  // namespace projdyn
