#include <mutex>

#include "projdyn/dynamics.hpp"
#include "projdyn/error.hpp"

namespace projdyn {

// ---------------------------------------------------------------------------
// ProjectivePoint

ProjectivePoint::ProjectivePoint(std::vector<Scalar> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidInput("projective point needs at least one coordinate");
  field_ = coords_.front().field();
  std::size_t last = coords_.size();
  for (std::size_t i = coords_.size(); i-- > 0;) {
    if (coords_[i].field() != field_) throw RingMismatch("projective point mixes fields");
    if (last == coords_.size() && !coords_[i].is_zero()) last = i;
  }
  if (last == coords_.size()) throw InvalidInput("projective point with all coordinates zero");
  const Scalar inv = coords_[last].inverse();
  for (auto& c : coords_) c *= inv;
}

ProjectivePoint ProjectivePoint::of(const Field& field, std::initializer_list<long> coords) {
  std::vector<Scalar> v;
  for (long c : coords) v.emplace_back(field, c);
  return ProjectivePoint(std::move(v));
}

std::string to_string(const ProjectivePoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.coords().size(); ++i) {
    if (i) s += ':';
    s += p.coords()[i].to_string();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// HypersurfaceForm

HypersurfaceForm::HypersurfaceForm(const Polynomial& form, std::size_t num_form_vars) : k_(num_form_vars) {
  if (form.is_zero()) throw InvalidInput("hypersurface form is zero");
  if (k_ == 0 || k_ > form.num_vars()) throw InvalidInput("hypersurface form: bad number of form variables");
  if (!form.is_homogeneous_in(k_)) throw InvalidInput("hypersurface form is not homogeneous: " + to_string(form));
  std::vector<std::size_t> xs(k_);
  for (std::size_t i = 0; i < k_; ++i) xs[i] = i;
  const int m = form.degree_in(xs);
  if (m < 1) throw InvalidInput("hypersurface form has degree 0: " + to_string(form));
  m_ = unsigned(m);
  form_ = normalized(form);
}

// ---------------------------------------------------------------------------
// Endomorphism

struct Endomorphism::Cache {
  std::once_flag once;
  Polynomial resultant;
};

Endomorphism::Endomorphism(std::vector<Polynomial> forms) : forms_(std::move(forms)) {
  if (forms_.size() < 2) throw InvalidInput("an endomorphism of P^n needs n + 1 >= 2 forms");
  for (const auto& f : forms_) f.check_same_ring(forms_.front());
  const std::size_t k = forms_.size();
  if (forms_.front().num_vars() < k) {
    throw InvalidInput("endomorphism with " + std::to_string(k) + " forms needs at least " + std::to_string(k) +
                       " ring variables");
  }
  std::vector<std::size_t> xs(k);
  for (std::size_t i = 0; i < k; ++i) xs[i] = i;
  std::optional<int> degree;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& f = forms_[i];
    if (f.is_zero()) continue;
    if (!f.is_homogeneous_in(k)) throw InvalidInput("component " + std::to_string(i) + " is not homogeneous: " + to_string(f));
    const int di = f.degree_in(xs);
    if (degree && *degree != di) {
      throw InvalidInput("components have different degrees " + std::to_string(*degree) + " and " + std::to_string(di));
    }
    degree = di;
  }
  if (!degree) throw InvalidInput("every component of the map is zero");
  if (*degree < 1) throw InvalidInput("endomorphism of degree 0");
  d_ = unsigned(*degree);
  cache_ = std::make_shared<Cache>();
}

bool Endomorphism::has_parameters() const {
  for (const auto& f : forms_) {
    for (std::size_t v = forms_.size(); v < f.num_vars(); ++v) {
      if (f.involves(v)) return true;
    }
  }
  return false;
}

const Polynomial& Endomorphism::resultant() const {
  std::call_once(cache_->once, [this] { cache_->resultant = endo_resultant(*this).value; });
  return cache_->resultant;
}

std::string to_string(const Endomorphism& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.forms().size(); ++i) {
    if (i) s += ", ";
    s += to_string(f.forms()[i]);
  }
  return s + "]";
}

Endomorphism endo_make(std::vector<Polynomial> forms) { return Endomorphism(std::move(forms)); }

ResultantResult endo_resultant(const Endomorphism& f, const ResultantStrategy& strategy) {
  for (const auto& c : f.forms()) {
    if (c.is_zero()) {
      ResultantResult r;
      r.value = Polynomial(f.num_vars(), f.field());
      return r;
    }
  }
  return map_resultant(f.forms(), strategy);
}

namespace {

// Images x_i -> g_i for i <= n, parameters fixed.
std::vector<Polynomial> composition_images(const std::vector<Polynomial>& g) {
  const std::size_t nv = g.front().num_vars();
  std::vector<Polynomial> images(g);
  for (std::size_t v = g.size(); v < nv; ++v) images.push_back(Polynomial::variable(nv, g.front().field(), v));
  return images;
}

std::vector<Polynomial> remove_common_content(std::vector<Polynomial> forms) {
  if (!forms.front().field().is_rationals()) return forms;
  BigInt num = 0, den = 1;
  for (const auto& f : forms) {
    for (const auto& t : f.terms()) {
      const Rational& q = t.coeff.rational();
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), q.get_num_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    }
  }
  if (num == 0 || (num == 1 && den == 1)) return forms;
  const Scalar inv(forms.front().field(), Rational(den, num));
  for (auto& f : forms) f *= inv;
  return forms;
}

}  // namespace

Endomorphism iterate(const Endomorphism& f, unsigned s) {
  if (s == 0) throw InvalidInput("iterate needs s >= 1");
  if (s == 1) return f;
  std::vector<Polynomial> g = f.forms();
  for (unsigned step = 1; step < s; ++step) {
    const auto images = composition_images(g);
    std::vector<Polynomial> next;
    next.reserve(g.size());
    for (const auto& fi : f.forms()) next.push_back(substitute(fi, images));
    g = remove_common_content(std::move(next));
  }
  return Endomorphism(std::move(g));
}

ProjectivePoint apply(const Endomorphism& f, const ProjectivePoint& p) {
  if (f.has_parameters()) throw InvalidInput("apply needs a map without parameters");
  if (p.dimension() != f.n()) throw InvalidInput("point " + to_string(p) + " does not lie in P^" + std::to_string(f.n()));
  if (p.field() != f.field()) throw RingMismatch("point and map live over different fields");
  std::vector<Scalar> x(f.num_vars(), Scalar::zero(f.field()));
  std::copy(p.coords().begin(), p.coords().end(), x.begin());
  std::vector<Scalar> y;
  bool all_zero = true;
  for (const auto& fi : f.forms()) {
    y.push_back(evaluate(fi, x));
    all_zero = all_zero && y.back().is_zero();
  }
  if (all_zero) throw BasePointError("every component of the map vanishes at " + to_string(p));
  return ProjectivePoint(std::move(y));
}

OrbitRecord orbit(const Endomorphism& f, const ProjectivePoint& p, std::size_t max_steps) {
  OrbitRecord rec;
  rec.points.push_back(p);
  for (std::size_t step = 0; step < max_steps; ++step) {
    ProjectivePoint q = apply(f, rec.points.back());
    for (std::size_t j = 0; j < rec.points.size(); ++j) {
      if (rec.points[j] == q) {
        rec.tail = j;
        rec.period = rec.points.size() - j;
        rec.points.push_back(std::move(q));
        return rec;
      }
    }
    rec.points.push_back(std::move(q));
  }
  return rec;
}

namespace {

std::vector<std::vector<Scalar>> inverse_matrix(std::vector<std::vector<Scalar>> a, const Field& field) {
  const std::size_t n = a.size();
  std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n, Scalar::zero(field)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Scalar::one(field);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw InvalidInput("conjugating matrix is singular");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Scalar s = a[col][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= s;
      inv[col][j] *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col].is_zero()) continue;
      const Scalar factor = a[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= factor * a[col][j];
        inv[i][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

std::vector<Polynomial> linear_images(const std::vector<std::vector<Scalar>>& m, std::size_t nv, const Field& field) {
  std::vector<Polynomial> images;
  for (const auto& row : m) {
    Polynomial img(nv, field);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!row[j].is_zero()) img += Polynomial::monomial(nv, row[j], Monomial::unit(j));
    }
    images.push_back(std::move(img));
  }
  return images;
}

}  // namespace

Endomorphism conjugate(const Endomorphism& f, const std::vector<std::vector<Scalar>>& a) {
  const std::size_t k = f.n() + 1;
  if (a.size() != k) throw InvalidInput("conjugating matrix must be " + std::to_string(k) + " x " + std::to_string(k));
  for (const auto& row : a) {
    if (row.size() != k) throw InvalidInput("conjugating matrix must be square");
    for (const auto& x : row) {
      if (x.field() != f.field()) throw RingMismatch("conjugating matrix lives over a different field");
    }
  }
  const std::size_t nv = f.num_vars();
  auto images = linear_images(inverse_matrix(a, f.field()), nv, f.field());
  for (std::size_t v = k; v < nv; ++v) images.push_back(Polynomial::variable(nv, f.field(), v));
  std::vector<Polynomial> h;
  for (const auto& fi : f.forms()) h.push_back(substitute(fi, images));
  std::vector<Polynomial> g;
  for (std::size_t i = 0; i < k; ++i) {
    Polynomial gi(nv, f.field());
    for (std::size_t j = 0; j < k; ++j) {
      if (!a[i][j].is_zero()) gi += a[i][j] * h[j];
    }
    g.push_back(std::move(gi));
  }
  return Endomorphism(std::move(g));
}

Polynomial jacobian_determinant(const Endomorphism& f) {
  const std::size_t k = f.n() + 1;
  PolyMatrix m(k, k, Polynomial(f.num_vars(), f.field()));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) m(i, j) = partial_derivative(f.forms()[i], j);
  }
  return determinant(m);
}

HypersurfaceForm jacobian(const Endomorphism& f) {
  Polynomial j = jacobian_determinant(f);
  if (j.is_zero()) throw DegeneracyError("jacobian-vanishes", "the Jacobian determinant vanishes identically");
  if (f.degree() == 1) throw InvalidInput("a degree-1 map has a constant Jacobian and no critical hypersurface");
  return HypersurfaceForm(j, f.n() + 1);
}

// ---------------------------------------------------------------------------
// Formulas

namespace {

BigInt binomial(unsigned n, unsigned k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt power(unsigned base, unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

}  // namespace

BigInt dim_forms(unsigned n, unsigned m) {
  if (n < 1 || m < 1) throw InvalidInput("dim_forms needs n, m >= 1");
  return binomial(n + m, m) - 1;
}

BigInt dim_end(unsigned n, unsigned d) {
  if (n < 1 || d < 1) throw InvalidInput("dim_end needs n, d >= 1");
  return BigInt(n + 1) * binomial(n + d, d) - 1;
}

BigInt generic_cert_degree(unsigned n, unsigned m, unsigned d, const IndexTuple& indices) {
  if (n < 1 || m < 1 || d < 1) throw InvalidInput("generic_cert_degree needs n, m, d >= 1");
  if (indices.size() != n + 1) throw InvalidInput("generic_cert_degree needs n + 1 indices");
  unsigned long sum = 0;
  BigInt powers = 0;
  for (unsigned i : indices.indices()) {
    sum += i;
    powers += power(d, i);
  }
  return power(m, n) * power(d, (n - 1) * sum) * powers;
}

}  // namespace projdyn
