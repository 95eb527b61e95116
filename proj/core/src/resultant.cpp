#include "projdyn/resultant.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <unordered_map>

#include "modular_kernel.hpp"
#include "projdyn/error.hpp"
#include "projdyn/parallel.hpp"

namespace projdyn {

// ---------------------------------------------------------------------------
// MacaulaySystem

MacaulaySystem::MacaulaySystem(std::vector<Polynomial> forms) : forms_(std::move(forms)) {
  const std::size_t k = forms_.size();
  if (k == 0) throw InvalidInput("Macaulay system needs at least one form");
  for (const auto& f : forms_) f.check_same_ring(forms_.front());
  if (forms_.front().num_vars() < k) {
    throw InvalidInput("Macaulay system of " + std::to_string(k) + " forms needs at least " + std::to_string(k) +
                       " ring variables");
  }
  std::vector<std::size_t> xs(k);
  for (std::size_t i = 0; i < k; ++i) xs[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const Polynomial& f = forms_[i];
    if (f.is_zero()) throw InvalidInput("form " + std::to_string(i) + " of the Macaulay system is zero");
    if (!f.is_homogeneous_in(k)) {
      throw InvalidInput("form " + std::to_string(i) + " is not homogeneous in x0..x" + std::to_string(k - 1) + ": " +
                         to_string(f));
    }
    int d = f.degree_in(xs);
    if (d < 1) throw InvalidInput("form " + std::to_string(i) + " has degree 0 in the eliminated variables");
    degrees_.push_back(unsigned(d));
  }
}

unsigned MacaulaySystem::critical_degree() const {
  unsigned D = 1;
  for (unsigned d : degrees_) D += d - 1;
  return D;
}

std::uint64_t MacaulaySystem::degree_product() const {
  std::uint64_t prod = 1;
  for (unsigned d : degrees_) prod *= d;
  return prod;
}

bool MacaulaySystem::has_parameters() const {
  for (const auto& f : forms_) {
    for (std::size_t v = forms_.size(); v < f.num_vars(); ++v) {
      if (f.involves(v)) return true;
    }
  }
  return false;
}

std::string to_string(ResultantMode mode) {
  switch (mode) {
    case ResultantMode::kAuto: return "auto";
    case ResultantMode::kDirectRatio: return "direct-ratio";
    case ResultantMode::kCoordinateChange: return "coordinate-change-fallback";
    case ResultantMode::kModularInterpolation: return "modular-interpolation";
  }
  return "unknown";
}

namespace {

constexpr int kMaxCoordinateChanges = 5;
constexpr std::size_t kMaxPrimes = 40;
constexpr std::size_t kMaxGridPoints = 50'000'000;
// Prime fields below this size use exact elimination on polynomial entries.
constexpr std::uint64_t kSmallPrimeLimit = 1ULL << 20;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = m.degree();
    for (std::size_t i = 0; i < kMaxVariables; ++i) h = h * 1000003u ^ m[i];
    return h;
  }
};

using MonomialIndex = std::unordered_map<Monomial, std::uint32_t, MonomialHash>;

// Rows and columns of the Macaulay matrix, independent of the coefficients.
struct Layout {
  std::size_t k = 0;
  std::vector<unsigned> degrees;
  std::vector<Monomial> monos;
  std::vector<std::vector<Monomial>> form_monos;
  std::vector<MonomialIndex> form_index;
  struct Entry {
    std::uint32_t col;
    std::uint32_t slot;
  };
  std::vector<std::uint32_t> row_form;
  std::vector<std::vector<Entry>> rows;
  std::vector<std::uint32_t> nonreduced;

  std::size_t size() const { return monos.size(); }
};

Layout make_layout(std::size_t k, const std::vector<unsigned>& degrees) {
  Layout L;
  L.k = k;
  L.degrees = degrees;
  unsigned D = 1;
  for (unsigned d : degrees) D += d - 1;
  L.monos = monomials_of_degree(k, D);
  MonomialIndex index;
  for (std::uint32_t i = 0; i < L.monos.size(); ++i) index.emplace(L.monos[i], i);
  for (std::size_t i = 0; i < k; ++i) {
    L.form_monos.push_back(monomials_of_degree(k, degrees[i]));
    MonomialIndex fi;
    for (std::uint32_t j = 0; j < L.form_monos[i].size(); ++j) fi.emplace(L.form_monos[i][j], j);
    L.form_index.push_back(std::move(fi));
  }
  for (const auto& alpha : L.monos) {
    std::size_t form = k;
    int divisible = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (alpha[i] >= degrees[i]) {
        if (form == k) form = i;
        ++divisible;
      }
    }
    // D exceeds sum(d_i - 1), so some x_i^d_i always divides alpha.
    const Monomial shift = alpha / Monomial::unit(form, degrees[form]);
    std::vector<Layout::Entry> row;
    for (std::uint32_t j = 0; j < L.form_monos[form].size(); ++j) {
      row.push_back({index.at(shift * L.form_monos[form][j]), j});
    }
    if (divisible >= 2) L.nonreduced.push_back(std::uint32_t(L.row_form.size()));
    L.row_form.push_back(std::uint32_t(form));
    L.rows.push_back(std::move(row));
  }
  return L;
}

// Coefficient of each dense slot of each form, as a polynomial in the
// parameters (same ring as the forms).
std::vector<std::vector<Polynomial>> slot_forms(const Layout& L, std::span<const Polynomial> forms) {
  std::vector<std::vector<Polynomial>> out;
  for (std::size_t i = 0; i < L.k; ++i) {
    const Polynomial& f = forms[i];
    std::vector<std::vector<Term>> buckets(L.form_monos[i].size());
    for (const auto& t : f.terms()) {
      Monomial x, rest = t.monomial;
      for (std::size_t v = 0; v < L.k; ++v) {
        x.set(v, t.monomial[v]);
        rest.set(v, 0);
      }
      buckets[L.form_index[i].at(x)].push_back(Term{rest, t.coeff});
    }
    std::vector<Polynomial> slots;
    for (auto& b : buckets) slots.push_back(Polynomial::from_terms(f.num_vars(), f.field(), std::move(b)));
    out.push_back(std::move(slots));
  }
  return out;
}

template <typename T>
void fill_matrix(const Layout& L, const std::vector<std::vector<T>>& slots, const T& zero, std::vector<T>& m,
                 std::vector<T>& reduced) {
  const std::size_t n = L.size();
  m.assign(n * n, zero);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& vals = slots[L.row_form[r]];
    for (const auto& e : L.rows[r]) m[r * n + e.col] = vals[e.slot];
  }
  const std::size_t nr = L.nonreduced.size();
  reduced.assign(nr * nr, zero);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nr; ++j) reduced[i * nr + j] = m[L.nonreduced[i] * n + L.nonreduced[j]];
  }
}

Scalar scalar_det(const std::vector<std::vector<Scalar>>& a) {
  const std::size_t k = a.size();
  const Field field = a[0][0].field();
  auto b = a;
  Scalar det = Scalar::one(field);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (piv < k && b[piv][c].is_zero()) ++piv;
    if (piv == k) return Scalar::zero(field);
    std::swap(b[piv], b[c]);
    if (piv != c) det = -det;
    det *= b[c][c];
    for (std::size_t i = c + 1; i < k; ++i) {
      Scalar f = b[i][c] / b[c][c];
      for (std::size_t j = c; j < k; ++j) b[i][j] -= f * b[c][j];
    }
  }
  return det;
}

// Random invertible change of the eliminated coordinates.
std::vector<std::vector<Scalar>> coordinate_change(std::size_t k, const Field& field, std::uint64_t seed, int attempt) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + std::uint64_t(attempt) + 17);
  for (;;) {
    std::vector<std::vector<Scalar>> a(k, std::vector<Scalar>(k, Scalar::zero(field)));
    for (auto& row : a) {
      for (auto& x : row) {
        x = field.is_prime_field() ? Scalar::from_residue(field, rng() % field.characteristic())
                                   : Scalar(field, long(rng() % 7) - 3);
      }
    }
    if (!scalar_det(a).is_zero()) return a;
  }
}

std::vector<Polynomial> apply_change(std::span<const Polynomial> forms, std::size_t k,
                                     const std::vector<std::vector<Scalar>>& a) {
  const Polynomial& any = forms[0];
  std::vector<Polynomial> images;
  for (std::size_t v = 0; v < any.num_vars(); ++v) {
    if (v >= k) {
      images.push_back(Polynomial::variable(any.num_vars(), any.field(), v));
      continue;
    }
    Polynomial img(any.num_vars(), any.field());
    for (std::size_t j = 0; j < k; ++j) img += Polynomial::monomial(any.num_vars(), a[v][j], Monomial::unit(j));
    images.push_back(std::move(img));
  }
  std::vector<Polynomial> out;
  for (const auto& f : forms) out.push_back(substitute(f, images));
  return out;
}

// Exact determinant over QQ by fraction-free elimination on integers.
Scalar rational_det(std::vector<Scalar> a, std::size_t n) {
  const Field QQ = Field::rationals();
  if (n == 0) return Scalar::one(QQ);
  std::vector<BigInt> m(n * n);
  BigInt scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& q = a[i * n + j].rational();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    }
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& q = a[i * n + j].rational();
      m[i * n + j] = q.get_num() * (l / q.get_den());
    }
    scale *= l;
  }
  bool negate = false;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv * n + k] == 0) ++piv;
      if (piv == n) return Scalar::zero(QQ);
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt v = m[k * n + k] * m[i * n + j] - m[i * n + k] * m[k * n + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i * n + j] = std::move(v);
      }
    }
    prev = m[k * n + k];
  }
  Rational det(negate ? BigInt(-m[n * n - 1]) : m[n * n - 1], scale);
  det.canonicalize();
  return Scalar(QQ, det);
}

Scalar field_det(std::vector<Scalar> a, std::size_t n, const Field& field) {
  if (n == 0) return Scalar::one(field);
  if (field.is_rationals()) return rational_det(std::move(a), n);
  const std::uint64_t p = field.characteristic();
  std::vector<std::uint64_t> m(n * n);
  for (std::size_t i = 0; i < n * n; ++i) m[i] = a[i].residue();
  return Scalar::from_residue(field, detail::det_mod(m, n, p));
}

// det M / det M' for coefficient forms without parameters; nullopt if M' is singular.
std::optional<Scalar> scalar_ratio(const Layout& L, std::span<const Polynomial> forms) {
  const Field field = forms[0].field();
  auto poly_slots = slot_forms(L, forms);
  std::vector<std::vector<Scalar>> slots;
  for (const auto& fs : poly_slots) {
    std::vector<Scalar> v;
    for (const auto& s : fs) v.push_back(s.constant_value());
    slots.push_back(std::move(v));
  }
  std::vector<Scalar> m, reduced;
  fill_matrix(L, slots, Scalar::zero(field), m, reduced);
  Scalar den = field_det(std::move(reduced), L.nonreduced.size(), field);
  if (den.is_zero()) return std::nullopt;
  return field_det(std::move(m), L.size(), field) / den;
}

std::optional<Polynomial> polynomial_ratio(const Layout& L, std::span<const Polynomial> forms) {
  const Polynomial zero(forms[0].num_vars(), forms[0].field());
  auto slots = slot_forms(L, forms);
  std::vector<Polynomial> m, reduced;
  fill_matrix(L, slots, zero, m, reduced);
  const std::size_t nr = L.nonreduced.size();
  Polynomial den = nr ? determinant(PolyMatrix(nr, nr, std::move(reduced)))
                      : Polynomial::constant(zero.num_vars(), Scalar::one(zero.field()));
  if (den.is_zero()) return std::nullopt;
  Polynomial num = determinant(PolyMatrix(L.size(), L.size(), std::move(m)));
  auto q = divide_exact(num, den);
  if (!q) throw Error(ErrorCode::kDegeneracy, "reduced Macaulay minor does not divide the full determinant");
  return q;
}

[[noreturn]] void throw_singular_minor(const Layout& L) {
  throw DegeneracyError("reduced-minor-singular",
                        "reduced Macaulay minor M' (" + std::to_string(L.nonreduced.size()) + "x" +
                            std::to_string(L.nonreduced.size()) + " of the " + std::to_string(L.size()) + "x" +
                            std::to_string(L.size()) + " matrix) is singular");
}

// Direct ratio with optional coordinate-change retries. Works for scalar and
// polynomial coefficients.
ResultantResult ratio_with_fallback(const MacaulaySystem& sys, const Layout& L, bool allow_fallback,
                                    std::uint64_t seed) {
  const auto& forms = sys.forms();
  const Field field = forms[0].field();
  const bool params = sys.has_parameters();
  auto attempt = [&](std::span<const Polynomial> fs) -> std::optional<Polynomial> {
    if (params) return polynomial_ratio(L, fs);
    auto s = scalar_ratio(L, fs);
    if (!s) return std::nullopt;
    return Polynomial::constant(fs[0].num_vars(), *s);
  };
  ResultantResult result;
  result.mode_used = allow_fallback ? ResultantMode::kCoordinateChange : ResultantMode::kDirectRatio;
  if (auto r = attempt(forms)) {
    result.value = std::move(*r);
    return result;
  }
  if (!allow_fallback) throw_singular_minor(L);
  for (int t = 0; t < kMaxCoordinateChanges; ++t) {
    auto a = coordinate_change(L.k, field, seed, t);
    auto changed = apply_change(forms, L.k, a);
    ++result.coordinate_changes;
    if (auto r = attempt(changed)) {
      Scalar scale = scalar_det(a).pow(long(sys.degree_product()));
      result.value = *r * scale.inverse();
      return result;
    }
  }
  throw DegeneracyError("reduced-minor-singular",
                        "reduced Macaulay minor stayed singular after " + std::to_string(kMaxCoordinateChanges) +
                            " coordinate changes");
}

// ---------------------------------------------------------------------------
// Modular evaluation / interpolation

struct SlotTerm {
  std::uint64_t coeff;
  Monomial params;
};

class ModularEvaluator {
 public:
  ModularEvaluator(const Layout& L, const std::vector<std::vector<Polynomial>>& slots, std::uint64_t p,
                   std::uint64_t seed)
      : L_(L), p_(p), seed_(seed) {
    ok_ = true;
    for (const auto& fs : slots) {
      std::vector<std::vector<SlotTerm>> form;
      for (const auto& s : fs) {
        std::vector<SlotTerm> terms;
        for (const auto& t : s.terms()) {
          std::uint64_t c;
          if (s.field().is_prime_field()) {
            c = t.coeff.residue();
          } else {
            auto r = reduce_rational(t.coeff.rational(), p);
            if (!r) {
              ok_ = false;
              return;
            }
            c = *r;
          }
          if (c) terms.push_back({c, t.monomial});
        }
        form.push_back(std::move(terms));
      }
      slots_.push_back(std::move(form));
    }
  }

  bool ok() const { return ok_; }
  std::uint64_t prime() const { return p_; }

  /// value[v] is the residue assigned to ring variable v (only parameters are read).
  /// nullopt when the reduced minor stays singular under every coordinate change.
  std::optional<std::uint64_t> evaluate(const std::vector<std::uint64_t>& value, unsigned* changes = nullptr) const {
    std::vector<std::vector<std::uint64_t>> coeffs;
    for (const auto& form : slots_) {
      std::vector<std::uint64_t> c;
      c.reserve(form.size());
      for (const auto& slot : form) {
        std::uint64_t acc = 0;
        for (const auto& t : slot) {
          std::uint64_t term = t.coeff;
          for (std::size_t v = L_.k; v < kMaxVariables; ++v) {
            if (t.params[v]) term = mul_mod(term, pow_mod(value[v], t.params[v], p_), p_);
          }
          acc = add_mod(acc, term, p_);
        }
        c.push_back(acc);
      }
      coeffs.push_back(std::move(c));
    }
    if (auto r = ratio(coeffs)) return r;
    for (int t = 0; t < kMaxCoordinateChanges; ++t) {
      if (changes) ++*changes;
      if (auto r = changed_ratio(coeffs, t)) return r;
    }
    return std::nullopt;
  }

 private:
  std::optional<std::uint64_t> ratio(const std::vector<std::vector<std::uint64_t>>& coeffs) const {
    std::vector<std::uint64_t> m, reduced;
    fill_matrix(L_, coeffs, std::uint64_t(0), m, reduced);
    const std::size_t nr = L_.nonreduced.size();
    std::uint64_t den = nr ? detail::det_mod(reduced, nr, p_) : 1;
    if (den == 0) return std::nullopt;
    std::uint64_t num = detail::det_mod(m, L_.size(), p_);
    return mul_mod(num, inv_mod(den, p_), p_);
  }

  std::optional<std::uint64_t> changed_ratio(const std::vector<std::vector<std::uint64_t>>& coeffs,
                                             int attempt) const {
    const Field f = Field::prime(p_);
    std::vector<Polynomial> forms;
    for (std::size_t i = 0; i < L_.k; ++i) {
      std::vector<Term> terms;
      for (std::size_t j = 0; j < coeffs[i].size(); ++j) {
        if (coeffs[i][j]) terms.push_back(Term{L_.form_monos[i][j], Scalar::from_residue(f, coeffs[i][j])});
      }
      forms.push_back(Polynomial::from_terms(L_.k, f, std::move(terms)));
    }
    auto a = coordinate_change(L_.k, f, seed_, attempt);
    auto changed = apply_change(forms, L_.k, a);
    std::vector<std::vector<std::uint64_t>> cc;
    for (std::size_t i = 0; i < L_.k; ++i) {
      std::vector<std::uint64_t> c(L_.form_monos[i].size(), 0);
      for (const auto& t : changed[i].terms()) c[L_.form_index[i].at(t.monomial)] = t.coeff.residue();
      cc.push_back(std::move(c));
    }
    auto r = ratio(cc);
    if (!r) return std::nullopt;
    std::uint64_t det = scalar_det(a).residue();
    std::uint64_t scale = 1;
    std::uint64_t prod = 1;
    for (unsigned d : L_.degrees) prod *= d;
    scale = pow_mod(det, prod, p_);
    return mul_mod(*r, inv_mod(scale, p_), p_);
  }

  const Layout& L_;
  std::uint64_t p_;
  std::uint64_t seed_;
  bool ok_ = false;
  std::vector<std::vector<std::vector<SlotTerm>>> slots_;
};

struct GridPlan {
  std::vector<std::size_t> params;       // all parameter variables
  std::vector<std::size_t> axes;         // grid variables
  std::vector<std::size_t> dims;         // bound + 1 per axis
  struct Dehomogenized {
    std::size_t var;
    std::vector<std::size_t> group;      // other group variables on the grid
    unsigned degree;
  };
  std::vector<Dehomogenized> dehomogenized;
  std::size_t points = 1;
};

GridPlan plan_grid(const MacaulaySystem& sys, const ResultantStrategy& strategy) {
  const auto& forms = sys.forms();
  const std::size_t k = sys.num_eliminated();
  const std::size_t nvars = forms[0].num_vars();
  const std::uint64_t prod = sys.degree_product();
  GridPlan plan;
  std::vector<std::uint64_t> bound(nvars, 0);
  for (std::size_t v = k; v < nvars; ++v) {
    bool used = false;
    for (std::size_t i = 0; i < k; ++i) {
      int dv = forms[i].degree_in(v);
      if (dv > 0) {
        used = true;
        bound[v] += std::uint64_t(dv) * (prod / sys.degrees()[i]);
      }
    }
    if (used) plan.params.push_back(v);
  }

  std::vector<bool> dropped(nvars, false);
  if (strategy.exploit_homogeneity) {
    std::vector<std::vector<std::size_t>> groups = strategy.homogeneous_groups;
    if (groups.empty()) groups.push_back(plan.params);
    for (auto group : groups) {
      std::erase_if(group, [&](std::size_t v) {
        return v < k || v >= nvars || std::find(plan.params.begin(), plan.params.end(), v) == plan.params.end() ||
               dropped[v];
      });
      if (group.size() < 1) continue;
      std::uint64_t degree = 0;
      bool homogeneous = true;
      for (std::size_t i = 0; i < k && homogeneous; ++i) {
        std::optional<unsigned> e;
        for (const auto& t : forms[i].terms()) {
          unsigned g = t.monomial.degree_in(group);
          if (e && *e != g) {
            homogeneous = false;
            break;
          }
          e = g;
        }
        degree += std::uint64_t(*e) * (prod / sys.degrees()[i]);
      }
      if (!homogeneous || degree == 0) continue;
      GridPlan::Dehomogenized dh;
      dh.var = group.front();
      dh.group.assign(group.begin() + 1, group.end());
      dh.degree = unsigned(degree);
      dropped[dh.var] = true;
      for (std::size_t v : group) bound[v] = std::min<std::uint64_t>(bound[v], degree);
      plan.dehomogenized.push_back(std::move(dh));
    }
  }
  for (std::size_t v : plan.params) {
    if (dropped[v]) continue;
    plan.axes.push_back(v);
    plan.dims.push_back(std::size_t(bound[v]) + 1);
    if (plan.points > kMaxGridPoints / plan.dims.back()) {
      throw Unsupported("parametric resultant needs more than " + std::to_string(kMaxGridPoints) +
                        " evaluation points");
    }
    plan.points *= plan.dims.back();
  }
  return plan;
}

std::vector<std::vector<std::uint64_t>> grid_nodes(const GridPlan& plan, std::uint64_t seed) {
  std::vector<std::vector<std::uint64_t>> nodes;
  for (std::size_t a = 0; a < plan.axes.size(); ++a) {
    std::uint64_t base = 2 + (seed * 7919 + a * 104729) % 1000;
    std::vector<std::uint64_t> z(plan.dims[a]);
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = base + j;
    nodes.push_back(std::move(z));
  }
  return nodes;
}

// Residues of the interpolated coefficients, keyed by grid index.
std::map<std::size_t, std::uint64_t> interpolate_mod(const GridPlan& plan, const ModularEvaluator& ev,
                                                     const std::vector<std::vector<std::uint64_t>>& nodes,
                                                     unsigned& changes) {
  const std::uint64_t p = ev.prime();
  std::vector<std::uint64_t> values(plan.points);
  std::mutex mutex;
  parallel_for(plan.points, [&](std::size_t idx) {
    std::vector<std::uint64_t> point(kMaxVariables, 0);
    for (const auto& dh : plan.dehomogenized) point[dh.var] = 1;
    std::size_t rem = idx;
    for (std::size_t a = plan.axes.size(); a-- > 0;) {
      point[plan.axes[a]] = nodes[a][rem % plan.dims[a]] % p;
      rem /= plan.dims[a];
    }
    unsigned local = 0;
    auto v = ev.evaluate(point, &local);
    if (!v) {
      throw DegeneracyError("reduced-minor-singular",
                            "reduced Macaulay minor singular at an evaluation point after coordinate changes");
    }
    values[idx] = *v;
    if (local) {
      std::lock_guard lock(mutex);
      changes += local;
    }
  });
  detail::grid_to_coefficients(values, plan.dims, nodes, p);
  std::map<std::size_t, std::uint64_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i]) out.emplace(i, values[i]);
  }
  return out;
}

// Monomial of the result for a grid index, restoring dehomogenized variables.
Monomial index_monomial(const GridPlan& plan, std::size_t idx) {
  Monomial m;
  for (std::size_t a = plan.axes.size(); a-- > 0;) {
    m.set(plan.axes[a], unsigned(idx % plan.dims[a]));
    idx /= plan.dims[a];
  }
  for (const auto& dh : plan.dehomogenized) {
    int rest = int(dh.degree);
    for (std::size_t v : dh.group) rest -= int(m[v]);
    if (rest < 0) {
      throw InterpolationError(InterpolationError::Reason::kInconsistent,
                               "interpolated resultant violates the homogeneity degree of a parameter group");
    }
    m.set(dh.var, unsigned(rest));
  }
  return m;
}

std::uint64_t eval_candidate_mod(const Polynomial& c, const std::vector<std::uint64_t>& point, std::uint64_t p,
                                 bool& ok) {
  std::uint64_t acc = 0;
  for (const auto& t : c.terms()) {
    auto r = reduce_rational(t.coeff.rational(), p);
    if (!r) {
      ok = false;
      return 0;
    }
    std::uint64_t term = *r;
    for (std::size_t v = 0; v < c.num_vars(); ++v) {
      if (t.monomial[v]) term = mul_mod(term, pow_mod(point[v], t.monomial[v], p), p);
    }
    acc = add_mod(acc, term, p);
  }
  return acc;
}

ResultantResult modular_resultant(const MacaulaySystem& sys, const Layout& L, const ResultantStrategy& strategy) {
  const auto& forms = sys.forms();
  const Field field = forms[0].field();
  const std::size_t nvars = forms[0].num_vars();
  const GridPlan plan = plan_grid(sys, strategy);
  const auto nodes = grid_nodes(plan, strategy.seed);
  const auto slots = slot_forms(L, forms);

  ResultantResult result;
  result.mode_used = ResultantMode::kModularInterpolation;
  result.grid_points = plan.points;

  if (field.is_prime_field()) {
    const std::uint64_t p = field.characteristic();
    for (std::size_t a = 0; a < plan.axes.size(); ++a) {
      if (plan.dims[a] + 1002 >= p) throw Unsupported("prime field too small for modular interpolation");
    }
    ModularEvaluator ev(L, slots, p, strategy.seed);
    auto coeffs = interpolate_mod(plan, ev, nodes, result.coordinate_changes);
    std::vector<Term> terms;
    for (const auto& [idx, c] : coeffs) terms.push_back(Term{index_monomial(plan, idx), Scalar::from_residue(field, c)});
    result.value = Polynomial::from_terms(nvars, field, std::move(terms));
    result.primes_used = 1;
    return result;
  }

  std::map<std::size_t, BigInt> acc;
  BigInt modulus = 1;
  std::size_t prime_index = 0;
  std::mt19937_64 rng(strategy.seed ^ 0xC0FFEE);
  for (std::size_t used = 0; used < kMaxPrimes; ++prime_index) {
    const std::uint64_t p = modular_prime(prime_index);
    ModularEvaluator ev(L, slots, p, strategy.seed);
    if (!ev.ok()) continue;
    auto coeffs = interpolate_mod(plan, ev, nodes, result.coordinate_changes);
    ++used;
    result.primes_used = used;
    // Incremental CRT over the union of supports.
    const BigInt P(std::to_string(p));
    BigInt inv;
    BigInt mod_p = modulus % P;
    mpz_invert(inv.get_mpz_t(), mod_p.get_mpz_t(), P.get_mpz_t());
    for (const auto& [idx, c] : coeffs) acc.try_emplace(idx, 0);
    for (auto& [idx, x] : acc) {
      auto it = coeffs.find(idx);
      BigInt r = it == coeffs.end() ? BigInt(0) : BigInt(std::to_string(it->second));
      BigInt diff = (r - x) % P;
      if (diff < 0) diff += P;
      x += modulus * (diff * inv % P);
    }
    modulus *= P;

    std::vector<Term> terms;
    bool reconstructed = true;
    for (const auto& [idx, x] : acc) {
      if (x == 0) continue;
      auto q = rational_reconstruct(x, modulus);
      if (!q) {
        reconstructed = false;
        break;
      }
      terms.push_back(Term{index_monomial(plan, idx), Scalar(field, *q)});
    }
    if (!reconstructed) continue;
    Polynomial candidate = Polynomial::from_terms(nvars, field, std::move(terms));

    // Check against direct evaluation modulo a prime not used so far.
    std::uint64_t q = modular_prime(prime_index + 1);
    ModularEvaluator check(L, slots, q, strategy.seed + 1);
    bool ok = check.ok();
    for (int trial = 0; trial < 2 && ok; ++trial) {
      std::vector<std::uint64_t> point(kMaxVariables, 0);
      for (std::size_t v : plan.params) point[v] = rng() % q;
      auto direct = check.evaluate(point);
      if (!direct) continue;
      ok = eval_candidate_mod(candidate, point, q, ok) == *direct && ok;
    }
    if (ok) {
      result.value = std::move(candidate);
      return result;
    }
  }
  throw DegeneracyError("crt-no-convergence", "modular resultant did not stabilize after " +
                                                  std::to_string(kMaxPrimes) + " primes");
}

std::vector<std::size_t> first_vars(std::size_t k) {
  std::vector<std::size_t> xs(k);
  for (std::size_t i = 0; i < k; ++i) xs[i] = i;
  return xs;
}

}  // namespace

// ---------------------------------------------------------------------------

ResultantResult macaulay_resultant(const MacaulaySystem& system, const ResultantStrategy& strategy) {
  const Layout L = make_layout(system.num_eliminated(), system.degrees());
  const Field field = system.forms()[0].field();
  const bool small_prime = field.is_prime_field() && field.characteristic() < kSmallPrimeLimit;
  switch (strategy.mode) {
    case ResultantMode::kDirectRatio:
      return ratio_with_fallback(system, L, false, strategy.seed);
    case ResultantMode::kCoordinateChange:
      return ratio_with_fallback(system, L, true, strategy.seed);
    case ResultantMode::kModularInterpolation:
      if (small_prime && system.has_parameters()) {
        throw Unsupported("modular interpolation needs QQ or a prime field of at least 2^20 elements");
      }
      return modular_resultant(system, L, strategy);
    case ResultantMode::kAuto:
      break;
  }
  if (!system.has_parameters() || small_prime) return ratio_with_fallback(system, L, true, strategy.seed);
  return modular_resultant(system, L, strategy);
}

ResultantResult map_resultant(std::span<const Polynomial> forms, const ResultantStrategy& strategy) {
  return macaulay_resultant(MacaulaySystem(std::vector<Polynomial>(forms.begin(), forms.end())), strategy);
}

namespace {

// Coefficients c_0..c_a of x0^(a-i) x1^i, as polynomials in the parameters.
std::vector<Polynomial> binary_coefficients(const Polynomial& p, unsigned a) {
  std::vector<std::vector<Term>> buckets(a + 1);
  for (const auto& t : p.terms()) {
    Monomial rest = t.monomial;
    unsigned i = t.monomial[1];
    rest.set(0, 0);
    rest.set(1, 0);
    buckets[i].push_back(Term{rest, t.coeff});
  }
  std::vector<Polynomial> out;
  for (auto& b : buckets) out.push_back(Polynomial::from_terms(p.num_vars(), p.field(), std::move(b)));
  return out;
}

unsigned binary_degree(const Polynomial& p, const char* which) {
  if (p.num_vars() < 2) throw InvalidInput(std::string("sylvester_resultant: ") + which + " is not a binary form");
  if (p.is_zero()) throw InvalidInput(std::string("sylvester_resultant: ") + which + " is zero");
  if (!p.is_homogeneous_in(2)) {
    throw InvalidInput(std::string("sylvester_resultant: ") + which + " is not homogeneous in x0, x1: " + to_string(p));
  }
  return unsigned(p.degree_in(first_vars(2)));
}

}  // namespace

Polynomial sylvester_resultant(const Polynomial& p, const Polynomial& q) {
  p.check_same_ring(q);
  const unsigned a = binary_degree(p, "first form");
  const unsigned b = binary_degree(q, "second form");
  const std::size_t n = a + b;
  if (n == 0) return Polynomial::constant(p.num_vars(), Scalar::one(p.field()));
  auto pc = binary_coefficients(p, a);
  auto qc = binary_coefficients(q, b);
  PolyMatrix m(n, n, Polynomial(p.num_vars(), p.field()));
  for (std::size_t r = 0; r < b; ++r) {
    for (std::size_t i = 0; i <= a; ++i) m(r, r + i) = pc[i];
  }
  for (std::size_t r = 0; r < a; ++r) {
    for (std::size_t i = 0; i <= b; ++i) m(b + r, r + i) = qc[i];
  }
  return determinant(m);
}

Polynomial discriminant_binary(const Polynomial& phi) {
  const unsigned m = binary_degree(phi, "form");
  if (m < 2) throw InvalidInput("discriminant needs a binary form of degree >= 2");
  Polynomial d0 = partial_derivative(phi, 0);
  Polynomial d1 = partial_derivative(phi, 1);
  if (d0.is_zero() || d1.is_zero()) return Polynomial(phi.num_vars(), phi.field());
  Polynomial r = sylvester_resultant(d0, d1);
  Scalar mm(phi.field(), long(m));
  if (mm.is_zero()) throw InvalidInput("discriminant: degree divisible by the characteristic");
  Scalar factor = mm.pow(-(long(m) - 2));
  if ((m * (m - 1) / 2) % 2) factor = -factor;
  return r * factor;
}

ResultantResult gradient_resultant(const Polynomial& p, std::size_t num_form_vars, const ResultantStrategy& strategy) {
  if (num_form_vars == 0 || num_form_vars > p.num_vars()) throw InvalidInput("gradient_resultant: bad variable count");
  if (!p.is_homogeneous_in(num_form_vars)) throw InvalidInput("gradient_resultant: form is not homogeneous");
  if (p.degree_in(first_vars(num_form_vars)) < 2) {
    throw InvalidInput("gradient_resultant: partial derivatives must have degree >= 1");
  }
  std::vector<Polynomial> grad;
  for (std::size_t v = 0; v < num_form_vars; ++v) grad.push_back(partial_derivative(p, v));
  for (const auto& g : grad) {
    if (g.is_zero()) {
      ResultantResult r;
      r.value = Polynomial(p.num_vars(), p.field());
      r.mode_used = strategy.mode;
      return r;
    }
  }
  return macaulay_resultant(MacaulaySystem(std::move(grad)), strategy);
}

}  // namespace projdyn
