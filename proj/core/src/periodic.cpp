#include <algorithm>

#include "binary_zeros.hpp"
#include "projdyn/dynamics.hpp"
#include "projdyn/error.hpp"
#include "projdyn/roots.hpp"

namespace projdyn {

namespace {

void require_no_parameters(const Endomorphism& f, const char* what) {
  if (f.has_parameters()) throw InvalidInput(std::string(what) + " needs a map without parameters");
}

std::uint64_t projective_count(std::uint64_t p, std::size_t n) {
  // 1 + p + ... + p^n, saturating past kMaxScanPoints.
  std::uint64_t total = 0, pk = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    total += pk;
    if (total > kMaxScanPoints) return total;
    pk *= p;
    if (pk > kMaxScanPoints) pk = kMaxScanPoints + 1;
  }
  return total;
}

bool scan_feasible(const Field& field, std::size_t n) {
  return field.is_prime_field() && projective_count(field.characteristic(), n) <= kMaxScanPoints;
}

bool vanishes_at(const Polynomial& p, const ProjectivePoint& pt) {
  std::vector<Scalar> x(p.num_vars(), Scalar::zero(p.field()));
  std::copy(pt.coords().begin(), pt.coords().end(), x.begin());
  return evaluate(p, x).is_zero();
}

bool fixed_by(const Endomorphism& g, const ProjectivePoint& pt) {
  try {
    return apply(g, pt) == pt;
  } catch (const BasePointError&) {
    return false;
  }
}

}  // namespace

namespace detail {

std::vector<ProjectivePoint> binary_zeros(const Polynomial& form) {
  const Field field = form.field();
  std::vector<ProjectivePoint> out;
  const std::pair<std::size_t, Scalar> x1_is_one{1, Scalar::one(field)};
  const Polynomial affine = specialize(form, std::span(&x1_is_one, 1));
  if (!affine.is_zero() && affine.degree() > 0) {
    for (const auto& r : roots_in_field(affine, 0)) out.emplace_back(std::vector<Scalar>{r, Scalar::one(field)});
  }
  if (monomial_content(form)[1] > 0) out.emplace_back(std::vector<Scalar>{Scalar::one(field), Scalar::zero(field)});
  return out;
}

}  // namespace detail

using detail::binary_zeros;

HypersurfaceForm fixed_form(const Endomorphism& f, unsigned s) {
  if (f.n() != 1) throw InvalidInput("fixed_form is defined for maps of P^1");
  const Endomorphism g = iterate(f, s);
  const std::size_t nv = f.num_vars();
  const Polynomial x0 = Polynomial::variable(nv, f.field(), 0);
  const Polynomial x1 = Polynomial::variable(nv, f.field(), 1);
  Polynomial phi = x0 * g.forms()[1] - x1 * g.forms()[0];
  if (phi.is_zero()) throw DegeneracyError("fixed-form-vanishes", "f^" + std::to_string(s) + " is the identity");
  return HypersurfaceForm(phi, 2);
}

std::vector<ProjectivePoint> enumerate_points(const Field& field, std::size_t n) {
  if (!field.is_prime_field()) throw InvalidInput("point enumeration needs a prime field");
  const std::uint64_t p = field.characteristic();
  if (projective_count(p, n) > kMaxScanPoints) {
    throw Unsupported("P^" + std::to_string(n) + "(F_" + std::to_string(p) + ") has more than " +
                      std::to_string(kMaxScanPoints) + " points");
  }
  std::vector<ProjectivePoint> out;
  // The last nonzero coordinate is 1 at position `last`; earlier ones run over F_p.
  for (std::size_t last = n + 1; last-- > 0;) {
    std::vector<std::uint64_t> digits(last, 0);
    while (true) {
      std::vector<Scalar> c(n + 1, Scalar::zero(field));
      for (std::size_t i = 0; i < last; ++i) c[i] = Scalar::from_residue(field, digits[i]);
      c[last] = Scalar::one(field);
      out.emplace_back(std::move(c));
      std::size_t i = last;
      while (i-- > 0) {
        if (++digits[i] < p) break;
        digits[i] = 0;
      }
      if (i == std::size_t(-1)) break;
    }
  }
  return out;
}

PeriodicPoints periodic_points(const Endomorphism& f, unsigned s) {
  require_no_parameters(f, "periodic_points");
  PeriodicPoints out;
  if (scan_feasible(f.field(), f.n())) {
    const Endomorphism g = iterate(f, s);
    for (const auto& pt : enumerate_points(f.field(), f.n())) {
      if (fixed_by(g, pt)) out.points.push_back(pt);
    }
    out.scope = "exhaustive-scan";
    return out;
  }
  if (f.n() != 1) throw Unsupported("periodic points of maps of P^n, n >= 2, are only computed over small prime fields");
  out.points = binary_zeros(fixed_form(f, s).form());
  out.scope = f.field().is_rationals() ? "rational-roots" : "prime-field-roots";
  return out;
}

ScopedVerdict has_periodic_critical_point(const Endomorphism& f, unsigned s) {
  require_no_parameters(f, "has_periodic_critical_point");
  ScopedVerdict out;
  const Polynomial jac = jacobian_determinant(f);
  if (scan_feasible(f.field(), f.n())) {
    out.scope = "exhaustive-scan";
    const Endomorphism g = iterate(f, s);
    for (const auto& pt : enumerate_points(f.field(), f.n())) {
      if (vanishes_at(jac, pt) && fixed_by(g, pt)) {
        out.value = true;
        out.witness = pt;
        break;
      }
    }
    return out;
  }
  if (f.n() != 1) throw Unsupported("periodic critical points for n >= 2 are only decided over small prime fields");
  if (jac.is_zero()) throw DegeneracyError("jacobian-vanishes", "the Jacobian determinant vanishes identically");
  if (jac.degree() == 0) {
    // Degree 1: no critical points.
    out.scope = f.field().is_rationals() ? "resultant" : "prime-field-roots";
    return out;
  }
  const Polynomial phi = fixed_form(f, s).form();
  if (f.field().is_rationals()) {
    out.scope = "resultant";
    out.value = sylvester_resultant(jac, phi).is_zero();
    if (out.value) {
      auto common = binary_zeros(gcd(jac, phi));
      if (!common.empty()) out.witness = common.front();
    }
    return out;
  }
  out.scope = "prime-field-roots";
  auto common = binary_zeros(gcd(jac, phi));
  out.value = !common.empty();
  if (out.value) out.witness = common.front();
  return out;
}

}  // namespace projdyn
