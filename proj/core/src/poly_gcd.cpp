#include <algorithm>
#include <random>

#include "projdyn/error.hpp"
#include "projdyn/mpoly.hpp"
#include "upoly_modp.hpp"

namespace projdyn {

namespace {

Polynomial one_like(const Polynomial& p) { return Polynomial::constant(p.num_vars(), Scalar::one(p.field())); }

// Univariate image in `var` with every other variable set to point[i] mod prime.
std::optional<detail::UPoly> univariate_image(const Polynomial& p, std::size_t var,
                                              const std::vector<std::uint64_t>& point, std::uint64_t prime) {
  detail::UPoly out;
  out.c.assign(std::size_t(p.degree_in(var)) + 1, 0);
  for (const auto& t : p.terms()) {
    std::uint64_t c;
    if (p.field().is_prime_field()) {
      c = t.coeff.residue();
    } else {
      auto r = reduce_rational(t.coeff.rational(), prime);
      if (!r) return std::nullopt;
      c = *r;
    }
    for (std::size_t v = 0; v < p.num_vars(); ++v) {
      if (v != var && t.monomial[v]) c = mul_mod(c, pow_mod(point[v], t.monomial[v], prime), prime);
    }
    unsigned e = t.monomial[var];
    out.c[e] = add_mod(out.c[e], c, prime);
  }
  out.trim();
  return out;
}

// True only when a and b are proven coprime by univariate images that keep
// their leading coefficients.
bool provably_coprime(const Polynomial& a, const Polynomial& b) {
  const std::uint64_t prime = a.field().is_prime_field() ? a.field().characteristic() : modular_prime(1);
  std::mt19937_64 rng(0x5eed0001);
  std::uniform_int_distribution<std::uint64_t> dist(1, prime - 1);
  for (std::size_t v = 0; v < a.num_vars(); ++v) {
    if (!a.involves(v) || !b.involves(v)) continue;
    bool proven = false;
    for (int attempt = 0; attempt < 3 && !proven; ++attempt) {
      std::vector<std::uint64_t> point(a.num_vars());
      for (auto& x : point) x = dist(rng);
      auto ia = univariate_image(a, v, point, prime);
      auto ib = univariate_image(b, v, point, prime);
      if (!ia || !ib) return false;
      if (ia->degree() != a.degree_in(v) || ib->degree() != b.degree_in(v)) continue;
      if (detail::upoly_gcd(*ia, *ib, prime).degree() > 0) return false;
      proven = true;
    }
    if (!proven) return false;
  }
  return true;
}

Polynomial leading_coefficient_in(const Polynomial& p, std::size_t var) {
  return coefficients_in(p, var).back();
}

Polynomial gcd_core(const Polynomial& a, const Polynomial& b);

// gcd of the coefficients of p viewed as a polynomial in var.
Polynomial content_in(const Polynomial& p, std::size_t var) {
  auto coeffs = coefficients_in(p, var);
  std::erase_if(coeffs, [](const Polynomial& c) { return c.is_zero(); });
  std::sort(coeffs.begin(), coeffs.end(), [](const Polynomial& x, const Polynomial& y) { return x.size() < y.size(); });
  Polynomial g = normalized(coeffs.front());
  for (std::size_t i = 1; i < coeffs.size() && !g.is_constant(); ++i) g = gcd(g, coeffs[i]);
  return g.is_constant() ? one_like(p) : g;
}

Polynomial primitive_in(const Polynomial& p, std::size_t var) {
  Polynomial c = content_in(p, var);
  if (c.is_constant()) return normalized(p);
  return normalized(*divide_exact(p, c));
}

Polynomial pseudo_remainder(Polynomial r, const Polynomial& b, std::size_t var) {
  const int db = b.degree_in(var);
  const Polynomial lcb = leading_coefficient_in(b, var);
  while (!r.is_zero() && r.degree_in(var) >= db) {
    const int k = r.degree_in(var) - db;
    Polynomial shift = leading_coefficient_in(r, var) *
                       Polynomial::monomial(r.num_vars(), Scalar::one(r.field()), Monomial::unit(var, unsigned(k)));
    r = lcb * r - shift * b;
  }
  return r;
}

Polynomial gcd_core(const Polynomial& a, const Polynomial& b) {
  if (a.is_constant() || b.is_constant()) return one_like(a);
  if (equal_up_to_scalar(a, b)) return normalized(a);
  if (provably_coprime(a, b)) return one_like(a);

  const Polynomial& big = a.degree() >= b.degree() ? a : b;
  const Polynomial& small = a.degree() >= b.degree() ? b : a;
  if (divide_exact(big, small)) return normalized(small);

  // A variable of only one argument cannot occur in the gcd.
  for (std::size_t v = 0; v < a.num_vars(); ++v) {
    if (a.involves(v) && !b.involves(v)) return gcd(content_in(a, v), b);
    if (b.involves(v) && !a.involves(v)) return gcd(a, content_in(b, v));
  }

  std::size_t var = 0;
  std::size_t best = 0;
  for (std::size_t v = 0; v < a.num_vars(); ++v) {
    std::size_t count = 0;
    for (const auto& t : a.terms()) count += t.monomial[v] != 0;
    for (const auto& t : b.terms()) count += t.monomial[v] != 0;
    if (count > best) {
      best = count;
      var = v;
    }
  }

  Polynomial content = gcd(content_in(a, var), content_in(b, var));
  Polynomial x = primitive_in(a, var);
  Polynomial y = primitive_in(b, var);
  if (x.degree_in(var) < y.degree_in(var)) std::swap(x, y);
  Polynomial g;
  for (;;) {
    Polynomial r = pseudo_remainder(x, y, var);
    if (r.is_zero()) {
      g = y;
      break;
    }
    if (r.degree_in(var) == 0) {
      g = one_like(a);
      break;
    }
    x = std::move(y);
    y = primitive_in(r, var);
  }
  return normalized(content * g);
}

Monomial radical(const Monomial& m) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (m[i]) r.set(i, 1);
  }
  return r;
}

}  // namespace

Polynomial gcd(const Polynomial& p, const Polynomial& q) {
  p.check_same_ring(q);
  if (p.is_zero()) return normalized(q);
  if (q.is_zero()) return normalized(p);
  const Monomial mp = monomial_content(p);
  const Monomial mq = monomial_content(q);
  Polynomial core = gcd_core(divide_by_monomial(p, mp), divide_by_monomial(q, mq));
  return normalized(Polynomial::monomial(p.num_vars(), Scalar::one(p.field()), gcd(mp, mq)) * core);
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) throw InvalidInput("squarefree_part of the zero polynomial");
  const Monomial m = monomial_content(p);
  const Polynomial rest = divide_by_monomial(p, m);
  Polynomial g = rest;
  for (std::size_t v = 0; v < p.num_vars() && !g.is_constant(); ++v) {
    if (rest.involves(v)) g = gcd(g, partial_derivative(rest, v));
  }
  Polynomial reduced = g.is_constant() ? rest : *divide_exact(rest, g);
  return normalized(Polynomial::monomial(p.num_vars(), Scalar::one(p.field()), radical(m)) * reduced);
}

}  // namespace projdyn
