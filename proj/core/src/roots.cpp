#include "projdyn/roots.hpp"

#include <algorithm>

#include "projdyn/error.hpp"
#include "upoly_modp.hpp"

namespace projdyn {

namespace {

void check_univariate(const Polynomial& p, std::size_t var) {
  if (p.is_zero()) throw InvalidInput("roots of the zero polynomial");
  for (std::size_t v = 0; v < p.num_vars(); ++v) {
    if (v != var && p.involves(v)) throw InvalidInput("root finding needs a univariate polynomial: " + to_string(p));
  }
}

// Integer coefficients, lowest degree first.
std::vector<BigInt> integer_coefficients(const Polynomial& primitive, std::size_t var) {
  std::vector<BigInt> c(std::size_t(primitive.degree_in(var)) + 1, 0);
  for (const auto& t : primitive.terms()) c[t.monomial[var]] = t.coeff.rational().get_num();
  return c;
}

BigInt eval_mod(const std::vector<BigInt>& c, const BigInt& x, const BigInt& m) {
  BigInt acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = (acc * x + c[i]) % m;
  }
  if (acc < 0) acc += m;
  return acc;
}

Rational eval_exact(const std::vector<BigInt>& c, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

}  // namespace

std::vector<Rational> rational_roots(const Polynomial& p, std::size_t var) {
  check_univariate(p, var);
  if (!p.field().is_rationals()) throw InvalidInput("rational_roots needs a polynomial over QQ");
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  Polynomial q = squarefree_part(p);
  if (monomial_content(q)[var]) {
    roots.push_back(0);
    q = divide_by_monomial(q, Monomial::unit(var));
  }
  if (q.degree() <= 0) return roots;
  const std::vector<BigInt> c = integer_coefficients(normalized(q), var);
  std::vector<BigInt> dc;
  for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * long(i));
  const BigInt bound = abs(c.front()) > abs(c.back()) ? BigInt(abs(c.front())) : BigInt(abs(c.back()));
  const BigInt needed = 2 * bound * bound + 1;

  for (std::size_t index = 0; index < 64; ++index) {
    const std::uint64_t prime = modular_prime(index);
    const BigInt P(std::to_string(prime));
    detail::UPoly u, du;
    for (const auto& x : c) {
      BigInt r = x % P;
      if (r < 0) r += P;
      u.c.push_back(std::stoull(r.get_str()));
    }
    u.trim();
    if (u.degree() != int(c.size()) - 1) continue;
    du = detail::upoly_derivative(u, prime);
    if (detail::upoly_gcd(u, du, prime).degree() > 0) continue;

    for (std::uint64_t r0 : detail::upoly_roots(u, prime)) {
      BigInt r(std::to_string(r0));
      BigInt m = P;
      while (m < needed) {
        m *= m;
        BigInt fr = eval_mod(c, r, m);
        BigInt dfr = eval_mod(dc, r, m);
        BigInt inv;
        mpz_invert(inv.get_mpz_t(), dfr.get_mpz_t(), m.get_mpz_t());
        r = (r - fr * inv) % m;
        if (r < 0) r += m;
      }
      auto candidate = rational_reconstruct(r, m);
      if (candidate && eval_exact(c, *candidate) == 0) roots.push_back(*candidate);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
  }
  throw Error(ErrorCode::kDegeneracy, "no suitable prime found for rational root isolation");
}

std::vector<Scalar> prime_field_roots(const Polynomial& p, std::size_t var) {
  check_univariate(p, var);
  const Field f = p.field();
  if (!f.is_prime_field()) throw InvalidInput("prime_field_roots needs a polynomial over F_p");
  detail::UPoly u;
  u.c.assign(std::size_t(std::max(p.degree_in(var), 0)) + 1, 0);
  for (const auto& t : p.terms()) u.c[t.monomial[var]] = t.coeff.residue();
  u.trim();
  std::vector<Scalar> out;
  for (std::uint64_t r : detail::upoly_roots(u, f.characteristic())) out.push_back(Scalar::from_residue(f, r));
  return out;
}

std::vector<Scalar> roots_in_field(const Polynomial& p, std::size_t var) {
  if (p.field().is_prime_field()) return prime_field_roots(p, var);
  std::vector<Scalar> out;
  for (const auto& r : rational_roots(p, var)) out.push_back(Scalar(p.field(), r));
  return out;
}

}  // namespace projdyn
