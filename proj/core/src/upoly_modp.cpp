#include "upoly_modp.hpp"

#include <algorithm>
#include <random>

#include "projdyn/coeff.hpp"

namespace projdyn::detail {

UPoly upoly_sub(const UPoly& a, const UPoly& b, std::uint64_t p) {
  UPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = sub_mod(r.c[i], b.c[i], p);
  r.trim();
  return r;
}

UPoly upoly_mul(const UPoly& a, const UPoly& b, std::uint64_t p) {
  UPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = add_mod(r.c[i + j], mul_mod(a.c[i], b.c[j], p), p);
  }
  r.trim();
  return r;
}

void upoly_divmod(const UPoly& a, const UPoly& b, std::uint64_t p, UPoly& q, UPoly& r) {
  r = a;
  q.c.clear();
  if (a.degree() < b.degree()) return;
  q.c.assign(a.c.size() - b.c.size() + 1, 0);
  const std::uint64_t inv = inv_mod(b.lead(), p);
  const int db = b.degree();
  for (int k = r.degree(); k >= db; --k) {
    std::uint64_t coef = mul_mod(r.c[k], inv, p);
    q.c[k - db] = coef;
    if (!coef) continue;
    for (int j = 0; j <= db; ++j) r.c[k - db + j] = sub_mod(r.c[k - db + j], mul_mod(coef, b.c[j], p), p);
  }
  r.trim();
  q.trim();
}

UPoly upoly_mod(const UPoly& a, const UPoly& b, std::uint64_t p) {
  UPoly q, r;
  upoly_divmod(a, b, p, q, r);
  return r;
}

UPoly upoly_monic(const UPoly& a, std::uint64_t p) {
  if (a.is_zero()) return a;
  UPoly r = a;
  const std::uint64_t inv = inv_mod(a.lead(), p);
  for (auto& x : r.c) x = mul_mod(x, inv, p);
  return r;
}

UPoly upoly_gcd(UPoly a, UPoly b, std::uint64_t p) {
  while (!b.is_zero()) {
    UPoly r = upoly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return upoly_monic(a, p);
}

UPoly upoly_derivative(const UPoly& a, std::uint64_t p) {
  UPoly r;
  for (std::size_t i = 1; i < a.c.size(); ++i) r.c.push_back(mul_mod(a.c[i], i % p, p));
  r.trim();
  return r;
}

UPoly upoly_powmod(const UPoly& base, std::uint64_t e, const UPoly& m, std::uint64_t p) {
  UPoly result;
  result.c = {1 % p};
  result = upoly_mod(result, m, p);
  UPoly b = upoly_mod(base, m, p);
  while (e) {
    if (e & 1) result = upoly_mod(upoly_mul(result, b, p), m, p);
    e >>= 1;
    if (e) b = upoly_mod(upoly_mul(b, b, p), m, p);
  }
  return result;
}

std::uint64_t upoly_eval(const UPoly& a, std::uint64_t x, std::uint64_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) v = add_mod(mul_mod(v, x, p), a.c[i], p);
  return v;
}

namespace {

// Splits a monic squarefree product of distinct linear factors.
void split_linear(const UPoly& f, std::uint64_t p, std::mt19937_64& rng, std::vector<std::uint64_t>& out) {
  if (f.degree() <= 0) return;
  if (f.degree() == 1) {
    out.push_back(sub_mod(0, mul_mod(f.c[0], inv_mod(f.c[1], p), p), p));
    return;
  }
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  for (;;) {
    UPoly shift;
    shift.c = {dist(rng), 1};
    UPoly h = upoly_powmod(shift, (p - 1) / 2, f, p);
    UPoly one;
    one.c = {1};
    UPoly g = upoly_gcd(f, upoly_sub(h, one, p), p);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      UPoly q, r;
      upoly_divmod(f, g, p, q, r);
      split_linear(g, p, rng, out);
      split_linear(upoly_monic(q, p), p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::uint64_t> upoly_roots(const UPoly& a, std::uint64_t p, std::uint64_t seed) {
  std::vector<std::uint64_t> out;
  if (a.degree() <= 0) return out;
  UPoly f = upoly_monic(a, p);
  // x^p - x collects the distinct linear factors.
  UPoly x;
  x.c = {0, 1};
  UPoly xp = upoly_powmod(x, p, f, p);
  UPoly g = upoly_gcd(f, upoly_sub(xp, x, p), p);
  if (g.c.size() > 0 && g.c[0] == 0) {
    out.push_back(0);
    UPoly q, r;
    upoly_divmod(g, x, p, q, r);
    g = q;
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  split_linear(g, p, rng, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace projdyn::detail
