#pragma once

// Dense univariate polynomials over F_p with word-size p. Internal helper for
// gcd filtering and root finding.

#include <cstdint>
#include <vector>

namespace projdyn::detail {

/// Coefficients lowest degree first; no trailing zeros (zero is empty).
struct UPoly {
  std::vector<std::uint64_t> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  std::uint64_t lead() const { return c.back(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
};

UPoly upoly_sub(const UPoly& a, const UPoly& b, std::uint64_t p);
UPoly upoly_mul(const UPoly& a, const UPoly& b, std::uint64_t p);
/// a = q*b + r; b nonzero.
void upoly_divmod(const UPoly& a, const UPoly& b, std::uint64_t p, UPoly& q, UPoly& r);
UPoly upoly_mod(const UPoly& a, const UPoly& b, std::uint64_t p);
/// Monic gcd; gcd(0, 0) = 0.
UPoly upoly_gcd(UPoly a, UPoly b, std::uint64_t p);
UPoly upoly_monic(const UPoly& a, std::uint64_t p);
UPoly upoly_derivative(const UPoly& a, std::uint64_t p);
/// base^e mod m.
UPoly upoly_powmod(const UPoly& base, std::uint64_t e, const UPoly& m, std::uint64_t p);
std::uint64_t upoly_eval(const UPoly& a, std::uint64_t x, std::uint64_t p);

/// Distinct roots in F_p, ascending. Deterministic for a given seed.
std::vector<std::uint64_t> upoly_roots(const UPoly& a, std::uint64_t p, std::uint64_t seed = 0);

}  // namespace projdyn::detail
