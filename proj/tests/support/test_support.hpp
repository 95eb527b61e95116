#pragma once

// Helpers shared by the unit and acceptance tests. The point enumeration and
// map evaluation here are deliberately independent of the library's own
// enumerate_points/apply so they can serve as oracles.

#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "projdyn/mpoly.hpp"

namespace projdyn {

// gtest printers.
inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << to_string(p); }
inline void PrintTo(const Scalar& s, std::ostream* os) { *os << s.to_string(); }

}  // namespace projdyn

namespace projdyn::testing {

inline Scalar random_scalar(std::mt19937_64& rng, const Field& f, long range = 5) {
  if (f.is_prime_field()) return Scalar::from_residue(f, rng() % f.characteristic());
  return Scalar(f, long(rng() % std::uint64_t(2 * range + 1)) - range);
}

/// Dense random form of degree deg in x0..x{k-1}, in a ring of nvars variables.
inline Polynomial random_form(std::mt19937_64& rng, std::size_t k, std::size_t nvars, unsigned deg, const Field& f,
                              long range = 5) {
  std::vector<Term> t;
  for (const auto& m : monomials_of_degree(k, deg)) t.push_back(Term{m, random_scalar(rng, f, range)});
  return Polynomial::from_terms(nvars, f, std::move(t));
}

/// Every point of P^n(F_p) as raw residue vectors, each up to scaling once.
inline std::vector<std::vector<std::uint64_t>> brute_points(std::uint64_t p, std::size_t n) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> x(n + 1, 0);
  // Odometer over F_p^(n+1); keep vectors whose first nonzero entry is 1.
  while (true) {
    std::size_t first = 0;
    while (first <= n && x[first] == 0) ++first;
    if (first <= n && x[first] == 1) out.push_back(x);
    std::size_t i = 0;
    while (i <= n && ++x[i] == p) x[i++] = 0;
    if (i > n) break;
  }
  return out;
}

inline std::vector<Scalar> to_scalars(const std::vector<std::uint64_t>& x, const Field& f, std::size_t nvars) {
  std::vector<Scalar> v(nvars, Scalar::zero(f));
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = Scalar::from_residue(f, x[i]);
  return v;
}

/// Whether a and b are proportional nonzero vectors.
inline bool proportional(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a[i] * b[j] != a[j] * b[i]) return false;
    }
  }
  return true;
}

inline std::vector<Scalar> eval_map(const std::vector<Polynomial>& forms, const std::vector<Scalar>& x) {
  std::vector<Scalar> y;
  for (const auto& f : forms) y.push_back(evaluate(f, x));
  return y;
}

inline bool all_zero(const std::vector<Scalar>& v) {
  for (const auto& s : v) {
    if (!s.is_zero()) return false;
  }
  return true;
}

}  // namespace projdyn::testing
