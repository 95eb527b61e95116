#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "projdyn/error.hpp"
#include "projdyn/sympow.hpp"
#include "test_support.hpp"

using namespace projdyn;
using namespace projdyn::testing;

namespace {

const Field QQ = Field::rationals();

Polynomial P(const std::string& text, std::size_t n, Field f = QQ) { return parse_polynomial(text, n, f); }

Endomorphism E(const std::string& text, std::size_t n, Field f = QQ) {
  return Endomorphism(parse_polynomial_list(text, n, f));
}

ProjectivePoint pt(std::initializer_list<long> c, Field f = QQ) { return ProjectivePoint::of(f, c); }

// Coefficients of prod (b x - a y), highest power of x first, by convolution.
std::vector<Scalar> expand_roots(const std::vector<ProjectivePoint>& pts) {
  const Field f = pts.front().field();
  std::vector<Scalar> c{Scalar::one(f)};
  for (const auto& p : pts) {
    const Scalar a = p.coords()[0], b = p.coords()[1];
    std::vector<Scalar> next(c.size() + 1, Scalar::zero(f));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += b * c[i];
      next[i + 1] -= a * c[i];
    }
    c = std::move(next);
  }
  return c;
}

// One scalar lambda with a[i] = lambda * b[i] for every component.
bool proportional_forms(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
  if (a.size() != b.size()) return false;
  std::optional<Scalar> lambda;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() != b[i].is_zero()) return false;
    if (a[i].is_zero()) continue;
    const Term& t = b[i].leading_term();
    const Scalar ratio = a[i].coefficient(t.monomial) / t.coeff;
    if (lambda && *lambda != ratio) return false;
    lambda = ratio;
    if (a[i] != b[i] * Polynomial::constant(b[i].num_vars(), ratio)) return false;
  }
  return lambda.has_value();
}

Endomorphism random_line_map(std::mt19937_64& rng, unsigned d, const Field& f) {
  while (true) {
    std::vector<Polynomial> forms{random_form(rng, 2, 2, d, f, 4), random_form(rng, 2, 2, d, f, 4)};
    if (forms[0].is_zero() || forms[1].is_zero()) continue;
    Endomorphism e(std::move(forms));
    if (e.is_morphism()) return e;
  }
}

ProjectivePoint random_point(std::mt19937_64& rng, const Field& f) {
  // Occasionally the point at infinity.
  if (rng() % 8 == 0) return pt({1, 0}, f);
  const Scalar a = random_scalar(rng, f, 9);
  const Scalar b(f, long(rng() % 4) + 1);
  return ProjectivePoint(std::vector<Scalar>{a, b});
}

}  // namespace

// ---------------------------------------------------------------------------
// SymForm and vieta

TEST(SymForm, Normalization) {
  const SymForm s({Scalar(QQ, -2L), Scalar(QQ, 4L), Scalar(QQ, 6L)});
  EXPECT_EQ(to_string(s), "x0^2-2*x0*x1-3*x1^2");
  const Field F7 = Field::prime(7);
  const SymForm t({Scalar(F7, 0L), Scalar(F7, 3L), Scalar(F7, 1L)});
  EXPECT_TRUE(t.coefficients()[1].is_one());
  EXPECT_THROW(SymForm({Scalar(QQ, 0L), Scalar(QQ, 0L)}), InvalidInput);
}

TEST(SymForm, PolynomialRoundTrip) {
  const Polynomial p = P("3*x0^3-x0*x1^2+5*x1^3", 2);
  const SymForm s = SymForm::from_polynomial(p);
  EXPECT_EQ(s.degree(), 3u);
  EXPECT_EQ(s.polynomial(), p);
  EXPECT_EQ(s.coefficients()[1], Scalar(QQ, 0L));
  EXPECT_THROW(SymForm::from_polynomial(P("x0^2+x1", 2)), InvalidInput);
  EXPECT_THROW(SymForm::from_polynomial(P("x0*x2", 3)), InvalidInput);
}

TEST(Vieta, Examples) {
  EXPECT_EQ(vieta({pt({1, 1}), pt({2, 1})}).polynomial(), P("x0^2-3*x0*x1+2*x1^2", 2));
  // (0:1) gives the factor x, (1:0) the factor -y.
  EXPECT_TRUE(equal_up_to_scalar(vieta({pt({0, 1}), pt({1, 0})}).polynomial(), P("x0*x1", 2)));
  EXPECT_EQ(vieta({pt({1, 2}), pt({1, 2})}).polynomial(), P("4*x0^2-4*x0*x1+x1^2", 2));
}

TEST(Vieta, MatchesExpansionSymmetricAndMultiplicative) {
  std::mt19937_64 rng(11);
  for (const Field f : {QQ, Field::prime(101)}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<ProjectivePoint> a, b;
      for (unsigned i = 0, k = 1 + rng() % 3; i < k; ++i) a.push_back(random_point(rng, f));
      for (unsigned i = 0, k = 1 + rng() % 3; i < k; ++i) b.push_back(random_point(rng, f));
      const SymForm va = vieta(a);
      EXPECT_EQ(va, SymForm(expand_roots(a)));
      auto shuffled = a;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      EXPECT_EQ(vieta(shuffled), va);
      auto joined = a;
      joined.insert(joined.end(), b.begin(), b.end());
      EXPECT_TRUE(equal_up_to_scalar(vieta(joined).polynomial(), va.polynomial() * vieta(b).polynomial()));
    }
  }
}

// ---------------------------------------------------------------------------
// Symmetric powers

TEST(SymmetricPower, SquaringMapElementarySymmetric) {
  // Roots square: e1' = e1^2 - 2 e2 and e2' = e2^2 in the coefficient chart.
  const Endomorphism f = E("[x0^2, x1^2]", 2);
  const Endomorphism big = symmetric_power(f, 2);
  EXPECT_EQ(big.n(), 2u);
  EXPECT_EQ(big.degree(), 2u);
  EXPECT_TRUE(proportional_forms(big.forms(), parse_polynomial_list("[x0^2, 2*x0*x2-x1^2, x2^2]", 3, QQ)))
      << to_string(big);
}

TEST(SymmetricPower, FirstPowerIsTheMap) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const Endomorphism f = random_line_map(rng, 2 + trial % 2, QQ);
    // n = 1: the form b x - a y is the point (b : -a), so F is f conjugated by that swap.
    const Endomorphism big = symmetric_power(f, 1);
    for (int k = 0; k < 5; ++k) {
      const ProjectivePoint p = random_point(rng, QQ);
      EXPECT_EQ(apply(big, vieta({p})), vieta({apply(f, p)}));
    }
  }
}

TEST(SymmetricPower, VietaEquivariance) {
  std::mt19937_64 rng(2024);
  for (int map = 0; map < 5; ++map) {
    const unsigned d = 1 + map % 3;
    const std::size_t n = 1 + (map + 1) % 3;
    const Endomorphism f = random_line_map(rng, d, QQ);
    const Endomorphism big = symmetric_power(f, n);
    EXPECT_EQ(big.degree(), d);
    EXPECT_EQ(big.n(), n);
    for (int tuple = 0; tuple < 50; ++tuple) {
      std::vector<ProjectivePoint> pts, images;
      for (std::size_t i = 0; i < n; ++i) {
        pts.push_back(random_point(rng, QQ));
        images.push_back(apply(f, pts.back()));
      }
      const auto lhs = eval_map(big.forms(), expand_roots(pts));
      ASSERT_FALSE(all_zero(lhs));
      EXPECT_TRUE(proportional(lhs, expand_roots(images))) << to_string(f) << " n=" << n;
    }
  }
}

TEST(SymmetricPower, OverPrimeField) {
  const Field F = Field::prime(10007);
  std::mt19937_64 rng(5);
  const Endomorphism f = random_line_map(rng, 3, F);
  const Endomorphism big = symmetric_power(f, 3);
  for (int tuple = 0; tuple < 20; ++tuple) {
    std::vector<ProjectivePoint> pts, images;
    for (int i = 0; i < 3; ++i) {
      pts.push_back(random_point(rng, F));
      images.push_back(apply(f, pts.back()));
    }
    EXPECT_TRUE(proportional(eval_map(big.forms(), expand_roots(pts)), expand_roots(images)));
  }
}

TEST(SymmetricPower, RespectsIteration) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 3; ++trial) {
    const Endomorphism f = random_line_map(rng, 2, QQ);
    const Endomorphism lhs = iterate(symmetric_power(f, 2), 2);
    const Endomorphism rhs = symmetric_power(iterate(f, 2), 2);
    EXPECT_TRUE(proportional_forms(lhs.forms(), rhs.forms())) << to_string(f);
  }
}

TEST(SymmetricPower, Errors) {
  EXPECT_THROW(symmetric_power(E("[x0^2, x1^2, x2^2]", 3), 2), InvalidInput);
  EXPECT_THROW(symmetric_power(E("[x0^2, x1^2]", 2), 0), InvalidInput);
  EXPECT_THROW(symmetric_power(E("[x0^2, x2*x1^2]", 3), 2), Error);
}

// ---------------------------------------------------------------------------
// Hyperplanes H_P

TEST(Hyperplane, Examples) {
  EXPECT_EQ(hyperplane_of_point(pt({1, 1}), 2), P("x0+x1+x2", 3));
  EXPECT_EQ(hyperplane_of_point(pt({0, 1}), 2), P("x2", 3));
  EXPECT_EQ(hyperplane_of_point(pt({1, 0}), 2), P("x0", 3));
  EXPECT_TRUE(equal_up_to_scalar(hyperplane_of_point(pt({2, 3}), 3), P("8*x0+12*x1+18*x2+27*x3", 4)));
}

TEST(Hyperplane, ContainsVietaOfTuplesThroughThePoint) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const ProjectivePoint p = random_point(rng, QQ);
    std::vector<ProjectivePoint> pts{p};
    const std::size_t m = 1 + rng() % 4;
    while (pts.size() < m) pts.push_back(random_point(rng, QQ));
    std::shuffle(pts.begin(), pts.end(), rng);
    EXPECT_TRUE(evaluate(hyperplane_of_point(p, m), vieta(pts).coefficients()).is_zero());
  }
}

TEST(Fhp, SquaringMap) {
  const Endomorphism f = E("[x0^2, x1^2]", 2);
  EXPECT_TRUE(check_fhp(f, pt({1, 1}), 2, 50, 1));
  EXPECT_TRUE(check_fhp(f, pt({1, 0}), 3, 50, 2));
}

TEST(Fhp, RandomMaps) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 4; ++trial) {
    const Endomorphism f = random_line_map(rng, 2, QQ);
    EXPECT_TRUE(check_fhp(f, random_point(rng, QQ), 2 + trial % 2, 50, trial));
  }
}

TEST(Fhp, PerturbedMapFails) {
  const Endomorphism f = E("[x0^2-x1^2, 2*x0*x1+x1^2]", 2);
  const Endomorphism big = symmetric_power(f, 2);
  ASSERT_TRUE(check_fhp(big, f, pt({3, 1}), 50, 4));
  auto forms = big.forms();
  forms[1] += Polynomial::monomial(3, Scalar(QQ, 1L), Monomial{0, 0, 2});
  EXPECT_FALSE(check_fhp(Endomorphism(forms), f, pt({3, 1}), 50, 4));
}

// ---------------------------------------------------------------------------
// Critical locus

TEST(Collision, Examples) {
  const Endomorphism f = E("[x0^2, x1^2]", 2);
  EXPECT_TRUE(collision_locus_member(f, {pt({1, 1}), pt({-1, 1})}));
  EXPECT_FALSE(collision_locus_member(f, {pt({1, 1}), pt({2, 1})}));
  EXPECT_FALSE(collision_locus_member(f, {pt({3, 1}), pt({3, 1})}));
  EXPECT_TRUE(collision_locus_member(f, {pt({5, 1}), pt({2, 1}), pt({-2, 1})}));
}

TEST(CriticalLocus, SquaringMapStructure) {
  const auto report = critical_locus_structure_check(E("[x0^2, x1^2]", 2), 2, 50, 7);
  EXPECT_TRUE(report.hyperplanes);
  EXPECT_TRUE(report.collisions);
  EXPECT_TRUE(report.complement);
  EXPECT_TRUE(report.discriminant);
  EXPECT_EQ(report.hyperplane_samples, 50u);
  EXPECT_EQ(report.collision_samples, 50u);
  EXPECT_EQ(report.complement_samples, 50u);
  EXPECT_EQ(report.discriminant_samples, 50u);
}

TEST(CriticalLocus, CollidingPairHasDoubleRootImage) {
  const Endomorphism f = E("[x0^2, x1^2]", 2);
  const Endomorphism big = symmetric_power(f, 2);
  const SymForm image = apply(big, vieta({pt({1, 1}), pt({-1, 1})}));
  EXPECT_EQ(image, vieta({pt({1, 1}), pt({1, 1})}));
  EXPECT_TRUE(discriminant_binary(image.polynomial()).is_zero());
}

TEST(CriticalLocus, OtherMapsAndErrors) {
  // z^3 - 3z has critical points +-1, both rational.
  const auto report = critical_locus_structure_check(E("[x0^3-3*x0*x1^2, x1^3]", 2), 3, 10, 1);
  EXPECT_TRUE(report.all());
  // z/2 + 1/z has its critical points at z^2 = 2.
  EXPECT_THROW(critical_locus_structure_check(E("[x0^2+2*x1^2, x0*x1]", 2), 2, 5, 1), Unsupported);
  EXPECT_THROW(critical_locus_structure_check(E("[x0^2, x1^2]", 2), 1, 5, 1), InvalidInput);
}

// ---------------------------------------------------------------------------
// Admissible periods

TEST(AdmissiblePeriods, Examples) {
  EXPECT_EQ(admissible_periods(1, 2), (std::vector<unsigned>{1, 2}));
  EXPECT_EQ(admissible_periods(2, 2), (std::vector<unsigned>{1, 2, 4}));
  EXPECT_EQ(admissible_periods(3, 3), (std::vector<unsigned>{1, 2, 3, 6, 9}));
  EXPECT_THROW(admissible_periods(0, 1), InvalidInput);
}

TEST(AdmissiblePeriods, MonotoneAndContainsDivisors) {
  for (unsigned s = 1; s <= 12; ++s) {
    for (unsigned n = 1; n <= 5; ++n) {
      const auto a = admissible_periods(s, n);
      const auto b = admissible_periods(s, n + 1);
      EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
      for (unsigned t = 1; t <= s; ++t) {
        if (s % t == 0) EXPECT_TRUE(std::binary_search(a.begin(), a.end(), t));
      }
      for (unsigned t : a) {
        bool ok = false;
        for (unsigned m = 1; m <= n; ++m) ok = ok || (m * s) % t == 0;
        EXPECT_TRUE(ok);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Periodic critical forms

TEST(PeriodicCriticalForm, SquaringMapFixedCritical) {
  const Endomorphism f = E("[x0^2, x1^2]", 2);
  const SymForm phi = periodic_critical_form(f, pt({0, 1}), pt({1, 1}), 1, 1, 2);
  EXPECT_EQ(phi.polynomial(), P("x0^2-x0*x1", 2));
  const Endomorphism big = symmetric_power(f, 2);
  EXPECT_EQ(apply(big, phi), phi);
  EXPECT_TRUE(evaluate(jacobian_determinant(big), phi.coefficients()).is_zero());
}

TEST(PeriodicCriticalForm, InverseSquareMinusOneOverPrimeField) {
  // z^-2 - 1 has the critical 3-cycle 0 -> oo -> -1 -> 0. Its fixed points are the
  // roots of z^3 + z^2 - 1, which has no rational root; use the first prime
  // above 10 where it has one.
  for (std::uint64_t p = 11;; p += 2) {
    if (!is_prime(p)) continue;
    const Field F = Field::prime(p);
    std::optional<Scalar> fixed;
    for (std::uint64_t z = 0; z < p && !fixed; ++z) {
      const Scalar s = Scalar::from_residue(F, z);
      if ((s * s * s + s * s - Scalar::one(F)).is_zero()) fixed = s;
    }
    if (!fixed) continue;
    EXPECT_EQ(p, 11u);
    const Endomorphism f = E("[x1^2-x0^2, x0^2]", 2, F);
    const ProjectivePoint q(std::vector<Scalar>{*fixed, Scalar::one(F)});
    const SymForm phi = periodic_critical_form(f, pt({0, 1}, F), q, 3, 1, 2);
    const Endomorphism big = symmetric_power(f, 2);
    EXPECT_TRUE(evaluate(jacobian_determinant(big), phi.coefficients()).is_zero());
    SymForm image = phi;
    for (int i = 0; i < 3; ++i) image = apply(big, image);
    EXPECT_EQ(image, phi);
    EXPECT_NE(apply(big, phi), phi);
    // m = 2 and n = 3: the cycle is traversed with s = 3 over two points.
    const SymForm psi = periodic_critical_form(f, pt({0, 1}, F), q, 3, 2, 3);
    EXPECT_EQ(psi.degree(), 3u);
    break;
  }
}

TEST(PeriodicCriticalForm, Preconditions) {
  const Endomorphism f = E("[x0^2, x1^2]", 2);
  EXPECT_THROW(periodic_critical_form(f, pt({1, 1}), pt({1, 1}), 1, 1, 2), InvalidInput);  // not critical
  EXPECT_THROW(periodic_critical_form(f, pt({0, 1}), pt({2, 1}), 1, 1, 2), InvalidInput);  // Q not fixed
  EXPECT_THROW(periodic_critical_form(f, pt({0, 1}), pt({1, 1}), 1, 3, 2), InvalidInput);  // m > n
  const Endomorphism g = E("[x1^2-x0^2, x0^2]", 2);
  EXPECT_THROW(periodic_critical_form(g, pt({0, 1}), pt({0, 1}), 2, 1, 2), InvalidInput);  // period 3, not 2
}

// ---------------------------------------------------------------------------
// Period polynomials

TEST(PeriodPolynomial, Examples) {
  EXPECT_EQ(period_polynomial(2, 2).coefficients, (std::vector<BigInt>{0, 1}));
  EXPECT_EQ(period_polynomial(2, 3).coefficients, (std::vector<BigInt>{1, 0, 0, 1}));
  EXPECT_EQ(period_polynomial(2, 4).coefficients, (std::vector<BigInt>{0, 1, 0, 0, 3, 0, 0, 1}));
  EXPECT_EQ(period_polynomial(2, 4).polynomial(), P("x0^7+3*x0^4+x0", 1));
  EXPECT_THROW(period_polynomial(2, 1), InvalidInput);
  EXPECT_THROW(period_polynomial(1, 3), InvalidInput);
}

TEST(PeriodPolynomial, DegreeFormulaAndOrbitOracle) {
  for (unsigned d : {2u, 3u}) {
    for (unsigned s = 2; s <= 5; ++s) {
      const PeriodPolynomial g = period_polynomial(d, s);
      std::size_t expected = 0, pk = 1;
      for (unsigned k = 0; k + 2 <= s; ++k, pk *= d) expected += pk;
      EXPECT_EQ(g.degree(), expected) << d << " " << s;
      EXPECT_GT(g.coefficients.back(), 0);
      // Oracle: iterate z -> z^-d + c on 0 numerically over F_p for c with N(c) != 0.
      const Field F = Field::prime(1000003);
      for (long c = 1; c <= 5; ++c) {
        const Scalar cs(F, c);
        Scalar num = Scalar::zero(F), den = Scalar::one(F);
        for (unsigned k = 0; k < s; ++k) {
          const Scalar nd = num.pow(d);
          const Scalar next = den.pow(d) + cs * nd;
          den = nd;
          num = next;
        }
        EXPECT_TRUE(equal_up_to_scalar(Polynomial::constant(1, num),
                                       Polynomial::constant(1, evaluate(g.polynomial(F), std::vector<Scalar>{cs}))) ||
                    (num.is_zero() && evaluate(g.polynomial(F), std::vector<Scalar>{cs}).is_zero()));
      }
    }
  }
}

TEST(FindPcf, Examples) {
  const auto c2 = find_pcf_parameter(2, 2, QQ);
  ASSERT_TRUE(c2);
  EXPECT_TRUE(c2->is_zero());
  const auto c3 = find_pcf_parameter(2, 3, QQ);
  ASSERT_TRUE(c3);
  EXPECT_EQ(*c3, Scalar(QQ, -1L));
  const OrbitRecord o = orbit(inverse_power_map(2, *c3), pt({0, 1}));
  ASSERT_EQ(o.points.size(), 4u);
  EXPECT_EQ(o.points[1], pt({1, 0}));
  EXPECT_EQ(o.points[2], pt({-1, 1}));
  EXPECT_EQ(o.period, 3u);
  EXPECT_FALSE(find_pcf_parameter(2, 5, QQ));
  EXPECT_THROW(find_pcf_parameter(2, 4, QQ), InvalidInput);
}

TEST(FindPcf, PeriodFiveOverPrimeField) {
  // c^15 + ... has a root mod 11 (found by the search below and frozen).
  std::optional<std::uint64_t> first;
  for (std::uint64_t q = 3; q < 200 && !first; q += 2) {
    if (!is_prime(q)) continue;
    if (find_pcf_parameter(2, 5, Field::prime(q))) first = q;
  }
  ASSERT_TRUE(first);
  const Field F = Field::prime(*first);
  const auto c = find_pcf_parameter(2, 5, F);
  ASSERT_TRUE(c);
  const OrbitRecord o = orbit(inverse_power_map(2, *c), pt({0, 1}, F));
  EXPECT_EQ(o.tail, 0u);
  EXPECT_EQ(o.period, 5u);
}

// ---------------------------------------------------------------------------
// Bicritical map

TEST(Bicritical, QuadraticOverRationals) {
  const Endomorphism f = bicritical_wanderer(2, QQ);
  EXPECT_EQ(f.forms(), parse_polynomial_list("[x0^2-2*x1^2, x0^2]", 2, QQ));
  const OrbitRecord o = orbit(f, pt({0, 1}));
  ASSERT_EQ(o.points.size(), 5u);
  EXPECT_EQ(o.points[1], pt({1, 0}));
  EXPECT_EQ(o.points[2], pt({1, 1}));
  EXPECT_EQ(o.points[3], pt({-1, 1}));
  EXPECT_EQ(o.tail, 3u);
  EXPECT_EQ(o.period, 1u);
  for (unsigned s = 1; s <= 6; ++s) {
    const auto v = has_periodic_critical_point(f, s);
    EXPECT_FALSE(v.value);
    EXPECT_EQ(v.scope, "resultant");
  }
}

TEST(Bicritical, CubicOverF7) {
  const Field F7 = Field::prime(7);
  const Endomorphism f = bicritical_wanderer(3, F7);
  EXPECT_EQ(f.forms(), parse_polynomial_list("[x0^3+x1^3, x0^3]", 2, F7));  // zeta = 2, zeta - 1 = 1
  const OrbitRecord o = orbit(f, pt({0, 1}, F7));
  ASSERT_EQ(o.points.size(), 5u);
  EXPECT_EQ(o.points[3], pt({2, 1}, F7));
  EXPECT_EQ(o.period, 1u);
}

TEST(Bicritical, Errors) {
  EXPECT_THROW(bicritical_wanderer(3, QQ), InvalidInput);
  EXPECT_THROW(bicritical_wanderer(3, Field::prime(11)), InvalidInput);
  EXPECT_THROW(bicritical_wanderer(2, Scalar(QQ, 1L)), InvalidInput);
  EXPECT_THROW(bicritical_wanderer(2, Scalar(QQ, 2L)), InvalidInput);
  EXPECT_NO_THROW(bicritical_wanderer(4, QQ));
}
