#include <gtest/gtest.h>

#include <random>

#include "projdyn/error.hpp"
#include "projdyn/resultant.hpp"

using namespace projdyn;

namespace {

const Field QQ = Field::rationals();

Polynomial P(const std::string& text, std::size_t n, Field f = QQ) { return parse_polynomial(text, n, f); }

Polynomial random_form(std::mt19937_64& rng, std::size_t k, std::size_t nvars, unsigned deg, Field f) {
  std::vector<Term> t;
  for (const auto& m : monomials_of_degree(k, deg)) {
    Scalar c = f.is_prime_field() ? Scalar::from_residue(f, rng() % f.characteristic())
                                  : Scalar(f, long(rng() % 11) - 5);
    t.push_back(Term{m, c});
  }
  return Polynomial::from_terms(nvars, f, std::move(t));
}

Scalar res_scalar(const std::vector<Polynomial>& forms, ResultantStrategy s = {}) {
  return macaulay_resultant(MacaulaySystem(forms), s).value.constant_value();
}

// The quadratic family with parameters a, b, c, alpha, beta, gamma in x3..x8.
std::vector<Polynomial> quadratic_family(std::size_t nvars = 9) {
  return {P("x3*x0^2+x6*x1*x2", nvars), P("x4*x1^2+x7*x0*x2", nvars), P("x5*x2^2+x8*x0*x1", nvars)};
}

}  // namespace

TEST(Sylvester, Examples) {
  EXPECT_EQ(sylvester_resultant(P("x0", 2), P("x1", 2)), P("1", 2));
  Polynomial r = sylvester_resultant(P("x2*x0+x3*x1", 6), P("x4*x0+x5*x1", 6));
  EXPECT_EQ(r, P("x2*x5-x3*x4", 6));
  EXPECT_TRUE(sylvester_resultant(P("x0^2-x1^2", 2), P("x0-x1", 2)).is_zero());
  EXPECT_THROW(sylvester_resultant(P("x0^2+x1", 2), P("x0", 2)), InvalidInput);
  EXPECT_THROW(sylvester_resultant(P("x0", 1), P("x0", 1)), InvalidInput);
}

TEST(Macaulay, Normalization) {
  EXPECT_EQ(res_scalar({P("x0^2", 3), P("x1^2", 3), P("x2^2", 3)}), Scalar(QQ, 1L));
  EXPECT_EQ(res_scalar({P("x0^3", 3), P("x1", 3), P("x2^2", 3)}), Scalar(QQ, 1L));
}

TEST(Macaulay, QuadraticFamilyAtSpecialPoints) {
  EXPECT_EQ(res_scalar({P("x^2+y*z", 3), P("y^2+x*z", 3), P("z^2+x*y", 3)}), Scalar(QQ, 8L));
  EXPECT_TRUE(res_scalar({P("x^2+y*z", 3), P("y^2+x*z", 3), P("z^2-x*y", 3)}).is_zero());
}

TEST(Macaulay, QuadraticFamilySymbolic) {
  auto r = macaulay_resultant(MacaulaySystem(quadratic_family()));
  EXPECT_EQ(r.mode_used, ResultantMode::kModularInterpolation);
  EXPECT_EQ(r.value, P("x3*x4*x5*(x3*x4*x5+x6*x7*x8)^3", 9));
}

TEST(Macaulay, PlantedCommonZeroVanishes) {
  const Field f = Field::prime(10007);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Scalar> pt{Scalar::from_residue(f, rng() % 10007), Scalar::from_residue(f, rng() % 10007),
                           Scalar::one(f)};
    std::vector<Polynomial> forms;
    for (int i = 0; i < 3; ++i) {
      Polynomial q = random_form(rng, 3, 3, 2, f);
      // Subtract q(pt) * z^2 to force a zero at pt.
      q -= Polynomial::monomial(3, evaluate(q, pt), Monomial::unit(2, 2));
      forms.push_back(q);
    }
    EXPECT_TRUE(res_scalar(forms).is_zero());
  }
}

TEST(Macaulay, DegenerateMinorIsReported) {
  // Without an x0^2 term in the first form the reduced minor is singular.
  std::vector<Polynomial> forms{P("x0*x1+x2^2", 3), P("x0^2+x1^2+x1*x2", 3), P("x1^2-x0*x2+2*x2^2", 3)};
  ResultantStrategy direct{ResultantMode::kDirectRatio};
  try {
    macaulay_resultant(MacaulaySystem(forms), direct);
    FAIL() << "expected a degeneracy error";
  } catch (const DegeneracyError& e) {
    EXPECT_EQ(e.detail(), "reduced-minor-singular");
  }
  auto r = macaulay_resultant(MacaulaySystem(forms));
  EXPECT_EQ(r.mode_used, ResultantMode::kCoordinateChange);
  EXPECT_GT(r.coordinate_changes, 0u);
  // Cyclic reordering keeps the resultant (all degrees even) and avoids the singular minor.
  auto rotated = macaulay_resultant(MacaulaySystem({forms[1], forms[2], forms[0]}), direct);
  EXPECT_EQ(r.value, rotated.value);
  EXPECT_FALSE(r.value.is_zero());
}

TEST(Macaulay, InvalidSystems) {
  EXPECT_THROW(MacaulaySystem({P("x0^2+x1", 2), P("x1", 2)}), InvalidInput);
  EXPECT_THROW(MacaulaySystem({P("x0", 2), P("0", 2)}), InvalidInput);
  EXPECT_THROW(MacaulaySystem({P("x0", 2), P("x0", 3)}), RingMismatch);
}

TEST(Discriminant, Examples) {
  EXPECT_EQ(discriminant_binary(P("x2*x0^2+x3*x0*x1+x4*x1^2", 5)), P("x3^2-4*x2*x4", 5));
  EXPECT_TRUE(discriminant_binary(P("(x0-x1)^2", 2)).is_zero());
  EXPECT_FALSE(discriminant_binary(P("x0*x1", 2)).is_zero());
  EXPECT_THROW(discriminant_binary(P("x0+x1", 2)), InvalidInput);
  // Cubic with roots 0, 1, 2: product of squared root differences.
  EXPECT_EQ(discriminant_binary(P("x0*(x0-x1)*(x0-2*x1)", 2)), P("4", 2));
}

TEST(GradientResultant, Examples) {
  EXPECT_FALSE(gradient_resultant(P("x0^3+x1^3+x2^3", 3), 3).value.is_zero());
  EXPECT_TRUE(gradient_resultant(P("x0^2*x1", 3), 3).value.is_zero());
}

TEST(GradientResultant, QuadraticFamilyIdentity) {
  // Res grad J_f = 2^12 3^3 (abg)^2 (8abc - abg)^6 Res f up to one constant.
  const Field f = Field::prime(kDefaultPrime);
  std::mt19937_64 rng(33);
  std::optional<Scalar> constant;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Scalar> v;
    for (int i = 0; i < 6; ++i) v.push_back(Scalar::from_residue(f, rng() % kDefaultPrime));
    auto s = [&](const char* t) { return P(t, 3, f); };
    Polynomial a = Polynomial::constant(3, v[0]), b = Polynomial::constant(3, v[1]), c = Polynomial::constant(3, v[2]);
    Polynomial al = Polynomial::constant(3, v[3]), be = Polynomial::constant(3, v[4]), ga = Polynomial::constant(3, v[5]);
    std::vector<Polynomial> forms{a * s("x^2") + al * s("y*z"), b * s("y^2") + be * s("x*z"), c * s("z^2") + ga * s("x*y")};
    PolyMatrix jm(3, 3, Polynomial(3, f));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) jm(i, j) = partial_derivative(forms[i], j);
    }
    Polynomial J = determinant(jm);
    Scalar res_f = res_scalar(forms);
    Scalar res_grad = gradient_resultant(J, 3).value.constant_value();
    Scalar abg = v[3] * v[4] * v[5];
    Scalar rhs = Scalar(f, 4096L * 27L) * abg.pow(2) * (Scalar(f, 8L) * v[0] * v[1] * v[2] - abg).pow(6) * res_f;
    ASSERT_FALSE(rhs.is_zero());
    Scalar ratio = res_grad / rhs;
    if (!constant) constant = ratio;
    EXPECT_EQ(ratio, *constant);
  }
}

// ---------------------------------------------------------------------------
// Properties

TEST(MacaulayProperty, Multihomogeneity) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<unsigned> deg{unsigned(1 + rng() % 2), unsigned(1 + rng() % 3), unsigned(1 + rng() % 2)};
    std::vector<Polynomial> forms;
    for (unsigned d : deg) forms.push_back(random_form(rng, 3, 3, d, QQ));
    if (std::any_of(forms.begin(), forms.end(), [](const Polynomial& q) { return q.is_zero(); })) continue;
    Scalar base = res_scalar(forms);
    std::size_t i = rng() % 3;
    Scalar lambda(QQ, long(rng() % 5) + 2);
    forms[i] *= lambda;
    long e = long(deg[0] * deg[1] * deg[2] / deg[i]);
    EXPECT_EQ(res_scalar(forms), base * lambda.pow(e));
  }
}

TEST(MacaulayProperty, CoordinateChangeCovariance) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<unsigned> deg{2, unsigned(1 + rng() % 2), 2};
    std::vector<Polynomial> forms;
    for (unsigned d : deg) forms.push_back(random_form(rng, 3, 3, d, QQ));
    std::vector<std::vector<long>> a(3, std::vector<long>(3));
    for (auto& row : a) {
      for (auto& x : row) x = long(rng() % 5) - 2;
    }
    long det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if (det == 0) continue;
    std::vector<Polynomial> images;
    for (std::size_t v = 0; v < 3; ++v) {
      Polynomial img(3, QQ);
      for (std::size_t j = 0; j < 3; ++j) img += Polynomial::monomial(3, Scalar(QQ, a[v][j]), Monomial::unit(j));
      images.push_back(img);
    }
    std::vector<Polynomial> changed;
    for (const auto& f : forms) changed.push_back(substitute(f, images));
    long prod = long(deg[0] * deg[1] * deg[2]);
    EXPECT_EQ(res_scalar(changed), res_scalar(forms) * Scalar(QQ, det).pow(prod));
  }
}

TEST(MacaulayProperty, SylvesterAgreement) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial p = random_form(rng, 2, 2, unsigned(1 + rng() % 4), QQ);
    Polynomial q = random_form(rng, 2, 2, unsigned(1 + rng() % 4), QQ);
    EXPECT_EQ(res_scalar({p, q}), sylvester_resultant(p, q).constant_value());
  }
}

TEST(MacaulayProperty, RatioAgreesWithModular) {
  std::mt19937_64 rng(44);
  ResultantStrategy ratio{ResultantMode::kCoordinateChange};
  ResultantStrategy modular{ResultantMode::kModularInterpolation};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Polynomial> forms;
    for (unsigned d : {1u, 2u, 2u}) forms.push_back(random_form(rng, 3, 4, d, QQ));
    // A parameter in one coefficient of each form.
    for (auto& f : forms) f += P("x3", 4) * Polynomial::monomial(4, Scalar::one(QQ), Monomial::unit(trial % 3, f.degree()));
    auto a = macaulay_resultant(MacaulaySystem(forms), ratio);
    auto b = macaulay_resultant(MacaulaySystem(forms), modular);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(b.mode_used, ResultantMode::kModularInterpolation);
  }
}

TEST(MacaulayProperty, CommonZeroCharacterizationBinary) {
  // Over F_p, two binary forms have a common zero over the closure iff their gcd is nonconstant.
  for (std::uint64_t p : {5u, 7u, 11u, 13u}) {
    const Field f = Field::prime(p);
    std::mt19937_64 rng(p);
    int zeros = 0;
    for (int trial = 0; trial < 60; ++trial) {
      Polynomial a = random_form(rng, 2, 2, unsigned(1 + rng() % 3), f);
      Polynomial b = random_form(rng, 2, 2, unsigned(1 + rng() % 3), f);
      if (a.is_zero() || b.is_zero()) continue;
      bool vanishes = res_scalar({a, b}).is_zero();
      zeros += vanishes;
      EXPECT_EQ(vanishes, !gcd(a, b).is_constant()) << to_string(a) << " / " << to_string(b);
    }
    EXPECT_GT(zeros, 0);
  }
}

TEST(MacaulayProperty, NoRationalZeroWhenNonvanishing) {
  for (std::uint64_t p : {5u, 7u, 11u, 13u}) {
    const Field f = Field::prime(p);
    std::mt19937_64 rng(100 + p);
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<Polynomial> forms;
      for (int i = 0; i < 3; ++i) forms.push_back(random_form(rng, 3, 3, 2, f));
      bool any_zero = false;
      for (std::uint64_t x = 0; x < p && !any_zero; ++x) {
        for (std::uint64_t y = 0; y < p && !any_zero; ++y) {
          for (std::uint64_t z = 0; z <= 1 && !any_zero; ++z) {
            if (z == 0 && !(y == 1 || (y == 0 && x == 1))) continue;
            std::vector<Scalar> pt{Scalar::from_residue(f, x), Scalar::from_residue(f, y), Scalar::from_residue(f, z)};
            any_zero = std::all_of(forms.begin(), forms.end(), [&](const Polynomial& q) { return evaluate(q, pt).is_zero(); });
          }
        }
      }
      if (any_zero) EXPECT_TRUE(res_scalar(forms).is_zero());
    }
  }
}
