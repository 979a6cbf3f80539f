#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bdfstab/multiplier.hpp"

using namespace bdfstab;

namespace {

Multiplier zeros(int n) { return Multiplier{std::vector<Rational>(n, Rational(0))}; }

Multiplier dec(std::initializer_list<const char*> xs) {
  std::vector<std::string> v(xs.begin(), xs.end());
  return parse_multiplier(v);
}

}  // namespace

TEST(RealPart, LowOrderExpansions) {
  // |e^{i phi} - 1|^2 / 2 style: (z - 1) against z gives 1 - cos(phi)
  EXPECT_EQ(real_part_product(bdf_alpha(1).alpha, RationalPolynomial{0, 1}), (CosinePolynomial{1, -1}));
  // alpha_2 z^2 + alpha_1 z + alpha_0 against z^2: c_d = alpha_{2-d}
  EXPECT_EQ(real_part_product(bdf_alpha(2).alpha, RationalPolynomial{0, 0, 1}),
            (CosinePolynomial{Rational(3, 2), -2, Rational(1, 2)}));
  EXPECT_THROW(real_part_product(bdf_alpha(2).alpha, RationalPolynomial{0, 1}), std::invalid_argument);
}

TEST(RealPart, MatchesComplexEvaluation) {
  const auto method = bdf_alpha(6);
  const auto mu = multiplier_polynomial(six_step_multiplier(), 6);
  const auto r = real_part_product(method.alpha, mu);
  for (double phi = 0.0; phi < 3.2; phi += 0.05) {
    const auto z = std::polar(1.0, phi);
    const double direct = (method.alpha.evaluate(z) * mu.evaluate(std::conj(z))).real();
    EXPECT_NEAR(r.evaluate(phi), direct, 1e-12);
  }
}

TEST(MultiplierPolynomial, FactoredForm) {
  auto h = RationalPolynomial::linear_factor(Rational(1, 2));
  auto expected = RationalPolynomial::monomial(1, 3) * h * h * RationalPolynomial::linear_factor(Rational(4, 9));
  EXPECT_EQ(multiplier_polynomial(six_step_multiplier(), 6), expected);
  EXPECT_EQ(multiplier_polynomial(Multiplier{{Rational(13, 9)}}, 2), (RationalPolynomial{0, Rational(-13, 9), 1}));
  EXPECT_THROW(multiplier_polynomial(zeros(7), 6), std::invalid_argument);
}

TEST(ConditionA, SixStepMultiplier) {
  const auto r = check_condition_A(bdf_alpha(6), six_step_multiplier());
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(r.coprime);
  EXPECT_NE(r.resultant, 0);
  EXPECT_EQ(r.certificate.verdict, Positivity::StrictlyPositive);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(ConditionA, SixStepAloneFails) {
  const auto r = check_condition_A(bdf_alpha(6), zeros(6));
  EXPECT_FALSE(r.pass());
  ASSERT_EQ(r.certificate.verdict, Positivity::Negative);
  const auto& w = r.certificate.witnesses.front();
  EXPECT_LT(r.reduced(w.lo), 0);
  EXPECT_GE(w.lo, -1);
  EXPECT_LE(w.lo, 1);
}

TEST(ConditionA, BackwardEuler) {
  const auto r = check_condition_A(bdf_alpha(1), zeros(1));
  EXPECT_EQ(r.reduced, RationalPolynomial{1});
  EXPECT_TRUE(r.pass());
}

TEST(ConditionA, CommonFactorDetected) {
  // mu(z) = z - 1 shares the root z = 1 with alpha.
  const auto r = check_condition_A(bdf_alpha(1), Multiplier{{1}});
  EXPECT_FALSE(r.coprime);
  EXPECT_FALSE(r.pass());
}

TEST(ConditionA, InvariantUnderPositiveScalingOfAlpha) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> num(-30, 30);
  const auto alpha = bdf_alpha(6).alpha;
  for (int trial = 0; trial < 30; ++trial) {
    Multiplier m;
    for (int j = 0; j < 6; ++j) m.mu.emplace_back(num(rng), 20);
    for (auto& v : m.mu) v.canonicalize();
    const auto a = check_condition_A(alpha, m);
    const auto b = check_condition_A(alpha.scaled(Rational(60, 7)), m);
    EXPECT_EQ(a.certificate.verdict, b.certificate.verdict);
    EXPECT_EQ(a.pass(), b.pass());
  }
}

TEST(P1, Values) {
  auto r = check_P1(six_step_multiplier());
  EXPECT_EQ(r.value, Rational(-5, 4));
  EXPECT_FALSE(r.pass);
  r = check_P1(Multiplier{{Rational(1, 2), 0, 0, 0, 0, 0}});
  EXPECT_EQ(r.value, Rational(1, 2));
  EXPECT_TRUE(r.pass);
  r = check_P1(dec({"1.6", "-0.92", "0.3", "0", "0", "0"}));
  EXPECT_EQ(r.value, parse_rational("-1.82"));
  EXPECT_FALSE(r.pass);
}

TEST(P2, Values) {
  const auto r = check_P2(six_step_multiplier());
  EXPECT_EQ(r.certificate.verdict, Positivity::StrictlyPositive);
  EXPECT_NEAR(r.min_value, 1.0 / 32.0 + 0.009321552602567, 1e-12);
  EXPECT_NEAR(r.certificate.minimum.x, (25.0 - std::sqrt(145.0)) / 24.0, 1e-12);

  const auto z = check_P2(zeros(6));
  EXPECT_EQ(z.certificate.verdict, Positivity::StrictlyPositive);
  EXPECT_DOUBLE_EQ(z.min_value, 1.0);

  const auto one = check_P2(Multiplier{{1, 0, 0, 0, 0, 0}});
  EXPECT_EQ(one.certificate.verdict, Positivity::NonnegativeWithZeros);
  EXPECT_FALSE(one.pass());
  EXPECT_EQ(one.certificate.witnesses.front().lo, 1);
}

TEST(P2, ImpliedByP1) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> num(-100, 100);
  int tested = 0;
  for (int trial = 0; trial < 400 && tested < 40; ++trial) {
    Multiplier m;
    for (int j = 0; j < 6; ++j) m.mu.emplace_back(num(rng), 400);
    for (auto& v : m.mu) v.canonicalize();
    if (!check_P1(m).pass) continue;
    ++tested;
    EXPECT_EQ(check_P2(m).certificate.verdict, Positivity::StrictlyPositive) << to_string(m);
  }
  EXPECT_GE(tested, 20);
}

TEST(P2, MinimumMatchesRefinedCosineSampling) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> num(-60, 60);
  for (int trial = 0; trial < 10; ++trial) {
    Multiplier m;
    for (int j = 0; j < 6; ++j) m.mu.emplace_back(num(rng), 100);
    for (auto& v : m.mu) v.canonicalize();
    if (trial == 0) m = six_step_multiplier();
    auto f = [&](double x) {
      double s = 1.0;
      for (int k = 1; k <= 6; ++k) s -= to_double(m[k]) * std::cos(k * x);
      return s;
    };
    const int n = 10000;
    int best = 0;
    for (int i = 1; i <= n; ++i) {
      if (f(M_PI * i / n) < f(M_PI * best / n)) best = i;
    }
    double a = M_PI * std::max(best - 1, 0) / n;
    double b = M_PI * std::min(best + 1, n) / n;
    for (int it = 0; it < 100; ++it) {
      const double c = a + (b - a) / 3, d = b - (b - a) / 3;
      if (f(c) < f(d)) b = d; else a = c;
    }
    const double sampled = std::min(f(0.5 * (a + b)), f(M_PI * best / n));
    EXPECT_NEAR(check_P2(m).min_value, sampled, 1e-10) << to_string(m);
  }
}

TEST(Certify, Verdicts) {
  const auto six = bdf_alpha(6);
  auto r = certify(six, six_step_multiplier());
  EXPECT_EQ(r.verdict, Verdict::Multiplier);
  EXPECT_EQ(certify(six, dec({"0.8", "-0.7", "0.2", "0.1", "0", "0"})).verdict, Verdict::Multiplier);
  EXPECT_EQ(certify(six, zeros(6)).verdict, Verdict::NotAMultiplier);
  // backward Euler with the zero multiplier satisfies everything, including P1
  EXPECT_EQ(certify(bdf_alpha(1), zeros(1)).verdict, Verdict::NevanlinnaOdehMultiplier);
}

TEST(AffineFamily, SixStepDisplay) {
  const auto fam = condition_a_family(bdf_alpha(6));
  EXPECT_EQ(fam.scaling, 15);
  EXPECT_EQ(fam.base, (RationalPolynomial{-22, 98, -82, -122, 208, -80}));
  ASSERT_EQ(fam.coefficients.size(), 6u);
  EXPECT_EQ(fam.coefficients[0], (RationalPolynomial{8, 15, 71, -104, 40}));
  EXPECT_EQ(fam.coefficients[1], (RationalPolynomial{-22, 114, -52, 20}));
  EXPECT_EQ(fam.coefficients[2], (RationalPolynomial{-8, -59, 157}));
  EXPECT_EQ(fam.coefficients[3], (RationalPolynomial{22, -130, -66, 294}));
  EXPECT_EQ(fam.coefficients[4], (RationalPolynomial{8, 103, -417, -132, 588}));
  EXPECT_EQ(fam.coefficients[5], (RationalPolynomial{-22, 146, 272, -1128, -264, 1176}));
}

TEST(AffineFamily, PositivityDisplay) {
  const auto fam = positivity_family(6);
  EXPECT_EQ(fam.base, RationalPolynomial{1});
  EXPECT_EQ(fam.coefficients[0], (RationalPolynomial{0, -1}));
  EXPECT_EQ(fam.coefficients[1], (RationalPolynomial{1, 0, -2}));
  EXPECT_EQ(fam.coefficients[2], (RationalPolynomial{0, 3, 0, -4}));
  EXPECT_EQ(fam.coefficients[3], (RationalPolynomial{-1, 0, 8, 0, -8}));
  EXPECT_EQ(fam.coefficients[4], (RationalPolynomial{0, -5, 0, 20, 0, -16}));
  EXPECT_EQ(fam.coefficients[5], (RationalPolynomial{1, 0, -18, 0, 48, 0, -32}));
  const auto m = dec({"0.735", "-0.2", "-0.4", "0.8", "-0.4", "0.2"});
  EXPECT_EQ(fam(m), check_P2(m).polynomial);
}

TEST(GeneralP, SixStepMultiplierMatchesFactoredDisplay) {
  const RationalPolynomial display{142, 1222, 2668, -10300, 9568, -2880};
  const auto p = general_P(six_step_multiplier());
  EXPECT_EQ(p.scaled(36), display);
  const auto report = certify(bdf_alpha(6), six_step_multiplier());
  EXPECT_EQ(report.P_poly, p);
  EXPECT_EQ(report.condA.reduced.scaled(540), display);
}

TEST(GeneralP, ValueAtZero) {
  EXPECT_EQ(general_P(zeros(6)), (RationalPolynomial{-22, 98, -82, -122, 208, -80}));
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> num(-50, 50);
  for (int trial = 0; trial < 20; ++trial) {
    Multiplier m;
    for (int j = 0; j < 6; ++j) m.mu.emplace_back(num(rng), 25);
    for (auto& v : m.mu) v.canonicalize();
    const Rational expected = -22 + 8 * m[1] - 22 * m[2] - 8 * m[3] + 22 * m[4] + 8 * m[5] - 22 * m[6];
    EXPECT_EQ(general_P(m)(Rational(0)), expected);
    Multiplier m3{{m[1], m[2], m[3], 0, 0, 0}};
    EXPECT_EQ(general_P(m3)(Rational(0)), 2 * (4 * (m[1] - m[3]) - 11 * (1 + m[2])));
  }
}

TEST(GeneralP, AgreesWithReductionAtRandomPoints) {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> num(-50, 50);
  std::uniform_int_distribution<int> xs(-1000, 1000);
  const auto six = bdf_alpha(6);
  for (int trial = 0; trial < 10; ++trial) {
    Multiplier m;
    for (int j = 0; j < 6; ++j) m.mu.emplace_back(num(rng), 25);
    for (auto& v : m.mu) v.canonicalize();
    const auto reduced = check_condition_A(six, m).reduced;
    const auto p = general_P(m);
    for (int i = 0; i < 20; ++i) {
      const Rational x(xs(rng), 1000);
      EXPECT_EQ(p(x), reduced_scaling(6) * reduced(x));
    }
  }
}

TEST(Nonexistence, BoundAtThreeFortieths) {
  const auto r = nevanlinna_odeh_nonexistence();
  EXPECT_EQ(r.value.x, Rational(3, 40));
  EXPECT_NEAR(to_double(r.value.base), -15.1563, 1e-3);
  EXPECT_NEAR(to_double(r.max_abs_coefficient), 13.7341, 1e-3);
  EXPECT_LT(r.bound, Rational(-142, 100));
  EXPECT_TRUE(r.pass());
  // independent oracle: base value evaluated from the displayed base polynomial
  const RationalPolynomial base{-22, 98, -82, -122, 208, -80};
  EXPECT_EQ(r.value.base, base(Rational(3, 40)));
}
