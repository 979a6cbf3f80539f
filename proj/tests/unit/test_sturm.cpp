#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bdfstab/sturm.hpp"

using namespace bdfstab;

namespace {

const RationalPolynomial kPositivityPart{Rational(79, 288), Rational(-10, 9), Rational(25, 18), Rational(-4, 9)};
// 2(71 + 611x + 1334x^2 - 5150x^3 + 4784x^4 - 1440x^5)
const RationalPolynomial kReducedP{142, 1222, 2668, -10300, 9568, -2880};

}  // namespace

TEST(Sturm, CountsRoots) {
  EXPECT_EQ(sturm_root_count(kPositivityPart, -1, 1), 0);
  EXPECT_EQ(sturm_root_count(RationalPolynomial{Rational(-1, 4), 0, 1}, -1, 1), 2);
  EXPECT_EQ(sturm_root_count(kReducedP, -1, 1), 0);
}

TEST(Sturm, HalfOpenIntervalConvention) {
  const RationalPolynomial p{Rational(-1, 4), 0, 1};  // roots +-1/2
  EXPECT_EQ(sturm_root_count(p, Rational(-1, 2), 1), 1);
  EXPECT_EQ(sturm_root_count(p, -1, Rational(-1, 2)), 1);
  EXPECT_EQ(sturm_root_count(p, Rational(-1, 2), Rational(1, 2)), 1);
}

TEST(Sturm, MultipleRootsCountOnce) {
  auto a = RationalPolynomial::linear_factor(Rational(1, 3));
  EXPECT_EQ(sturm_root_count(a * a * a * RationalPolynomial{1, 0, 1}, -1, 1), 1);
}

TEST(Sturm, Errors) {
  EXPECT_THROW(sturm_root_count(RationalPolynomial(), -1, 1), std::invalid_argument);
  EXPECT_THROW(sturm_root_count(RationalPolynomial{1, 1}, 1, -1), std::invalid_argument);
}

TEST(Sturm, AgreesWithBruteForceScan) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> nroots(0, 6);
  std::uniform_int_distribution<int> slot(-95, 95);
  for (int trial = 0; trial < 40; ++trial) {
    // Distinct roots on a 1/100 lattice, plus an irreducible quadratic factor.
    const int k = nroots(rng);
    std::vector<int> picks;
    while (static_cast<int>(picks.size()) < k) {
      int s = slot(rng);
      if (std::find(picks.begin(), picks.end(), s) == picks.end()) picks.push_back(s);
    }
    RationalPolynomial p{Rational(3, 2)};
    for (int s : picks) p *= RationalPolynomial::linear_factor(Rational(s, 100));
    if (k < 5) p *= RationalPolynomial{1, 0, 1};

    // Sample between the lattice points so no sample is a root.
    int changes = 0;
    int last = 0;
    const int samples = 10000;
    for (int i = 0; i <= samples; ++i) {
      Rational x = Rational(-1) + Rational(2 * i, samples) + Rational(1, 1000000);
      if (x > 1) x = 1;
      const int s = sign(p(x));
      if (s != 0 && last != 0 && s != last) ++changes;
      if (s != 0) last = s;
    }
    EXPECT_EQ(sturm_root_count(p, -1, 1), changes) << p.to_string();
    EXPECT_EQ(changes, k);
  }
}

TEST(Isolation, SortedIntervalsContainRoots) {
  auto p = RationalPolynomial::linear_factor(Rational(-1, 2)) * RationalPolynomial{-2, 0, 1} *
           RationalPolynomial::linear_factor(1);
  auto roots = isolate_roots(p, -2, 1, Rational(1, 1000));
  ASSERT_EQ(roots.size(), 3u);  // sqrt(2) lies outside
  EXPECT_LT(roots[0].hi, roots[1].lo);
  EXPECT_TRUE(roots[1].exact());
  EXPECT_EQ(roots[1].lo, Rational(-1, 2));
  EXPECT_TRUE(roots[2].exact());
  EXPECT_EQ(roots[2].lo, 1);
  EXPECT_LE(roots[0].hi - roots[0].lo, Rational(1, 1000));
  EXPECT_LT(to_double(roots[0].lo), -std::sqrt(2.0));
  EXPECT_GT(to_double(roots[0].hi), -std::sqrt(2.0));
}

TEST(Isolation, LeftEndpointRootIncluded) {
  auto roots = isolate_roots(RationalPolynomial{-1, 0, 1}, -1, 1);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0].lo, -1);
  EXPECT_EQ(roots[1].lo, 1);
}

TEST(Nonnegativity, PositivityPartMinimum) {
  auto cert = nonneg_on_interval(kPositivityPart, -1, 1, true);
  EXPECT_EQ(cert.verdict, Positivity::StrictlyPositive);
  EXPECT_TRUE(cert.passes());
  EXPECT_NEAR(cert.minimum.x, (25.0 - std::sqrt(145.0)) / 24.0, 1e-12);
  EXPECT_NEAR(cert.minimum.value, 0.009321552602567, 1e-12);
}

TEST(Nonnegativity, ReducedPolynomialPositive) {
  EXPECT_EQ(nonneg_on_interval(kReducedP, -1, 1, true).verdict, Positivity::StrictlyPositive);
}

TEST(Nonnegativity, DoubleRootReportsZero) {
  auto cert = nonneg_on_interval(RationalPolynomial{0, 0, 1}, -1, 1, true);
  EXPECT_EQ(cert.verdict, Positivity::NonnegativeWithZeros);
  EXPECT_FALSE(cert.passes());
  ASSERT_EQ(cert.witnesses.size(), 1u);
  EXPECT_EQ(cert.witnesses[0].lo, 0);
  EXPECT_EQ(cert.witnesses[0].hi, 0);
  EXPECT_NE(cert.witnesses[0].evidence.find("multiplicity 2"), std::string::npos);

  cert.strict = false;
  EXPECT_TRUE(cert.passes());
}

TEST(Nonnegativity, NegativeWitnessIsExact) {
  const RationalPolynomial p{Rational(-1, 100), 0, 1};
  auto cert = nonneg_on_interval(p, -1, 1, false);
  ASSERT_EQ(cert.verdict, Positivity::Negative);
  ASSERT_FALSE(cert.witnesses.empty());
  EXPECT_LT(p(cert.witnesses[0].lo), 0);

  // Negative only between two irrational roots of a quartic with a double root elsewhere.
  auto d = RationalPolynomial::linear_factor(Rational(-1, 2));
  auto q = d * d * RationalPolynomial{Rational(-1, 3), 0, 1}.scaled(-1);
  auto c2 = nonneg_on_interval(q, -1, 1, false);
  ASSERT_EQ(c2.verdict, Positivity::Negative);
  EXPECT_LT(q(c2.witnesses[0].lo), 0);
}

TEST(Nonnegativity, EndpointZero) {
  auto cert = nonneg_on_interval(RationalPolynomial{1, -1}, -1, 1, true);
  EXPECT_EQ(cert.verdict, Positivity::NonnegativeWithZeros);
  EXPECT_EQ(cert.witnesses[0].lo, 1);
}

TEST(Nonnegativity, Constants) {
  EXPECT_EQ(nonneg_on_interval(RationalPolynomial{2}, -1, 1, true).verdict, Positivity::StrictlyPositive);
  EXPECT_EQ(nonneg_on_interval(RationalPolynomial{-2}, -1, 1, true).verdict, Positivity::Negative);
  EXPECT_EQ(nonneg_on_interval(RationalPolynomial(), -1, 1, false).verdict, Positivity::NonnegativeWithZeros);
}

TEST(Nonnegativity, VerdictInvariantUnderPositiveScaling) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 9);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rational> c;
    for (int k = 0; k <= 4; ++k) {
      c.emplace_back(num(rng), den(rng));
      c.back().canonicalize();
    }
    RationalPolynomial p(c);
    // Square a factor now and then so zero verdicts occur too.
    if (trial % 3 == 0) p = p * p;
    const Rational scale(den(rng) * 7, den(rng));
    auto a = nonneg_on_interval(p, -1, 1, true);
    auto b = nonneg_on_interval(p.scaled(scale), -1, 1, true);
    EXPECT_EQ(a.verdict, b.verdict) << p.to_string();
  }
}

TEST(Extrema, MinAndMax) {
  auto e = extrema_on_interval(RationalPolynomial{0, -3, 0, 1}, -2, 2);  // x^3 - 3x
  EXPECT_DOUBLE_EQ(e.min.value, -2.0);
  EXPECT_DOUBLE_EQ(e.max.value, 2.0);
}
