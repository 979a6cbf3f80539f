#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bdfstab/gstability.hpp"

using namespace bdfstab;

namespace {

Multiplier power_multiplier() { return Multiplier{}; }  // mu(z) = z^q

}  // namespace

TEST(FejerRiesz, SquareOfLinear) {
  // |z - 1|^2 / 2 = 1 - cos
  const auto d = fejer_riesz(CosinePolynomial{1, -1});
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d[0], -1 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(d[1], 1 / std::sqrt(2.0), 1e-14);
}

TEST(FejerRiesz, DoubleZeroOnCircle) {
  // (cos - 1/2)^2 = 3/4 - cos + cos(2 phi) / 2
  const CosinePolynomial E{Rational(3, 4), Rational(-1), Rational(1, 2)};
  const auto d = fejer_riesz(E);
  EXPECT_LT(fejer_riesz_mismatch(E, d), 1e-12);
  EXPECT_GT(d.back(), 0);
}

TEST(FejerRiesz, RandomSquares) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-9, 9);
  for (int t = 0; t < 50; ++t) {
    // E = |p(e^{i phi})|^2 for random integer p of degree 3
    std::vector<int> p(4);
    for (int& c : p) c = num(rng);
    if (p[3] == 0) p[3] = 1;
    std::vector<Rational> e(4, Rational(0));
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i + k < 4; ++i) e[k] += Rational(p[i] * p[i + k] * (k == 0 ? 1 : 2));
    const CosinePolynomial E(e);
    const auto d = fejer_riesz(E);
    double scale = 0;
    for (const auto& c : e) scale += std::abs(to_double(c));
    EXPECT_LT(fejer_riesz_mismatch(E, d, 2000), 1e-9 * scale) << t;
  }
}

TEST(FejerRiesz, RejectsNegative) {
  EXPECT_THROW(fejer_riesz(CosinePolynomial{0, 1}), NotNonnegative);
  try {
    fejer_riesz(CosinePolynomial{Rational(1, 2), 1});
  } catch (const NotNonnegative& e) {
    EXPECT_LT(to_double(Rational(1, 2) + e.witness()), 0.0);
  }
}

TEST(ConstructG, BackwardEuler) {
  const auto gp = construct_G(bdf_alpha(1), power_multiplier());
  ASSERT_EQ(gp.G.rows(), 1);
  EXPECT_NEAR(gp.G(0, 0), 0.5, 1e-14);
  EXPECT_NEAR(gp.delta[0], -1 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(gp.delta[1], 1 / std::sqrt(2.0), 1e-14);
}

TEST(ConstructG, TwoStepHandOracle) {
  // S - delta delta^T matched entrywise by hand: G = [[1/4, -1/2], [-1/2, 5/4]]
  const auto gp = construct_G(bdf_alpha(2), power_multiplier());
  EXPECT_NEAR(gp.G(0, 0), 0.25, 1e-13);
  EXPECT_NEAR(gp.G(0, 1), -0.5, 1e-13);
  EXPECT_NEAR(gp.G(1, 0), -0.5, 1e-13);
  EXPECT_NEAR(gp.G(1, 1), 1.25, 1e-13);
  EXPECT_NEAR(gp.delta[0], 0.5, 1e-13);
  EXPECT_NEAR(gp.delta[1], -1.0, 1e-13);
  EXPECT_NEAR(gp.delta[2], 0.5, 1e-13);
  const auto eb = g_eigen_bounds(gp);
  EXPECT_NEAR(eb.c1 * eb.c2, 1.0 / 16, 1e-13);
  EXPECT_NEAR(eb.c1 + eb.c2, 1.5, 1e-13);
}

TEST(ConstructG, SixStepPositiveDefinite) {
  const auto gp = construct_G(bdf_alpha(6), six_step_multiplier());
  ASSERT_EQ(gp.G.rows(), 6);
  EXPECT_EQ(gp.G, gp.G.transpose());
  const auto eb = g_eigen_bounds(gp);
  EXPECT_GT(eb.c1, 0);
  // independent 60-digit solve of the same coefficient-matching system
  EXPECT_NEAR(eb.c1, 3.5625559624632503e-12, 1e-14);
  EXPECT_NEAR(eb.c2, 14.833418752481787, 1e-11);
  EXPECT_NEAR(gp.delta[0], 0.0772228448671277, 1e-12);
  EXPECT_NEAR(gp.delta[6], 1.07912798960877, 1e-12);
  EXPECT_LE(gp.residual, kGResidualTolerance);
  EXPECT_LE(identity_residual(gp, 1000, 1, 99), 1e-9);
  EXPECT_LE(identity_residual(gp, 100, 3, 100), 1e-9);
  const CosinePolynomial E =
      real_part_product(bdf_alpha(6).alpha, multiplier_polynomial(six_step_multiplier(), 6));
  EXPECT_LE(fejer_riesz_mismatch(E, gp.delta), 1e-9);
  EXPECT_GT(gp.delta.back(), 0);
}

TEST(ConstructG, ReferenceMultipliersAndLowOrders) {
  for (int q = 1; q <= 5; ++q) {
    // mu(z) = z^q is a valid multiplier up to q = 2 only
    if (q <= 2) {
      const auto gp = construct_G(bdf_alpha(q), power_multiplier());
      EXPECT_GT(g_eigen_bounds(gp).c1, 0) << q;
    } else {
      EXPECT_THROW(construct_G(bdf_alpha(q), power_multiplier()), std::invalid_argument) << q;
    }
  }
  const auto gp = construct_G(bdf_alpha(6), parse_multiplier({"1.4", "-0.72", "0.14"}));
  EXPECT_GT(g_eigen_bounds(gp).c1, 0);
}

TEST(ConstructG, RejectsNonMultiplier) {
  EXPECT_THROW(construct_G(bdf_alpha(6), power_multiplier()), std::invalid_argument);
}
