#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bdfstab/search.hpp"

using namespace bdfstab;

namespace {

Rational q(const char* s) { return parse_rational(s); }

}  // namespace

TEST(PlaneRegion, Examples) {
  auto t = plane_region_membership(Rational(4, 3), Rational(-1, 3));
  EXPECT_FALSE(t.in_triangle);
  EXPECT_FALSE(t.in_ellipse);
  EXPECT_FALSE(t.member);
  EXPECT_TRUE(plane_region_membership(0, 0).member);
  // 1.4142^2 / 2 = 0.99998082 < 1
  auto e = plane_region_membership(Rational(14142, 10000), Rational(-1, 2));
  EXPECT_TRUE(e.in_ellipse);
  EXPECT_TRUE(e.member);
  EXPECT_FALSE(plane_region_membership(Rational(14143, 10000), Rational(-1, 2)).member);
}

TEST(PlaneRegion, AgreesWithExactPositivity) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> num(-200, 200);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational mu1(num(rng), 100), mu2(num(rng), 100);
    Rational a = mu1, b = mu2;
    a.canonicalize();
    b.canonicalize();
    const RationalPolynomial p{1 + b, -a, -2 * b};
    const bool positive = nonneg_on_interval(p, -1, 1, true).verdict == Positivity::StrictlyPositive;
    EXPECT_EQ(plane_region_membership(a, b).member, positive) << to_string(a) << " " << to_string(b);
  }
}

TEST(ReferenceTable, ExactDecimals) {
  const auto rows = reference_multipliers();
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0][2], Rational(-23, 25));
  EXPECT_EQ(rows[1][1], Rational(1647, 2000));
  EXPECT_EQ(rows[4][1], Rational(559, 500));
  EXPECT_EQ(rows[5][1], Rational(1677, 2500));
  EXPECT_EQ(rows[6][1], Rational(147, 200));
}

TEST(ReferenceTable, AllRowsAreMultipliersWithoutP1) {
  for (const auto& c : check_reference_multipliers()) {
    EXPECT_EQ(c.report.verdict, Verdict::Multiplier) << to_string(c.m);
    EXPECT_FALSE(c.report.condP1.pass);
    EXPECT_GT(c.m.abs_sum(), 1);
    EXPECT_TRUE(c.meets_lower_bound);
  }
}

TEST(GridSearch, FindsSixStepMultiplier) {
  auto box = make_box({{q("1.4"), q("1.5")}, {q("-0.75"), q("-0.65")}, {q("0.05"), q("0.15")}});
  auto r = grid_search(box, Rational(1, 36));
  EXPECT_EQ(r.candidates_tested, 64);
  bool found = false;
  for (const auto& rep : r.certified) {
    EXPECT_EQ(rep.verdict, Verdict::Multiplier);
    EXPECT_GE(to_double(rep.m.abs_sum()), multiplier_lower_bound(6) - 1e-6);
    if (rep.m == six_step_multiplier()) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(GridSearch, DeterministicAcrossRunsAndThreads) {
  auto box = make_box({{q("1.4"), q("1.5")}, {q("-0.75"), q("-0.65")}, {q("0.05"), q("0.15")}});
  auto a = grid_search(box, Rational(1, 72), {.max_results = 1000, .threads = 1, .keep_records = true});
  auto b = grid_search(box, Rational(1, 72), {.max_results = 1000, .threads = 3, .keep_records = true});
  ASSERT_EQ(a.certified.size(), b.certified.size());
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.certified.size(); ++i) {
    EXPECT_EQ(a.certified[i].m, b.certified[i].m);
    EXPECT_EQ(certify(bdf_alpha(6), a.certified[i].m).verdict, a.certified[i].verdict);
  }
  for (std::size_t i = 1; i < a.records.size(); ++i) {
    EXPECT_TRUE(std::lexicographical_compare(a.records[i - 1].m.mu.begin(), a.records[i - 1].m.mu.end(),
                                             a.records[i].m.mu.begin(), a.records[i].m.mu.end()));
  }
  auto limited = grid_search(box, Rational(1, 72), {.max_results = 2, .threads = 2});
  ASSERT_LE(limited.certified.size(), 2u);
  for (std::size_t i = 0; i < limited.certified.size(); ++i) EXPECT_EQ(limited.certified[i].m, a.certified[i].m);
}

TEST(GridSearch, PrefilterNeverRejectsCertifiedCandidates) {
  auto box = make_box({{q("1.3"), q("1.6")}, {q("-0.9"), q("-0.6")}, {q("0"), q("0.3")}});
  auto r = grid_search(box, Rational(1, 20), {.keep_records = true});
  for (const auto& rec : r.records) {
    if (!rec.prefilter_pass) {
      EXPECT_EQ(certify(bdf_alpha(6), rec.m).verdict, Verdict::NotAMultiplier) << to_string(rec.m);
    }
  }
}

TEST(GridSearch, NoTwoParameterMultipliers) {
  auto box = make_box({{q("-1.5"), q("1.5")}, {q("-1"), q("1")}});
  auto r = grid_search(box, Rational(1, 100), {.threads = 2});
  EXPECT_EQ(r.candidates_tested, 301 * 201);
  EXPECT_TRUE(r.certified.empty());
}

TEST(GridSearch, ZeroPointAndErrors) {
  auto r = grid_search(make_box({}), Rational(1, 10));
  EXPECT_EQ(r.candidates_tested, 1);
  EXPECT_TRUE(r.certified.empty());
  EXPECT_THROW(grid_search(make_box({{1, 0}}), Rational(1, 10)), std::invalid_argument);
  EXPECT_THROW(grid_search(make_box({}), Rational(0)), std::invalid_argument);
  EXPECT_THROW(grid_search(make_box({{Rational(1, 3), Rational(1, 3)}}), Rational(1, 10)), std::invalid_argument);
  EXPECT_THROW(grid_search(make_box({{-3, 0}}), Rational(1, 10)), std::invalid_argument);
}

TEST(TwoParameter, AffineForms) {
  const auto r = two_parameter_exclusion_constants();
  // exact oracle values, hand-expanded from the displayed affine family
  EXPECT_EQ(r.at_0_99.coefficients[0], Rational(74874611, 2500000));
  EXPECT_EQ(r.at_0_99.coefficients[1], Rational(2965039, 50000));
  EXPECT_EQ(r.at_0_99.base, Rational(11011, 125000000));
  EXPECT_NEAR(to_double(r.at_minus_4_25.coefficients[0]), 7.8697984, 1e-12);
  EXPECT_NEAR(to_double(r.at_minus_4_25.coefficients[1]), -41.65312, 1e-12);
  EXPECT_NEAR(to_double(r.at_minus_4_25.base), -39.134784512, 1e-12);

  ASSERT_EQ(r.exact.size(), 3u);
  EXPECT_TRUE(r.exact[0].double_equal);  // a is the double nearest 2965039/50000
  EXPECT_FALSE(r.exact[0].rational_equal);
  EXPECT_FALSE(r.exact[1].pass);
  EXPECT_FALSE(r.exact[2].pass);
}

TEST(TwoParameter, IntersectionPoints) {
  const auto r = two_parameter_exclusion_constants();
  // independent 50-digit solve of the same quadratic
  EXPECT_NEAR(r.A[0], -2.9411817537507437e-6, 1e-18);
  EXPECT_NEAR(r.A[1], -1.0813187635757068e-12, 1e-24);
  EXPECT_NEAR(r.B[0], 1.328814138267095, 1e-14);
  EXPECT_NEAR(r.B[1], -0.6711187401855352, 1e-14);
  for (const double* p : {r.A, r.B}) {
    EXPECT_NEAR(4 * (p[1] + 0.5) * (p[1] + 0.5) + p[0] * p[0] / 2, 1.0, 1e-14);
  }
}

TEST(ThreeParameter, BoundsReproduced) {
  const auto r = three_parameter_bounds_check();
  for (const auto& c : r.approx) EXPECT_TRUE(c.pass) << c.name << " " << c.computed;
  for (const auto& c : r.exact) EXPECT_TRUE(c.rational_equal) << c.name;
  ASSERT_EQ(r.rows.size(), 2u);
  for (const auto& row : r.rows) EXPECT_TRUE(row.inside) << to_string(row.m);
  EXPECT_TRUE(r.pass());
  EXPECT_NEAR(to_double(r.at_27_125.coefficients[0]), 13.5915669094, 1e-9);
  EXPECT_NEAR(to_double(r.at_27_125.coefficients[1]), 0.39944192, 1e-9);
  EXPECT_NEAR(to_double(r.at_27_125.coefficients[2]), -13.419008, 1e-9);
  EXPECT_NEAR(to_double(r.at_0_8.coefficients[0]), 28.576, 1e-12);
}

TEST(ThreeParameter, BoxIsScopedToThreeParameters) {
  EXPECT_TRUE(in_three_parameter_box(parse_multiplier({"0.8235", "-0.855", "0.38", "0", "0", "0"})));
  EXPECT_FALSE(in_three_parameter_box(parse_multiplier({"0.8", "-0.7", "0.2", "0.1", "0", "0"})));
  EXPECT_FALSE(in_three_parameter_box(parse_multiplier({"1.8", "-0.7", "0.2", "0", "0", "0"})));
}
