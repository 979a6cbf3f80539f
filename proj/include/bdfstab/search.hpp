#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bdfstab/multiplier.hpp"

namespace bdfstab {

/// Membership in the (mu1, mu2) region where 1 - mu1 x - mu2 (2x^2 - 1) > 0
/// on [-1, 1]: the triangle -1/3 <= mu2 < 1 - |mu1| united with the ellipse
/// 4 (mu2 + 1/2)^2 + mu1^2 / 2 < 1.
struct PlanePoint {
  Rational mu1;
  Rational mu2;
  bool in_triangle = false;
  bool in_ellipse = false;
  bool member = false;
};

PlanePoint plane_region_membership(const Rational& mu1, const Rational& mu2);

/// Seven published six-step multipliers, parsed as exact decimal fractions.
std::vector<Multiplier> reference_multipliers();

struct ReferenceCheck {
  Multiplier m;
  CertificationReport report;
  double abs_sum = 0.0;
  bool meets_lower_bound = false;  // sum |mu| >= 0.9516169 - 1e-6
};

std::vector<ReferenceCheck> check_reference_multipliers();

struct SearchBox {
  std::vector<std::pair<Rational, Rational>> ranges;  // one closed interval per mu_j
};

/// Box with every component fixed to zero except the given ranges.
SearchBox make_box(const std::vector<std::pair<Rational, Rational>>& leading, int q = 6);

struct CandidateRecord {
  Multiplier m;
  bool prefilter_pass = false;
  bool certified = false;
  Verdict verdict = Verdict::NotAMultiplier;
};

struct SearchResult {
  long long candidates_tested = 0;
  long long prefilter_rejected = 0;
  std::vector<CertificationReport> certified;  // lexicographic order
  std::vector<CandidateRecord> records;         // filled on request
  SearchBox box;
  Rational step;
};

struct SearchOptions {
  int max_results = 1000;
  int threads = 1;
  bool keep_records = false;
};

/// Scans the lattice step * Z^6 inside the box in lexicographic order. Each
/// candidate is screened in floating point (the positivity form and the
/// reduced real part sampled at 64 points; rejection needs a value below
/// -1e-9) and survivors are certified exactly. Throws std::invalid_argument
/// for a nonpositive step, a box outside [-2, 2]^6 or one with no lattice
/// points.
SearchResult grid_search(const SearchBox& box, const Rational& step, const SearchOptions& options = {});

/// Printed decimal versus computed value.
struct ApproxCheck {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Printed rational versus computed exact value.
struct ExactCheck {
  std::string name;
  Rational computed;
  Rational expected;
  bool rational_equal = false;
  bool double_equal = false;  // correctly rounded double of computed == expected
  double relative_difference = 0.0;
  bool pass = false;  // rational_equal or double_equal
};

struct TwoParameterReport {
  AffineValue at_minus_4_25;  // coefficients of (mu1, mu2)
  AffineValue at_0_99;
  std::vector<ApproxCheck> approx;
  std::vector<ExactCheck> exact;
  double A[2] = {0.0, 0.0};
  double B[2] = {0.0, 0.0};

  bool pass() const;
};

/// Constants behind the exclusion of multipliers (mu1, mu2, 0, 0, 0, 0): the
/// affine forms P(-4/25) and P(0.99) and the points where P(0.99) = 0 meets
/// the boundary ellipse (quadratic solved from exact coefficients in 512-bit
/// floating point).
TwoParameterReport two_parameter_exclusion_constants();

struct BoxMembership {
  Multiplier m;
  bool inside = false;
};

struct ThreeParameterReport {
  AffineValue at_minus_66_625;
  AffineValue at_0_8;
  AffineValue at_27_125;
  double mu2_upper = 0.0;  // from P(-66/625) >= 0 with mu1 < sqrt(3), mu3 > 0
  double mu1_lower = 0.0;  // from P(27/125) >= 0 with mu2 < mu2_upper, mu3 > 0
  std::vector<ApproxCheck> approx;
  std::vector<ExactCheck> exact;
  std::vector<BoxMembership> rows;  // reference rows with mu4 = mu5 = mu6 = 0

  bool pass() const;
};

/// Necessary bounds for three-parameter multipliers (mu1, mu2, mu3, 0, 0, 0):
/// 0.41990729 < mu1 < sqrt(3), -1 < mu2 < -0.58852878, 0 < mu3 < 1.
ThreeParameterReport three_parameter_bounds_check();

/// Exact test against the printed three-parameter box.
bool in_three_parameter_box(const Multiplier& m);

}  // namespace bdfstab
