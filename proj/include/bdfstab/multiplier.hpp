#pragma once

#include <string>
#include <vector>

#include "bdfstab/bdf.hpp"
#include "bdfstab/sturm.hpp"

namespace bdfstab {

/// Coefficients (mu_1, ..., mu_k) of the multiplier polynomial
/// mu(z) = z^q - mu_1 z^{q-1} - ... - mu_q. Missing trailing entries are zero.
struct Multiplier {
  std::vector<Rational> mu;

  Rational operator[](int j) const;  // 1-based, zero past the end
  Rational abs_sum() const;
  friend bool operator==(const Multiplier&, const Multiplier&) = default;
};

/// (13/9, -25/36, 1/9, 0, 0, 0): mu(z) = z^3 (z - 1/2)^2 (z - 4/9).
Multiplier six_step_multiplier();

/// Parses each entry with parse_rational.
Multiplier parse_multiplier(const std::vector<std::string>& entries);

std::string to_string(const Multiplier& m);

/// z^q - sum mu_j z^{q-j}. Throws std::invalid_argument if m has more than q
/// entries.
RationalPolynomial multiplier_polynomial(const Multiplier& m, int q);

/// R(phi) = Re[alpha(e^{i phi}) mu(e^{-i phi})] as an exact cosine series.
/// Throws std::invalid_argument unless both polynomials have the same degree.
CosinePolynomial real_part_product(const RationalPolynomial& alpha, const RationalPolynomial& mu_poly);

/// Algebraic form of R in x = cos(phi), divided exactly by (1 - x). Throws
/// std::logic_error if alpha(1) mu(1) != 0 leaves a remainder.
RationalPolynomial reduced_real_part(const RationalPolynomial& alpha, const RationalPolynomial& mu_poly);

struct ConditionAResult {
  NonnegativityCertificate certificate;  // reduced polynomial on [-1, 1], non-strict
  RationalPolynomial reduced;
  bool coprime = false;
  Rational resultant;
  bool mu_roots_inside_disk = false;
  std::vector<std::string> warnings;

  bool pass() const { return certificate.passes() && coprime && mu_roots_inside_disk; }
};

/// Condition A: Re alpha(z)/mu(z) > 0 for |z| > 1. Checked as nonnegativity
/// of the reduced real part on the circle, coprimality of alpha and mu, and
/// all roots of mu strictly inside the unit disk (so alpha/mu is analytic
/// outside it). Interior zeros on the circle are accepted with a warning.
ConditionAResult check_condition_A(const BdfMethod& method, const Multiplier& m);
ConditionAResult check_condition_A(const RationalPolynomial& alpha, const Multiplier& m);

struct P1Result {
  Rational value;  // 1 - sum |mu_j|
  bool pass = false;
};

P1Result check_P1(const Multiplier& m);

struct P2Result {
  NonnegativityCertificate certificate;  // strict
  RationalPolynomial polynomial;         // 1 - sum mu_k T_k(x)
  double min_value = 0.0;

  bool pass() const { return certificate.passes(); }
};

P2Result check_P2(const Multiplier& m);

enum class Verdict { Multiplier, NevanlinnaOdehMultiplier, NotAMultiplier };

std::string to_string(Verdict v);

struct CertificationReport {
  int q = 0;
  Multiplier m;
  ConditionAResult condA;
  P1Result condP1;
  P2Result condP2;
  Verdict verdict = Verdict::NotAMultiplier;
  /// P_poly = scaling_constant * condA.reduced. For q = 6 this is the affine
  /// family of general_P.
  RationalPolynomial P_poly;
  Rational scaling_constant;

  bool is_multiplier() const { return verdict != Verdict::NotAMultiplier; }
};

CertificationReport certify(const BdfMethod& method, const Multiplier& m);

/// Normalization applied to the reduced real part: 15 for q = 6 (clears the
/// denominators of the six-step family), 1 otherwise.
Rational reduced_scaling(int q);

/// P(x; m) = base(x) + sum_i mu_i * coefficient_i(x), built from the
/// reduction of alpha against mu = z^q (base) and mu = -z^{q-i}.
struct AffineFamily {
  int q = 0;
  RationalPolynomial base;
  std::vector<RationalPolynomial> coefficients;  // index i-1 for mu_i
  Rational scaling;

  RationalPolynomial operator()(const Multiplier& m) const;
};

AffineFamily condition_a_family(const BdfMethod& method);

/// The positivity form 1 - sum mu_k T_k(x) as an affine family.
AffineFamily positivity_family(int q);

/// Six-step P(x; m), scaled by reduced_scaling(6).
RationalPolynomial general_P(const Multiplier& m);

/// Affine functional m -> P(x0; m) = base + sum c_i mu_i.
struct AffineValue {
  Rational x;
  Rational base;
  std::vector<Rational> coefficients;
};

AffineValue evaluate_family(const AffineFamily& family, const Rational& x, int used = -1);

/// Bound showing that sum |mu_i| <= 1 forces P(3/40; m) < 0 for the six-step
/// method: P(3/40) <= base + max|c_i| * sum|mu_i| <= base + max|c_i|.
struct NonexistenceReport {
  AffineValue value;
  Rational max_abs_coefficient;
  Rational abs_coefficient_sum;
  Rational bound;  // base + max |c_i|
  bool bound_negative = false;
  bool below_threshold = false;  // bound < -1.42
  double display_base = -15.1563;
  double display_max = 13.7341;
  bool matches_display = false;  // both within 1e-3

  bool pass() const { return bound_negative && below_threshold && matches_display; }
};

NonexistenceReport nevanlinna_odeh_nonexistence();

}  // namespace bdfstab
