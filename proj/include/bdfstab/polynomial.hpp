#pragma once

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bdfstab/rational.hpp"

namespace bdfstab {

/// Dense univariate polynomial with exact rational coefficients.
///
/// Coefficients are stored in ascending powers with trailing zeros trimmed;
/// the zero polynomial has an empty coefficient list and degree -1.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coefficients);
  RationalPolynomial(std::initializer_list<Rational> coefficients);

  static RationalPolynomial constant(const Rational& c);
  static RationalPolynomial monomial(const Rational& c, int power);
  /// x - root
  static RationalPolynomial linear_factor(const Rational& root);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of x^k; zero outside the stored range.
  Rational coefficient(int k) const;
  Rational leading() const;

  Rational operator()(const Rational& x) const;
  double evaluate(double x) const;
  std::complex<double> evaluate(std::complex<double> z) const;

  RationalPolynomial derivative() const;
  RationalPolynomial monic() const;
  RationalPolynomial scaled(const Rational& c) const;
  /// p(-x)
  RationalPolynomial reflected() const;

  RationalPolynomial& operator+=(const RationalPolynomial& other);
  RationalPolynomial& operator-=(const RationalPolynomial& other);
  RationalPolynomial& operator*=(const RationalPolynomial& other);

  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
  friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const RationalPolynomial& b) { return a *= b; }
  friend RationalPolynomial operator-(const RationalPolynomial& a) { return a.scaled(Rational(-1)); }
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::vector<double> to_double() const;
  /// Human-readable form, highest power first, e.g. "-4/9*x^3 + 25/18*x^2".
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

/// Thrown by exact_div when the divisor leaves a remainder.
class DivisionError : public std::runtime_error {
 public:
  explicit DivisionError(RationalPolynomial remainder);
  const RationalPolynomial& remainder() const { return remainder_; }

 private:
  RationalPolynomial remainder_;
};

struct Division {
  RationalPolynomial quotient;
  RationalPolynomial remainder;
};

/// Euclidean division; throws std::domain_error for a zero divisor.
Division divide(const RationalPolynomial& p, const RationalPolynomial& q);

/// Returns r with p = q * r; throws DivisionError otherwise.
RationalPolynomial exact_div(const RationalPolynomial& p, const RationalPolynomial& q);

/// Monic greatest common divisor (zero only when both inputs are zero).
RationalPolynomial gcd(const RationalPolynomial& p, const RationalPolynomial& q);

/// Resultant via the Sylvester determinant (exact Gaussian elimination).
Rational resultant(const RationalPolynomial& p, const RationalPolynomial& q);

struct GcdResultant {
  RationalPolynomial gcd;
  Rational resultant;
};

GcdResultant gcd_resultant(const RationalPolynomial& p, const RationalPolynomial& q);

/// p / gcd(p, p'), monic.
RationalPolynomial squarefree_part(const RationalPolynomial& p);

struct SquarefreeFactor {
  RationalPolynomial factor;  // monic, squarefree, pairwise coprime
  int multiplicity;
};

/// Yun's algorithm: p = lc(p) * prod factor^multiplicity. Constant factors
/// are omitted, so a constant p yields an empty list.
std::vector<SquarefreeFactor> squarefree_factorization(const RationalPolynomial& p);

/// True iff every root of p lies strictly inside the unit disk (Schur-Cohn
/// recursion, exact). Requires deg p >= 0 and p nonzero.
bool roots_inside_unit_disk(const RationalPolynomial& p);

/// Finite cosine series c0 + sum_{k>=1} c_k cos(k x).
class CosinePolynomial {
 public:
  CosinePolynomial() : coeffs_{Rational(0)} {}
  explicit CosinePolynomial(std::vector<Rational> coefficients);
  CosinePolynomial(std::initializer_list<Rational> coefficients);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(int k) const;
  double evaluate(double x) const;

  friend bool operator==(const CosinePolynomial& a, const CosinePolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<Rational> coeffs_;
};

/// Chebyshev polynomial of the first kind, T_k.
RationalPolynomial chebyshev_t(int k);

/// Returns p with p(cos x) = c(x), obtained by cos(kx) -> T_k.
RationalPolynomial cosine_to_algebraic(const CosinePolynomial& c);

}  // namespace bdfstab
