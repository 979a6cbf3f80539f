#pragma once

#include <string>
#include <vector>

#include "bdfstab/polynomial.hpp"

namespace bdfstab {

/// Sturm chain p, p', -rem(p, p'), ... of a nonzero polynomial.
class SturmSequence {
 public:
  explicit SturmSequence(const RationalPolynomial& p);

  /// Sign variations of the chain immediately to the right of x. Where a
  /// member vanishes at x its right-hand sign is taken from the first
  /// nonvanishing derivative, so no endpoint perturbation is needed.
  int variations_right_of(const Rational& x) const;

  /// Number of distinct real roots in (a, b].
  int count(const Rational& a, const Rational& b) const;

  const std::vector<RationalPolynomial>& chain() const { return chain_; }

 private:
  std::vector<RationalPolynomial> chain_;
};

/// Exact count of distinct real roots of p in (a, b]. Throws
/// std::invalid_argument for the zero polynomial or a >= b.
int sturm_root_count(const RationalPolynomial& p, const Rational& a, const Rational& b);

/// A real root located in (lo, hi], or exactly at lo == hi.
struct RootInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
};

/// Isolating intervals for the distinct real roots of p in [a, b], sorted.
/// Each interval is refined until its width is at most `width` (pass zero to
/// skip refinement).
std::vector<RootInterval> isolate_roots(const RationalPolynomial& p, const Rational& a, const Rational& b,
                                        const Rational& width = Rational(0));

enum class Positivity { StrictlyPositive, NonnegativeWithZeros, Negative };

std::string to_string(Positivity v);

struct SignWitness {
  Rational lo;
  Rational hi;
  std::string evidence;
};

struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

/// Evidence that a polynomial is (or is not) nonnegative on an interval.
///
/// A Negative verdict always carries a rational point with an exactly
/// negative value as its first witness. StrictlyPositive is backed by a zero
/// Sturm count on [a, b] and an exactly positive sample value. The minimum is
/// a floating-point refinement and carries no certification weight.
struct NonnegativityCertificate {
  Positivity verdict = Positivity::Negative;
  bool strict = false;
  std::vector<SignWitness> witnesses;
  Extremum minimum;

  /// Strict mode requires StrictlyPositive; otherwise anything but Negative.
  bool passes() const {
    return strict ? verdict == Positivity::StrictlyPositive : verdict != Positivity::Negative;
  }
};

/// Absolute tolerance on the location of refined extrema.
inline constexpr double kExtremumTolerance = 1e-13;

NonnegativityCertificate nonneg_on_interval(const RationalPolynomial& p, const Rational& a, const Rational& b,
                                            bool strict);

struct IntervalExtrema {
  Extremum min;
  Extremum max;
};

/// Minimum and maximum of p on [a, b]: critical points are isolated exactly
/// and bisected to kExtremumTolerance, values are evaluated exactly at the
/// refined rational points before rounding.
IntervalExtrema extrema_on_interval(const RationalPolynomial& p, const Rational& a, const Rational& b);

}  // namespace bdfstab
