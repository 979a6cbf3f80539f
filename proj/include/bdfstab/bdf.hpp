#pragma once

#include <complex>

#include "bdfstab/polynomial.hpp"

namespace bdfstab {

/// q-step backward differentiation formula with generating polynomials
/// alpha(z) = sum_{j=1}^q (1/j) z^{q-j} (z-1)^j and beta(z) = z^q.
struct BdfMethod {
  int q = 0;
  RationalPolynomial alpha;
  RationalPolynomial beta;
};

/// Throws std::invalid_argument unless 1 <= q <= 6.
BdfMethod bdf_alpha(int q);

struct StabilityAngle {
  int q = 0;
  double theta_degrees = 0.0;
  int locus_samples = 0;
};

inline constexpr int kDefaultLocusSamples = 100000;

/// A(theta) angle from the boundary locus alpha(e^{i phi}) / e^{i q phi}:
/// theta = pi - sup |arg|, taken on a uniform phi grid starting at 1e-6 and
/// refined by golden-section search around the largest sample. q = 1, 2
/// return 90 degrees without sampling. Requires samples >= 10^4.
StabilityAngle stability_angle(int q, int samples = kDefaultLocusSamples);

/// cos(theta_q): lower bound for |mu_1| + ... + |mu_q| of any multiplier.
double multiplier_lower_bound(int q);

/// alpha(e^{i phi}) / e^{i q phi}
std::complex<double> boundary_locus(const BdfMethod& method, double phi);

}  // namespace bdfstab
