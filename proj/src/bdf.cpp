#include "bdfstab/bdf.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bdfstab {

BdfMethod bdf_alpha(int q) {
  if (q < 1 || q > 6) throw std::invalid_argument("BDF order must lie in 1..6, got " + std::to_string(q));
  const RationalPolynomial z_minus_1{-1, 1};
  RationalPolynomial alpha;
  RationalPolynomial power{1};
  for (int j = 1; j <= q; ++j) {
    power *= z_minus_1;
    alpha += (power * RationalPolynomial::monomial(1, q - j)).scaled(Rational(1, j));
  }
  return {q, alpha, RationalPolynomial::monomial(1, q)};
}

std::complex<double> boundary_locus(const BdfMethod& method, double phi) {
  const auto& c = method.alpha.coefficients();
  std::complex<double> sum = 0.0;
  for (int k = 0; k < static_cast<int>(c.size()); ++k) {
    sum += to_double(c[k]) * std::polar(1.0, (k - method.q) * phi);
  }
  return sum;
}

StabilityAngle stability_angle(int q, int samples) {
  if (q < 1 || q > 6) throw std::invalid_argument("BDF order must lie in 1..6, got " + std::to_string(q));
  if (q <= 2) return {q, 90.0, 0};
  if (samples < 10000) throw std::invalid_argument("stability_angle needs at least 10^4 samples");

  const BdfMethod method = bdf_alpha(q);
  auto g = [&](double phi) { return std::abs(std::arg(boundary_locus(method, phi))); };

  const double lo = 1e-6;
  const double hi = std::numbers::pi;
  const double h = (hi - lo) / (samples - 1);
  int best = 0;
  double best_value = g(lo);
  for (int i = 1; i < samples; ++i) {
    const double v = g(lo + i * h);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }

  // golden-section search for the maximum on the bracketing cells
  double a = lo + std::max(best - 1, 0) * h;
  double b = lo + std::min(best + 1, samples - 1) * h;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - r * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + r * (b - a);
      gd = g(d);
    }
  }
  best_value = std::max({best_value, gc, gd});
  const double theta = std::numbers::pi - best_value;
  return {q, theta * 180.0 / std::numbers::pi, samples};
}

double multiplier_lower_bound(int q) {
  return std::cos(stability_angle(q).theta_degrees * std::numbers::pi / 180.0);
}

}  // namespace bdfstab
