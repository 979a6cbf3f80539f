#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bdfstab/multiplier.hpp"

namespace bdfstab {

/// E is negative somewhere; carries an exact point x = cos(phi) with E < 0.
class NotNonnegative : public std::domain_error {
 public:
  NotNonnegative(const std::string& what, Rational witness) : std::domain_error(what), witness_(std::move(witness)) {}
  const Rational& witness() const { return witness_; }

 private:
  Rational witness_;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConstructionFailure : public std::runtime_error {
 public:
  ConstructionFailure(const std::string& what, double residual, double condition)
      : std::runtime_error(what), residual_(residual), condition_(condition) {}
  double residual() const { return residual_; }
  double condition() const { return condition_; }

 private:
  double residual_;
  double condition_;
};

/// Coefficients delta_0..delta_m of a real polynomial with
/// |delta(e^{i phi})|^2 = E(phi), m = degree of E. Roots of the algebraic
/// form are mapped to z^2 - 2 x z + 1 = 0 and the root with |z| <= 1 is kept;
/// zeros on the circle (even multiplicity) are split between z and conj(z).
/// The leading coefficient is positive.
std::vector<double> fejer_riesz(const CosinePolynomial& E);

/// max over an n-point phi grid of ||delta(e^{i phi})|^2 - E(phi)|
double fejer_riesz_mismatch(const CosinePolynomial& E, const std::vector<double>& delta, int n = 10000);

/// Identity (G) witness:
///   (sum alpha_i v^i)(sum mu_j v^j) = |V^1|_G^2 - |V^0|_G^2 + (sum delta_i v^i)^2
/// with V^1 = (v^1..v^q), V^0 = (v^0..v^{q-1}).
struct GPair {
  int q = 0;
  Eigen::MatrixXd G;           // q x q, exactly symmetric
  std::vector<double> delta;   // q + 1
  double residual = 0.0;       // max relative identity mismatch on the validation set
  std::vector<double> alpha;   // q + 1, ascending
  std::vector<double> mu;      // q + 1, ascending coefficients of mu(z)
};

inline constexpr double kGResidualTolerance = 1e-10;

/// Requires condition A; throws std::invalid_argument otherwise and
/// ConstructionFailure when the residual exceeds kGResidualTolerance.
GPair construct_G(const BdfMethod& method, const Multiplier& m);

struct EigenBounds {
  double c1 = 0.0;  // smallest eigenvalue
  double c2 = 0.0;  // largest eigenvalue
};

EigenBounds g_eigen_bounds(const GPair& gp);
EigenBounds symmetric_eigen_bounds(const Eigen::MatrixXd& m);

/// max |LHS - RHS| / (1 + |LHS|) over `count` random sequences with entries
/// (or vector components) uniform in [-1, 1]. dim = 1 is the scalar case;
/// larger dim uses the Euclidean inner product on R^dim.
double identity_residual(const GPair& gp, int count, int dim, std::uint64_t seed);

}  // namespace bdfstab
