#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bdfstab/gstability.hpp"

namespace bdfstab {

/// Symmetric band matrix stored by diagonals: diag[k][i] = A(i + k, i).
struct SymBand {
  int n = 0;
  int bw = 0;
  std::vector<std::vector<double>> diag;

  SymBand() = default;
  SymBand(int dim, int bandwidth);
  double operator()(int i, int j) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  Eigen::MatrixXd dense() const;
  SymBand scaled(double c) const;
  /// c * I + s * this
  SymBand shifted(double c, double s) const;
};

class NotPositiveDefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Banded Cholesky A = L L^T, L lower with the same bandwidth.
class BandCholesky {
 public:
  explicit BandCholesky(const SymBand& a);
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  int size() const { return l_.n; }

 private:
  SymBand l_;
};

/// A(t) = kappa(t) * base. A constant operator has no kappa.
struct EllipticOperator {
  SymBand base;
  double h = 0.0;
  double length = 1.0;
  std::function<double(double)> kappa;
  double kappa_lipschitz = 0.0;
  std::string kappa_name = "1";
  bool positive_definite = false;
  bool symmetric = true;

  int dim() const { return base.n; }
  bool time_dependent() const { return static_cast<bool>(kappa); }
  double kappa_at(double t) const { return kappa ? kappa(t) : 1.0; }
  /// base itself when constant, so constant and kappa = 1 runs agree bitwise
  SymBand at(double t) const;
  /// Gershgorin bound on lambda_max(base)
  double base_norm_bound() const;
  /// Lip(kappa) * t * base_norm_bound(); reported, not used by the solver
  double sigma(double t) const;

  /// v^T A(0) v
  double energy_sq(const Eigen::VectorXd& v) const;
  /// v^T A(0)^{-1} v
  double dual_sq(const Eigen::VectorXd& v) const;
};

/// (1/h^2) tridiag(-1, 2, -1), h = length / (M + 1), homogeneous Dirichlet.
/// Throws std::invalid_argument for M < 3.
EllipticOperator assemble_laplacian_1d(int M, double length = 1.0);

/// Named kappa families: "1", "1+t/2", "2+sin(t)".
EllipticOperator with_kappa(EllipticOperator op, const std::string& name);

/// Grid points x_1..x_M.
Eigen::VectorXd grid_points(const EllipticOperator& op);

struct Trajectory {
  int q = 0;
  double tau = 0.0;
  std::vector<Eigen::VectorXd> states;         // u^0..u^N
  std::vector<Eigen::VectorXd> perturbations;  // empty, or one per level
  EllipticOperator op;
  bool time_dependent = false;

  int N() const { return static_cast<int>(states.size()) - 1; }
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, int step) : std::runtime_error(what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

/// sum_i alpha_i u^{n+i} + tau A u^{n+q} = tau v^{n+q} for n = 0..N-q with
/// the constant operator A(0); one Cholesky factorization is reused.
/// `perturbations` is empty or has N + 1 entries (levels below q unused).
Trajectory bdf_solve(const BdfMethod& method, const EllipticOperator& op, double tau, int N,
                     const std::vector<Eigen::VectorXd>& starting,
                     const std::vector<Eigen::VectorXd>& perturbations = {});

/// As bdf_solve with A(t^{n+q}) at step n, refactored every step.
Trajectory bdf_solve_timedep(const BdfMethod& method, const EllipticOperator& op, double tau, int N,
                             const std::vector<Eigen::VectorXd>& starting,
                             const std::vector<Eigen::VectorXd>& perturbations = {});

/// q vectors with entries uniform in [-1, 1].
std::vector<Eigen::VectorXd> random_starting(int q, int M, std::uint64_t seed);

struct StabilityRatio {
  double full = 0.0;     // RHS with all tau ||u^j||^2, j < q
  double reduced = 0.0;  // RHS keeping tau ||u^j||^2 only for j >= q - 3
  int argmax = 0;        // level n attaining `full`
};

/// max_n (|u^n|^2 + tau sum_{l=q}^{n} ||u^l||^2) / sum_{j<q} (|u^j|^2 + tau ||u^j||^2).
/// Energy norms use A(0). Throws std::invalid_argument for zero starting data.
StabilityRatio stability_ratio(const Trajectory& traj);

struct EnergyReport {
  std::vector<double> eucl_sq;    // |u^n|^2
  std::vector<double> energy_sq;  // ||u^n||^2
  std::vector<double> dual_sq;    // ||v^n||_*^2, when perturbed
  std::vector<double> g_norm_sq;  // |U^n|_G^2 at index n, from n = q - 1
  std::vector<double> I;          // I_n at index n, from n = q
  double sum_I = 0.0;
  double J = 0.0;
  Rational mu0;
  double decomposition_lhs = 0.0;  // sum I_n
  double decomposition_rhs = 0.0;  // (1 + mu0) sum ||u^n||^2 + J
  double decomposition_residual = 0.0;
  bool telescoping_checked = false;    // homogeneous runs only
  double telescoping_max = 0.0;        // max (G-difference + tau I_n) / scale
  bool telescoping_holds = false;
  double toeplitz_form = 0.0;          // sum l_ij <u^{5+i}, u^{5+j}>
  double boundary_terms = 0.0;         // the i <= k corrections
  double toeplitz_identity_residual = 0.0;
  bool j_lower_bound_holds = false;    // J >= -boundary_terms
  double c1 = 0.0, c2 = 0.0;
  bool g_sandwich_holds = false;
  StabilityRatio ratio;

  bool pass() const;
};

inline constexpr double kLedgerTolerance = 1e-10;

/// Requires q = 6, a G pair for the same multiplier and a constant operator;
/// throws std::invalid_argument otherwise.
EnergyReport energy_ledger(const Trajectory& traj, const Multiplier& m, const GPair& gp,
                           const Rational& mu0 = Rational(-31, 32));

/// Smooth exact solution of u' + A u = f on the operator's grid.
struct ManufacturedSolution {
  std::string name;
  std::function<Eigen::VectorXd(const EllipticOperator&, double)> u;
  std::function<Eigen::VectorXd(const EllipticOperator&, double)> f;
};

/// u = e^{-t} sin(pi x) at the nodes, f = u_t + A_h u with the discrete
/// operator, so the semidiscrete solution is exact and only the time error
/// remains.
ManufacturedSolution decaying_sine();

struct ConvergenceRow {
  double tau = 0.0;
  double error = 0.0;                   // max_n sqrt(h) |u(t^n) - u^n|
  std::optional<double> observed_order;  // log2(e(2 tau) / e(tau))
};

struct ConvergenceTable {
  int q = 0;
  int M = 0;
  double T = 1.0;
  std::string solution;
  std::vector<ConvergenceRow> rows;
};

/// Starting values from the exact solution at t^0..t^{q-1}. Each tau must
/// divide T. Runs for different tau execute on up to `threads` threads.
ConvergenceTable convergence_table(int q, const ManufacturedSolution& sol, int M, const std::vector<double>& taus,
                                   double T = 1.0, int threads = 1);

}  // namespace bdfstab
