#include "bdfstab/parabolic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace bdfstab {

SymBand::SymBand(int dim, int bandwidth) : n(dim), bw(bandwidth), diag(bandwidth + 1) {
  for (int k = 0; k <= bw; ++k) diag[k].assign(std::max(0, n - k), 0.0);
}

double SymBand::operator()(int i, int j) const {
  const int k = std::abs(i - j);
  return k > bw ? 0.0 : diag[k][std::min(i, j)];
}

Eigen::VectorXd SymBand::apply(const Eigen::VectorXd& v) const {
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) out(i) = diag[0][i] * v(i);
  for (int k = 1; k <= bw; ++k) {
    for (int i = 0; i + k < n; ++i) {
      out(i + k) += diag[k][i] * v(i);
      out(i) += diag[k][i] * v(i + k);
    }
  }
  return out;
}

Eigen::MatrixXd SymBand::dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k <= bw; ++k)
    for (int i = 0; i + k < n; ++i) out(i + k, i) = out(i, i + k) = diag[k][i];
  return out;
}

SymBand SymBand::scaled(double c) const {
  SymBand out = *this;
  for (auto& d : out.diag)
    for (double& v : d) v *= c;
  return out;
}

SymBand SymBand::shifted(double c, double s) const {
  SymBand out = scaled(s);
  for (double& v : out.diag[0]) v += c;
  return out;
}

BandCholesky::BandCholesky(const SymBand& a) : l_(a.n, a.bw) {
  const int n = a.n, p = a.bw;
  auto L = [&](int i, int j) -> double& { return l_.diag[i - j][j]; };
  for (int j = 0; j < n; ++j) {
    double d = a.diag[0][j];
    for (int k = std::max(0, j - p); k < j; ++k) d -= L(j, k) * L(j, k);
    if (!(d > 0.0)) throw NotPositiveDefinite("band Cholesky: nonpositive pivot at row " + std::to_string(j));
    const double ljj = std::sqrt(d);
    L(j, j) = ljj;
    for (int i = j + 1; i <= std::min(n - 1, j + p); ++i) {
      double s = a.diag[i - j][j];
      for (int k = std::max(0, i - p); k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / ljj;
    }
  }
}

Eigen::VectorXd BandCholesky::solve(const Eigen::VectorXd& b) const {
  const int n = l_.n, p = l_.bw;
  auto L = [&](int i, int j) { return l_.diag[i - j][j]; };
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    double s = b(i);
    for (int k = std::max(0, i - p); k < i; ++k) s -= L(i, k) * y(k);
    y(i) = s / L(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = y(i);
    for (int k = i + 1; k <= std::min(n - 1, i + p); ++k) s -= L(k, i) * y(k);
    y(i) = s / L(i, i);
  }
  return y;
}

SymBand EllipticOperator::at(double t) const { return kappa ? base.scaled(kappa(t)) : base; }

double EllipticOperator::base_norm_bound() const {
  double best = 0.0;
  for (int i = 0; i < base.n; ++i) {
    double row = 0.0;
    for (int j = std::max(0, i - base.bw); j <= std::min(base.n - 1, i + base.bw); ++j) row += std::abs(base(i, j));
    best = std::max(best, row);
  }
  return best;
}

double EllipticOperator::sigma(double t) const { return kappa_lipschitz * t * base_norm_bound(); }

double EllipticOperator::energy_sq(const Eigen::VectorXd& v) const { return v.dot(at(0.0).apply(v)); }

double EllipticOperator::dual_sq(const Eigen::VectorXd& v) const { return v.dot(BandCholesky(at(0.0)).solve(v)); }

EllipticOperator assemble_laplacian_1d(int M, double length) {
  if (M < 3) throw std::invalid_argument("assemble_laplacian_1d needs M >= 3");
  if (!(length > 0)) throw std::invalid_argument("length must be positive");
  EllipticOperator op;
  op.length = length;
  op.h = length / (M + 1);
  const double s = 1.0 / (op.h * op.h);
  op.base = SymBand(M, 1);
  std::fill(op.base.diag[0].begin(), op.base.diag[0].end(), 2 * s);
  std::fill(op.base.diag[1].begin(), op.base.diag[1].end(), -s);
  op.symmetric = true;
  try {
    BandCholesky check(op.base);
    op.positive_definite = true;
  } catch (const NotPositiveDefinite&) {
    op.positive_definite = false;
  }
  return op;
}

EllipticOperator with_kappa(EllipticOperator op, const std::string& name) {
  if (name == "1") {
    op.kappa = [](double) { return 1.0; };
    op.kappa_lipschitz = 0.0;
  } else if (name == "1+t/2") {
    op.kappa = [](double t) { return 1.0 + t / 2; };
    op.kappa_lipschitz = 0.5;
  } else if (name == "2+sin(t)") {
    op.kappa = [](double t) { return 2.0 + std::sin(t); };
    op.kappa_lipschitz = 1.0;
  } else {
    throw std::invalid_argument("unknown kappa family '" + name + "'");
  }
  op.kappa_name = name;
  return op;
}

Eigen::VectorXd grid_points(const EllipticOperator& op) {
  Eigen::VectorXd x(op.dim());
  for (int i = 0; i < op.dim(); ++i) x(i) = (i + 1) * op.h;
  return x;
}

namespace {

void check_inputs(const BdfMethod& method, const EllipticOperator& op, double tau, int N,
                  const std::vector<Eigen::VectorXd>& starting, const std::vector<Eigen::VectorXd>& perturbations) {
  if (!(tau > 0)) throw std::invalid_argument("tau must be positive");
  if (N < method.q) throw std::invalid_argument("N must be at least q");
  if (static_cast<int>(starting.size()) != method.q)
    throw std::invalid_argument("need exactly q starting vectors");
  for (const auto& s : starting)
    if (s.size() != op.dim()) throw std::invalid_argument("starting vector has the wrong dimension");
  if (!perturbations.empty()) {
    if (static_cast<int>(perturbations.size()) != N + 1)
      throw std::invalid_argument("perturbations need one vector per level");
    for (const auto& v : perturbations)
      if (v.size() != op.dim()) throw std::invalid_argument("perturbation has the wrong dimension");
  }
}

template <class Factor>
Trajectory run(const BdfMethod& method, const EllipticOperator& op, double tau, int N,
               const std::vector<Eigen::VectorXd>& starting, const std::vector<Eigen::VectorXd>& perturbations,
               Factor&& factor_for_step) {
  check_inputs(method, op, tau, N, starting, perturbations);
  const int q = method.q;
  std::vector<double> a(q + 1);
  for (int i = 0; i <= q; ++i) a[i] = to_double(method.alpha.coefficient(i));

  Trajectory tr;
  tr.q = q;
  tr.tau = tau;
  tr.op = op;
  tr.perturbations = perturbations;
  tr.states = starting;
  tr.states.reserve(N + 1);
  for (int n = 0; n + q <= N; ++n) {
    Eigen::VectorXd rhs = -a[0] * tr.states[n];
    for (int i = 1; i < q; ++i) rhs -= a[i] * tr.states[n + i];
    if (!perturbations.empty()) rhs += tau * perturbations[n + q];
    Eigen::VectorXd next = factor_for_step(n).solve(rhs);
    if (!next.allFinite()) throw DivergenceError("non-finite state at level " + std::to_string(n + q), n + q);
    tr.states.push_back(std::move(next));
  }
  return tr;
}

}  // namespace

Trajectory bdf_solve(const BdfMethod& method, const EllipticOperator& op, double tau, int N,
                     const std::vector<Eigen::VectorXd>& starting,
                     const std::vector<Eigen::VectorXd>& perturbations) {
  const double aq = to_double(method.alpha.coefficient(method.q));
  std::optional<BandCholesky> chol;
  auto tr = run(method, op, tau, N, starting, perturbations, [&](int) -> const BandCholesky& {
    if (!chol) chol.emplace(op.at(0.0).shifted(aq, tau));
    return *chol;
  });
  tr.time_dependent = false;
  return tr;
}

Trajectory bdf_solve_timedep(const BdfMethod& method, const EllipticOperator& op, double tau, int N,
                             const std::vector<Eigen::VectorXd>& starting,
                             const std::vector<Eigen::VectorXd>& perturbations) {
  const double aq = to_double(method.alpha.coefficient(method.q));
  std::optional<BandCholesky> chol;
  auto tr = run(method, op, tau, N, starting, perturbations, [&](int n) -> const BandCholesky& {
    const double t = (n + method.q) * tau;
    if (!(op.kappa_at(t) > 0)) throw std::invalid_argument("kappa must stay positive");
    chol.emplace(op.at(t).shifted(aq, tau));
    return *chol;
  });
  tr.time_dependent = true;
  return tr;
}

std::vector<Eigen::VectorXd> random_starting(int q, int M, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Eigen::VectorXd> out(q, Eigen::VectorXd(M));
  for (auto& v : out)
    for (int i = 0; i < M; ++i) v(i) = u(rng);
  return out;
}

StabilityRatio stability_ratio(const Trajectory& traj) {
  const int q = traj.q;
  double rhs_full = 0.0, rhs_reduced = 0.0;
  for (int j = 0; j < q; ++j) {
    const double e = traj.states[j].squaredNorm();
    const double a = traj.tau * traj.op.energy_sq(traj.states[j]);
    rhs_full += e + a;
    rhs_reduced += e + (j >= q - 3 ? a : 0.0);
  }
  if (!(rhs_full > 0)) throw std::invalid_argument("stability ratio undefined for zero starting data");
  StabilityRatio r;
  double dissipation = 0.0;
  for (int n = q; n <= traj.N(); ++n) {
    dissipation += traj.tau * traj.op.energy_sq(traj.states[n]);
    const double lhs = traj.states[n].squaredNorm() + dissipation;
    if (lhs / rhs_full > r.full) {
      r.full = lhs / rhs_full;
      r.argmax = n;
    }
    if (rhs_reduced > 0) r.reduced = std::max(r.reduced, lhs / rhs_reduced);
  }
  return r;
}

bool EnergyReport::pass() const {
  return decomposition_residual <= kLedgerTolerance && (!telescoping_checked || telescoping_holds) &&
         toeplitz_identity_residual <= kLedgerTolerance && j_lower_bound_holds && g_sandwich_holds;
}

EnergyReport energy_ledger(const Trajectory& traj, const Multiplier& m, const GPair& gp, const Rational& mu0) {
  if (traj.q != 6 || gp.q != 6) throw std::invalid_argument("energy ledger needs q = 6");
  if (traj.time_dependent || traj.op.time_dependent())
    throw std::invalid_argument("energy ledger needs a constant operator");
  const RationalPolynomial mp = multiplier_polynomial(m, 6);
  for (int i = 0; i <= 6; ++i)
    if (std::abs(gp.mu[i] - to_double(mp.coefficient(i))) > 1e-15)
      throw std::invalid_argument("G pair belongs to a different multiplier");
  const int N = traj.N();
  if (N < 6) throw std::invalid_argument("trajectory too short");
  const auto& u = traj.states;
  const SymBand A = traj.op.at(0.0);
  std::vector<Eigen::VectorXd> Au(N + 1);
  for (int n = 0; n <= N; ++n) Au[n] = A.apply(u[n]);
  auto ip = [&](int a, int b) { return u[a].dot(Au[b]); };

  std::vector<double> mu(7, 0.0);  // mu[0] = mu0
  mu[0] = to_double(mu0);
  int k = 0;
  for (int j = 1; j <= 6; ++j) {
    mu[j] = to_double(m[j]);
    if (m[j] != 0) k = j;
  }

  EnergyReport r;
  r.mu0 = mu0;
  r.eucl_sq.resize(N + 1);
  r.energy_sq.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    r.eucl_sq[n] = u[n].squaredNorm();
    r.energy_sq[n] = ip(n, n);
  }
  for (const auto& v : traj.perturbations) r.dual_sq.push_back(traj.op.dual_sq(v));

  // |U^n|_G^2 with U^n = (u^{n-5}, ..., u^n)
  r.g_norm_sq.assign(N + 1, 0.0);
  const auto eb = g_eigen_bounds(gp);
  r.c1 = eb.c1;
  r.c2 = eb.c2;
  r.g_sandwich_holds = true;
  for (int n = 5; n <= N; ++n) {
    double s = 0.0, window = 0.0;
    for (int i = 0; i < 6; ++i) {
      window += r.eucl_sq[n - 5 + i];
      for (int j = 0; j < 6; ++j) s += gp.G(i, j) * u[n - 5 + i].dot(u[n - 5 + j]);
    }
    r.g_norm_sq[n] = s;
    const double tol = kLedgerTolerance * (std::abs(s) + window);
    if (!(eb.c1 * r.eucl_sq[n] <= s + tol && s <= eb.c2 * window + tol)) r.g_sandwich_holds = false;
  }

  // I_n = <u^n, u^n - sum mu_j u^{n-j}>
  r.I.assign(N + 1, 0.0);
  for (int n = 6; n <= N; ++n) {
    double s = ip(n, n);
    for (int j = 1; j <= 6; ++j) s -= mu[j] * ip(n, n - j);
    r.I[n] = s;
    r.sum_I += s;
  }

  // J_m = -sum_{j=0}^{6} mu_j sum_{i=1}^{m-5} <u^{5+i}, u^{5+i-j}>
  double sum_energy = 0.0;
  for (int n = 6; n <= N; ++n) sum_energy += r.energy_sq[n];
  for (int j = 0; j <= 6; ++j) {
    double s = 0.0;
    for (int i = 1; i <= N - 5; ++i) s += ip(5 + i, 5 + i - j);
    r.J -= mu[j] * s;
  }
  r.decomposition_lhs = r.sum_I;
  r.decomposition_rhs = (1.0 + mu[0]) * sum_energy + r.J;
  double magnitude = sum_energy;
  for (int j = 1; j <= 6; ++j) magnitude += std::abs(mu[j]) * sum_energy;
  r.decomposition_residual = std::abs(r.decomposition_lhs - r.decomposition_rhs) / std::max(magnitude, 1e-300);
  if (magnitude == 0.0) r.decomposition_residual = std::abs(r.decomposition_lhs - r.decomposition_rhs);

  // telescoping: |U^n|_G^2 - |U^{n-1}|_G^2 + tau I_n <= 0 for the homogeneous scheme
  r.telescoping_checked = traj.perturbations.empty();
  r.telescoping_holds = true;
  for (int n = 6; n <= N; ++n) {
    const double v = r.g_norm_sq[n] - r.g_norm_sq[n - 1] + traj.tau * r.I[n];
    const double scale = std::abs(r.g_norm_sq[n]) + std::abs(r.g_norm_sq[n - 1]) + traj.tau * std::abs(r.I[n]);
    const double rel = scale > 0 ? v / scale : v;
    r.telescoping_max = n == 6 ? rel : std::max(r.telescoping_max, rel);
    if (v > kLedgerTolerance * scale) r.telescoping_holds = false;
  }

  // sum_{i,j} l_ij <u^{5+i}, u^{5+j}> with l_{i,i-j} = -mu_j
  const int dim = N - 5;
  for (int i = 1; i <= dim; ++i)
    for (int j = 0; j <= 6 && i - j >= 1; ++j) r.toeplitz_form -= mu[j] * ip(5 + i, 5 + i - j);
  for (int i = 1; i <= k; ++i)
    for (int j = i; j <= k; ++j) r.boundary_terms += mu[j] * ip(5 + i, 5 + i - j);
  const double tmag = std::max(magnitude, 1e-300);
  r.toeplitz_identity_residual = std::abs(r.toeplitz_form - (r.J + r.boundary_terms)) / tmag;
  if (magnitude == 0.0) r.toeplitz_identity_residual = std::abs(r.toeplitz_form - (r.J + r.boundary_terms));
  r.j_lower_bound_holds = r.J >= -r.boundary_terms - kLedgerTolerance * magnitude;

  const bool nonzero_start = std::any_of(u.begin(), u.begin() + 6, [](const auto& v) { return v.squaredNorm() > 0; });
  if (nonzero_start) r.ratio = stability_ratio(traj);
  return r;
}

ManufacturedSolution decaying_sine() {
  ManufacturedSolution s;
  s.name = "exp(-t) sin(pi x)";
  s.u = [](const EllipticOperator& op, double t) -> Eigen::VectorXd {
    const Eigen::VectorXd x = grid_points(op);
    return std::exp(-t) * (std::numbers::pi * x / op.length).array().sin().matrix();
  };
  s.f = [u = s.u](const EllipticOperator& op, double t) -> Eigen::VectorXd {
    const Eigen::VectorXd v = u(op, t);
    return op.at(t).apply(v) - v;
  };
  return s;
}

ConvergenceTable convergence_table(int q, const ManufacturedSolution& sol, int M, const std::vector<double>& taus,
                                   double T, int threads) {
  const BdfMethod method = bdf_alpha(q);
  const EllipticOperator op = assemble_laplacian_1d(M);
  ConvergenceTable table;
  table.q = q;
  table.M = M;
  table.T = T;
  table.solution = sol.name;
  table.rows.resize(taus.size());
  std::vector<int> steps(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double n = T / taus[i];
    steps[i] = static_cast<int>(std::lround(n));
    if (!(taus[i] > 0) || std::abs(n - steps[i]) > 1e-9 * n) throw std::invalid_argument("tau must divide T");
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < taus.size(); i = next++) {
      const double tau = taus[i];
      const int N = steps[i];
      std::vector<Eigen::VectorXd> start, forcing(N + 1);
      for (int j = 0; j < q; ++j) start.push_back(sol.u(op, j * tau));
      for (int n = 0; n <= N; ++n) forcing[n] = n >= q ? sol.f(op, n * tau) : Eigen::VectorXd::Zero(M);
      const Trajectory tr = bdf_solve(method, op, tau, N, start, forcing);
      double err = 0.0;
      for (int n = 0; n <= N; ++n) err = std::max(err, std::sqrt(op.h) * (sol.u(op, n * tau) - tr.states[n]).norm());
      table.rows[i].tau = tau;
      table.rows[i].error = err;
    }
  };
  const int t = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(taus.size(), 1)));
  std::vector<std::thread> pool;
  for (int i = 1; i < t; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (std::size_t i = 1; i < taus.size(); ++i) {
    const auto& a = table.rows[i - 1];
    auto& b = table.rows[i];
    b.observed_order = std::log(a.error / b.error) / std::log(a.tau / b.tau);
  }
  return table;
}

}  // namespace bdfstab
