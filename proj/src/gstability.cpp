#include "bdfstab/gstability.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace bdfstab {

namespace {

using cplx = std::complex<double>;

// Roots of a squarefree rational polynomial: companion eigenvalues polished
// by Newton steps on the original coefficients.
std::vector<cplx> numeric_roots(const RationalPolynomial& f) {
  const int n = f.degree();
  std::vector<cplx> roots;
  if (n < 1) return roots;
  const auto c = f.monic().to_double();
  if (n == 1) return {cplx(-c[0], 0.0)};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i];
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  if (es.info() != Eigen::Success) throw NumericalFailure("companion eigenvalues did not converge");
  const RationalPolynomial df = f.derivative();
  for (int i = 0; i < n; ++i) {
    cplx z = es.eigenvalues()[i];
    for (int it = 0; it < 4; ++it) {
      const cplx d = df.evaluate(z);
      if (std::abs(d) == 0.0) break;
      const cplx step = f.evaluate(z) / d;
      z -= step;
      if (std::abs(step) <= 1e-17 * (1 + std::abs(z))) break;
    }
    roots.push_back(z);
  }
  return roots;
}

// Root of z^2 - 2 x z + 1 with |z| <= 1.
cplx inner_root(cplx x) {
  const cplx w = std::sqrt(x * x - 1.0);
  const cplx a = x + w, b = x - w;
  return std::abs(a) <= std::abs(b) ? a : b;
}

std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1.0};
  for (const cplx& s : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= s * c[k];
    }
    c = std::move(next);
  }
  return c;
}

cplx eval_ascending(const std::vector<cplx>& c, cplx z) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double eval_real(const std::vector<double>& c, cplx z, bool squared_abs) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return squared_abs ? std::norm(acc) : acc.real();
}

std::vector<double> to_doubles(const RationalPolynomial& p, int size) {
  std::vector<double> out(size, 0.0);
  for (int k = 0; k <= p.degree() && k < size; ++k) out[k] = to_double(p.coefficient(k));
  return out;
}

}  // namespace

std::vector<double> fejer_riesz(const CosinePolynomial& E) {
  const RationalPolynomial p = cosine_to_algebraic(E);
  if (p.is_zero()) return {0.0};
  const auto cert = nonneg_on_interval(p, Rational(-1), Rational(1), false);
  if (!cert.passes()) {
    const Rational w = cert.witnesses.empty() ? Rational(0) : cert.witnesses.front().lo;
    throw NotNonnegative("cosine polynomial is negative at x = " + to_string(w), w);
  }

  std::vector<cplx> zs;
  for (const auto& [factor, k] : squarefree_factorization(p)) {
    RationalPolynomial f = factor;
    for (const int end : {1, -1}) {
      if (f(Rational(end)) == 0) {
        f = exact_div(f, RationalPolynomial::linear_factor(Rational(end)));
        for (int i = 0; i < k; ++i) zs.emplace_back(static_cast<double>(end), 0.0);
      }
    }
    std::vector<cplx> roots = numeric_roots(f);
    const int interior = f.degree() >= 1 ? sturm_root_count(f, Rational(-1), Rational(1)) : 0;
    if (interior > 0 && k % 2 != 0) throw NumericalFailure("odd-multiplicity zero inside (-1, 1)");
    // the interior roots are the ones nearest the real segment
    std::vector<std::size_t> order(roots.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto dist = [&](std::size_t i) {
      const cplx r = roots[i];
      const double re = std::clamp(r.real(), -1.0, 1.0);
      return std::abs(r - cplx(re, 0.0));
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist(a) < dist(b); });
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
      const cplx r = roots[order[idx]];
      if (static_cast<int>(idx) < interior) {
        const double x = std::clamp(r.real(), -1.0, 1.0);
        const cplx s(x, std::sqrt(std::max(0.0, 1.0 - x * x)));
        for (int i = 0; i < k / 2; ++i) {
          zs.push_back(s);
          zs.push_back(std::conj(s));
        }
      } else {
        const cplx s = inner_root(std::abs(r.imag()) < 1e-300 ? cplx(r.real(), 0.0) : r);
        for (int i = 0; i < k; ++i) zs.push_back(s);
      }
    }
  }

  std::vector<cplx> d = poly_from_roots(zs);
  // scale at the point of the circle where |d| is largest among a few samples
  double best = -1.0, phi0 = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double phi = std::numbers::pi * (i + 0.5) / 64;
    const double v = std::abs(eval_ascending(d, std::polar(1.0, phi)));
    if (v > best) best = v, phi0 = phi;
  }
  const double e0 = E.evaluate(phi0);
  if (!(best > 0.0) || !(e0 > 0.0)) throw NumericalFailure("no usable normalization point");
  const double K = std::sqrt(e0) / best;

  std::vector<double> delta(d.size());
  double scale = 0.0;
  for (const cplx& c : d) scale = std::max(scale, std::abs(c));
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (std::abs(d[k].imag()) > 1e-8 * std::max(1.0, scale)) throw NumericalFailure("factor is not real");
    delta[k] = K * d[k].real();
  }
  if (delta.back() < 0) for (double& v : delta) v = -v;
  return delta;
}

double fejer_riesz_mismatch(const CosinePolynomial& E, const std::vector<double>& delta, int n) {
  double worst = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double phi = std::numbers::pi * i / n;
    worst = std::max(worst, std::abs(eval_real(delta, std::polar(1.0, phi), true) - E.evaluate(phi)));
  }
  return worst;
}

GPair construct_G(const BdfMethod& method, const Multiplier& m) {
  const int q = method.q;
  const auto condA = check_condition_A(method, m);
  if (!condA.pass()) throw std::invalid_argument("condition A fails for " + to_string(m));
  const RationalPolynomial mu_poly = multiplier_polynomial(m, q);
  const CosinePolynomial E = real_part_product(method.alpha, mu_poly);

  GPair gp;
  gp.q = q;
  gp.alpha = to_doubles(method.alpha, q + 1);
  gp.mu = to_doubles(mu_poly, q + 1);
  gp.delta = fejer_riesz(E);
  gp.delta.resize(q + 1, 0.0);

  // S - delta delta^T = G placed at 1..q minus G placed at 0..q-1, entry by
  // entry over i <= j; unknowns are g_ij with 1 <= i <= j <= q.
  const int n = q + 1;
  auto unknown = [q](int i, int j) {  // 1-based, i <= j
    if (i > j) std::swap(i, j);
    return (i - 1) * q - (i - 1) * (i - 2) / 2 + (j - i);
  };
  const int unknowns = q * (q + 1) / 2;
  const int equations = n * (n + 1) / 2;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(equations, unknowns);
  Eigen::VectorXd b(equations);
  int row = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j, ++row) {
      b(row) = 0.5 * (gp.alpha[i] * gp.mu[j] + gp.mu[i] * gp.alpha[j]) - gp.delta[i] * gp.delta[j];
      if (i >= 1) A(row, unknown(i, j)) += 1.0;
      if (j <= q - 1) A(row, unknown(i + 1, j + 1)) -= 1.0;
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  const Eigen::VectorXd g = qr.solve(b);
  gp.G = Eigen::MatrixXd::Zero(q, q);
  for (int i = 1; i <= q; ++i)
    for (int j = 1; j <= q; ++j) gp.G(i - 1, j - 1) = g(unknown(i, j));

  gp.residual = identity_residual(gp, 100, 1, 20240601);
  if (!(gp.residual <= kGResidualTolerance)) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& sv = svd.singularValues();
    const double cond = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
    throw ConstructionFailure("identity residual " + std::to_string(gp.residual) + " exceeds tolerance", gp.residual,
                              cond);
  }
  return gp;
}

EigenBounds symmetric_eigen_bounds(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalFailure("symmetric eigensolver did not converge");
  const auto& ev = es.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

EigenBounds g_eigen_bounds(const GPair& gp) { return symmetric_eigen_bounds(gp.G); }

double identity_residual(const GPair& gp, int count, int dim, std::uint64_t seed) {
  const int q = gp.q;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  Eigen::MatrixXd v(dim, q + 1);
  for (int t = 0; t < count; ++t) {
    for (int i = 0; i <= q; ++i)
      for (int c = 0; c < dim; ++c) v(c, i) = u(rng);
    Eigen::VectorXd a = Eigen::VectorXd::Zero(dim), m = a, d = a;
    for (int i = 0; i <= q; ++i) {
      a += gp.alpha[i] * v.col(i);
      m += gp.mu[i] * v.col(i);
      d += gp.delta[i] * v.col(i);
    }
    const double lhs = a.dot(m);
    const Eigen::MatrixXd gram = v.transpose() * v;  // (q+1) x (q+1)
    const double g1 = (gp.G.cwiseProduct(gram.bottomRightCorner(q, q))).sum();
    const double g0 = (gp.G.cwiseProduct(gram.topLeftCorner(q, q))).sum();
    const double rhs = g1 - g0 + d.squaredNorm();
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  return worst;
}

}  // namespace bdfstab
