#include "bdfstab/toeplitz.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace bdfstab {

Eigen::MatrixXd RationalMatrix::to_eigen() const {
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = to_double((*this)(i, j));
  return out;
}

RationalMatrix BandToeplitzLower::dense() const {
  RationalMatrix out(n);
  for (int j = 0; j < static_cast<int>(band.size()); ++j)
    for (int i = j; i < n; ++i) out(i, i - j) = band[j];
  return out;
}

BandToeplitzLower build_L(const Multiplier& m, const Rational& mu0, int n) {
  if (n < 4) throw std::invalid_argument("build_L needs n >= 4");
  int last = 0;
  for (int j = 1; j <= static_cast<int>(m.mu.size()); ++j)
    if (m[j] != 0) last = j;
  BandToeplitzLower L;
  L.n = n;
  L.band.push_back(-mu0);
  for (int j = 1; j <= last; ++j) L.band.push_back(-m[j]);
  return L;
}

RationalMatrix symmetric_part(const RationalMatrix& L) {
  RationalMatrix out(L.n);
  for (int i = 0; i < L.n; ++i)
    for (int j = 0; j < L.n; ++j) out(i, j) = (L(i, j) + L(j, i)) / 2;
  return out;
}

RationalMatrix symmetric_part(const BandToeplitzLower& L) { return symmetric_part(L.dense()); }

CosinePolynomial generating_function(const RationalMatrix& Ls) {
  const int n = Ls.n;
  if (n < 1) throw std::invalid_argument("empty matrix");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (Ls(i, j) != Ls(j, i)) throw std::invalid_argument("matrix is not symmetric");
      if (Ls(i, j) != Ls(std::abs(i - j), 0)) throw std::invalid_argument("matrix is not Toeplitz");
    }
  }
  int last = 0;
  for (int k = 0; k < n; ++k)
    if (Ls(k, 0) != 0) last = k;
  std::vector<Rational> c(last + 1);
  c[0] = Ls(0, 0);
  for (int k = 1; k <= last; ++k) c[k] = 2 * Ls(k, 0);
  return CosinePolynomial(c);
}

Eigen::MatrixXd toeplitz_from_symbol(const CosinePolynomial& f, int n) {
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k <= f.degree() && k < n; ++k) {
    const double t = k == 0 ? to_double(f.coefficient(0)) : to_double(f.coefficient(k) / 2);
    for (int i = k; i < n; ++i) T(i, i - k) = T(i - k, i) = t;
  }
  return T;
}

EigenRange extreme_eigenvalues(const CosinePolynomial& f, int n) {
  if (n < 1) throw std::invalid_argument("extreme_eigenvalues needs n >= 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(toeplitz_from_symbol(f, n), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev(0), ev(n - 1)};
}

EigenRange extreme_eigenvalues(const RationalMatrix& Ls, int n) {
  return extreme_eigenvalues(generating_function(Ls), n);
}

SymbolRange symbol_range(const CosinePolynomial& f) {
  const auto ext = extrema_on_interval(cosine_to_algebraic(f), Rational(-1), Rational(1));
  return {ext.min.value, ext.max.value, ext.min.x};
}

std::vector<SandwichRow> toeplitz_sandwich(const CosinePolynomial& f, const std::vector<int>& ns, double tol,
                                           int threads) {
  const SymbolRange range = symbol_range(f);
  std::vector<SandwichRow> rows(ns.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < ns.size(); i = next++) {
      const EigenRange e = extreme_eigenvalues(f, ns[i]);
      SandwichRow& r = rows[i];
      r.n = ns[i];
      r.lambda_min = e.lambda_min;
      r.lambda_max = e.lambda_max;
      r.f_min = range.f_min;
      r.f_max = range.f_max;
      r.holds = range.f_min - tol <= e.lambda_min && e.lambda_min <= e.lambda_max && e.lambda_max <= range.f_max + tol;
    }
  };
  const int t = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(ns.size(), 1)));
  std::vector<std::thread> pool;
  for (int i = 1; i < t; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return rows;
}

CosinePolynomial multiplier_symbol(const Multiplier& m, const Rational& mu0) {
  std::vector<Rational> c{-mu0};
  for (int j = 1; j <= static_cast<int>(m.mu.size()); ++j) c.push_back(-m[j]);
  return CosinePolynomial(c);
}

}  // namespace bdfstab
