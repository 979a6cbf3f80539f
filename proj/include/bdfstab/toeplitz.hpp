#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bdfstab/multiplier.hpp"

namespace bdfstab {

/// Dense exact square matrix, row-major.
struct RationalMatrix {
  int n = 0;
  std::vector<Rational> a;

  RationalMatrix() = default;
  explicit RationalMatrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, Rational(0)) {}
  Rational& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const Rational& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  Eigen::MatrixXd to_eigen() const;
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;
};

/// Lower triangular Toeplitz matrix with entry -mu_j on the j-th subdiagonal.
struct BandToeplitzLower {
  int n = 0;
  std::vector<Rational> band;  // (-mu0, -mu1, ..., -mu_k)

  RationalMatrix dense() const;
};

/// Band (-mu0, -mu1, ...) up to the last nonzero mu_j. Throws
/// std::invalid_argument for n < 4.
BandToeplitzLower build_L(const Multiplier& m, const Rational& mu0, int n);

/// (L + L^T) / 2
RationalMatrix symmetric_part(const BandToeplitzLower& L);
RationalMatrix symmetric_part(const RationalMatrix& L);

/// f(x) = t0 + 2 sum t_k cos(kx) read off the first column. Throws
/// std::invalid_argument unless the matrix is symmetric Toeplitz.
CosinePolynomial generating_function(const RationalMatrix& Ls);

/// n x n symmetric Toeplitz matrix with symbol f.
Eigen::MatrixXd toeplitz_from_symbol(const CosinePolynomial& f, int n);

struct EigenRange {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Extreme eigenvalues of the n x n section of the symmetric Toeplitz matrix
/// Ls (any size; only its symbol is used).
EigenRange extreme_eigenvalues(const RationalMatrix& Ls, int n);
EigenRange extreme_eigenvalues(const CosinePolynomial& f, int n);

struct SymbolRange {
  double f_min = 0.0;
  double f_max = 0.0;
  double x_min = 0.0;  // cos of the minimizing angle
};

/// Extremes of f over the circle via its algebraic form on [-1, 1].
SymbolRange symbol_range(const CosinePolynomial& f);

struct SandwichRow {
  int n = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double f_min = 0.0;
  double f_max = 0.0;
  bool holds = false;  // f_min - tol <= lambda_min <= lambda_max <= f_max + tol
};

inline constexpr double kSandwichTolerance = 1e-9;

/// One row per n; eigensolves run on up to `threads` threads.
std::vector<SandwichRow> toeplitz_sandwich(const CosinePolynomial& f, const std::vector<int>& ns,
                                           double tol = kSandwichTolerance, int threads = 1);

/// -mu0 - sum mu_j cos(jx): the symbol of the symmetric part of L.
CosinePolynomial multiplier_symbol(const Multiplier& m, const Rational& mu0);

}  // namespace bdfstab
