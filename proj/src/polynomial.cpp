#include "bdfstab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bdfstab {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

RationalPolynomial::RationalPolynomial(std::initializer_list<Rational> coefficients)
    : coeffs_(coefficients) {
  trim();
}

RationalPolynomial RationalPolynomial::constant(const Rational& c) {
  return RationalPolynomial(std::vector<Rational>{c});
}

RationalPolynomial RationalPolynomial::monomial(const Rational& c, int power) {
  std::vector<Rational> v(static_cast<std::size_t>(power) + 1, Rational(0));
  v.back() = c;
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::linear_factor(const Rational& root) {
  return RationalPolynomial({Rational(-root), Rational(1)});
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPolynomial::coefficient(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational RationalPolynomial::leading() const {
  return is_zero() ? Rational(0) : coeffs_.back();
}

Rational RationalPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

double RationalPolynomial::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

std::complex<double> RationalPolynomial::evaluate(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + it->get_d();
  return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
  if (degree() < 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::monic() const {
  if (is_zero()) return {};
  return scaled(Rational(1) / leading());
}

RationalPolynomial RationalPolynomial::scaled(const Rational& c) const {
  std::vector<Rational> v = coeffs_;
  for (auto& a : v) a *= c;
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::reflected() const {
  std::vector<Rational> v = coeffs_;
  for (std::size_t k = 1; k < v.size(); k += 2) v[k] = -v[k];
  return RationalPolynomial(std::move(v));
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const RationalPolynomial& other) {
  if (is_zero() || other.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

std::vector<double> RationalPolynomial::to_double() const {
  std::vector<double> v;
  v.reserve(coeffs_.size());
  for (const auto& c : coeffs_) v.push_back(bdfstab::to_double(c));
  return v;
}

std::string RationalPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << bdfstab::to_string(mag);
      continue;
    }
    if (mag != 1) os << bdfstab::to_string(mag) << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

DivisionError::DivisionError(RationalPolynomial remainder)
    : std::runtime_error("inexact polynomial division, remainder " + remainder.to_string()),
      remainder_(std::move(remainder)) {}

Division divide(const RationalPolynomial& p, const RationalPolynomial& q) {
  if (q.is_zero()) throw std::domain_error("polynomial division by zero");
  if (p.degree() < q.degree()) return {RationalPolynomial{}, p};
  std::vector<Rational> rem = p.coefficients();
  const auto& d = q.coefficients();
  const int dq = q.degree();
  std::vector<Rational> quot(static_cast<std::size_t>(p.degree() - dq) + 1, Rational(0));
  const Rational inv_lead = Rational(1) / q.leading();
  for (int k = p.degree() - dq; k >= 0; --k) {
    Rational c = rem[static_cast<std::size_t>(k + dq)] * inv_lead;
    quot[static_cast<std::size_t>(k)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dq; ++j) rem[static_cast<std::size_t>(k + j)] -= c * d[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dq));
  return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

RationalPolynomial exact_div(const RationalPolynomial& p, const RationalPolynomial& q) {
  auto [quot, rem] = divide(p, q);
  if (!rem.is_zero()) throw DivisionError(std::move(rem));
  return quot;
}

RationalPolynomial gcd(const RationalPolynomial& p, const RationalPolynomial& q) {
  RationalPolynomial a = p.monic();
  RationalPolynomial b = q.monic();
  while (!b.is_zero()) {
    RationalPolynomial r = divide(a, b).remainder.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Rational resultant(const RationalPolynomial& p, const RationalPolynomial& q) {
  if (p.is_zero() || q.is_zero()) return 0;
  const int m = p.degree();
  const int n = q.degree();
  const int size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<Rational>> s(static_cast<std::size_t>(size),
                                       std::vector<Rational>(static_cast<std::size_t>(size), Rational(0)));
  // Rows hold coefficients from the highest power down.
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s[r][r + k] = p.coefficient(m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s[n + r][r + k] = q.coefficient(n - k);

  Rational det = 1;
  for (int col = 0; col < size; ++col) {
    int pivot = -1;
    for (int r = col; r < size; ++r) {
      if (s[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != col) {
      std::swap(s[pivot], s[col]);
      det = -det;
    }
    det *= s[col][col];
    for (int r = col + 1; r < size; ++r) {
      if (s[r][col] == 0) continue;
      Rational f = s[r][col] / s[col][col];
      for (int c = col; c < size; ++c) s[r][c] -= f * s[col][c];
    }
  }
  return det;
}

GcdResultant gcd_resultant(const RationalPolynomial& p, const RationalPolynomial& q) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  return {gcd(p, q), resultant(p, q)};
}

RationalPolynomial squarefree_part(const RationalPolynomial& p) {
  if (p.degree() < 1) return p.monic();
  return exact_div(p, gcd(p, p.derivative())).monic();
}

std::vector<SquarefreeFactor> squarefree_factorization(const RationalPolynomial& p) {
  std::vector<SquarefreeFactor> out;
  if (p.degree() < 1) return out;
  const RationalPolynomial f = p.monic();
  const RationalPolynomial fd = f.derivative();
  const RationalPolynomial a0 = gcd(f, fd);
  RationalPolynomial b = exact_div(f, a0);
  RationalPolynomial c = exact_div(fd, a0);
  RationalPolynomial d = c - b.derivative();
  for (int i = 1; b.degree() >= 1; ++i) {
    RationalPolynomial a = gcd(b, d);
    if (a.degree() >= 1) out.push_back({a, i});
    b = exact_div(b, a);
    c = exact_div(d, a);
    d = c - b.derivative();
  }
  return out;
}

bool roots_inside_unit_disk(const RationalPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial has no root set");
  std::vector<Rational> a = p.coefficients();
  while (a.size() > 1) {
    const std::size_t n = a.size() - 1;
    const Rational a0 = a.front();
    const Rational an = a.back();
    if (abs(a0) >= abs(an)) return false;
    // (an * p(z) - a0 * z^n p(1/z)) / z has the same number of roots inside
    // the disk as p, minus one.
    std::vector<Rational> next(n);
    for (std::size_t k = 1; k <= n; ++k) next[k - 1] = an * a[k] - a0 * a[n - k];
    a = std::move(next);
  }
  return true;
}

CosinePolynomial::CosinePolynomial(std::vector<Rational> coefficients)
    : coeffs_(std::move(coefficients)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.emplace_back(0);
}

CosinePolynomial::CosinePolynomial(std::initializer_list<Rational> coefficients)
    : CosinePolynomial(std::vector<Rational>(coefficients)) {}

Rational CosinePolynomial::coefficient(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

double CosinePolynomial::evaluate(double x) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    acc += coeffs_[k].get_d() * std::cos(static_cast<double>(k) * x);
  }
  return acc;
}

RationalPolynomial chebyshev_t(int k) {
  if (k < 0) throw std::invalid_argument("negative Chebyshev index");
  RationalPolynomial prev{Rational(1)};
  if (k == 0) return prev;
  RationalPolynomial cur{Rational(0), Rational(1)};
  const RationalPolynomial two_x{Rational(0), Rational(2)};
  for (int j = 1; j < k; ++j) {
    RationalPolynomial next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

RationalPolynomial cosine_to_algebraic(const CosinePolynomial& c) {
  RationalPolynomial out;
  RationalPolynomial prev{Rational(1)};
  RationalPolynomial cur{Rational(0), Rational(1)};
  const RationalPolynomial two_x{Rational(0), Rational(2)};
  for (int k = 0; k <= c.degree(); ++k) {
    const RationalPolynomial& t = k == 0 ? prev : cur;
    if (c.coefficient(k) != 0) out += t.scaled(c.coefficient(k));
    if (k >= 1) {
      RationalPolynomial next = two_x * cur - prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
  }
  return out;
}

}  // namespace bdfstab
