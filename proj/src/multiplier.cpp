#include "bdfstab/multiplier.hpp"

#include <cmath>
#include <stdexcept>

namespace bdfstab {

namespace {

const RationalPolynomial kOneMinusX{1, -1};

}  // namespace

Rational Multiplier::operator[](int j) const {
  if (j < 1 || j > static_cast<int>(mu.size())) return 0;
  return mu[j - 1];
}

Rational Multiplier::abs_sum() const {
  Rational s = 0;
  for (const auto& v : mu) s += abs(v);
  return s;
}

Multiplier six_step_multiplier() {
  return {{Rational(13, 9), Rational(-25, 36), Rational(1, 9), 0, 0, 0}};
}

Multiplier parse_multiplier(const std::vector<std::string>& entries) {
  Multiplier m;
  for (const auto& e : entries) m.mu.push_back(parse_rational(e));
  return m;
}

std::string to_string(const Multiplier& m) {
  std::string out = "(";
  for (std::size_t i = 0; i < m.mu.size(); ++i) {
    if (i) out += ", ";
    out += to_string(m.mu[i]);
  }
  return out + ")";
}

RationalPolynomial multiplier_polynomial(const Multiplier& m, int q) {
  if (static_cast<int>(m.mu.size()) > q) {
    throw std::invalid_argument("multiplier has " + std::to_string(m.mu.size()) + " entries, method order is " +
                                std::to_string(q));
  }
  std::vector<Rational> c(q + 1);
  c[q] = 1;
  for (int j = 1; j <= q; ++j) c[q - j] = -m[j];
  return RationalPolynomial(c);
}

CosinePolynomial real_part_product(const RationalPolynomial& alpha, const RationalPolynomial& mu_poly) {
  if (alpha.degree() != mu_poly.degree()) {
    throw std::invalid_argument("real_part_product: degrees differ");
  }
  const auto& a = alpha.coefficients();
  const auto& m = mu_poly.coefficients();
  std::vector<Rational> c(std::max(alpha.degree(), 0) + 1);
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t l = 0; l < m.size(); ++l) {
      c[k > l ? k - l : l - k] += a[k] * m[l];
    }
  }
  return CosinePolynomial(c);
}

RationalPolynomial reduced_real_part(const RationalPolynomial& alpha, const RationalPolynomial& mu_poly) {
  const auto algebraic = cosine_to_algebraic(real_part_product(alpha, mu_poly));
  try {
    return exact_div(algebraic, kOneMinusX);
  } catch (const DivisionError& e) {
    throw std::logic_error("real part does not vanish at phi = 0; remainder " + e.remainder().to_string());
  }
}

ConditionAResult check_condition_A(const RationalPolynomial& alpha, const Multiplier& m) {
  const int q = alpha.degree();
  const auto mu_poly = multiplier_polynomial(m, q);
  ConditionAResult out;
  out.reduced = reduced_real_part(alpha, mu_poly);
  out.certificate = nonneg_on_interval(out.reduced, -1, 1, false);
  const auto gr = gcd_resultant(alpha, mu_poly);
  out.coprime = gr.gcd.degree() == 0;
  out.resultant = gr.resultant;
  out.mu_roots_inside_disk = roots_inside_unit_disk(mu_poly);
  if (out.certificate.verdict == Positivity::NonnegativeWithZeros) {
    for (const auto& w : out.certificate.witnesses) {
      out.warnings.push_back("real part vanishes on the unit circle: x in [" + to_string(w.lo) + ", " +
                             to_string(w.hi) + "], " + w.evidence);
    }
  }
  if (!out.coprime) out.warnings.push_back("alpha and mu share the factor " + gr.gcd.to_string("z"));
  if (!out.mu_roots_inside_disk) out.warnings.push_back("mu has a root on or outside the unit circle");
  return out;
}

ConditionAResult check_condition_A(const BdfMethod& method, const Multiplier& m) {
  return check_condition_A(method.alpha, m);
}

P1Result check_P1(const Multiplier& m) {
  P1Result r;
  r.value = 1 - m.abs_sum();
  r.pass = r.value > 0;
  return r;
}

P2Result check_P2(const Multiplier& m) {
  std::vector<Rational> c{1};
  for (const auto& v : m.mu) c.push_back(-v);
  P2Result r;
  r.polynomial = cosine_to_algebraic(CosinePolynomial(c));
  r.certificate = nonneg_on_interval(r.polynomial, -1, 1, true);
  r.min_value = r.certificate.minimum.value;
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Multiplier:
      return "Multiplier";
    case Verdict::NevanlinnaOdehMultiplier:
      return "NevanlinnaOdehMultiplier";
    case Verdict::NotAMultiplier:
      return "NotAMultiplier";
  }
  return "Unknown";
}

Rational reduced_scaling(int q) { return q == 6 ? Rational(15) : Rational(1); }

CertificationReport certify(const BdfMethod& method, const Multiplier& m) {
  CertificationReport r;
  r.q = method.q;
  r.m = m;
  r.condA = check_condition_A(method, m);
  r.condP1 = check_P1(m);
  r.condP2 = check_P2(m);
  r.scaling_constant = reduced_scaling(method.q);
  r.P_poly = r.condA.reduced.scaled(r.scaling_constant);
  if (r.condA.pass() && r.condP2.pass()) {
    r.verdict = r.condP1.pass ? Verdict::NevanlinnaOdehMultiplier : Verdict::Multiplier;
  }
  return r;
}

RationalPolynomial AffineFamily::operator()(const Multiplier& m) const {
  RationalPolynomial p = base;
  for (int i = 1; i <= static_cast<int>(coefficients.size()); ++i) {
    if (m[i] != 0) p += coefficients[i - 1].scaled(m[i]);
  }
  return p;
}

AffineFamily condition_a_family(const BdfMethod& method) {
  AffineFamily f;
  f.q = method.q;
  f.scaling = reduced_scaling(method.q);
  const auto zq = RationalPolynomial::monomial(1, method.q);
  const auto base = reduced_real_part(method.alpha, zq);
  f.base = base.scaled(f.scaling);
  for (int i = 1; i <= method.q; ++i) {
    const auto mu_i = zq - RationalPolynomial::monomial(1, method.q - i);
    f.coefficients.push_back((reduced_real_part(method.alpha, mu_i) - base).scaled(f.scaling));
  }
  return f;
}

AffineFamily positivity_family(int q) {
  AffineFamily f;
  f.q = q;
  f.scaling = 1;
  f.base = RationalPolynomial{1};
  for (int k = 1; k <= q; ++k) f.coefficients.push_back(-chebyshev_t(k));
  return f;
}

RationalPolynomial general_P(const Multiplier& m) {
  static const AffineFamily family = condition_a_family(bdf_alpha(6));
  return family(m);
}

AffineValue evaluate_family(const AffineFamily& family, const Rational& x, int used) {
  AffineValue v;
  v.x = x;
  v.base = family.base(x);
  const int n = used < 0 ? static_cast<int>(family.coefficients.size()) : used;
  for (int i = 0; i < n; ++i) v.coefficients.push_back(family.coefficients[i](x));
  return v;
}

NonexistenceReport nevanlinna_odeh_nonexistence() {
  NonexistenceReport r;
  r.value = evaluate_family(condition_a_family(bdf_alpha(6)), Rational(3, 40));
  r.max_abs_coefficient = 0;
  r.abs_coefficient_sum = 0;
  for (const auto& c : r.value.coefficients) {
    if (abs(c) > r.max_abs_coefficient) r.max_abs_coefficient = abs(c);
    r.abs_coefficient_sum += abs(c);
  }
  r.bound = r.value.base + r.max_abs_coefficient;
  r.bound_negative = r.bound < 0;
  r.below_threshold = r.bound < Rational(-142, 100);
  r.matches_display = std::abs(to_double(r.value.base) - r.display_base) <= 1e-3 &&
                      std::abs(to_double(r.max_abs_coefficient) - r.display_max) <= 1e-3;
  return r;
}

}  // namespace bdfstab
