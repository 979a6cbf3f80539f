#include "bdfstab/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <optional>
#include <thread>

namespace bdfstab {

namespace {

constexpr int kPrefilterSamples = 64;
constexpr double kPrefilterMargin = 1e-9;
constexpr double kPrintedLowerBound = 0.9516169;

const AffineFamily& six_step_family() {
  static const AffineFamily family = condition_a_family(bdf_alpha(6));
  return family;
}

// Values of an affine family's base and coefficient polynomials at fixed
// sample points, for the floating-point screen.
struct SampledFamily {
  std::vector<double> base;                   // per sample
  std::vector<std::vector<double>> coeffs;    // [sample][j]

  explicit SampledFamily(const AffineFamily& f) {
    for (int s = 0; s < kPrefilterSamples; ++s) {
      const double x = -1.0 + 2.0 * s / (kPrefilterSamples - 1);
      base.push_back(f.base.evaluate(x));
      std::vector<double> row;
      for (const auto& c : f.coefficients) row.push_back(c.evaluate(x));
      coeffs.push_back(std::move(row));
    }
  }

  bool clearly_negative(const std::vector<double>& mu) const {
    for (std::size_t s = 0; s < base.size(); ++s) {
      double v = base[s];
      for (std::size_t j = 0; j < mu.size(); ++j) v += mu[j] * coeffs[s][j];
      if (v < -kPrefilterMargin) return true;
    }
    return false;
  }
};

ApproxCheck approx(std::string name, double computed, double expected, double tol) {
  return {std::move(name), computed, expected, tol, std::abs(computed - expected) <= tol};
}

ExactCheck exact(std::string name, const Rational& computed, const Rational& expected) {
  ExactCheck c;
  c.name = std::move(name);
  c.computed = computed;
  c.expected = expected;
  c.rational_equal = computed == expected;
  c.double_equal = Rational(to_double(computed)) == expected;
  c.relative_difference = expected == 0 ? to_double(abs(computed)) : to_double(abs(Rational((computed - expected) / expected)));
  c.pass = c.rational_equal || c.double_equal;
  return c;
}

double sqrt_of(int n) { return std::sqrt(static_cast<double>(n)); }

}  // namespace

PlanePoint plane_region_membership(const Rational& mu1, const Rational& mu2) {
  PlanePoint p;
  p.mu1 = mu1;
  p.mu2 = mu2;
  p.in_triangle = mu2 >= Rational(-1, 3) && mu2 < 1 - abs(mu1);
  const Rational shifted = mu2 + Rational(1, 2);
  p.in_ellipse = 4 * shifted * shifted + mu1 * mu1 / 2 < 1;
  p.member = p.in_triangle || p.in_ellipse;
  return p;
}

std::vector<Multiplier> reference_multipliers() {
  const std::vector<std::vector<std::string>> rows{
      {"1.6", "-0.92", "0.3", "0", "0", "0"},       {"0.8235", "-0.855", "0.38", "0", "0", "0"},
      {"1.67", "-1", "0.4", "-0.1", "0", "0"},      {"0.8", "-0.7", "0.2", "0.1", "0", "0"},
      {"1.118", "-1", "0.6", "-0.2", "0.2", "0"},   {"0.6708", "-0.2", "-0.2", "0.6", "-0.2", "0"},
      {"0.735", "-0.2", "-0.4", "0.8", "-0.4", "0.2"},
  };
  std::vector<Multiplier> out;
  for (const auto& r : rows) out.push_back(parse_multiplier(r));
  return out;
}

std::vector<ReferenceCheck> check_reference_multipliers() {
  const auto method = bdf_alpha(6);
  std::vector<ReferenceCheck> out;
  for (const auto& m : reference_multipliers()) {
    ReferenceCheck c;
    c.m = m;
    c.report = certify(method, m);
    c.abs_sum = to_double(m.abs_sum());
    c.meets_lower_bound = c.abs_sum >= kPrintedLowerBound - 1e-6;
    out.push_back(std::move(c));
  }
  return out;
}

SearchBox make_box(const std::vector<std::pair<Rational, Rational>>& leading, int q) {
  SearchBox box;
  box.ranges = leading;
  while (static_cast<int>(box.ranges.size()) < q) box.ranges.emplace_back(0, 0);
  return box;
}

SearchResult grid_search(const SearchBox& box, const Rational& step, const SearchOptions& options) {
  if (step <= 0) throw std::invalid_argument("grid step must be positive");
  if (box.ranges.size() != 6) throw std::invalid_argument("search box needs six ranges");

  std::vector<std::vector<Rational>> axes;
  long long total = 1;
  for (const auto& [lo, hi] : box.ranges) {
    if (lo > hi) throw std::invalid_argument("empty search box: " + to_string(lo) + " > " + to_string(hi));
    if (lo < -2 || hi > 2) throw std::invalid_argument("search box must lie within [-2, 2]^6");
    mpz_class k_lo, k_hi;
    const Rational a = lo / step, b = hi / step;
    mpz_cdiv_q(k_lo.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    mpz_fdiv_q(k_hi.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    std::vector<Rational> axis;
    for (mpz_class k = k_lo; k <= k_hi; ++k) axis.push_back(Rational(k) * step);
    if (axis.empty()) throw std::invalid_argument("empty search box: no lattice point in a range");
    total *= static_cast<long long>(axis.size());
    axes.push_back(std::move(axis));
  }

  const auto method = bdf_alpha(6);
  const SampledFamily cond_a(six_step_family());
  const SampledFamily positivity(positivity_family(6));

  struct Hit {
    long long index;
    CandidateRecord record;
    std::optional<CertificationReport> report;
  };

  const int threads = std::max(1, options.threads);
  std::vector<std::vector<Hit>> per_thread(threads);
  std::vector<long long> rejected(threads, 0);

  auto work = [&](int t) {
    std::vector<double> mu_d(6);
    for (long long index = t; index < total; index += threads) {
      Multiplier m;
      m.mu.resize(6);
      long long rest = index;
      for (int j = 5; j >= 0; --j) {
        const long long n = static_cast<long long>(axes[j].size());
        m.mu[j] = axes[j][rest % n];
        rest /= n;
      }
      for (int j = 0; j < 6; ++j) mu_d[j] = to_double(m.mu[j]);
      Hit hit{index, {}, std::nullopt};
      hit.record.m = m;
      hit.record.prefilter_pass = !positivity.clearly_negative(mu_d) && !cond_a.clearly_negative(mu_d);
      if (hit.record.prefilter_pass) {
        auto report = certify(method, m);
        hit.record.verdict = report.verdict;
        hit.record.certified = report.is_multiplier();
        if (hit.record.certified) hit.report = std::move(report);
      } else {
        ++rejected[t];
      }
      if (options.keep_records || hit.report) per_thread[t].push_back(std::move(hit));
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  std::vector<Hit> all;
  for (auto& v : per_thread) {
    for (auto& h : v) all.push_back(std::move(h));
  }
  std::sort(all.begin(), all.end(), [](const Hit& a, const Hit& b) { return a.index < b.index; });

  SearchResult result;
  result.box = box;
  result.step = step;
  result.candidates_tested = total;
  for (long long r : rejected) result.prefilter_rejected += r;
  for (auto& h : all) {
    if (h.report && static_cast<int>(result.certified.size()) < options.max_results) {
      result.certified.push_back(*h.report);
    }
    if (options.keep_records) result.records.push_back(std::move(h.record));
  }
  return result;
}

bool TwoParameterReport::pass() const {
  return std::all_of(approx.begin(), approx.end(), [](const auto& c) { return c.pass; }) &&
         std::all_of(exact.begin(), exact.end(), [](const auto& c) { return c.pass; });
}

TwoParameterReport two_parameter_exclusion_constants() {
  TwoParameterReport r;
  const auto& fam = six_step_family();
  r.at_minus_4_25 = evaluate_family(fam, Rational(-4, 25), 2);
  const auto& m4 = r.at_minus_4_25;
  r.approx.push_back(approx("P(-4/25) mu1", to_double(m4.coefficients[0]), 7.86979, 1e-4));
  r.approx.push_back(approx("P(-4/25) mu2", to_double(m4.coefficients[1]), -41.65312, 1e-4));
  r.approx.push_back(approx("P(-4/25) constant", to_double(m4.base), -39.13478, 1e-4));
  const double mu2_bound =
      (to_double(m4.coefficients[0]) * sqrt_of(2) + to_double(m4.base)) / -to_double(m4.coefficients[1]);
  r.approx.push_back(approx("mu2 upper bound from P(-4/25)", mu2_bound, -0.672343782385853, 1e-4));

  r.at_0_99 = evaluate_family(fam, Rational(99, 100), 2);
  const Rational b = r.at_0_99.coefficients[0];  // mu1
  const Rational a = r.at_0_99.coefficients[1];  // mu2
  const Rational c = r.at_0_99.base;
  r.exact.push_back(exact("P(0.99) a (mu2)", a, Rational(mpz_class("2086460708677967"), mpz_class("35184372088832"))));
  r.exact.push_back(exact("P(0.99) b (mu1)", b, Rational(mpz_class("1053766469372221"), mpz_class("35184372088832"))));
  r.exact.push_back(exact("P(0.99) c", c, Rational(mpz_class("9685378027"), mpz_class("109951162777600"))));

  // a mu2 + b mu1 + c = 0 against 4 (mu2 + 1/2)^2 + mu1^2 / 2 = 1:
  // (8b^2 + a^2) mu1^2 - 16 b d mu1 + 8 d^2 - 2 a^2 = 0 with d = a/2 - c.
  const Rational d = a / 2 - c;
  const Rational q2 = 8 * b * b + a * a;
  const Rational q1 = -16 * b * d;
  const Rational q0 = 8 * d * d - 2 * a * a;
  const Rational disc = q1 * q1 - 4 * q2 * q0;
  const unsigned prec = 512;
  const mpf_class root(sqrt(mpf_class(disc, prec)), prec);
  const mpf_class two_q2(2 * q2, prec);
  const mpf_class m_lo((mpf_class(-q1, prec) - root) / two_q2, prec);
  const mpf_class m_hi((mpf_class(-q1, prec) + root) / two_q2, prec);
  auto mu2_of = [&](const mpf_class& mu1) {
    return mpf_class(-(mpf_class(b, prec) * mu1 + mpf_class(c, prec)) / mpf_class(a, prec), prec);
  };
  r.A[0] = m_lo.get_d();
  r.A[1] = mu2_of(m_lo).get_d();
  r.B[0] = m_hi.get_d();
  r.B[1] = mu2_of(m_hi).get_d();
  r.approx.push_back(approx("A mu1", r.A[0], 2.941186035762484e-6, 1e-9));
  r.approx.push_back(approx("A mu2", r.A[1], -1.08131109678632e-12, 1e-9));
  r.approx.push_back(approx("B mu1", r.B[0], 1.328818676149621, 1e-9));
  r.approx.push_back(approx("B mu2", r.B[1], -0.671118740185537, 1e-9));
  return r;
}

bool in_three_parameter_box(const Multiplier& m) {
  if (m[4] != 0 || m[5] != 0 || m[6] != 0) return false;
  const Rational mu1_lo(41990729, 100000000);
  const Rational mu2_hi(-58852878, 100000000);
  return m[1] > mu1_lo && m[1] * m[1] < 3 && m[2] > -1 && m[2] < mu2_hi && m[3] > 0 && m[3] < 1;
}

bool ThreeParameterReport::pass() const {
  return std::all_of(approx.begin(), approx.end(), [](const auto& c) { return c.pass; }) &&
         std::all_of(exact.begin(), exact.end(), [](const auto& c) { return c.pass; }) &&
         std::all_of(rows.begin(), rows.end(), [](const auto& c) { return c.inside; });
}

ThreeParameterReport three_parameter_bounds_check() {
  ThreeParameterReport r;
  const auto& fam = six_step_family();

  r.at_minus_66_625 = evaluate_family(fam, Rational(-66, 625), 3);
  const auto& v = r.at_minus_66_625;
  r.approx.push_back(approx("P(-66/625) mu1", to_double(v.coefficients[0]), 7.33518936, 1e-4));
  r.approx.push_back(approx("P(-66/625) mu2", to_double(v.coefficients[1]), -34.64182239, 1e-4));
  r.approx.push_back(approx("P(-66/625) mu3", to_double(v.coefficients[2]), -0.01883648, 1e-4));
  r.approx.push_back(approx("P(-66/625) constant", to_double(v.base), -33.09263039, 1e-4));

  r.at_0_8 = evaluate_family(fam, Rational(4, 5), 3);
  r.exact.push_back(exact("P(0.8) constant", r.at_0_8.base, Rational(274, 625)));
  r.exact.push_back(exact("P(0.8) mu1", r.at_0_8.coefficients[0], Rational(3572, 125)));
  r.exact.push_back(exact("P(0.8) mu2", r.at_0_8.coefficients[1], Rational(1154, 25)));
  r.exact.push_back(exact("P(0.8) mu3", r.at_0_8.coefficients[2], Rational(1132, 25)));

  // c1 mu1 + c2 mu2 + c3 mu3 + c0 >= 0 with c2 < 0, c3 < 0, mu3 > 0, mu1 < sqrt 3
  r.mu2_upper = (to_double(v.coefficients[0]) * sqrt_of(3) + to_double(v.base)) / -to_double(v.coefficients[1]);
  r.approx.push_back(approx("mu2 upper bound", r.mu2_upper, -0.58852878, 1e-6));

  // at 27/125: c1 > 0, c2 > 0, c3 < 0, so mu1 > (-c0 - c2 mu2_upper) / c1
  r.at_27_125 = evaluate_family(fam, Rational(27, 125), 3);
  const auto& w = r.at_27_125;
  r.mu1_lower = (-to_double(w.base) - to_double(w.coefficients[1]) * r.mu2_upper) / to_double(w.coefficients[0]);
  r.approx.push_back(approx("mu1 lower bound", r.mu1_lower, 0.41990729, 1e-6));

  for (const auto& m : reference_multipliers()) {
    if (m[4] != 0 || m[5] != 0 || m[6] != 0) continue;
    r.rows.push_back({m, in_three_parameter_box(m)});
  }
  return r;
}

}  // namespace bdfstab
