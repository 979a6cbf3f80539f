#include "bdfstab/rational.hpp"

#include <cctype>
#include <cmath>

namespace bdfstab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty rational");

  bool negative = false;
  std::string_view body = s;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    value = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    }
    std::string digits = std::string(whole) + std::string(frac);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    value = Rational(mpz_class(digits, 10), den);
  } else {
    if (!all_digits(body)) throw ParseError("malformed rational '" + std::string(text) + "'");
    value = Rational(mpz_class(std::string(body), 10));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) {
  // mpq_get_d truncates toward zero; pick the nearer of it and its outward
  // neighbour, ties to even.
  const double t = r.get_d();
  if (Rational(t) == r || !std::isfinite(t)) return t;
  const double away = std::nextafter(t, r > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(away)) return t;
  const Rational dt = abs(Rational(r - Rational(t)));
  const Rational da = abs(Rational(r - Rational(away)));
  if (da < dt) return away;
  if (dt < da) return t;
  int e = 0;
  const double mt = std::frexp(t, &e) * 9007199254740992.0;  // 2^53
  return std::fmod(mt, 2.0) == 0.0 ? t : away;
}

int sign(const Rational& r) { return sgn(r); }

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace bdfstab
