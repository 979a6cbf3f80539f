#include "bdfstab/sturm.hpp"

#include <optional>
#include <stdexcept>

namespace bdfstab {

namespace {

int sign_right_of(RationalPolynomial p, const Rational& x) {
  while (!p.is_zero()) {
    const int s = sign(p(x));
    if (s != 0) return s;
    p = p.derivative();
  }
  return 0;
}

const Rational& extremum_width() {
  static const Rational w(mpz_class(1), mpz_class("10000000000000"));
  return w;
}

const Rational& witness_width() {
  static const Rational w(mpz_class(1), mpz_class(1) << 20);
  return w;
}

struct Bracket {
  std::optional<Rational> left;   // nonroot point just left of the root
  std::optional<Rational> right;  // nonroot point just right of the root
  RootInterval root;
};

// Encloses each isolated root between two nonroot rational points that see
// no other root. Endpoints of [a, b] that are themselves roots get no
// outer point.
std::vector<Bracket> bracket_roots(const RationalPolynomial& s, const SturmSequence& seq,
                                   const std::vector<RootInterval>& roots, const Rational& a,
                                   const Rational& b) {
  std::vector<Bracket> out;
  for (RootInterval iv : roots) {
    Bracket br;
    if (!iv.exact()) {
      while (s(iv.lo) == 0) {
        Rational mid = (iv.lo + iv.hi) / 2;
        if (s(mid) == 0) {
          iv.lo = iv.hi = mid;
          break;
        }
        if (seq.count(iv.lo, mid) == 1) {
          iv.hi = mid;
        } else {
          iv.lo = mid;
        }
      }
    }
    if (!iv.exact()) {
      br.left = iv.lo;
      br.right = iv.hi;
      br.root = iv;
      out.push_back(std::move(br));
      continue;
    }
    const Rational r = iv.lo;
    Rational t = 1;
    if (r > a && r - a < t) t = r - a;
    if (r < b && b - r < t) t = b - r;
    for (;;) {
      const bool has_left = r > a;
      const bool has_right = r < b;
      const Rational lo = has_left ? Rational(r - t) : r;
      const Rational hi = has_right ? Rational(r + t) : r;
      bool ok = true;
      if (has_left && (s(lo) == 0 || seq.count(lo, r) != 1)) ok = false;
      if (ok && has_right && (s(hi) == 0 || seq.count(r, hi) != 0)) ok = false;
      if (ok) {
        if (has_left) br.left = lo;
        if (has_right) br.right = hi;
        break;
      }
      t /= 2;
    }
    br.root = iv;
    out.push_back(std::move(br));
  }
  return out;
}

std::string multiplicity_evidence(const std::vector<SquarefreeFactor>& factors, const Bracket& br) {
  for (const auto& f : factors) {
    bool hit = false;
    if (br.root.exact()) {
      hit = f.factor(br.root.lo) == 0;
    } else {
      hit = sturm_root_count(f.factor, br.root.lo, br.root.hi) == 1;
    }
    if (hit) return "zero of multiplicity " + std::to_string(f.multiplicity);
  }
  return "zero";
}

}  // namespace

SturmSequence::SturmSequence(const RationalPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("Sturm sequence of the zero polynomial");
  chain_.push_back(p);
  RationalPolynomial next = p.derivative();
  while (!next.is_zero()) {
    chain_.push_back(next);
    const auto& n = chain_.size();
    next = -divide(chain_[n - 2], chain_[n - 1]).remainder;
  }
}

int SturmSequence::variations_right_of(const Rational& x) const {
  int variations = 0;
  int last = 0;
  for (const auto& p : chain_) {
    const int s = sign_right_of(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

int SturmSequence::count(const Rational& a, const Rational& b) const {
  if (!(a < b)) throw std::invalid_argument("Sturm count needs a < b");
  return variations_right_of(a) - variations_right_of(b);
}

int sturm_root_count(const RationalPolynomial& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
  return SturmSequence(p).count(a, b);
}

std::vector<RootInterval> isolate_roots(const RationalPolynomial& p, const Rational& a, const Rational& b,
                                        const Rational& width) {
  if (p.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  if (!(a <= b)) throw std::invalid_argument("isolate_roots needs a <= b");
  std::vector<RootInterval> out;
  if (p.degree() == 0) return out;
  const RationalPolynomial s = squarefree_part(p);
  if (s(a) == 0) out.push_back({a, a});
  if (a == b) return out;
  const SturmSequence seq(s);

  struct Pending {
    Rational lo, hi;
    int count;
  };
  std::vector<Pending> stack;
  if (int n = seq.count(a, b); n > 0) stack.push_back({a, b, n});
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    if (cur.count == 1) {
      RootInterval iv{cur.lo, cur.hi};
      if (s(iv.hi) == 0) {
        iv.lo = iv.hi;
      } else {
        while (width > 0 && iv.hi - iv.lo > width) {
          Rational mid = (iv.lo + iv.hi) / 2;
          if (s(mid) == 0) {
            iv.lo = iv.hi = mid;
            break;
          }
          if (seq.count(iv.lo, mid) == 1) {
            iv.hi = mid;
          } else {
            iv.lo = mid;
          }
        }
      }
      out.push_back(std::move(iv));
      continue;
    }
    Rational mid = (cur.lo + cur.hi) / 2;
    const int left = seq.count(cur.lo, mid);
    const int right = cur.count - left;
    // Right half first so the left half is processed next (sorted output).
    if (right > 0) stack.push_back({mid, cur.hi, right});
    if (left > 0) stack.push_back({cur.lo, mid, left});
  }
  return out;
}

std::string to_string(Positivity v) {
  switch (v) {
    case Positivity::StrictlyPositive:
      return "StrictlyPositive";
    case Positivity::NonnegativeWithZeros:
      return "NonnegativeWithZeros";
    case Positivity::Negative:
      return "Negative";
  }
  return "Unknown";
}

IntervalExtrema extrema_on_interval(const RationalPolynomial& p, const Rational& a, const Rational& b) {
  if (!(a <= b)) throw std::invalid_argument("extrema_on_interval needs a <= b");
  std::vector<Rational> candidates{a, b};
  const RationalPolynomial dp = p.derivative();
  if (!dp.is_zero() && a < b) {
    for (const auto& iv : isolate_roots(dp, a, b, extremum_width())) {
      candidates.push_back(iv.exact() ? iv.lo : Rational((iv.lo + iv.hi) / 2));
    }
  }
  IntervalExtrema out;
  bool first = true;
  Rational min_value, max_value;
  for (const auto& x : candidates) {
    Rational v = p(x);
    if (first || v < min_value) {
      min_value = v;
      out.min = {to_double(x), to_double(v)};
    }
    if (first || v > max_value) {
      max_value = v;
      out.max = {to_double(x), to_double(v)};
    }
    first = false;
  }
  return out;
}

NonnegativityCertificate nonneg_on_interval(const RationalPolynomial& p, const Rational& a, const Rational& b,
                                            bool strict) {
  if (!(a < b)) throw std::invalid_argument("nonneg_on_interval needs a < b");
  NonnegativityCertificate cert;
  cert.strict = strict;
  cert.minimum = extrema_on_interval(p, a, b).min;

  if (p.is_zero()) {
    cert.verdict = Positivity::NonnegativeWithZeros;
    cert.witnesses.push_back({a, b, "identically zero"});
    return cert;
  }
  if (p.degree() == 0) {
    if (p.leading() > 0) {
      cert.verdict = Positivity::StrictlyPositive;
      cert.witnesses.push_back({a, a, "positive constant " + to_string(p.leading())});
    } else {
      cert.verdict = Positivity::Negative;
      cert.witnesses.push_back({a, a, "value " + to_string(p.leading())});
    }
    return cert;
  }

  const auto factors = squarefree_factorization(p);
  const RationalPolynomial s = squarefree_part(p);
  const SturmSequence seq(s);
  const auto brackets = bracket_roots(s, seq, isolate_roots(s, a, b, witness_width()), a, b);

  // p has constant sign between consecutive roots, and every such gap holds
  // one of these samples.
  std::vector<Rational> samples;
  if (s(a) != 0) samples.push_back(a);
  if (s(b) != 0) samples.push_back(b);
  for (const auto& br : brackets) {
    if (br.left) samples.push_back(*br.left);
    if (br.right) samples.push_back(*br.right);
  }
  if (brackets.empty()) samples.push_back((a + b) / 2);

  for (const auto& x : samples) {
    Rational v = p(x);
    if (v < 0) {
      cert.verdict = Positivity::Negative;
      cert.witnesses.push_back({x, x, "value " + to_string(v) + " < 0"});
      return cert;
    }
  }

  if (brackets.empty()) {
    cert.verdict = Positivity::StrictlyPositive;
    cert.witnesses.push_back({a, b, "no real roots (Sturm count 0), sample value " + to_string(p(samples.front()))});
    return cert;
  }
  cert.verdict = Positivity::NonnegativeWithZeros;
  for (const auto& br : brackets) {
    cert.witnesses.push_back({br.root.lo, br.root.hi, multiplicity_evidence(factors, br)});
  }
  return cert;
}

}  // namespace bdfstab
