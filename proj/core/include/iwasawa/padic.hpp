#pragma once

#include <limits>
#include <string>

#include "iwasawa/types.hpp"

namespace iwasawa {

// An element p^v * u of Q_p known modulo p^(v+M), with u a unit mod p^M.
// A zero carries only its absolute precision ("zero at precision"); the
// exact zero is a separate state used for structural zeros.
class PadicNumber {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max() / 4;

  PadicNumber() = default;

  static PadicNumber exact_zero(long p);
  static PadicNumber zero(long p, int absolute_precision);
  static PadicNumber from_integer(long p, const Integer& n, int precision);
  static PadicNumber from_rational(long p, const Rational& x, int precision);
  static PadicNumber one(long p, int precision) { return from_integer(p, 1, precision); }

  long prime() const { return p_; }
  bool is_zero() const { return m_ == 0; }
  bool is_exact_zero() const { return m_ == 0 && v_ == kExact; }
  // For a zero this is the absolute precision.
  int valuation() const { return v_; }
  // Relative precision; 0 for zeros.
  int precision() const { return m_; }
  int absolute_precision() const { return is_zero() ? v_ : v_ + m_; }
  const Integer& unit() const { return u_; }

  // Representative in [0, p^N) of the value mod p^N (valuation must be >= 0).
  Integer residue(int N) const;
  Rational to_rational() const;

  PadicNumber with_precision(int relative) const;
  PadicNumber with_absolute_precision(int N) const;

  PadicNumber inverse() const;
  PadicNumber pow(long e) const;

  // x == y mod p^N; both operands must be known to absolute precision N.
  bool congruent(const PadicNumber& other, int N) const;

  std::string to_string() const;

  PadicNumber operator-() const;
  PadicNumber& operator+=(const PadicNumber& o);
  PadicNumber& operator-=(const PadicNumber& o);
  PadicNumber& operator*=(const PadicNumber& o);
  PadicNumber& operator/=(const PadicNumber& o);
  // Exact scaling by an integer.
  PadicNumber& operator*=(long k);

  friend PadicNumber operator+(PadicNumber a, const PadicNumber& b) { return a += b; }
  friend PadicNumber operator-(PadicNumber a, const PadicNumber& b) { return a -= b; }
  friend PadicNumber operator*(PadicNumber a, const PadicNumber& b) { return a *= b; }
  friend PadicNumber operator/(PadicNumber a, const PadicNumber& b) { return a /= b; }
  friend PadicNumber operator*(PadicNumber a, long k) { return a *= k; }
  friend PadicNumber operator*(long k, PadicNumber a) { return a *= k; }

 private:
  PadicNumber(long p, int v, int m, Integer u);
  static PadicNumber normalized(long p, int v, int m, Integer u);

  long p_ = 0;
  int v_ = kExact;
  int m_ = 0;
  Integer u_ = 0;
};

// Both zero at their common precision, i.e. the difference carries no digit.
bool agrees(const PadicNumber& a, const PadicNumber& b);

// log(x) for x = 1 mod p, summed exactly in Q and reduced once.
PadicNumber padic_log(const PadicNumber& x);
// log of an exact integer x = 1 mod p, to absolute precision N.
PadicNumber padic_log_exact(long p, const Integer& x, int N);
// Iwasawa branch on units: log(u) = log(u^(p-1))/(p-1); log(p) = 0.
PadicNumber iwasawa_log(const PadicNumber& x);

// Unit root of x^2 - a_p x + p (good ordinary), or +-1 for multiplicative.
PadicNumber hensel_unit_root(long a_p, long p, int M,
                             ReductionType type = ReductionType::GoodOrdinary);

// q with j = 1/q + 744 + 196884 q + ... ; requires v(j) < 0.
PadicNumber tate_period_from_j(const PadicNumber& j, int M);
// The truncated q-expansion of j used above, evaluated at q.
PadicNumber j_from_q(const PadicNumber& q);

}  // namespace iwasawa
