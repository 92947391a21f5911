#include "iwasawa/padic.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "iwasawa/arith.hpp"
#include "iwasawa/error.hpp"

namespace iwasawa {

namespace {

void check_prime(long a, long b) {
  if (a != b) throw Error(Errc::InvalidArgument, "mixed primes in p-adic arithmetic");
}

Integer reduce(const Integer& x, const Integer& modulus) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

}  // namespace

PadicNumber::PadicNumber(long p, int v, int m, Integer u) : p_(p), v_(v), m_(m), u_(std::move(u)) {}

PadicNumber PadicNumber::normalized(long p, int v, int m, Integer u) {
  if (m <= 0) return zero(p, v + m);
  Integer pm = zpow(p, m);
  u = reduce(u, pm);
  if (u == 0) return zero(p, v + m);
  Integer pp = p;
  Integer rest;
  int k = static_cast<int>(mpz_remove(rest.get_mpz_t(), u.get_mpz_t(), pp.get_mpz_t()));
  return PadicNumber(p, v + k, m - k, rest);
}

PadicNumber PadicNumber::exact_zero(long p) { return PadicNumber(p, kExact, 0, 0); }

PadicNumber PadicNumber::zero(long p, int absolute_precision) {
  return PadicNumber(p, std::min(absolute_precision, kExact), 0, 0);
}

PadicNumber PadicNumber::from_integer(long p, const Integer& n, int precision) {
  if (n == 0) return exact_zero(p);
  if (precision < 1) throw Error(Errc::InvalidArgument, "p-adic precision must be positive");
  int v = iwasawa::valuation(n, p);
  Integer u = n / zpow(p, v);
  return PadicNumber(p, v, precision, reduce(u, zpow(p, precision)));
}

PadicNumber PadicNumber::from_rational(long p, const Rational& x, int precision) {
  if (x == 0) return exact_zero(p);
  if (precision < 1) throw Error(Errc::InvalidArgument, "p-adic precision must be positive");
  int vn = iwasawa::valuation(x.get_num(), p);
  int vd = iwasawa::valuation(x.get_den(), p);
  Integer pm = zpow(p, precision);
  Integer num = x.get_num() / zpow(p, vn);
  Integer den = x.get_den() / zpow(p, vd);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pm.get_mpz_t());
  return PadicNumber(p, vn - vd, precision, reduce(num * inv, pm));
}

Integer PadicNumber::residue(int N) const {
  if (N > absolute_precision()) throw Error(Errc::PrecisionExhausted, "residue beyond known digits");
  if (is_zero() || v_ >= N) return 0;
  if (v_ < 0) throw Error(Errc::InvalidArgument, "residue of a non-integral p-adic number");
  return reduce(u_ * zpow(p_, v_), zpow(p_, N));
}

Rational PadicNumber::to_rational() const {
  if (is_zero()) return 0;
  if (v_ >= 0) return Rational(u_ * zpow(p_, v_));
  return Rational(u_, zpow(p_, -v_));
}

PadicNumber PadicNumber::with_precision(int relative) const {
  if (is_zero() || relative >= m_) return *this;
  if (relative < 1) return zero(p_, v_ + std::max(relative, 0));
  return PadicNumber(p_, v_, relative, reduce(u_, zpow(p_, relative)));
}

PadicNumber PadicNumber::with_absolute_precision(int N) const {
  if (N >= absolute_precision()) return *this;
  if (is_zero() || N <= v_) return zero(p_, N);
  return with_precision(N - v_);
}

PadicNumber PadicNumber::inverse() const {
  if (is_zero()) throw Error(Errc::PrecisionExhausted, "inverse of a p-adic zero");
  Integer pm = zpow(p_, m_);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), u_.get_mpz_t(), pm.get_mpz_t());
  return PadicNumber(p_, -v_, m_, inv);
}

PadicNumber PadicNumber::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  if (e == 0) {
    if (is_zero() && !is_exact_zero())
      throw Error(Errc::PrecisionExhausted, "zeroth power of a zero at precision");
    return from_integer(p_, 1, is_zero() ? 1 : m_);
  }
  if (is_zero()) {
    if (is_exact_zero()) return *this;
    long n = static_cast<long>(v_) * e;
    return zero(p_, static_cast<int>(std::min<long>(n, kExact)));
  }
  Integer pm = zpow(p_, m_);
  Integer r;
  mpz_powm_ui(r.get_mpz_t(), u_.get_mpz_t(), static_cast<unsigned long>(e), pm.get_mpz_t());
  return PadicNumber(p_, static_cast<int>(v_ * e), m_, r);
}

bool PadicNumber::congruent(const PadicNumber& other, int N) const {
  if (absolute_precision() < N || other.absolute_precision() < N)
    throw Error(Errc::PrecisionExhausted, "congruence requested beyond known digits");
  PadicNumber d = *this - other;
  return d.is_zero() || d.valuation() >= N;
}

std::string PadicNumber::to_string() const {
  std::ostringstream os;
  if (is_exact_zero()) return "0";
  if (is_zero()) {
    os << "O(" << p_ << "^" << v_ << ")";
    return os.str();
  }
  os << u_.get_str() << "*" << p_ << "^" << v_ << " + O(" << p_ << "^" << (v_ + m_) << ")";
  return os.str();
}

PadicNumber PadicNumber::operator-() const {
  if (is_zero()) return *this;
  return PadicNumber(p_, v_, m_, zpow(p_, m_) - u_);
}

PadicNumber& PadicNumber::operator+=(const PadicNumber& o) {
  if (o.is_exact_zero()) return *this;
  if (is_exact_zero()) return *this = o;
  check_prime(p_, o.p_);
  int N = std::min(absolute_precision(), o.absolute_precision());
  if (is_zero() && o.is_zero()) return *this = zero(p_, N);
  int vmin = kExact;
  if (!is_zero()) vmin = std::min(vmin, v_);
  if (!o.is_zero()) vmin = std::min(vmin, o.v_);
  if (N <= vmin) return *this = zero(p_, N);
  Integer s = 0;
  if (!is_zero()) s += u_ * zpow(p_, v_ - vmin);
  if (!o.is_zero()) s += o.u_ * zpow(p_, o.v_ - vmin);
  return *this = normalized(p_, vmin, N - vmin, s);
}

PadicNumber& PadicNumber::operator-=(const PadicNumber& o) { return *this += -o; }

PadicNumber& PadicNumber::operator*=(const PadicNumber& o) {
  if (is_exact_zero()) return *this;
  if (o.is_exact_zero()) return *this = o;
  check_prime(p_, o.p_);
  if (is_zero() || o.is_zero()) {
    // A zero's v_ is its absolute precision, so the sum is the product's.
    long n = static_cast<long>(v_) + o.v_;
    return *this = zero(p_, static_cast<int>(std::min<long>(n, kExact)));
  }
  int m = std::min(m_, o.m_);
  return *this = PadicNumber(p_, v_ + o.v_, m, reduce(u_ * o.u_, zpow(p_, m)));
}

PadicNumber& PadicNumber::operator/=(const PadicNumber& o) {
  check_prime(p_ == 0 ? o.p_ : p_, o.p_);
  return *this *= o.inverse();
}

PadicNumber& PadicNumber::operator*=(long k) {
  if (is_exact_zero()) return *this;
  if (k == 0) return *this = exact_zero(p_);
  int w = iwasawa::valuation(k, p_);
  long rest = k / ipow(p_, w);
  if (is_zero()) return *this = zero(p_, v_ + w);
  return *this = PadicNumber(p_, v_ + w, m_, reduce(u_ * rest, zpow(p_, m_)));
}

bool agrees(const PadicNumber& a, const PadicNumber& b) { return (a - b).is_zero(); }

PadicNumber padic_log_exact(long p, const Integer& x, int N) {
  if (N < 1) throw Error(Errc::PrecisionExhausted, "log needs at least one digit");
  Integer pn = zpow(p, N);
  Integer t = x - 1;
  if (!mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p)))
    throw Error(Errc::NotOneUnit, "log argument is not 1 mod p");
  // Changing x by p^N moves log x by a multiple of p^N.
  t = reduce(t, pn);
  if (t == 0) return PadicNumber::zero(p, N);
  int vt = valuation(t, p);
  Rational sum = 0;
  Integer power = 1;
  for (long n = 1;; ++n) {
    if (n * vt - floor_log(n, p) >= N) break;
    power *= t;
    Rational term(power, n);
    term.canonicalize();
    if (n % 2 == 1)
      sum += term;
    else
      sum -= term;
  }
  if (sum == 0) return PadicNumber::zero(p, N);
  int vs = valuation(sum, p);
  if (vs >= N) return PadicNumber::zero(p, N);
  return PadicNumber::from_rational(p, sum, N - vs);
}

PadicNumber padic_log(const PadicNumber& x) {
  if (x.is_zero() || x.valuation() != 0) throw Error(Errc::NotOneUnit, "log of a non-unit");
  if (x.precision() < 2) throw Error(Errc::PrecisionExhausted, "log needs precision >= 2");
  return padic_log_exact(x.prime(), x.unit(), x.precision());
}

PadicNumber iwasawa_log(const PadicNumber& x) {
  if (x.is_zero()) throw Error(Errc::PrecisionExhausted, "log of a p-adic zero");
  long p = x.prime();
  Integer pm = zpow(p, x.precision());
  Integer y;
  mpz_powm_ui(y.get_mpz_t(), x.unit().get_mpz_t(), static_cast<unsigned long>(p - 1), pm.get_mpz_t());
  PadicNumber l = padic_log_exact(p, y, x.precision());
  return l * PadicNumber::from_integer(p, p - 1, x.precision() + 1).inverse();
}

PadicNumber hensel_unit_root(long a_p, long p, int M, ReductionType type) {
  switch (type) {
    case ReductionType::SplitMultiplicative:
      return PadicNumber::from_integer(p, 1, M);
    case ReductionType::NonsplitMultiplicative:
      return PadicNumber::from_integer(p, -1, M);
    case ReductionType::GoodSupersingular:
      throw Error(Errc::SupersingularInput, "no unit root at a supersingular prime");
    case ReductionType::Additive:
      throw Error(Errc::NotOrdinary, "no unit root at an additive prime");
    case ReductionType::GoodOrdinary:
      break;
  }
  if (mod(a_p, p) == 0) throw Error(Errc::SupersingularInput, "a_p = 0 mod p");
  Integer pm = zpow(p, M);
  Integer x = mod(a_p, p);
  for (int iter = 0; iter < 128; ++iter) {
    Integer f = reduce(x * x - a_p * x + p, pm);
    if (f == 0) break;
    Integer df = reduce(2 * x - a_p, pm);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), df.get_mpz_t(), pm.get_mpz_t());
    x = reduce(x - f * inv, pm);
  }
  return PadicNumber::from_integer(p, x, M);
}

namespace {

// Coefficients of j = 1/q + 744 + 196884 q + ... through q^5.
const std::array<const char*, 7> kJCoefficients = {
    "1", "744", "196884", "21493760", "864299970", "20245856256", "333202640600"};

}  // namespace

PadicNumber j_from_q(const PadicNumber& q) {
  if (q.is_zero() || q.valuation() <= 0) throw Error(Errc::InvalidArgument, "j(q) needs v(q) > 0");
  long p = q.prime();
  int prec = q.precision() + 2 * q.valuation() + 4;
  PadicNumber j = q.inverse();
  PadicNumber power = PadicNumber::one(p, prec);
  for (std::size_t k = 1; k < kJCoefficients.size(); ++k) {
    j += power * PadicNumber::from_integer(p, Integer(kJCoefficients[k]), prec);
    power *= q;
  }
  return j;
}

PadicNumber tate_period_from_j(const PadicNumber& j, int M) {
  if (j.is_zero() || j.valuation() >= 0)
    throw Error(Errc::NotMultiplicative, "Tate period needs v(j) < 0");
  long p = j.prime();
  int V = -j.valuation();
  // The first omitted term c_6 q^6 perturbs q at relative valuation 7V.
  int target = std::min({M, j.precision(), 7 * V});
  int work = target + 2 * V + 4;
  PadicNumber q = PadicNumber::from_rational(p, j.inverse().to_rational(), work);
  for (int iter = 0; iter < 64; ++iter) {
    PadicNumber g = j_from_q(q) - j;
    if (g.is_zero() || g.valuation() >= -V + target) break;
    // g'(q) = -1/q^2 + sum k c_k q^(k-1)
    PadicNumber dg = -(q * q).inverse();
    PadicNumber power = PadicNumber::one(p, work);
    for (std::size_t k = 2; k < kJCoefficients.size(); ++k) {
      long kk = static_cast<long>(k) - 1;
      dg += power * PadicNumber::from_integer(p, Integer(kJCoefficients[k]) * kk, work);
      power *= q;
    }
    q = PadicNumber::from_rational(p, (q - g / dg).to_rational(), work);
  }
  return q.with_precision(target);
}

}  // namespace iwasawa
