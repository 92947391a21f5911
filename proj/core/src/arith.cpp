#include "iwasawa/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "iwasawa/error.hpp"

namespace iwasawa {

long ipow(long base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

Integer zpow(long base, int exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long mulmod(long a, long b, long m) {
  return static_cast<long>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

long powmod(long base, long exp, long m) {
  if (m == 1) return 0;
  long r = 1;
  long b = mod(base, m);
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    exp >>= 1;
  }
  return r;
}

long invmod(long a, long m) {
  long g = m, x = 0, x1 = 1, a1 = mod(a, m);
  while (a1 != 0) {
    long q = g / a1;
    long t = g - q * a1;
    g = a1;
    a1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) throw Error(Errc::InvalidArgument, "invmod: not invertible");
  return mod(x, m);
}

int valuation(long n, long p) {
  if (n == 0) throw Error(Errc::InvalidArgument, "valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int valuation(const Integer& n, long p) {
  if (n == 0) throw Error(Errc::InvalidArgument, "valuation of zero");
  Integer pp = p;
  mpz_class rest;
  return static_cast<int>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

int valuation(const Rational& x, long p) {
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

int floor_log(long n, long p) {
  int k = 0;
  while (n >= p) {
    n /= p;
    ++k;
  }
  return k;
}

long residue_mod(const Rational& x, long m) {
  Integer M = m;
  Integer den = x.get_den();
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t()) == 0)
    throw Error(Errc::InvalidArgument, "residue_mod: denominator not invertible");
  Integer r = (x.get_num() * inv) % M;
  if (r < 0) r += M;
  return r.get_si();
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<int> smallest_prime_factor_table(long n) {
  std::vector<int> spf(static_cast<std::size_t>(n + 1), 0);
  for (long i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    for (long j = i; j <= n; j += i)
      if (spf[j] == 0) spf[j] = static_cast<int>(i);
  }
  return spf;
}

std::vector<long> primes_up_to(long n) {
  std::vector<long> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n + 1), false);
  for (long i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (long j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

namespace {

Integer pollard_rho(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  std::mt19937_64 rng(0x5eed);
  while (true) {
    Integer c = static_cast<unsigned long>(rng() % 1000 + 1);
    Integer x = 2, y = 2, d = 1;
    auto f = [&](const Integer& v) {
      Integer r = (v * v + c) % n;
      return r;
    };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      Integer diff = x - y;
      mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  Integer q = n / d;
  factor_into(q, out);
}

}  // namespace

std::vector<std::pair<Integer, int>> factorize(Integer n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "factorize(0)");
  mpz_abs(n.get_mpz_t(), n.get_mpz_t());
  std::vector<Integer> primes;
  for (unsigned long d = 2; d < 100000 && Integer(d) * d <= n; ++d) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      primes.push_back(Integer(d));
      n /= d;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Integer, int>> out;
  for (const auto& q : primes) {
    if (!out.empty() && out.back().first == q)
      ++out.back().second;
    else
      out.emplace_back(q, 1);
  }
  return out;
}

bool is_squarefree(long n) {
  n = std::labs(n);
  if (n == 0) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % (d * d) == 0) return false;
    if (n % d == 0) n /= d;
  }
  return true;
}

long primitive_root(long p) {
  if (!is_prime(p) || p == 2) throw Error(Errc::InvalidArgument, "primitive_root needs an odd prime");
  std::vector<long> factors;
  long m = p - 1;
  for (long d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) factors.push_back(m);
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long q : factors)
      if (powmod(g, (p - 1) / q, p) == 1) ok = false;
    // A root mod p stays primitive mod p^k iff g^(p-1) != 1 mod p^2.
    if (ok && powmod(g, p - 1, p * p) != 1) return g;
  }
  throw Error(Errc::InvalidArgument, "no primitive root found");
}

long euler_phi_prime_power(long p, int k) {
  if (k == 0) return 1;
  return ipow(p, k - 1) * (p - 1);
}

Real to_real(const Integer& n) {
  if (n.fits_slong_p()) return Real(n.get_si());
  return Real(n.get_str());
}

Real to_real(const Rational& x) { return to_real(x.get_num()) / to_real(x.get_den()); }

Real real_pi() { return boost::math::constants::pi<Real>(); }

Real real_euler_gamma() { return boost::math::constants::euler<Real>(); }

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace iwasawa
