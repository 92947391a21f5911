#include "iwasawa/measure.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace iwasawa {

const std::vector<long>& gamma_log_table(long p, int r) {
  static std::mutex mu;
  static std::map<std::pair<long, int>, std::vector<long>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, r);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  long m = ipow(p, r + 1);
  std::vector<long> table(static_cast<std::size_t>(m), -1);
  long x = 1;
  for (long c = 0; c < ipow(p, r); ++c) {
    table[static_cast<std::size_t>(x)] = c;
    x = mulmod(x, 1 + p, m);
  }
  return cache.emplace(key, std::move(table)).first->second;
}

long gamma_coordinate(const Integer& x, long p, int r) {
  if (r == 0) return 0;
  PadicNumber lx = padic_log_exact(p, x, r + 1);
  PadicNumber lg = padic_log_exact(p, Integer(1 + p), r + 1);
  PadicNumber c = lx / lg;
  return c.residue(r).get_si();
}

long unit_coordinate(long a, long p, int r) {
  if (r == 0) return 0;
  long m = ipow(p, r + 1);
  if (mod(a, p) == 0) throw Error(Errc::InvalidArgument, "unit_coordinate of a non-unit");
  long c = gamma_log_table(p, r)[static_cast<std::size_t>(powmod(a, p - 1, m))];
  long pr = ipow(p, r);
  return mulmod(c, invmod(p - 1, pr), pr);
}

GammaCharacter GammaCharacter::pow(long m) const {
  GammaCharacter r = *this;
  if (k == 0) return r;
  r.e = mod(e * (m % order()), order());
  while (r.k > 0 && r.e % p == 0) {
    r.e /= p;
    --r.k;
  }
  if (r.k == 0) r.e = 0;
  return r;
}

std::vector<GammaCharacter> GammaCharacter::all(long p, int n) {
  std::vector<GammaCharacter> out{{p, 0, 0}};
  for (int k = 1; k <= n; ++k)
    for (long e = 1; e < ipow(p, k); ++e)
      if (e % p != 0) out.push_back({p, k, e});
  return out;
}

std::string GammaCharacter::label() const {
  std::ostringstream os;
  os << "gamma:" << p << "^" << k << ":" << e;
  return os.str();
}

Complex eval_character(const LevelElement<Complex>& mu, const GammaCharacter& chi) {
  if (chi.k > mu.level()) throw Error(Errc::LevelMismatch, "character conductor exceeds the level");
  Complex s(0);
  for (long c = 0; c < mu.modulus(); ++c) s += mu[c] * root_of_unity(chi.order(), chi.exponent_at(c));
  return s;
}

namespace {

int factorial_valuation(int k, long p) {
  int v = 0;
  for (long q = p; q <= k; q *= p) v += static_cast<int>(k / q);
  return v;
}

int min_valuation(const LevelElement<PadicNumber>& mu) {
  int v = PadicNumber::kExact;
  for (const auto& x : mu.coefficients())
    if (!x.is_exact_zero()) v = std::min(v, x.valuation());
  return v == PadicNumber::kExact ? 0 : v;
}

}  // namespace

int tau_error_valuation(int level, int k, int measure_valuation, long p) {
  if (k == 0) return PadicNumber::kExact;
  // (l + d)^k - l^k with v(l) >= 1, v(d) >= n+1 has valuation >= n + k.
  return level + k + measure_valuation - factorial_valuation(k, p);
}

SPowerSeries<PadicNumber> tau(const LevelElement<PadicNumber>& mu, int degree, int measure_valuation,
                              TauLedger* ledger) {
  if (mu.kind() != IndexKind::GammaCoordinate) throw Error(Errc::InvalidArgument, "tau needs Gamma coordinates");
  if (degree > kMaxSeriesDegree || degree < 1) throw Error(Errc::DegreeOverflow, "series degree out of range");
  int n = mu.level();
  if (n < 1) throw Error(Errc::LevelMismatch, "tau needs level >= 1");
  long p = mu.prime();

  std::vector<int> bound(static_cast<std::size_t>(degree));
  int work = n + 2;
  for (int k = 0; k < degree; ++k) {
    bound[static_cast<std::size_t>(k)] = tau_error_valuation(n, k, measure_valuation, p);
    if (k > 0) work = std::max(work, bound[static_cast<std::size_t>(k)] - measure_valuation + 2);
  }

  Integer lift_mod = zpow(p, n + 1 + kRiemannGuard);
  std::vector<PadicNumber> logs;
  logs.reserve(static_cast<std::size_t>(mu.modulus()));
  Integer lift = 1;
  for (long c = 0; c < mu.modulus(); ++c) {
    logs.push_back(padic_log_exact(p, lift, work));
    lift = (lift * (1 + p)) % lift_mod;
  }

  SPowerSeries<PadicNumber> out(degree, PadicNumber::exact_zero(p));
  std::vector<PadicNumber> powers(static_cast<std::size_t>(mu.modulus()), PadicNumber::one(p, work));
  PadicNumber factorial = PadicNumber::one(p, work);
  for (int k = 0; k < degree; ++k) {
    if (k > 0) {
      for (long c = 0; c < mu.modulus(); ++c) powers[static_cast<std::size_t>(c)] *= logs[static_cast<std::size_t>(c)];
      factorial *= static_cast<long>(k);
    }
    PadicNumber sum = PadicNumber::exact_zero(p);
    for (long c = 0; c < mu.modulus(); ++c)
      if (!mu[c].is_exact_zero()) sum += mu[c] * powers[static_cast<std::size_t>(c)];
    PadicNumber coeff = sum / factorial;
    if (k % 2 == 1) coeff = -coeff;
    out[k] = coeff.with_absolute_precision(bound[static_cast<std::size_t>(k)]);
  }

  if (ledger != nullptr) {
    ledger->level = n;
    ledger->measure_valuation = measure_valuation;
    ledger->error_valuation = bound;
    ledger->exhausted.assign(static_cast<std::size_t>(degree), false);
    for (int k = 1; k < degree; ++k) {
      int trivial = measure_valuation + k - factorial_valuation(k, p);
      ledger->exhausted[static_cast<std::size_t>(k)] =
          out[k].is_zero() && out[k].absolute_precision() <= trivial;
    }
  }
  return out;
}

SPowerSeries<PadicNumber> tau(const LevelElement<PadicNumber>& mu, int degree) {
  return tau(mu, degree, min_valuation(mu));
}

SPowerSeries<Complex> tau(const LevelElement<Complex>& mu, long b, int degree) {
  if (degree > kMaxSeriesDegree || degree < 1) throw Error(Errc::DegreeOverflow, "series degree out of range");
  long p = mu.prime();
  int n = mu.level();
  if (b <= 1 || b % p == 0) throw Error(Errc::InvalidArgument, "complex tau needs an integer b > 1 prime to p");
  long pn = mu.modulus();
  long ca = unit_coordinate(b, p, n) * (p - 1) % std::max(pn, 1L);
  if (n > 0 && ca % p == 0) throw Error(Errc::InvalidArgument, "b^(p-1) must generate Gamma_n");
  long ca_inv = n > 0 ? invmod(ca, pn) : 0;
  Real log_a = Real(p - 1) * log(Real(b));
  SPowerSeries<Complex> out(degree, Complex(0));
  for (long c = 0; c < pn; ++c) {
    Real ell = Real(mulmod(c, ca_inv, pn)) * log_a;
    Real term = 1;
    for (int k = 0; k < degree; ++k) {
      out[k] += mu[c] * term;
      term *= -ell / Real(k + 1);
    }
  }
  return out;
}

BasisChange<PadicNumber> basis_change_xa_s(long a, long p, int r, int precision) {
  if (a == 1) throw Error(Errc::SingularMatrix, "X_a is zero for a = 1");
  if (mod(a, p) != 1) throw Error(Errc::BadSupport, "a must be 1 mod p");
  PadicNumber L = padic_log_exact(p, Integer(a), precision);
  return basis_change(L, r, PadicNumber::exact_zero(p), PadicNumber::one(p, precision));
}

BasisChange<Complex> basis_change_xa_s(long b, long p, int r) {
  if (b <= 1) throw Error(Errc::SingularMatrix, "X_a is zero for a = 1");
  Complex L = Complex(Real(p - 1) * log(Real(b)));
  return basis_change(L, r, Complex(0), Complex(1));
}

OrderVerdict vanishing_order(const SPowerSeries<PadicNumber>& f) {
  for (int k = 0; k < f.degree(); ++k)
    if (!f[k].is_zero()) return {k};
  return {};
}

OrderVerdict vanishing_order(const SPowerSeries<Complex>& f, const Real& tol) {
  for (int k = 0; k < f.degree(); ++k)
    if (abs(f[k]) > tol) return {k};
  return {};
}

}  // namespace iwasawa
