#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "iwasawa/arith.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/lvalues.hpp"

namespace iwasawa {

const std::vector<long>& discrete_log_table(long p, int m) {
  static std::mutex mu;
  static std::map<std::pair<long, int>, std::vector<long>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  long q = ipow(p, m);
  std::vector<long> t(static_cast<std::size_t>(q), -1);
  if (q == 1) {
    t[0] = 0;
  } else {
    long g = primitive_root(p);
    long x = 1;
    for (long i = 0; i < euler_phi_prime_power(p, m); ++i) {
      t[static_cast<std::size_t>(x)] = i;
      x = mulmod(x, g, q);
    }
  }
  return cache.emplace(key, std::move(t)).first->second;
}

int DirichletCharacter::conductor_exponent() const {
  if (m == 0 || mod(j, group_order()) == 0) return 0;
  long jj = mod(j, group_order());
  int k = 1;
  while (k < m && jj % ipow(p, m - k) != 0) ++k;
  return k;
}

bool DirichletCharacter::is_even() const { return m == 0 || mod(j, 2) == 0; }

long DirichletCharacter::exponent(long n) const {
  if (m == 0) return 0;
  long i = discrete_log_table(p, m)[static_cast<std::size_t>(mod(n, modulus()))];
  if (i < 0) return -1;
  return mulmod(i, mod(j, group_order()), group_order());
}

Complex DirichletCharacter::operator()(long n) const {
  long e = exponent(n);
  if (e < 0) return Complex(0);
  return root_of_unity(group_order(), e);
}

DirichletCharacter DirichletCharacter::pow(long k) const {
  DirichletCharacter r = *this;
  r.j = m == 0 ? 0 : mulmod(mod(j, group_order()), mod(k, group_order()), group_order());
  return r;
}

DirichletCharacter DirichletCharacter::primitive() const {
  int k = conductor_exponent();
  if (k == 0) return {p, 0, 0};
  return {p, k, mod(j, group_order()) / ipow(p, m - k)};
}

bool DirichletCharacter::operator<(const DirichletCharacter& o) const {
  if (p != o.p) return p < o.p;
  if (m != o.m) return m < o.m;
  return mod(j, group_order()) < mod(o.j, o.group_order());
}

std::string DirichletCharacter::label() const {
  std::ostringstream os;
  os << "chi:" << p << "^" << m << ":" << mod(j, group_order());
  return os.str();
}

DirichletCharacter DirichletCharacter::from_gamma(const GammaCharacter& chi) {
  if (chi.k == 0) return {chi.p, 0, 0};
  long p = chi.p;
  int m = chi.k + 1;
  long phi = euler_phi_prime_power(p, m);
  long cg = unit_coordinate(primitive_root(p), p, chi.k);
  long j = mulmod(mulmod(mod(chi.e, chi.order()), cg, phi), p - 1, phi);
  return {p, m, j};
}

std::vector<DirichletCharacter> DirichletCharacter::all(long p, int m) {
  std::vector<DirichletCharacter> out;
  long phi = m == 0 ? 1 : euler_phi_prime_power(p, m);
  for (long j = 0; j < phi; ++j) out.push_back({p, m, j});
  return out;
}

std::vector<DirichletCharacter> DirichletCharacter::primitive_of_level(long p, int m) {
  std::vector<DirichletCharacter> out;
  for (const auto& c : all(p, m))
    if (c.is_primitive()) out.push_back(c);
  return out;
}

Complex gauss_sum(const DirichletCharacter& chi) {
  if (chi.is_trivial()) return Complex(1);
  if (!chi.is_primitive()) throw Error(Errc::Imprimitive, chi.label() + " is not primitive");
  long q = chi.modulus();
  long L = gauss_sum_field_order(chi);
  Complex s(0);
  for (long a = 1; a < q; ++a) {
    long e = chi.exponent(a);
    if (e < 0) continue;
    // chi(a) zeta_q^a as a single root of unity of order L.
    s += root_of_unity(L, mod(chi.p * e + (chi.p - 1) * a, L));
  }
  return s;
}

long gauss_sum_field_order(const DirichletCharacter& chi) { return chi.m == 0 ? 1 : (chi.p - 1) * chi.modulus(); }

CyclotomicElement<Rational> gauss_sum_exact(const DirichletCharacter& chi) {
  long L = gauss_sum_field_order(chi);
  if (chi.is_trivial()) return CyclotomicElement<Rational>::zeta_power(L, 0, Rational(0), Rational(1));
  if (!chi.is_primitive()) throw Error(Errc::Imprimitive, chi.label() + " is not primitive");
  std::vector<Rational> by_exp(static_cast<std::size_t>(L), Rational(0));
  for (long a = 1; a < chi.modulus(); ++a) {
    long e = chi.exponent(a);
    if (e < 0) continue;
    by_exp[static_cast<std::size_t>(mod(chi.p * e + (chi.p - 1) * a, L))] += 1;
  }
  return CyclotomicElement<Rational>::from_exponents(L, std::move(by_exp), Rational(0));
}

FourierSliceResult fourier_slice_check(const std::vector<long>& a, long m) {
  if (m < 1) throw Error(Errc::InvalidArgument, "slice modulus must be positive");
  long N = static_cast<long>(a.size()) - 1;  // a[0] unused
  if (N < m) throw Error(Errc::InvalidArgument, "need at least m coefficients");
  using Cyc = CyclotomicElement<Rational>;
  const Rational zero(0), one(1);
  auto zeta = [&](long e) { return Cyc::zeta_power(m, e, zero, one); };

  // f^k as rational series; phi^a directly from the definition.
  std::vector<std::vector<Rational>> f(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(N + 1), zero));
  for (long n = 1; n <= N; ++n) f[static_cast<std::size_t>(n % m)][static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(n)];

  Rational worst = 0;
  auto track = [&](const Cyc& d) {
    for (const auto& c : d.coefficients()) worst = std::max(worst, Rational(abs(c)));
  };
  std::vector<std::vector<Cyc>> phi(static_cast<std::size_t>(m));
  for (long x = 0; x < m; ++x) {
    auto& row = phi[static_cast<std::size_t>(x)];
    row.reserve(static_cast<std::size_t>(N + 1));
    for (long n = 0; n <= N; ++n) row.push_back(zeta(x * n) * Rational(n == 0 ? 0 : a[static_cast<std::size_t>(n)]));
    for (long n = 1; n <= N; ++n) {
      Cyc rhs(m, zero);
      for (long k = 0; k < m; ++k) rhs += zeta(x * k) * Cyc::zeta_power(m, 0, zero, f[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)]);
      track(row[static_cast<std::size_t>(n)] - rhs);
    }
  }
  // Inverse direction.
  for (long k = 0; k < m; ++k) {
    for (long n = 1; n <= N; ++n) {
      Cyc back(m, zero);
      for (long x = 0; x < m; ++x) back += zeta(-x * k) * phi[static_cast<std::size_t>(x)][static_cast<std::size_t>(n)];
      back *= Rational(1, m);
      track(back - Cyc::zeta_power(m, 0, zero, f[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)]));
    }
  }

  // |det| of the Vandermonde matrix by complex elimination.
  std::vector<std::vector<Complex>> A(static_cast<std::size_t>(m), std::vector<Complex>(static_cast<std::size_t>(m)));
  for (long i = 0; i < m; ++i)
    for (long k = 0; k < m; ++k) A[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = root_of_unity(m, i * k);
  Real det = 1;
  for (std::size_t c = 0; c < A.size(); ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < A.size(); ++r)
      if (abs(A[r][c]) > abs(A[piv][c])) piv = r;
    std::swap(A[c], A[piv]);
    Complex d = A[c][c];
    det *= abs(d);
    if (abs(d) == 0) break;
    for (std::size_t r = c + 1; r < A.size(); ++r) {
      Complex factor = A[r][c] / d;
      for (std::size_t k = c; k < A.size(); ++k) A[r][k] -= factor * A[c][k];
    }
  }
  FourierSliceResult res;
  res.max_deviation = worst;
  res.vandermonde_modulus = det;
  res.vandermonde_nonzero = det > Real(0.5);
  return res;
}

}  // namespace iwasawa
