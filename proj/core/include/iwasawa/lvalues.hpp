#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/curve.hpp"
#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/measure.hpp"
#include "iwasawa/types.hpp"

namespace iwasawa {

// chi(g^i) = exp(2 pi i * i j / phi(p^m)) on (Z/p^m)^x, g = primitive_root(p);
// chi(n) = 0 when p | n.  m = 0 is the trivial character mod 1.
struct DirichletCharacter {
  long p = 0;
  int m = 0;
  long j = 0;

  long modulus() const { return ipow(p, m); }
  long group_order() const { return m == 0 ? 1 : euler_phi_prime_power(p, m); }
  int conductor_exponent() const;
  bool is_primitive() const { return conductor_exponent() == m; }
  bool is_trivial() const { return conductor_exponent() == 0; }
  bool is_even() const;
  // Exponent e with chi(n) = zeta_{phi(p^m)}^e, or -1 when p | n.
  long exponent(long n) const;
  Complex operator()(long n) const;
  DirichletCharacter conj() const { return pow(-1); }
  DirichletCharacter pow(long k) const;
  // The primitive character inducing this one.
  DirichletCharacter primitive() const;
  bool operator==(const DirichletCharacter& o) const { return p == o.p && m == o.m && mod(j - o.j, group_order()) == 0; }
  bool operator<(const DirichletCharacter& o) const;
  std::string label() const;

  // The Dirichlet character a -> chi(<a>) of conductor p^(k+1).
  static DirichletCharacter from_gamma(const GammaCharacter& chi);
  static std::vector<DirichletCharacter> all(long p, int m);
  static std::vector<DirichletCharacter> primitive_of_level(long p, int m);
};

// i with g^i = n mod p^m, or -1 for non-units.
const std::vector<long>& discrete_log_table(long p, int m);

// W(chi) = sum over units a mod p^k of chi(a) exp(2 pi i a/p^k); 1 for the
// trivial character.
Complex gauss_sum(const DirichletCharacter& chi);
// The same sum in Q(zeta_L), L = (p-1) p^k, with zeta_{p^k} = zeta_L^(p-1).
CyclotomicElement<Rational> gauss_sum_exact(const DirichletCharacter& chi);
long gauss_sum_field_order(const DirichletCharacter& chi);

struct ComplexLValue {
  Complex value;
  Real error = 0;  // rigorous truncation bound plus the observed t-spread
  long terms = 0;
  long conductor = 0;
  Complex root_number;
};

// Numerical L-function data of one curve.  Thread-safe: tables and caches
// are guarded by one mutex.
class LFunction {
 public:
  explicit LFunction(CurveData E);
  LFunction(const LFunction&) = delete;
  LFunction& operator=(const LFunction&) = delete;

  const CurveData& curve() const { return E_; }
  const std::string& label() const { return E_.label(); }
  long conductor() const { return E_.conductor(); }
  Real omega() const { return omega_; }

  // a_0..a_n (a copy of the shared table, grown on demand).
  std::vector<long> coefficients(long n);
  // Adopt a precomputed a_0..a_N table if it is longer than the current one.
  void preload_coefficients(std::vector<long> an);

  int root_number();
  // L^(r)(E,1), r <= 3.
  ComplexLValue value(int r);
  // Smallest r with |L^(r)(1)| > tol; RankCapExceeded past 3.
  int analytic_rank(const Real& tol);

  // L(E,chi,1) with chi(n) = 0 for p | n.  For a trivial chi mod p^m, m >= 1,
  // this is L-dagger.
  ComplexLValue twisted(const DirichletCharacter& chi);
  // All primitive characters mod p^k at once.
  std::map<DirichletCharacter, ComplexLValue> twisted_level(long p, int k);
  long twist_conductor(long p, int k) const;
  // Seed a level from a cache; an existing entry wins.
  void preload_level(long p, int k, std::map<DirichletCharacter, ComplexLValue> values);
  bool has_level(long p, int k);

  // L(E,1) with the Euler factor at p removed.
  ComplexLValue modified(long p);

 private:
  void ensure(long n);
  std::map<DirichletCharacter, ComplexLValue> compute_level(long p, int k);

  CurveData E_;
  Real omega_;
  std::mutex mu_;
  std::vector<long> an_;
  std::optional<int> root_;
  std::map<int, ComplexLValue> derivs_;
  std::map<std::pair<long, int>, std::map<DirichletCharacter, ComplexLValue>> twisted_;
};

int root_number(LFunction& L);
ComplexLValue l_value(LFunction& L, int r);
ComplexLValue twisted_l_value(LFunction& L, const DirichletCharacter& chi);
ComplexLValue modified_l(LFunction& L, long p);

// Euler factor (1 - a_p/p + eps/p) with eps = 1 for good and 0 for
// multiplicative reduction.
Real euler_factor_at_one(const CurveData& E, long p);

// G_r(x) = 1/(r-1)! int_1^inf exp(-x y) (log y)^(r-1) dy/y, G_0(x) = exp(-x).
Real weight_function(int r, const Real& x);

// mu_{E,inf} at level r on (Z/p^r)^x: slot a holds the partial value
// sum_{n = a mod p^r} a_n/n of L-dagger at s = 1.
struct ArchimedeanLevel {
  LevelElement<Complex> residue;
  LevelElement<Complex> gamma;  // phi push to Gamma_{r-1}
  Real error = 0;
};
ArchimedeanLevel archimedean_measure_level(LFunction& L, long p, int r);

// phi^a = sum_n a_n zeta_m^(an) q^n against sum_k zeta_m^(ak) f^k, and back
// via f^k = (1/m) sum_a zeta_m^(-ak) phi^a, in exact Q(zeta_m) arithmetic.
struct FourierSliceResult {
  Rational max_deviation = 0;
  Real vandermonde_modulus = 0;  // |det(zeta^(ak))| = m^(m/2)
  bool vandermonde_nonzero = false;
};
FourierSliceResult fourier_slice_check(const std::vector<long>& a, long m);

}  // namespace iwasawa
