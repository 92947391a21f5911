#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/curve.hpp"
#include "iwasawa/lvalues.hpp"
#include "iwasawa/measure.hpp"
#include "iwasawa/padic.hpp"
#include "iwasawa/types.hpp"

namespace iwasawa {

// Q(alpha) for the unit root alpha of x^2 - a_p x + p; for multiplicative
// reduction alpha = +-1 is rational and y stays zero.
struct AlphaField {
  long trace = 0;
  long norm = 0;
  bool rational = false;
  long value = 0;  // alpha when rational

  static AlphaField for_reduction(long ap, long p, ReductionType type);
  bool operator==(const AlphaField& o) const {
    return trace == o.trace && norm == o.norm && rational == o.rational && value == o.value;
  }
};

// x + y alpha.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(AlphaField F, Rational x, Rational y = 0);
  static QuadraticNumber alpha(const AlphaField& F);

  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }
  const AlphaField& field() const { return F_; }
  bool is_zero() const { return x_ == 0 && y_ == 0; }

  QuadraticNumber inverse() const;
  QuadraticNumber pow(long e) const;
  PadicNumber to_padic(const PadicNumber& alpha, int precision) const;
  Complex to_complex(const Complex& alpha) const;
  // min(v_p(x), v_p(y)), a lower bound for v_p of the p-adic image.
  int valuation_bound(long p) const;
  std::string to_string() const;

  bool operator==(const QuadraticNumber& o) const { return x_ == o.x_ && y_ == o.y_; }
  bool operator!=(const QuadraticNumber& o) const { return !(*this == o); }
  QuadraticNumber operator-() const { return QuadraticNumber(F_, -x_, -y_); }
  QuadraticNumber& operator+=(const QuadraticNumber& o);
  QuadraticNumber& operator-=(const QuadraticNumber& o);
  QuadraticNumber& operator*=(const QuadraticNumber& o);
  QuadraticNumber& operator/=(const QuadraticNumber& o) { return *this *= o.inverse(); }
  friend QuadraticNumber operator+(QuadraticNumber a, const QuadraticNumber& b) { return a += b; }
  friend QuadraticNumber operator-(QuadraticNumber a, const QuadraticNumber& b) { return a -= b; }
  friend QuadraticNumber operator*(QuadraticNumber a, const QuadraticNumber& b) { return a *= b; }
  friend QuadraticNumber operator/(QuadraticNumber a, const QuadraticNumber& b) { return a /= b; }
  friend QuadraticNumber operator*(QuadraticNumber a, long k) { return a *= QuadraticNumber(a.F_, Rational(k)); }

 private:
  void normalize();
  AlphaField F_;
  Rational x_ = 0, y_ = 0;
};

// The complex image of alpha under the fixed embedding (upper half plane).
Complex sigma_alpha(const AlphaField& F);

// Plus modular symbols [a/p^k]^+ / Omega_E for k = 0..K, recovered from
// twisted L-values by finite Fourier inversion and rational reconstruction.
class ModularSymbols {
 public:
  long prime() const { return p_; }
  int top() const { return static_cast<int>(table_.size()) - 1; }
  // [a/p^k] for any integer a.
  const Rational& operator()(long a, int k) const;
  long denominator_bound() const { return bound_; }
  // Largest |numerical - reconstructed| over all entries.
  const Real& max_residual() const { return residual_; }
  // Numerical values before reconstruction, units only, level k.
  const std::vector<Real>& raw(int k) const { return raw_.at(static_cast<std::size_t>(k)); }

 private:
  friend ModularSymbols modular_symbol_values(LFunction& L, long p, int n, long denom_bound);
  long p_ = 0;
  long bound_ = 0;
  Real residual_ = 0;
  std::vector<std::vector<Rational>> table_;  // table_[k][a], a mod p^k
  std::vector<std::vector<Real>> raw_;
};

constexpr long kDefaultDenominatorBound = 256;
constexpr long kMaxDenominatorBound = 1024;

// Symbols up to level n+1; the bound doubles on failure up to kMaxDenominatorBound.
ModularSymbols modular_symbol_values(LFunction& L, long p, int n, long denom_bound = kDefaultDenominatorBound);

struct PadicLData {
  std::string label;
  long p = 0;
  int level = 0;      // Gamma level n; the top residue level is n+1
  int precision = 0;  // M
  ReductionType type = ReductionType::GoodOrdinary;
  long ap = 0;
  AlphaField field;
  PadicNumber alpha;
  Complex alpha_complex;
  ModularSymbols symbols;
  // Exact values on (Z/p^(j+1))^x pushed to Gamma_j, j = 0..n.
  std::vector<LevelElement<QuadraticNumber>> exact;
  MeasureTower<PadicNumber> tower;
  int measure_valuation = 0;
  Rational l_over_omega;  // [0]
};

PadicLData mtt_measure(LFunction& L, long p, int n, int M, long denom_bound = kDefaultDenominatorBound);

// The residue-level measure at level k (1 <= k <= n+1) before pushing to Gamma.
LevelElement<QuadraticNumber> mtt_residue_level(const PadicLData& d, int k);

// Distribution relation of the exact levels.
bool exact_tower_compatible(const PadicLData& d);

struct PadicLSeries {
  SPowerSeries<PadicNumber> series;
  TauLedger ledger;
  // tau(iota phi mu)(s) against L((1-p)s), coefficientwise.
  bool iota_phi_consistent = false;
};
PadicLSeries padic_l_series(const PadicLData& d, int degree);

// log_p(q_E)/v_p(q_E), Iwasawa branch.
PadicNumber l_invariant(const CurveData& E, long p, int M);

enum class VerdictStatus { HoldsAtPrecision, Fails, Indeterminate };
const char* verdict_name(VerdictStatus s);

struct Verdict {
  std::string claim;
  VerdictStatus status = VerdictStatus::Indeterminate;
  std::map<std::string, std::string> evidence;
  std::string tolerance;
};

// Settings shared by the verdict builders.
struct MttConfig {
  int level = 1;
  int precision = 6;
  int degree = 4;
  long denom_bound = kDefaultDenominatorBound;
  Real tol = Real(1e-6);
};

// The residue measure at the top level against its interpolation values
// through sigma: the augmentation against (1-1/alpha)^e L(E,1)/Omega (e = 2
// good, 1 multiplicative) and every even chi of conductor p^k against
// W(chi) alpha^-k L(E,chi^-1,1)/Omega.  Odd characters see only the minus
// symbols and are not interpolated by this measure.
Verdict interpolation_check(LFunction& L, const PadicLData& d, const Real& tol);

// The s^1 coefficient of L_{E,p} against the L-invariant times L(E,1)/Omega.
Verdict gs_check(LFunction& L, long p, const MttConfig& cfg);
Verdict conj_mtt_verdict(LFunction& L, long p, const MttConfig& cfg);
Verdict conj11_verdict(LFunction& E, LFunction& F, long p, const MttConfig& cfg);
Verdict finite_level_product_check(LFunction& E, LFunction& F, long p, const MttConfig& cfg);
Verdict conj21_leading_check(LFunction& E, LFunction& F, long p, const MttConfig& cfg);

struct TwistCandidate {
  long D = 0;
  std::string label;
  long conductor = 0;
  Real l_value = 0;
  Real l_over_omega = 0;
  bool sha_condition_verified = false;  // never checked here
};
std::vector<TwistCandidate> twist_search(const CurveData& E, long p, long X, const std::vector<long>& extra_primes = {},
                                         const std::vector<int>& extra_signs = {}, std::size_t max_candidates = 0,
                                         const Real& tol = Real(1e-10));

}  // namespace iwasawa
