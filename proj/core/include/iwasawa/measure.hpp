#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/arith.hpp"
#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/padic.hpp"
#include "iwasawa/types.hpp"

namespace iwasawa {

// How the p^r slots of a LevelElement are read.  GammaCoordinate: slot c is
// the class of gamma^c, gamma = 1+p, in Gamma_r = (1+pZ_p)/(1+p^(r+1)Z_p);
// the group law is addition mod p^r.  Residue: slot a is the class of a in
// (Z/p^r)^x (non-units stay zero); the group law is multiplication mod p^r.
enum class IndexKind { GammaCoordinate, Residue };

// Table of c with (1+p)^c = x mod p^(r+1), indexed by x; -1 off 1+pZ.
const std::vector<long>& gamma_log_table(long p, int r);
// c(x) = log(x)/log(1+p) mod p^r for x = 1 mod p, computed in Q_p.
long gamma_coordinate(const Integer& x, long p, int r);
// Coordinate of <a> = a/omega(a) for a unit a.
long unit_coordinate(long a, long p, int r);

template <class T>
class LevelElement {
 public:
  LevelElement(long p, int level, T zero, IndexKind kind = IndexKind::GammaCoordinate)
      : p_(p), level_(level), kind_(kind), zero_(zero),
        c_(static_cast<std::size_t>(ipow(p, level)), zero) {}

  long prime() const { return p_; }
  int level() const { return level_; }
  IndexKind kind() const { return kind_; }
  long modulus() const { return static_cast<long>(c_.size()); }
  std::size_t size() const { return c_.size(); }
  const T& zero() const { return zero_; }
  const std::vector<T>& coefficients() const { return c_; }

  T& operator[](long i) { return c_[static_cast<std::size_t>(mod(i, modulus()))]; }
  const T& operator[](long i) const { return c_[static_cast<std::size_t>(mod(i, modulus()))]; }

  T augmentation() const {
    T s = zero_;
    for (const auto& x : c_) s += x;
    return s;
  }

  // Push forward to level r-1 by summing each fiber.
  LevelElement project() const {
    if (level_ == 0) throw Error(Errc::LevelMismatch, "cannot project below level 0");
    LevelElement r(p_, level_ - 1, zero_, kind_);
    long m = r.modulus();
    for (long i = 0; i < modulus(); ++i) r.c_[static_cast<std::size_t>(i % m)] += c_[static_cast<std::size_t>(i)];
    return r;
  }

  LevelElement& operator+=(const LevelElement& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  LevelElement& operator-=(const LevelElement& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  LevelElement& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend LevelElement operator+(LevelElement a, const LevelElement& b) { return a += b; }
  friend LevelElement operator-(LevelElement a, const LevelElement& b) { return a -= b; }
  friend LevelElement operator*(LevelElement a, const T& s) { return a *= s; }

  // Product in the group ring.
  friend LevelElement operator*(const LevelElement& a, const LevelElement& b) {
    a.check(b);
    LevelElement r(a.p_, a.level_, a.zero_, a.kind_);
    long m = a.modulus();
    for (long i = 0; i < m; ++i) {
      if (a.kind_ == IndexKind::Residue && i % a.p_ == 0 && m > 1) continue;
      for (long j = 0; j < m; ++j) {
        if (a.kind_ == IndexKind::Residue && j % a.p_ == 0 && m > 1) continue;
        long k = a.kind_ == IndexKind::GammaCoordinate ? (i + j) % m : mulmod(i, j, m);
        r.c_[static_cast<std::size_t>(k)] += a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
      }
    }
    return r;
  }

 private:
  void check(const LevelElement& o) const {
    if (o.p_ != p_ || o.level_ != level_ || o.kind_ != kind_)
      throw Error(Errc::LevelMismatch, "group ring elements live in different rings");
  }

  long p_;
  int level_;
  IndexKind kind_;
  T zero_;
  std::vector<T> c_;
};

// A projection-compatible sequence of levels 0..n.
template <class T>
class MeasureTower {
 public:
  explicit MeasureTower(std::vector<LevelElement<T>> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw Error(Errc::InvalidArgument, "empty tower");
    for (std::size_t r = 0; r < levels_.size(); ++r)
      if (levels_[r].level() != static_cast<int>(r))
        throw Error(Errc::LevelMismatch, "tower levels must be 0..n in order");
  }

  // The tower generated by projecting a top level all the way down.
  static MeasureTower from_top(const LevelElement<T>& top) {
    std::vector<LevelElement<T>> lv(static_cast<std::size_t>(top.level() + 1), top);
    for (int r = top.level(); r > 0; --r) lv[static_cast<std::size_t>(r - 1)] = lv[static_cast<std::size_t>(r)].project();
    return MeasureTower(std::move(lv));
  }

  int top_level() const { return static_cast<int>(levels_.size()) - 1; }
  long prime() const { return levels_.front().prime(); }
  const LevelElement<T>& level(int r) const { return levels_.at(static_cast<std::size_t>(r)); }
  const LevelElement<T>& top() const { return levels_.back(); }
  const std::vector<LevelElement<T>>& levels() const { return levels_; }

  template <class Eq>
  bool is_compatible(Eq equal) const {
    for (std::size_t r = 1; r < levels_.size(); ++r) {
      LevelElement<T> down = levels_[r].project();
      for (long i = 0; i < down.modulus(); ++i)
        if (!equal(down[i], levels_[r - 1][i])) return false;
    }
    return true;
  }

  template <class F>
  MeasureTower map_levels(F f) const {
    std::vector<LevelElement<T>> out;
    out.reserve(levels_.size());
    for (const auto& l : levels_) out.push_back(f(l));
    return MeasureTower(std::move(out));
  }

  friend MeasureTower operator+(const MeasureTower& a, const MeasureTower& b) {
    std::vector<LevelElement<T>> out;
    for (std::size_t r = 0; r < a.levels_.size(); ++r) out.push_back(a.levels_[r] + b.levels_.at(r));
    return MeasureTower(std::move(out));
  }
  friend MeasureTower operator*(const MeasureTower& a, const T& s) {
    return a.map_levels([&](const LevelElement<T>& l) { return l * s; });
  }

 private:
  std::vector<LevelElement<T>> levels_;
};

// Truncated power series c_0 + c_1 s + ... + c_{d-1} s^{d-1}.
template <class T>
class SPowerSeries {
 public:
  SPowerSeries(int degree, T zero) : zero_(zero), c_(static_cast<std::size_t>(degree), zero) {}
  SPowerSeries(std::vector<T> coeffs, T zero) : zero_(zero), c_(std::move(coeffs)) {}

  int degree() const { return static_cast<int>(c_.size()); }
  const T& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
  T& operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }
  const std::vector<T>& coefficients() const { return c_; }
  const T& zero() const { return zero_; }

  SPowerSeries& operator+=(const SPowerSeries& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  SPowerSeries& operator-=(const SPowerSeries& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend SPowerSeries operator+(SPowerSeries a, const SPowerSeries& b) { return a += b; }
  friend SPowerSeries operator-(SPowerSeries a, const SPowerSeries& b) { return a -= b; }
  friend SPowerSeries operator*(const SPowerSeries& a, const SPowerSeries& b) {
    a.check(b);
    SPowerSeries r(a.degree(), a.zero_);
    for (int i = 0; i < a.degree(); ++i)
      for (int j = 0; i + j < a.degree(); ++j) r[i + j] += a[i] * b[j];
    return r;
  }

  // f(lambda s)
  SPowerSeries scaled(const T& lambda) const {
    SPowerSeries r = *this;
    T power = lambda;
    for (int k = 1; k < degree(); ++k) {
      r[k] *= power;
      power *= lambda;
    }
    return r;
  }

 private:
  void check(const SPowerSeries& o) const {
    if (o.degree() != degree()) throw Error(Errc::DegreeOverflow, "series truncations differ");
  }
  T zero_;
  std::vector<T> c_;
};

// chi(gamma^c) = zeta_{p^k}^(e c); k = 0 is the trivial character.  As a
// Dirichlet character it is even with conductor p^(k+1) (or 1 if trivial).
struct GammaCharacter {
  long p = 0;
  int k = 0;
  long e = 0;

  bool is_trivial() const { return k == 0; }
  long order() const { return ipow(p, k); }
  long exponent_at(long c) const { return k == 0 ? 0 : mod(e * (c % order()), order()); }
  GammaCharacter pow(long m) const;
  GammaCharacter inverse() const { return pow(-1); }
  // All characters of Gamma_n, grouped by increasing k.
  static std::vector<GammaCharacter> all(long p, int n);
  std::string label() const;
};

template <class T>
MeasureTower<T> dirac(long a, long p, int n, T zero, T one) {
  if (mod(a, p) != 1) throw Error(Errc::BadSupport, "dirac support must be 1 mod p");
  long c = gamma_coordinate(Integer(a), p, n);
  std::vector<LevelElement<T>> lv;
  for (int r = 0; r <= n; ++r) {
    LevelElement<T> l(p, r, zero);
    l[c % ipow(p, r)] = one;
    lv.push_back(std::move(l));
  }
  return MeasureTower<T>(std::move(lv));
}

template <class T>
LevelElement<T> push_forward(const LevelElement<T>& mu, long multiplier) {
  if (mu.kind() != IndexKind::GammaCoordinate)
    throw Error(Errc::InvalidArgument, "coordinate push-forward needs Gamma coordinates");
  LevelElement<T> r(mu.prime(), mu.level(), mu.zero());
  for (long c = 0; c < mu.modulus(); ++c) r[mulmod(c, multiplier, mu.modulus())] += mu[c];
  return r;
}

// phi(x) = x^(p-1) and iota(x) = x^(-1) on Gamma coordinates.
template <class T>
LevelElement<T> phi_push(const LevelElement<T>& mu) { return push_forward(mu, mu.prime() - 1); }
template <class T>
LevelElement<T> iota_push(const LevelElement<T>& mu) { return push_forward(mu, -1); }
template <class T>
MeasureTower<T> phi_push(const MeasureTower<T>& mu) {
  return mu.map_levels([](const LevelElement<T>& l) { return phi_push(l); });
}
template <class T>
MeasureTower<T> iota_push(const MeasureTower<T>& mu) {
  return mu.map_levels([](const LevelElement<T>& l) { return iota_push(l); });
}

// Residue-indexed element on (Z/p^r)^x pushed by a -> a^(p-1) to Gamma_{r-1}.
template <class T>
LevelElement<T> phi_push_residue(const LevelElement<T>& mu) {
  if (mu.kind() != IndexKind::Residue || mu.level() < 1)
    throw Error(Errc::InvalidArgument, "phi_push_residue needs a residue-indexed element, level >= 1");
  long p = mu.prime();
  int r = mu.level();
  LevelElement<T> out(p, r - 1, mu.zero());
  const auto& table = gamma_log_table(p, r - 1);
  long m = mu.modulus();
  for (long a = 1; a < m; ++a) {
    if (a % p == 0) continue;
    out[table[static_cast<std::size_t>(powmod(a, p - 1, m))]] += mu[a];
  }
  return out;
}

// sum_c mu(c) zeta^(e c) in R[zeta_{p^k}].
template <class T>
CyclotomicElement<T> eval_character(const LevelElement<T>& mu, const GammaCharacter& chi) {
  if (mu.kind() != IndexKind::GammaCoordinate)
    throw Error(Errc::InvalidArgument, "characters of Gamma act on Gamma coordinates");
  if (chi.k > mu.level()) throw Error(Errc::LevelMismatch, "character conductor exceeds the level");
  long order = chi.order();
  std::vector<T> by_exp(static_cast<std::size_t>(order), mu.zero());
  for (long c = 0; c < mu.modulus(); ++c) by_exp[static_cast<std::size_t>(chi.exponent_at(c))] += mu[c];
  return CyclotomicElement<T>::from_exponents(order, std::move(by_exp), mu.zero());
}

Complex eval_character(const LevelElement<Complex>& mu, const GammaCharacter& chi);

// Per-coefficient error valuations for the p-adic tau transform.
struct TauLedger {
  int level = 0;
  int measure_valuation = 0;
  std::vector<int> error_valuation;  // coefficient k is exact mod p^error_valuation[k]
  std::vector<bool> exhausted;
};

constexpr int kMaxSeriesDegree = 16;
constexpr int kRiemannGuard = 2;

// tau(mu)(s) = sum_k (-s)^k/k! sum_c mu(c) (log a_c)^k with a_c = (1+p)^c
// reduced mod p^(n+1+guard).  Each coefficient is truncated to its ledger
// bound; measure_valuation is a lower bound for v_p of every mu(U).
SPowerSeries<PadicNumber> tau(const LevelElement<PadicNumber>& mu, int degree, int measure_valuation,
                              TauLedger* ledger = nullptr);
SPowerSeries<PadicNumber> tau(const LevelElement<PadicNumber>& mu, int degree);
int tau_error_valuation(int level, int k, int measure_valuation, long p);

// Complex realization on Lambda_C: the class c corresponds to a^(c/c(a))
// with a = b^(p-1), so log of the class is (c/c(a)) log a.
SPowerSeries<Complex> tau(const LevelElement<Complex>& mu, long b, int degree);

inline PadicNumber scalar_multiple(const PadicNumber& x, long k) { return x * k; }
inline Rational scalar_multiple(const Rational& x, long k) { return x * k; }
inline Complex scalar_multiple(const Complex& x, long k) { return x * Real(k); }

// Matrices between the X_a^k basis and s^k coefficients, X_a = exp(-s log a) - 1.
template <class T>
struct BasisChange {
  std::vector<std::vector<T>> to_s;  // column k = s-coefficients of X_a^k
  std::vector<std::vector<T>> to_x;  // inverse
};

template <class T>
std::vector<T> apply_matrix(const std::vector<std::vector<T>>& m, const std::vector<T>& v, T zero) {
  std::vector<T> out(m.size(), zero);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

template <class T>
BasisChange<T> basis_change(const T& log_a, int r, T zero, T one) {
  // exp(-s L) - 1 truncated mod s^r
  std::vector<T> x(static_cast<std::size_t>(r), zero);
  T term = one;
  for (int k = 1; k < r; ++k) {
    term = term * (zero - log_a) / scalar_multiple(one, k);
    x[static_cast<std::size_t>(k)] = term;
  }
  BasisChange<T> bc;
  bc.to_s.assign(static_cast<std::size_t>(r), std::vector<T>(static_cast<std::size_t>(r), zero));
  std::vector<T> power(static_cast<std::size_t>(r), zero);
  power[0] = one;
  for (int k = 0; k < r; ++k) {
    for (int i = 0; i < r; ++i) bc.to_s[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = power[static_cast<std::size_t>(i)];
    std::vector<T> next(static_cast<std::size_t>(r), zero);
    for (int i = 0; i < r; ++i)
      for (int j = 1; i + j < r; ++j) next[static_cast<std::size_t>(i + j)] += power[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
    power = std::move(next);
  }
  // Lower triangular with diagonal (-L)^k: forward substitution, column by column.
  bc.to_x.assign(static_cast<std::size_t>(r), std::vector<T>(static_cast<std::size_t>(r), zero));
  for (int col = 0; col < r; ++col) {
    for (int i = 0; i < r; ++i) {
      T rhs = i == col ? one : zero;
      for (int j = 0; j < i; ++j) rhs -= bc.to_s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * bc.to_x[static_cast<std::size_t>(j)][static_cast<std::size_t>(col)];
      bc.to_x[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] = rhs / bc.to_s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
  }
  return bc;
}

// p-adic ring: a = 1 mod p, a != 1.  Complex ring: a = b^(p-1) > 1.
BasisChange<PadicNumber> basis_change_xa_s(long a, long p, int r, int precision);
BasisChange<Complex> basis_change_xa_s(long b, long p, int r);

// Smallest k with c_k nonzero; nullopt means Indeterminate.
struct OrderVerdict {
  std::optional<int> order;
  bool determinate() const { return order.has_value(); }
};
OrderVerdict vanishing_order(const SPowerSeries<PadicNumber>& f);
OrderVerdict vanishing_order(const SPowerSeries<Complex>& f, const Real& tol);

}  // namespace iwasawa
