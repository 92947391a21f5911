#include "iwasawa/mtt.hpp"

#include <algorithm>
#include <sstream>

#include "iwasawa/arith.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/reconstruct.hpp"

namespace iwasawa {

// ---- Q(alpha) -------------------------------------------------------------

AlphaField AlphaField::for_reduction(long ap, long p, ReductionType type) {
  switch (type) {
    case ReductionType::GoodOrdinary: return {ap, p, false, 0};
    case ReductionType::SplitMultiplicative: return {0, 0, true, 1};
    case ReductionType::NonsplitMultiplicative: return {0, 0, true, -1};
    default: break;
  }
  throw Error(Errc::NotOrdinary, std::string("no unit root for ") + reduction_name(type) + " reduction");
}

QuadraticNumber::QuadraticNumber(AlphaField F, Rational x, Rational y) : F_(F), x_(std::move(x)), y_(std::move(y)) {
  normalize();
}

QuadraticNumber QuadraticNumber::alpha(const AlphaField& F) { return QuadraticNumber(F, 0, 1); }

void QuadraticNumber::normalize() {
  if (F_.rational && y_ != 0) {
    x_ += y_ * F_.value;
    y_ = 0;
  }
  x_.canonicalize();
  y_.canonicalize();
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
  x_ += o.x_;
  y_ += o.y_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) {
  x_ -= o.x_;
  y_ -= o.y_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
  // alpha^2 = t alpha - n
  Rational x = x_ * o.x_ - y_ * o.y_ * F_.norm;
  Rational y = x_ * o.y_ + y_ * o.x_ + y_ * o.y_ * F_.trace;
  x_ = std::move(x);
  y_ = std::move(y);
  normalize();
  return *this;
}

QuadraticNumber QuadraticNumber::inverse() const {
  if (is_zero()) throw Error(Errc::InvalidArgument, "inverse of zero in Q(alpha)");
  if (F_.rational || y_ == 0) return QuadraticNumber(F_, 1 / x_);
  Rational N = x_ * x_ + x_ * y_ * F_.trace + y_ * y_ * F_.norm;
  return QuadraticNumber(F_, (x_ + y_ * F_.trace) / N, -y_ / N);
}

QuadraticNumber QuadraticNumber::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  QuadraticNumber r(F_, 1), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

PadicNumber QuadraticNumber::to_padic(const PadicNumber& alpha, int precision) const {
  long p = alpha.prime();
  PadicNumber r = x_ == 0 ? PadicNumber::exact_zero(p) : PadicNumber::from_rational(p, x_, precision);
  if (y_ != 0) r += PadicNumber::from_rational(p, y_, precision) * alpha;
  return r;
}

Complex QuadraticNumber::to_complex(const Complex& alpha) const { return Complex(to_real(x_)) + alpha * to_real(y_); }

int QuadraticNumber::valuation_bound(long p) const {
  int v = PadicNumber::kExact;
  if (x_ != 0) v = std::min(v, valuation(x_, p));
  if (y_ != 0) v = std::min(v, valuation(y_, p));
  return v;
}

std::string QuadraticNumber::to_string() const {
  std::ostringstream os;
  os << x_.get_str();
  if (y_ != 0) os << (y_ > 0 ? "+" : "") << y_.get_str() << "*alpha";
  return os.str();
}

Complex sigma_alpha(const AlphaField& F) {
  if (F.rational) return Complex(Real(F.value));
  Real t = F.trace;
  return Complex(t / 2, sqrt(Real(4 * F.norm) - t * t) / 2);
}

// ---- modular symbols ------------------------------------------------------

const Rational& ModularSymbols::operator()(long a, int k) const {
  if (k < 0 || k > top()) throw Error(Errc::LevelMismatch, "modular symbol level out of range");
  const auto& row = table_[static_cast<std::size_t>(k)];
  return row[static_cast<std::size_t>(mod(a, static_cast<long>(row.size())))];
}

namespace {

struct ReductionInfo {
  ReductionType type;
  long ap;
  long eps;  // 1 good, 0 multiplicative
};

ReductionInfo ordinary_info(const CurveData& E, long p) {
  ReductionData rd = reduce_at(E, p);
  if (rd.type == ReductionType::GoodSupersingular || rd.type == ReductionType::Additive)
    throw Error(Errc::NotOrdinary, E.label() + " is " + reduction_name(rd.type) + " at " + std::to_string(p));
  return {rd.type, rd.ap, is_multiplicative(rd.type) ? 0L : 1L};
}

const Real kReconstructionError("1e-15");

Rational reconstruct_or_fail(const Real& x, long B, Real& residual) {
  Rational q;
  try {
    q = rational_reconstruct(x, kReconstructionError, B);
  } catch (const Error& e) {
    throw Error(Errc::ReconstructionFailed, std::string("no rational with denominator <= ") + std::to_string(B) + " near " + format_real(x, 20));
  }
  residual = std::max(residual, abs(x - to_real(q)));
  return q;
}

}  // namespace

ModularSymbols modular_symbol_values(LFunction& L, long p, int n, long denom_bound) {
  if (n < 0) throw Error(Errc::InvalidArgument, "level must be >= 0");
  ReductionInfo info = ordinary_info(L.curve(), p);
  const Real omega = L.omega();
  const int K = n + 1;

  // Numerical inputs are independent of the bound.
  const Real zero_value = L.value(0).value.real() / omega;
  // fresh[k][a] = sum over even primitive chi mod p^k of conj(chi(a)) W(chi) L(E, conj chi, 1).
  std::vector<std::vector<Complex>> fresh(static_cast<std::size_t>(K + 1));
  for (int k = 1; k <= K; ++k) {
    auto level = L.twisted_level(p, k);
    long m = ipow(p, k);
    long phi = euler_phi_prime_power(p, k);
    std::vector<Complex> roots(static_cast<std::size_t>(phi));
    for (long e = 0; e < phi; ++e) roots[static_cast<std::size_t>(e)] = root_of_unity(phi, e);
    auto& row = fresh[static_cast<std::size_t>(k)];
    row.assign(static_cast<std::size_t>(m), Complex(0));
    for (const auto& [chi, v] : level) {
      if (!chi.is_even()) continue;
      Complex weight = gauss_sum(chi) * level.at(chi.conj()).value;
      for (long a = 1; a < m; ++a) {
        long e = chi.exponent(a);
        if (e >= 0) row[static_cast<std::size_t>(a)] += std::conj(roots[static_cast<std::size_t>(e)]) * weight;
      }
    }
  }

  for (long B = std::max(denom_bound, 1L);; B *= 2) {
    try {
      ModularSymbols S;
      S.p_ = p;
      S.bound_ = B;
      S.table_.assign(1, {reconstruct_or_fail(zero_value, B, S.residual_)});
      S.raw_.assign(1, {zero_value});
      for (int k = 1; k <= K; ++k) {
        long m = ipow(p, k), m1 = m / p;
        long phi = euler_phi_prime_power(p, k);
        std::vector<Rational> row(static_cast<std::size_t>(m));
        std::vector<Real> raw(static_cast<std::size_t>(m), Real(0));
        const auto& prev = S.table_[static_cast<std::size_t>(k - 1)];
        for (long a = 0; a < m; ++a) {
          if (a % p == 0) {
            row[static_cast<std::size_t>(a)] = prev[static_cast<std::size_t>(a / p % m1)];
            continue;
          }
          // Average over the fiber above a mod p^(k-1), from the Hecke relation.
          Rational old;
          if (k == 1) {
            old = Rational(info.ap - info.eps - 1) * S.table_[0][0] / Rational(p - 1);
          } else {
            const auto& prev2 = S.table_[static_cast<std::size_t>(k - 2)];
            old = (Rational(info.ap) * prev[static_cast<std::size_t>(a % m1)] -
                   Rational(info.eps) * prev2[static_cast<std::size_t>(a % (m1 / p))]) / Rational(p);
          }
          Real x = to_real(old) + fresh[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)].real() / (Real(phi) * omega);
          raw[static_cast<std::size_t>(a)] = x;
          row[static_cast<std::size_t>(a)] = reconstruct_or_fail(x, B, S.residual_);
        }
        for (long a = 1; a < m; ++a)
          if (row[static_cast<std::size_t>(a)] != row[static_cast<std::size_t>(m - a)])
            throw Error(Errc::Inconsistent, "plus symmetry broken at level " + std::to_string(k));
        S.table_.push_back(std::move(row));
        S.raw_.push_back(std::move(raw));
      }
      return S;
    } catch (const Error& e) {
      if (e.code() != Errc::ReconstructionFailed || B * 2 > kMaxDenominatorBound) throw;
    }
  }
}

// ---- the measure ----------------------------------------------------------

namespace {

QuadraticNumber residue_value(const ModularSymbols& S, const AlphaField& F, bool good, long a, int K) {
  QuadraticNumber ainv = QuadraticNumber::alpha(F).inverse();
  QuadraticNumber v = ainv.pow(K) * QuadraticNumber(F, S(a, K));
  if (good) v -= ainv.pow(K + 1) * QuadraticNumber(F, S(a, K - 1));
  return v;
}

}  // namespace

PadicLData mtt_measure(LFunction& L, long p, int n, int M, long denom_bound) {
  if (M < 1) throw Error(Errc::InvalidArgument, "precision must be positive");
  ReductionInfo info = ordinary_info(L.curve(), p);
  AlphaField F = AlphaField::for_reduction(info.ap, p, info.type);
  ModularSymbols S = modular_symbol_values(L, p, n, denom_bound);
  bool good = info.type == ReductionType::GoodOrdinary;
  QuadraticNumber zero(F, 0);

  std::vector<LevelElement<QuadraticNumber>> exact;
  for (int j = 0; j <= n; ++j) {
    int K = j + 1;
    LevelElement<QuadraticNumber> g(p, j, zero);
    long m = ipow(p, K);
    for (long a = 1; a < m; ++a) {
      if (a % p == 0) continue;
      g[unit_coordinate(a, p, j)] += residue_value(S, F, good, a, K);
    }
    exact.push_back(std::move(g));
  }

  // The Q(alpha) coordinates can carry denominators that cancel p-adically,
  // so the coordinate bound only sizes the working precision.
  int vbound = PadicNumber::kExact;
  for (const auto& x : exact.back().coefficients()) vbound = std::min(vbound, x.valuation_bound(p));
  if (vbound == PadicNumber::kExact) vbound = 0;
  int work = M + n + 6 + 2 * std::max(0, -vbound);
  PadicNumber alpha = hensel_unit_root(info.ap, p, work, info.type);

  std::vector<LevelElement<PadicNumber>> levels;
  for (const auto& g : exact) {
    LevelElement<PadicNumber> l(p, g.level(), PadicNumber::exact_zero(p));
    for (long c = 0; c < g.modulus(); ++c) l[c] = g[c].to_padic(alpha, work);
    levels.push_back(std::move(l));
  }
  int vmin = PadicNumber::kExact;
  for (const auto& x : levels.back().coefficients())
    if (!x.is_exact_zero()) vmin = std::min(vmin, x.valuation());
  if (vmin == PadicNumber::kExact) vmin = 0;

  PadicLData d{
      .label = L.label(),
      .p = p,
      .level = n,
      .precision = M,
      .type = info.type,
      .ap = info.ap,
      .field = F,
      .alpha = alpha,
      .alpha_complex = sigma_alpha(F),
      .symbols = S,
      .exact = std::move(exact),
      .tower = MeasureTower<PadicNumber>(std::move(levels)),
      .measure_valuation = vmin,
      .l_over_omega = S(0, 0),
  };
  return d;
}

LevelElement<QuadraticNumber> mtt_residue_level(const PadicLData& d, int k) {
  if (k < 1 || k > d.level + 1) throw Error(Errc::LevelMismatch, "residue level out of range");
  bool good = d.type == ReductionType::GoodOrdinary;
  LevelElement<QuadraticNumber> r(d.p, k, QuadraticNumber(d.field, 0), IndexKind::Residue);
  for (long a = 1; a < r.modulus(); ++a)
    if (a % d.p != 0) r[a] = residue_value(d.symbols, d.field, good, a, k);
  return r;
}

bool exact_tower_compatible(const PadicLData& d) {
  for (int j = 1; j <= d.level; ++j) {
    auto down = d.exact[static_cast<std::size_t>(j)].project();
    for (long c = 0; c < down.modulus(); ++c)
      if (down[c] != d.exact[static_cast<std::size_t>(j - 1)][c]) return false;
  }
  for (int k = 2; k <= d.level + 1; ++k) {
    auto down = mtt_residue_level(d, k).project();
    auto below = mtt_residue_level(d, k - 1);
    for (long a = 0; a < below.modulus(); ++a)
      if (down[a] != below[a]) return false;
  }
  return true;
}

PadicLSeries padic_l_series(const PadicLData& d, int degree) {
  PadicLSeries out{SPowerSeries<PadicNumber>(degree, PadicNumber::exact_zero(d.p)), TauLedger{}, false};
  const auto& top = d.tower.top();
  out.series = tau(top, degree, d.measure_valuation, &out.ledger);

  TauLedger other;
  auto twisted = tau(iota_push(phi_push(top)), degree, d.measure_valuation, &other);
  auto scaled = out.series.scaled(PadicNumber::from_integer(d.p, 1 - d.p, d.precision + d.level + 8));
  bool ok = true;
  for (int k = 0; k < degree; ++k) {
    if (out.ledger.exhausted[static_cast<std::size_t>(k)] || other.exhausted[static_cast<std::size_t>(k)]) continue;
    int N = std::min(out.ledger.error_valuation[static_cast<std::size_t>(k)], other.error_valuation[static_cast<std::size_t>(k)]);
    N = std::min({N, scaled[k].absolute_precision(), twisted[k].absolute_precision()});
    if (!(scaled[k] - twisted[k]).is_zero() && (scaled[k] - twisted[k]).valuation() < N) ok = false;
  }
  out.iota_phi_consistent = ok;
  return out;
}

PadicNumber l_invariant(const CurveData& E, long p, int M) {
  ReductionData rd = reduce_at(E, p);
  if (rd.type != ReductionType::SplitMultiplicative)
    throw Error(Errc::NotSplitMultiplicative, E.label() + " is " + reduction_name(rd.type) + " at " + std::to_string(p));
  Rational j = E.model().j_invariant();
  int V = -valuation(j, p);
  PadicNumber jp = PadicNumber::from_rational(p, j, M + 2 * V + 8);
  PadicNumber q = tate_period_from_j(jp, M + V + 4);
  PadicNumber lg = iwasawa_log(q);
  return lg / PadicNumber::from_integer(p, q.valuation(), M + 8);
}

// ---- verdicts -------------------------------------------------------------

const char* verdict_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::HoldsAtPrecision: return "holds-at-precision";
    case VerdictStatus::Fails: return "fails";
    case VerdictStatus::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

namespace {

std::string str(long v) { return std::to_string(v); }
std::string str(const Complex& z) { return format_real(z.real(), 20) + (z.imag() < 0 ? "" : "+") + format_real(z.imag(), 20) + "i"; }

std::string ledger_string(const TauLedger& l) {
  std::ostringstream os;
  for (std::size_t k = 0; k < l.error_valuation.size(); ++k) {
    if (k) os << ",";
    if (l.error_valuation[k] >= PadicNumber::kExact / 2)
      os << "exact";
    else
      os << l.error_valuation[k];
  }
  return os.str();
}

std::string series_string(const SPowerSeries<PadicNumber>& s) {
  std::ostringstream os;
  for (int k = 0; k < s.degree(); ++k) os << (k ? "; " : "") << s[k].to_string();
  return os.str();
}

struct OrderData {
  std::optional<int> analytic;
  std::optional<int> padic;
  int offset = 0;
  std::string series;
  std::string ledger;
};

OrderData orders(LFunction& L, long p, const MttConfig& cfg) {
  ReductionInfo info = ordinary_info(L.curve(), p);
  OrderData o;
  o.offset = info.type == ReductionType::SplitMultiplicative ? 1 : 0;
  try {
    o.analytic = L.analytic_rank(cfg.tol);
  } catch (const Error& e) {
    if (e.code() != Errc::RankCapExceeded) throw;
  }
  PadicLData d = mtt_measure(L, p, std::max(cfg.level, 1), cfg.precision, cfg.denom_bound);
  PadicLSeries s = padic_l_series(d, cfg.degree);
  o.padic = vanishing_order(s.series).order;
  o.series = series_string(s.series);
  o.ledger = ledger_string(s.ledger);
  return o;
}

std::string precision_string(long p, const MttConfig& cfg) {
  return "p=" + str(p) + " n=" + str(cfg.level) + " M=" + str(cfg.precision) + " d=" + str(cfg.degree) + " tol=" + format_real(cfg.tol, 3);
}

}  // namespace

Verdict interpolation_check(LFunction& L, const PadicLData& d, const Real& tol) {
  const int K = d.level + 1;
  const auto top = mtt_residue_level(d, K);
  const Complex sa = d.alpha_complex;
  const Real omega = L.omega();
  std::vector<Complex> sig(static_cast<std::size_t>(top.modulus()), Complex(0));
  for (long a = 0; a < top.modulus(); ++a) sig[static_cast<std::size_t>(a)] = top[a].to_complex(sa);

  Real worst_trivial = 0, worst_twisted = 0;
  long checked = 0;
  for (const auto& chi : DirichletCharacter::all(d.p, K)) {
    if (!chi.is_even()) continue;
    Complex lhs(0);
    for (long a = 1; a < top.modulus(); ++a) lhs += chi(a) * sig[static_cast<std::size_t>(a)];
    Complex rhs;
    if (chi.is_trivial()) {
      Complex f = Complex(1) - Complex(1) / sa;
      if (d.type == ReductionType::GoodOrdinary) f *= Complex(1) - Complex(1) / sa;
      rhs = f * L.value(0).value / omega;
    } else {
      DirichletCharacter prim = chi.primitive();
      rhs = gauss_sum(prim) / std::pow(sa, prim.m) * L.twisted(prim.conj()).value / omega;
    }
    Real dev = abs(lhs - rhs) / std::max(Real(1), abs(rhs));
    (chi.is_trivial() ? worst_trivial : worst_twisted) = std::max(chi.is_trivial() ? worst_trivial : worst_twisted, dev);
    ++checked;
  }
  Verdict v;
  v.claim = "mu_{E,p} interpolates (1-1/alpha)^e L/Omega and W(chi) alpha^-k L(E,chi^-1,1)/Omega";
  v.tolerance = format_real(tol, 3);
  v.status = std::max(worst_trivial, worst_twisted) <= tol ? VerdictStatus::HoldsAtPrecision : VerdictStatus::Fails;
  v.evidence["curve"] = d.label;
  v.evidence["characters"] = str(checked);
  v.evidence["trivial_deviation"] = format_real(worst_trivial, 6);
  v.evidence["twisted_deviation"] = format_real(worst_twisted, 6);
  v.evidence["reduction"] = reduction_name(d.type);
  return v;
}

namespace {
constexpr long kMaxGsModulus = 2000;
}  // namespace

Verdict gs_check(LFunction& L, long p, const MttConfig& cfg) {
  ReductionData rd = reduce_at(L.curve(), p);
  if (rd.type != ReductionType::SplitMultiplicative)
    throw Error(Errc::NotSplitMultiplicative, L.label() + " is " + reduction_name(rd.type) + " at " + str(p));
  if (abs(L.value(0).value) <= cfg.tol) throw Error(Errc::RankPositive, L.label() + " has L(E,1) = 0 at tolerance");

  int M = cfg.precision;
  int n = std::max(cfg.level, 1);
  PadicLData d = mtt_measure(L, p, n, M, cfg.denom_bound);
  PadicLSeries s = padic_l_series(d, std::max(cfg.degree, 2));
  // Deeper levels sharpen the s^1 bound; stop before the twist tables get large.
  while (s.ledger.error_valuation[1] < M && ipow(p, n + 2) <= kMaxGsModulus) {
    d = mtt_measure(L, p, ++n, M, cfg.denom_bound);
    s = padic_l_series(d, std::max(cfg.degree, 2));
  }
  int N = std::min(M, s.ledger.error_valuation[1]);
  PadicNumber Linv = l_invariant(L.curve(), p, M + 4);
  PadicNumber target = Linv * PadicNumber::from_rational(p, d.l_over_omega, M + 4);
  const PadicNumber& c0 = s.series[0];
  const PadicNumber& c1 = s.series[1];
  auto vanishes_mod = [&](const PadicNumber& x, int K) { return x.is_zero() ? x.valuation() >= K || x.is_exact_zero() : x.valuation() >= K; };
  bool extra_zero = c0.is_zero();
  bool plus = vanishes_mod(c1 - target, N);
  bool minus = vanishes_mod(c1 + target, N);

  Verdict v;
  v.claim = "L'(0) = L-invariant * L(E,1)/Omega";
  v.status = extra_zero && plus ? VerdictStatus::HoldsAtPrecision : VerdictStatus::Fails;
  if (N < 1) v.status = VerdictStatus::Indeterminate;
  v.tolerance = "mod " + str(p) + "^" + str(N);
  v.evidence["curve"] = L.label();
  v.evidence["level"] = str(n);
  v.evidence["s0"] = c0.to_string();
  v.evidence["s1"] = c1.to_string();
  v.evidence["l_invariant"] = Linv.to_string();
  v.evidence["l_over_omega"] = d.l_over_omega.get_str();
  v.evidence["l_invariant_times_l_over_omega"] = target.to_string();
  v.evidence["extra_zero"] = extra_zero ? "true" : "false";
  v.evidence["matches_plus_sign"] = plus ? "true" : "false";
  v.evidence["matches_minus_sign"] = minus ? "true" : "false";
  v.evidence["ledger"] = ledger_string(s.ledger);
  return v;
}

Verdict conj_mtt_verdict(LFunction& L, long p, const MttConfig& cfg) {
  OrderData o = orders(L, p, cfg);
  Verdict v;
  v.claim = "ord_{s=0} L_p = ord_{s=1} L(E,s) + [split]";
  v.tolerance = precision_string(p, cfg);
  v.evidence["curve"] = L.label();
  v.evidence["analytic_rank"] = o.analytic ? str(*o.analytic) : "capped";
  v.evidence["padic_order"] = o.padic ? str(*o.padic) : "indeterminate";
  v.evidence["split_offset"] = str(o.offset);
  v.evidence["series"] = o.series;
  v.evidence["ledger"] = o.ledger;
  if (!o.analytic || !o.padic) {
    v.status = VerdictStatus::Indeterminate;
  } else {
    int expected = *o.analytic + o.offset;
    if (*o.padic == expected)
      v.status = VerdictStatus::HoldsAtPrecision;
    else if (*o.padic < expected)
      v.status = VerdictStatus::Fails;
    else
      v.status = VerdictStatus::Indeterminate;  // a coefficient below might be nonzero beyond precision
  }
  return v;
}

Verdict conj11_verdict(LFunction& E, LFunction& F, long p, const MttConfig& cfg) {
  if (!same_type(E.curve(), F.curve(), p))
    throw Error(Errc::NotSameType, E.label() + " and " + F.label() + " differ in reduction type at " + str(p));
  OrderData a = orders(E, p, cfg);
  OrderData b = orders(F, p, cfg);
  Verdict v;
  v.claim = "ord L(E) - ord L_p(E) = ord L(E') - ord L_p(E')";
  v.tolerance = precision_string(p, cfg);
  v.evidence["curves"] = E.label() + "," + F.label();
  auto put = [&](const std::string& tag, const OrderData& o) {
    v.evidence[tag + "_analytic_rank"] = o.analytic ? str(*o.analytic) : "capped";
    v.evidence[tag + "_padic_order"] = o.padic ? str(*o.padic) : "indeterminate";
  };
  put("E", a);
  put("E2", b);
  if (!a.analytic || !a.padic || !b.analytic || !b.padic) {
    v.status = VerdictStatus::Indeterminate;
  } else {
    long da = *a.analytic - *a.padic, db = *b.analytic - *b.padic;
    v.evidence["E_difference"] = str(da);
    v.evidence["E2_difference"] = str(db);
    v.status = da == db ? VerdictStatus::HoldsAtPrecision : VerdictStatus::Fails;
  }
  return v;
}

Verdict finite_level_product_check(LFunction& E, LFunction& F, long p, const MttConfig& cfg) {
  if (!same_type(E.curve(), F.curve(), p))
    throw Error(Errc::NotSameType, E.label() + " and " + F.label() + " differ in reduction type at " + str(p));
  int n = cfg.level;
  if (n < 0 || n > 2) throw Error(Errc::InvalidArgument, "finite level check supports levels 0..2");
  PadicLData dE = mtt_measure(E, p, n, cfg.precision, cfg.denom_bound);
  PadicLData dF = mtt_measure(F, p, n, cfg.precision, cfg.denom_bound);
  ArchimedeanLevel aE = archimedean_measure_level(E, p, n + 1);
  ArchimedeanLevel aF = archimedean_measure_level(F, p, n + 1);
  auto ipE = iota_push(phi_push(dE.exact.back()));
  auto ipF = iota_push(phi_push(dF.exact.back()));
  const Complex sa = dE.alpha_complex;
  auto sigma = [&](const QuadraticNumber& q) { return q.to_complex(sa); };

  Real worst = 0, budget = cfg.tol + aE.error + aF.error;
  long count = 0;
  for (const auto& chi : GammaCharacter::all(p, n)) {
    Complex lhs = eval_character(aF.gamma, chi) / F.omega() * eval_character(ipE, chi).to_complex(sigma);
    Complex rhs = eval_character(aE.gamma, chi) / E.omega() * eval_character(ipF, chi).to_complex(sigma);
    Real scale = std::max(Real(1), abs(lhs));
    worst = std::max(worst, abs(lhs - rhs) / scale);
    ++count;
  }
  Verdict v;
  v.claim = "phi(mu_E',inf)/Omega_E' * sigma(iota phi mu_E,p) = phi(mu_E,inf)/Omega_E * sigma(iota phi mu_E',p)";
  v.tolerance = format_real(cfg.tol, 3);
  v.status = worst <= budget ? VerdictStatus::HoldsAtPrecision : VerdictStatus::Fails;
  v.evidence["curves"] = E.label() + "," + F.label();
  v.evidence["characters"] = str(count);
  v.evidence["max_relative_deviation"] = format_real(worst, 6);
  v.evidence["error_budget"] = format_real(budget, 6);
  return v;
}

Verdict conj21_leading_check(LFunction& E, LFunction& F, long p, const MttConfig& cfg) {
  if (E.curve().model().j_invariant() != F.curve().model().j_invariant())
    throw Error(Errc::InvalidArgument, F.label() + " is not a quadratic twist of " + E.label());
  if (!same_type(E.curve(), F.curve(), p))
    throw Error(Errc::NotSameType, E.label() + " and " + F.label() + " differ in reduction type at " + str(p));
  for (LFunction* L : {&E, &F})
    if (abs(L->value(0).value) <= cfg.tol) throw Error(Errc::RankPositive, L->label() + " has L(E,1) = 0 at tolerance");

  int n = std::max(cfg.level, 1);
  PadicLData dE = mtt_measure(E, p, n, cfg.precision, cfg.denom_bound);
  PadicLData dF = mtt_measure(F, p, n, cfg.precision, cfg.denom_bound);
  QuadraticNumber augE = dE.exact.front()[0], augF = dF.exact.front()[0];
  // Divided by Omega_E Omega_E': (L_E/Omega_E) sigma(L_E'(0)) = (L_E'/Omega_E') sigma(L_E(0)).
  QuadraticNumber lhs = QuadraticNumber(dE.field, dE.l_over_omega) * augF;
  QuadraticNumber rhs = QuadraticNumber(dF.field, dF.l_over_omega) * augE;
  Complex sa = dE.alpha_complex;
  Complex num_lhs = F.omega() * E.value(0).value * augF.to_complex(sa);
  Complex num_rhs = E.omega() * F.value(0).value * augE.to_complex(sa);

  Verdict v;
  v.claim = "Omega_E' L(E,1) sigma(L_E'(0)) = Omega_E L(E',1) sigma(L_E(0))";
  v.tolerance = "exact in Q(alpha)";
  v.status = lhs == rhs ? VerdictStatus::HoldsAtPrecision : VerdictStatus::Fails;
  v.evidence["curves"] = E.label() + "," + F.label();
  v.evidence["lhs_exact"] = lhs.to_string();
  v.evidence["rhs_exact"] = rhs.to_string();
  v.evidence["lhs_numeric"] = str(num_lhs);
  v.evidence["rhs_numeric"] = str(num_rhs);
  v.evidence["E_l_over_omega"] = dE.l_over_omega.get_str();
  v.evidence["E2_l_over_omega"] = dF.l_over_omega.get_str();
  if (lhs.is_zero() && rhs.is_zero()) {
    v.evidence["degenerate"] = "both leading terms vanish";
    PadicLSeries sE = padic_l_series(dE, 2), sF = padic_l_series(dF, 2);
    v.evidence["E_s1"] = sE.series[1].to_string();
    v.evidence["E2_s1"] = sF.series[1].to_string();
    if (dE.type == ReductionType::SplitMultiplicative) {
      v.evidence["E_l_invariant"] = l_invariant(E.curve(), p, cfg.precision).to_string();
      v.evidence["E2_l_invariant"] = l_invariant(F.curve(), p, cfg.precision).to_string();
    }
  }
  return v;
}

std::vector<TwistCandidate> twist_search(const CurveData& E, long p, long X, const std::vector<long>& extra_primes,
                                         const std::vector<int>& extra_signs, std::size_t max_candidates, const Real& tol) {
  ordinary_info(E, p);
  if (extra_primes.size() != extra_signs.size()) throw Error(Errc::InvalidArgument, "extra primes and signs differ in length");
  std::vector<long> primes{p};
  std::vector<int> signs{1};
  primes.insert(primes.end(), extra_primes.begin(), extra_primes.end());
  signs.insert(signs.end(), extra_signs.begin(), extra_signs.end());
  std::vector<TwistCandidate> out;
  for (long D : fundamental_discriminants(primes, signs, X)) {
    CurveData T(quadratic_twist(E.model(), D));
    LFunction L(T);
    if (L.root_number() != 1) continue;
    Real val = L.value(0).value.real();
    if (abs(val) <= tol) continue;
    out.push_back({D, T.label(), T.conductor(), val, val / L.omega(), false});
    if (max_candidates && out.size() >= max_candidates) break;
  }
  if (out.empty()) throw Error(Errc::NoCandidateBelowX, "no twist of " + E.label() + " with |D| < " + str(X));
  return out;
}

}  // namespace iwasawa
