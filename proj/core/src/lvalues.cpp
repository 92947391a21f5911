#include "iwasawa/lvalues.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>

#include "iwasawa/arith.hpp"
#include "iwasawa/error.hpp"

namespace iwasawa {

namespace {

// exp(-kCutoff) ~ 1.8e-35 is below the float128 working precision.
const Real kCutoff = 80;
const Real kSeriesLimit = 10;

long terms_for(const Real& rate) {
  return static_cast<long>(ceil(kCutoff / rate).convert_to<double>()) + 1;
}

// sum_{n > N} 2 exp(-rate n), using |a_n|/n <= 2.
Real tail_bound(const Real& rate, long N) { return 2 * exp(-rate * Real(N + 1)) / (1 - exp(-rate)); }

Real zeta3() {
  static const Real z("1.202056903159594285399738161511449990764986292340498881792");
  return z;
}

long factorial(int r) {
  long f = 1;
  for (int i = 2; i <= r; ++i) f *= i;
  return f;
}

}  // namespace

Real weight_function(int r, const Real& x) {
  if (r < 0 || r > 3) throw Error(Errc::InvalidArgument, "weight functions exist for r <= 3");
  if (r == 0) return exp(-x);
  if (x <= kSeriesLimit) {
    const Real g = real_euler_gamma();
    const Real z2 = real_pi() * real_pi() / 6;
    Real t = -log(x) - g;
    Real poly;
    switch (r) {
      case 1: poly = t; break;
      case 2: poly = t * t / 2 + z2 / 2; break;
      default: poly = t * t * t / 6 + z2 * t / 2 - zeta3() / 3; break;
    }
    Real sum = 0;
    Real xn = 1;
    Real nfact = 1;
    for (int n = 1; n < 400; ++n) {
      xn *= x;
      nfact *= n;
      Real npow = pow(Real(n), r);
      Real term = xn / (npow * nfact);
      sum += ((n - r) % 2 == 0) ? term : -term;
      if (term < Real(1e-40) * (abs(sum) + 1)) break;
    }
    return poly + sum;
  }
  // exp(-x) int_0^inf exp(-x u) log(1+u)^(r-1)/(1+u) du / (r-1)!
  boost::math::quadrature::exp_sinh<Real> es;
  auto f = [&](const Real& u) {
    Real l = log1p(u);
    Real w = 1;
    for (int i = 1; i < r; ++i) w *= l;
    return exp(-x * u) * w / (1 + u);
  };
  Real v = es.integrate(f);
  return exp(-x) * v / Real(factorial(r - 1));
}

LFunction::LFunction(CurveData E) : E_(std::move(E)), omega_(real_period(E_)) {}

void LFunction::ensure(long n) {
  if (static_cast<long>(an_.size()) > n) return;
  long target = std::max(n, 2 * static_cast<long>(an_.size()));
  an_ = an_coeffs(E_, target);
}

std::vector<long> LFunction::coefficients(long n) {
  std::lock_guard<std::mutex> lock(mu_);
  ensure(n);
  return std::vector<long>(an_.begin(), an_.begin() + n + 1);
}

void LFunction::preload_coefficients(std::vector<long> an) {
  std::lock_guard<std::mutex> lock(mu_);
  if (an.size() > an_.size()) an_ = std::move(an);
}

int LFunction::root_number() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (root_) return *root_;
  }
  const Real c = 2 * real_pi() / sqrt(Real(conductor()));
  const Real ts[3] = {Real(1), Real(11) / 10, Real(13) / 10};
  long nmax = terms_for(c / ts[2]);
  auto a = coefficients(nmax);
  // F_w(t) = sum a_n/n (exp(-c n t) + w exp(-c n/t))
  Real direct[3] = {0, 0, 0}, dual[3] = {0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    Real q1 = exp(-c * ts[i]), q2 = exp(-c / ts[i]);
    Real p1 = 1, p2 = 1;
    for (long n = 1; n <= nmax; ++n) {
      p1 *= q1;
      p2 *= q2;
      if (a[static_cast<std::size_t>(n)] == 0) continue;
      Real coef = Real(a[static_cast<std::size_t>(n)]) / Real(n);
      direct[i] += coef * p1;
      dual[i] += coef * p2;
    }
  }
  int best = 0;
  Real best_spread = -1;
  for (int w : {1, -1}) {
    Real lo = direct[0] + w * dual[0], hi = lo;
    for (int i = 1; i < 3; ++i) {
      Real v = direct[i] + w * dual[i];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (best_spread < 0 || hi - lo < best_spread) {
      best = w;
      best_spread = hi - lo;
    }
  }
  if (best_spread > Real(1e-12))
    throw Error(Errc::Inconsistent, "no root number makes the functional equation t-independent for " + label());
  std::lock_guard<std::mutex> lock(mu_);
  root_ = best;
  return best;
}

ComplexLValue LFunction::value(int r) {
  if (r < 0 || r > 3) throw Error(Errc::InvalidArgument, "derivative order must be 0..3");
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = derivs_.find(r);
    if (it != derivs_.end()) return it->second;
  }
  int w = root_number();
  ComplexLValue out;
  out.conductor = conductor();
  out.root_number = Complex(Real(w));
  out.value = Complex(0);
  bool parity_zero = (r % 2 == 0) != (w == 1);
  if (!parity_zero) {
    if (r >= 2) {
      ComplexLValue lower = value(r - 2);
      if (abs(lower.value) > Real(1e-10))
        throw Error(Errc::InvalidArgument, "L^(" + std::to_string(r) + ")(1) formula needs the lower derivatives to vanish");
    }
    const Real c = 2 * real_pi() / sqrt(Real(conductor()));
    long nmax = terms_for(c);
    auto a = coefficients(nmax);
    Real sum = 0;
    Real q = exp(-c), pw = 1;
    for (long n = 1; n <= nmax; ++n) {
      pw *= q;
      long an = a[static_cast<std::size_t>(n)];
      if (an == 0) continue;
      Real x = c * Real(n);
      Real g = r == 0 ? pw : weight_function(r, x);
      sum += Real(an) / Real(n) * g;
    }
    Real scale = 2 * Real(factorial(r));
    out.value = Complex(scale * sum);
    out.error = scale * tail_bound(c, nmax) + abs(sum) * Real(1e-30);
    out.terms = nmax;
  }
  std::lock_guard<std::mutex> lock(mu_);
  derivs_[r] = out;
  return out;
}

int LFunction::analytic_rank(const Real& tol) {
  for (int r = 0; r <= 3; ++r) {
    ComplexLValue v = value(r);
    if (abs(v.value) > tol) return r;
  }
  throw Error(Errc::RankCapExceeded, label() + ": L^(r)(1) vanishes at tolerance for all r <= 3");
}

long LFunction::twist_conductor(long p, int k) const {
  long N = conductor();
  if (k == 0) return N;
  long m2 = ipow(p, 2 * k);
  if (N % p != 0) return N * m2;
  if ((N / p) % p != 0) return (N / p) * m2;
  throw Error(Errc::BadConductor, "twist conductor is not determined when p^2 | N");
}

std::map<DirichletCharacter, ComplexLValue> LFunction::compute_level(long p, int k) {
  const long M = twist_conductor(p, k);
  const long m = ipow(p, k);
  const Real c = 2 * real_pi() / sqrt(Real(M));
  // Rates c t and c/t for t in {1, 6/5, 11/10}.
  const Real t2 = Real(6) / 5, t3 = Real(11) / 10;
  const Real rates[5] = {c, c * t2, c / t2, c * t3, c / t3};
  const long nmax = terms_for(c / t2);
  auto a = coefficients(nmax);

  std::vector<std::vector<Real>> S(5, std::vector<Real>(static_cast<std::size_t>(m), Real(0)));
  Real q[5], pw[5];
  for (int i = 0; i < 5; ++i) {
    q[i] = exp(-rates[i]);
    pw[i] = 1;
  }
  for (long n = 1; n <= nmax; ++n) {
    for (int i = 0; i < 5; ++i) pw[i] *= q[i];
    long an = a[static_cast<std::size_t>(n)];
    if (an == 0 || n % p == 0) continue;
    Real coef = Real(an) / Real(n);
    auto r = static_cast<std::size_t>(n % m);
    for (int i = 0; i < 5; ++i) S[static_cast<std::size_t>(i)][r] += coef * pw[i];
  }

  const Real tail = 2 * tail_bound(c / t2, nmax);
  std::map<DirichletCharacter, ComplexLValue> out;
  const auto chars = DirichletCharacter::primitive_of_level(p, k);
  if (chars.empty()) return out;
  const long phi = chars.front().group_order();
  std::vector<Complex> roots(static_cast<std::size_t>(phi));
  for (long e = 0; e < phi; ++e) roots[static_cast<std::size_t>(e)] = root_of_unity(phi, e);

  for (const auto& chi : chars) {
    Complex A[5], B[5];
    for (int i = 0; i < 5; ++i) {
      A[i] = Complex(0);
      B[i] = Complex(0);
    }
    for (long r = 1; r < m; ++r) {
      long e = chi.exponent(r);
      if (e < 0) continue;
      const Complex& z = roots[static_cast<std::size_t>(e)];
      Complex zc = std::conj(z);
      for (int i = 0; i < 5; ++i) {
        A[i] += z * S[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
        B[i] += zc * S[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)];
      }
    }
    // L = A(t) + w B(1/t) for every t; A(t) uses rate c t, B uses c/t.
    Complex a1 = A[0], b1 = B[0];
    Complex a2 = A[1], b2 = B[2];
    Complex a3 = A[3], b3 = B[4];
    Complex w = (a1 - a2) / (b2 - b1);
    Complex L1 = a1 + w * b1;
    Complex L3 = a3 + w * b3;
    if (abs(abs(w) - 1) > Real(1e-12))
      throw Error(Errc::Inconsistent, "twisted root number of " + label() + " by " + chi.label() + " is not on the unit circle");
    ComplexLValue v;
    v.value = L1;
    v.root_number = w;
    v.error = tail + abs(L1 - L3);
    v.terms = nmax;
    v.conductor = M;
    out.emplace(chi, v);
  }
  return out;
}

std::map<DirichletCharacter, ComplexLValue> LFunction::twisted_level(long p, int k) {
  auto key = std::make_pair(p, k);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = twisted_.find(key);
    if (it != twisted_.end()) return it->second;
  }
  auto vals = compute_level(p, k);
  std::lock_guard<std::mutex> lock(mu_);
  return twisted_.emplace(key, std::move(vals)).first->second;
}

void LFunction::preload_level(long p, int k, std::map<DirichletCharacter, ComplexLValue> values) {
  std::lock_guard<std::mutex> lock(mu_);
  twisted_.emplace(std::make_pair(p, k), std::move(values));
}

bool LFunction::has_level(long p, int k) {
  std::lock_guard<std::mutex> lock(mu_);
  return twisted_.count(std::make_pair(p, k)) > 0;
}

ComplexLValue LFunction::twisted(const DirichletCharacter& chi) {
  if (chi.is_trivial()) return chi.m == 0 ? value(0) : modified(chi.p);
  DirichletCharacter prim = chi.primitive();
  auto level = twisted_level(prim.p, prim.m);
  return level.at(prim);
}

Real euler_factor_at_one(const CurveData& E, long p) {
  ReductionData rd = reduce_at(E, p);
  Real inv = Real(1) / Real(p);
  switch (rd.type) {
    case ReductionType::GoodOrdinary:
    case ReductionType::GoodSupersingular:
      return 1 - Real(rd.ap) * inv + inv;
    case ReductionType::SplitMultiplicative:
    case ReductionType::NonsplitMultiplicative:
      return 1 - Real(rd.ap) * inv;
    case ReductionType::Additive:
      break;
  }
  throw Error(Errc::AdditiveReduction, "L-dagger is not defined for additive reduction at " + std::to_string(p));
}

ComplexLValue LFunction::modified(long p) {
  Real f = euler_factor_at_one(E_, p);
  ComplexLValue v = value(0);
  v.value *= f;
  v.error *= f;
  return v;
}

int root_number(LFunction& L) { return L.root_number(); }
ComplexLValue l_value(LFunction& L, int r) { return L.value(r); }
ComplexLValue twisted_l_value(LFunction& L, const DirichletCharacter& chi) { return L.twisted(chi); }
ComplexLValue modified_l(LFunction& L, long p) { return L.modified(p); }

ArchimedeanLevel archimedean_measure_level(LFunction& L, long p, int r) {
  if (r < 1) throw Error(Errc::InvalidArgument, "archimedean level must be >= 1");
  auto chars = DirichletCharacter::all(p, r);
  std::vector<std::pair<DirichletCharacter, ComplexLValue>> vals;
  Real err = 0;
  for (const auto& chi : chars) {
    ComplexLValue v = L.twisted(chi);
    err = std::max(err, v.error);
    vals.emplace_back(chi, v);
  }
  LevelElement<Complex> res(p, r, Complex(0), IndexKind::Residue);
  const Real inv = Real(1) / Real(chars.size());
  for (long a = 1; a < res.modulus(); ++a) {
    if (a % p == 0) continue;
    Complex s(0);
    for (const auto& [chi, v] : vals) s += std::conj(chi(a)) * v.value;
    res[a] = s * inv;
  }
  ArchimedeanLevel out{res, phi_push_residue(res), err};
  return out;
}

}  // namespace iwasawa
