#include "iwasawa/curve.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include "iwasawa/arith.hpp"
#include "iwasawa/error.hpp"

namespace iwasawa {

const char* reduction_name(ReductionType t) {
  switch (t) {
    case ReductionType::GoodOrdinary: return "good-ordinary";
    case ReductionType::GoodSupersingular: return "good-supersingular";
    case ReductionType::SplitMultiplicative: return "split-multiplicative";
    case ReductionType::NonsplitMultiplicative: return "nonsplit-multiplicative";
    case ReductionType::Additive: return "additive";
  }
  return "unknown";
}

CurveModel::CurveModel(std::string label, std::array<Rational, 5> a) : label_(std::move(label)), a_(std::move(a)) {
  for (auto& x : a_) x.canonicalize();
  if (discriminant() == 0) throw Error(Errc::SingularCurve, label_ + " has zero discriminant");
}

CurveModel::CurveModel(std::string label, long a1, long a2, long a3, long a4, long a6)
    : CurveModel(std::move(label), {Rational(a1), Rational(a2), Rational(a3), Rational(a4), Rational(a6)}) {}

Rational CurveModel::b2() const { return a1() * a1() + 4 * a2(); }
Rational CurveModel::b4() const { return 2 * a4() + a1() * a3(); }
Rational CurveModel::b6() const { return a3() * a3() + 4 * a6(); }
Rational CurveModel::b8() const {
  return a1() * a1() * a6() + 4 * a2() * a6() - a1() * a3() * a4() + a2() * a3() * a3() - a4() * a4();
}
Rational CurveModel::c4() const { return b2() * b2() - 24 * b4(); }
Rational CurveModel::c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
Rational CurveModel::discriminant() const {
  Rational B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
  return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}
Rational CurveModel::j_invariant() const {
  Rational c = c4();
  return c * c * c / discriminant();
}

namespace {

std::array<Integer, 5> integral_scaling(const std::array<Rational, 5>& a, Integer& scale) {
  static const int weight[5] = {1, 2, 3, 4, 6};
  Integer den_lcm = 1;
  for (const auto& x : a) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
  scale = 1;
  if (den_lcm != 1) {
    for (const auto& [q, e] : factorize(den_lcm)) {
      long qq = q.get_si();
      int need = 0;
      for (int i = 0; i < 5; ++i) {
        if (a[i] == 0) continue;
        int v = valuation(a[i].get_den(), qq);
        need = std::max(need, (v + weight[i] - 1) / weight[i]);
      }
      scale *= zpow(qq, need);
    }
  }
  std::array<Integer, 5> out;
  for (int i = 0; i < 5; ++i) {
    Integer u = 1;
    for (int k = 0; k < weight[i]; ++k) u *= scale;
    Rational v = a[i] * Rational(u);
    v.canonicalize();
    out[i] = v.get_num();
  }
  return out;
}

std::array<Rational, 5> as_rationals(const std::array<Integer, 5>& a) {
  return {Rational(a[0]), Rational(a[1]), Rational(a[2]), Rational(a[3]), Rational(a[4])};
}

}  // namespace

CurveData::CurveData(CurveModel model) : model_(std::move(model)) {
  Integer scale;
  integral_ = integral_scaling(model_.a(), scale);
  CurveModel integral("integral", as_rationals(integral_));
  Rational disc = integral.discriminant();
  Integer U = 1;
  for (const auto& [q, e] : factorize(disc.get_num())) {
    (void)e;
    long p = q.get_si();
    LocalData ld = tate_local_data(as_rationals(integral_), p);
    for (int i = 0; i < ld.rescalings; ++i) U *= p;
    for (int i = 0; i < ld.conductor_exponent; ++i) conductor_ *= p;
    local_.push_back(std::move(ld));
  }
  Integer U2 = U * U, U4 = U2 * U2, U6 = U4 * U2;
  min_c4_ = integral.c4().get_num() / U4;
  min_c6_ = integral.c6().get_num() / U6;
  min_disc_ = disc.get_num() / (U6 * U6);
  model_.cached_conductor = conductor_;
}

const LocalData* CurveData::local(long p) const {
  for (const auto& ld : local_)
    if (ld.p == p) return &ld;
  return nullptr;
}

std::vector<long> CurveData::bad_primes() const {
  std::vector<long> out;
  for (const auto& ld : local_)
    if (ld.conductor_exponent > 0) out.push_back(ld.p);
  return out;
}

long CurveData::tamagawa_product() const {
  long t = 1;
  for (const auto& ld : local_) t *= ld.tamagawa;
  return t;
}

long trace_of_frobenius(const std::array<Rational, 5>& model, long q) {
  long a1 = residue_mod(model[0], q), a2 = residue_mod(model[1], q), a3 = residue_mod(model[2], q);
  long a4 = residue_mod(model[3], q), a6 = residue_mod(model[4], q);
  if (q == 2) {
    long count = 1;
    for (long x = 0; x < 2; ++x)
      for (long y = 0; y < 2; ++y)
        if ((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % 2 == 0) ++count;
    return q + 1 - count;
  }
  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
  long b2 = mod(a1 * a1 + 4 * a2, q);
  long b4 = mod(2 * a4 + a1 * a3, q);
  long b6 = mod(a3 * a3 + 4 * a6, q);
  std::vector<std::int8_t> chi(static_cast<std::size_t>(q), -1);
  chi[0] = 0;
  for (long y = 1, sq = 1; y <= q / 2; ++y, sq = (sq + 2 * y - 1) % q) chi[static_cast<std::size_t>(sq)] = 1;
  // Forward differences of f(x) = 4x^3 + b2 x^2 + 2 b4 x + b6: no division in the loop.
  auto f = [&](long x) { return mod(mulmod(mod(mulmod(mod(4 * x + b2, q), x, q) + 2 * b4, q), x, q) + b6, q); };
  long f0 = f(0), f1 = f(1), f2 = f(2), f3 = f(3);
  long d1 = mod(f1 - f0, q), d2 = mod(f2 - 2 * f1 + f0, q), d3 = mod(f3 - 3 * f2 + 3 * f1 - f0, q);
  long sum = 0;
  for (long x = 0; x < q; ++x) {
    sum += chi[static_cast<std::size_t>(f0)];
    f0 += d1;
    if (f0 >= q) f0 -= q;
    d1 += d2;
    if (d1 >= q) d1 -= q;
    d2 += d3;
    if (d2 >= q) d2 -= q;
  }
  return -sum;
}

ReductionData reduce_at(const CurveData& E, long q, int alpha_precision) {
  ReductionData rd;
  rd.p = q;
  const LocalData* ld = E.local(q);
  if (ld == nullptr) {
    rd.ap = trace_of_frobenius(as_rationals(E.integral_model()), q);
    rd.type = mod(rd.ap, q) == 0 ? ReductionType::GoodSupersingular : ReductionType::GoodOrdinary;
    rd.kodaira = "I0";
  } else {
    rd.ap = trace_of_frobenius(ld->minimal_model, q);
    rd.type = ld->type;
    rd.conductor_exponent = ld->conductor_exponent;
    rd.kodaira = ld->kodaira;
    rd.tamagawa = ld->tamagawa;
    if (rd.type == ReductionType::GoodOrdinary && mod(rd.ap, q) == 0) rd.type = ReductionType::GoodSupersingular;
    bool consistent = (rd.type == ReductionType::SplitMultiplicative && rd.ap == 1) ||
                      (rd.type == ReductionType::NonsplitMultiplicative && rd.ap == -1) ||
                      (rd.type == ReductionType::Additive && rd.ap == 0) ||
                      rd.type == ReductionType::GoodOrdinary || rd.type == ReductionType::GoodSupersingular;
    if (!consistent) throw Error(Errc::Inconsistent, "Tate type disagrees with the point count at " + std::to_string(q));
  }
  if (alpha_precision > 0 &&
      (rd.type == ReductionType::GoodOrdinary || is_multiplicative(rd.type)))
    rd.alpha = hensel_unit_root(rd.ap, q, alpha_precision, rd.type);
  return rd;
}

long ap(const CurveData& E, long q) { return reduce_at(E, q).ap; }

std::vector<long> an_coeffs(const CurveData& E, long nmax) {
  std::vector<long> a(static_cast<std::size_t>(std::max(nmax, 1L) + 1), 0);
  a[1] = 1;
  if (nmax < 2) return a;
  auto spf = smallest_prime_factor_table(nmax);
  std::map<long, ReductionType> kind;
  for (long n = 2; n <= nmax; ++n) {
    long q = spf[static_cast<std::size_t>(n)];
    if (q == n) {
      ReductionData rd = reduce_at(E, q);
      a[static_cast<std::size_t>(n)] = rd.ap;
      kind[q] = rd.type;
      continue;
    }
    long m = n;
    long qk = 1;
    while (m % q == 0) {
      m /= q;
      qk *= q;
    }
    if (m > 1) {
      a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(qk)] * a[static_cast<std::size_t>(m)];
      continue;
    }
    // Prime power q^k = n.
    long prev = n / q;
    ReductionType t = kind[q];
    if (t == ReductionType::GoodOrdinary || t == ReductionType::GoodSupersingular)
      a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(q)] * a[static_cast<std::size_t>(prev)] -
                                       q * a[static_cast<std::size_t>(prev / q)];
    else
      a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(q)] * a[static_cast<std::size_t>(prev)];
  }
  return a;
}

CurveModel quadratic_twist(const CurveModel& E, long D) {
  if (D == 0) throw Error(Errc::ZeroD, "twist by zero");
  Rational d = D;
  Rational A = -27 * E.c4() * d * d;
  Rational B = -54 * E.c6() * d * d * d;
  return CurveModel(E.label() + "_tw" + std::to_string(D), {Rational(0), Rational(0), Rational(0), A, B});
}

int legendre(const Integer& D, long q) {
  if (q < 3 || !is_prime(q)) throw Error(Errc::InvalidArgument, "legendre needs an odd prime");
  Integer r;
  Integer Q = q;
  mpz_fdiv_r(r.get_mpz_t(), D.get_mpz_t(), Q.get_mpz_t());
  long x = r.get_si();
  if (x == 0) return 0;
  return powmod(x, (q - 1) / 2, q) == 1 ? 1 : -1;
}

bool is_fundamental_discriminant(long D) {
  if (D == 0 || D == 1) return false;
  long r = mod(D, 4);
  if (r == 1) return is_squarefree(D);
  if (r == 0) {
    long m = D / 4;
    long rm = mod(m, 4);
    return (rm == 2 || rm == 3) && is_squarefree(m);
  }
  return false;
}

std::vector<long> fundamental_discriminants(const std::vector<long>& primes, const std::vector<int>& signs, long X) {
  if (primes.size() != signs.size()) throw Error(Errc::InvalidArgument, "primes and signs differ in length");
  std::vector<long> out;
  for (long a = 1; a < X; ++a) {
    for (long D : {-a, a}) {
      if (!is_fundamental_discriminant(D)) continue;
      bool ok = true;
      for (std::size_t i = 0; i < primes.size() && ok; ++i) ok = legendre(Integer(D), primes[i]) == signs[i];
      if (ok) out.push_back(D);
    }
  }
  return out;
}

bool same_type(const CurveData& E, const CurveData& F, long p) {
  ReductionData a = reduce_at(E, p), b = reduce_at(F, p);
  auto bad = [](ReductionType t) {
    return t == ReductionType::GoodSupersingular || t == ReductionType::Additive;
  };
  if (bad(a.type) || bad(b.type)) throw Error(Errc::NotOrdinary, "same_type needs ordinary or multiplicative reduction");
  if (a.type == ReductionType::GoodOrdinary && b.type == ReductionType::GoodOrdinary) return a.ap == b.ap;
  return a.type == b.type && is_multiplicative(a.type);
}

namespace {

Real agm(Real a, Real b) {
  for (int i = 0; i < 200; ++i) {
    Real a1 = (a + b) / 2;
    Real b1 = sqrt(a * b);
    if (abs(a1 - b1) <= abs(a1) * Real(1e-33)) return a1;
    a = a1;
    b = b1;
  }
  return a;
}

}  // namespace

int real_components(const CurveData& E) { return E.minimal_discriminant() > 0 ? 2 : 1; }

Real real_period(const CurveData& E) {
  // Short model y^2 = x^3 + A x + B with A = -27 c4, B = -54 c6 has periods
  // Omega_min / 6.
  Real A = -27 * to_real(E.minimal_c4());
  Real B = -54 * to_real(E.minimal_c6());
  Real pi = real_pi();
  Real omega;
  if (E.minimal_discriminant() > 0) {
    Real rad = 2 * sqrt(-A / 3);
    Real ct = (3 * B / (2 * A)) * sqrt(-3 / A);
    if (ct > 1) ct = 1;
    if (ct < -1) ct = -1;
    Real theta = acos(ct);
    std::array<Real, 3> e;
    for (int k = 0; k < 3; ++k) e[k] = rad * cos(theta / 3 - 2 * pi * k / 3);
    // Newton polish each root.
    for (auto& x : e)
      for (int it = 0; it < 3; ++it) x -= (x * x * x + A * x + B) / (3 * x * x + A);
    std::sort(e.begin(), e.end(), [](const Real& u, const Real& v) { return u > v; });
    omega = pi / agm(sqrt(e[0] - e[2]), sqrt(e[0] - e[1]));
  } else {
    Real d = sqrt(B * B / 4 + A * A * A / 27);
    Real e1 = cbrt(-B / 2 + d) + cbrt(-B / 2 - d);
    for (int it = 0; it < 3; ++it) e1 -= (e1 * e1 * e1 + A * e1 + B) / (3 * e1 * e1 + A);
    Complex e2(-e1 / 2, sqrt(3 * e1 * e1 / 4 + A));
    Complex z = sqrt(Complex(e1) - e2);
    omega = pi / agm(z.real(), abs(z));
  }
  return 6 * omega * real_components(E);
}

}  // namespace iwasawa
