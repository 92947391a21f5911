#include "iwasawa/selfcheck.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "iwasawa/arith.hpp"
#include "iwasawa/cache.hpp"
#include "iwasawa/cli.hpp"
#include "iwasawa/dirichlet.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/lvalues.hpp"
#include "iwasawa/measure.hpp"
#include "iwasawa/mtt.hpp"
#include "iwasawa/padic.hpp"
#include "iwasawa/reconstruct.hpp"

namespace iwasawa {

std::vector<CurveModel> reference_curves() {
  return {CurveModel("11a1", 0, -1, 1, -10, -20), CurveModel("37a1", 0, 0, 1, -1, 0), CurveModel("389a1", 0, 1, 1, -2, 0),
          CurveModel("5077a1", 0, 0, 1, -7, 6),  CurveModel("14a1", 1, 0, 1, 4, -6),  CurveModel("15a1", 1, 1, 1, -10, -10)};
}

CurveModel reference_curve(const std::string& label) {
  for (auto& E : reference_curves())
    if (E.label() == label) return E;
  throw Error(Errc::InvalidArgument, "no reference curve " + label);
}

namespace {

using Check = std::function<std::string()>;  // empty string = pass

struct Runner {
  std::vector<CheckOutcome> out;
  void run(const std::string& module, const std::string& name, const Check& f) {
    CheckOutcome c{module, name, false, ""};
    try {
      c.detail = f();
      c.passed = c.detail.empty();
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(c));
  }
};

std::string padic_checks_ring() {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    long p = i % 2 ? 5 : 7;
    Rational x(static_cast<long>(rng() % 2000) - 1000, static_cast<long>(rng() % 97) + 1);
    Rational y(static_cast<long>(rng() % 2000) + 1, static_cast<long>(rng() % 89) + 1);
    PadicNumber a = PadicNumber::from_rational(p, x, 20), b = PadicNumber::from_rational(p, y, 20);
    if (!agrees(a * b, PadicNumber::from_rational(p, x * y, 20))) return "product mismatch at " + x.get_str() + "," + y.get_str();
    if (!agrees(a + b, PadicNumber::from_rational(p, x + y, 20))) return "sum mismatch";
    if (!agrees((a * b) / b, a)) return "quotient mismatch";
  }
  return "";
}

std::string padic_checks_log() {
  for (long p : {5L, 7L}) {
    auto u = padic_log_exact(p, Integer(1 + p), 18), v = padic_log_exact(p, Integer(1 + 2 * p), 18);
    auto uv = padic_log_exact(p, Integer((1 + p) * (1 + 2 * p)), 18);
    if (!agrees(u + v, uv)) return "log is not additive at p=" + std::to_string(p);
  }
  return "";
}

std::string padic_checks_tate() {
  PadicNumber j = PadicNumber::from_rational(11, Rational(-122023936, 161051), 20);
  PadicNumber q = tate_period_from_j(j, 10);
  if (q.valuation() != 5) return "v(q) = " + std::to_string(q.valuation());
  if (!j_from_q(q).congruent(j, std::min(j_from_q(q).absolute_precision(), 4))) return "j(q) != j";
  return "";
}

std::string padic_checks_hensel() {
  PadicNumber a = hensel_unit_root(1, 5, 12);
  PadicNumber f = a * a - a + PadicNumber::from_integer(5, 5, 12);
  if (!f.is_zero() && f.valuation() < 12) return "alpha^2 - alpha + 5 = " + f.to_string();
  if (a.valuation() != 0) return "alpha is not a unit";
  return "";
}

std::string measure_dirac() {
  for (long p : {5L, 7L}) {
    int n = 3, d = 5;
    long a = 1 + p;
    auto tower = dirac(a, p, n, PadicNumber::exact_zero(p), PadicNumber::one(p, 30));
    auto s = tau(tower.top(), d);
    PadicNumber L = padic_log_exact(p, Integer(a), 30);
    PadicNumber term = PadicNumber::one(p, 30);
    for (int k = 0; k < d; ++k) {
      if (!agrees(s[k], term)) return "tau(delta_a) coefficient " + std::to_string(k) + " at p=" + std::to_string(p);
      term = term * (-L) / PadicNumber::from_integer(p, k + 1, 30);
    }
  }
  return "";
}

std::string measure_augmentation() {
  std::mt19937_64 rng(11);
  long p = 5;
  LevelElement<PadicNumber> mu(p, 2, PadicNumber::exact_zero(p));
  for (long c = 0; c < mu.modulus(); ++c) mu[c] = PadicNumber::from_integer(p, static_cast<long>(rng() % 1000), 20);
  auto s = tau(mu, 3);
  if (!agrees(s[0], mu.augmentation())) return "constant term is not the augmentation";
  return "";
}

std::string measure_basis_change() {
  auto bc = basis_change_xa_s(6, 5, 6, 30);
  for (std::size_t i = 0; i < bc.to_s.size(); ++i)
    for (std::size_t j = 0; j < bc.to_s.size(); ++j) {
      PadicNumber s = PadicNumber::exact_zero(5);
      for (std::size_t k = 0; k < bc.to_s.size(); ++k) s += bc.to_s[i][k] * bc.to_x[k][j];
      PadicNumber want = i == j ? PadicNumber::one(5, 20) : PadicNumber::exact_zero(5);
      if (!agrees(s, want)) return "round trip fails at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
  return "";
}

std::string dirichlet_convolution() {
  std::mt19937_64 rng(3);
  long p = 5, N = 300;
  for (int t = 0; t < 10; ++t) {
    std::vector<long> a(N + 1, 0), b(N + 1, 0);
    for (long n = 1; n <= N; ++n) {
      if (n % p == 0) continue;
      if (rng() % 4 == 0) a[n] = static_cast<long>(rng() % 21) - 10;
      if (rng() % 4 == 0) b[n] = static_cast<long>(rng() % 21) - 10;
    }
    auto A = FormalDirichletSeries<Rational>::from_dense(N, p, std::vector<Rational>(a.begin(), a.end()));
    auto B = FormalDirichletSeries<Rational>::from_dense(N, p, std::vector<Rational>(b.begin(), b.end()));
    auto C = A * B;
    for (long n = 1; n <= N; ++n) {
      long s = 0;
      for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += a[d] * b[n / d];
      if (C.coefficient(n) != Rational(s)) return "coefficient " + std::to_string(n);
    }
  }
  return "";
}

std::string curve_conductors() {
  const long want[] = {11, 37, 389, 5077, 14, 15};
  auto cs = reference_curves();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    CurveData E(cs[i]);
    if (E.conductor() != want[i]) return cs[i].label() + " has conductor " + std::to_string(E.conductor());
  }
  return "";
}

std::string curve_hasse() {
  for (const auto& m : reference_curves()) {
    CurveData E(m);
    for (long p : primes_up_to(300)) {
      if (E.conductor() % p == 0) continue;
      long a = ap(E, p);
      if (a * a > 4 * p) return m.label() + " violates Hasse at " + std::to_string(p);
    }
  }
  return "";
}

std::string curve_multiplicativity() {
  CurveData E(reference_curve("37a1"));
  auto a = an_coeffs(E, 2000);
  for (long m = 2; m <= 44; ++m)
    for (long n = 2; m * n <= 2000; ++n)
      if (std::gcd(m, n) == 1 && a[m * n] != a[m] * a[n]) return "a_mn != a_m a_n at " + std::to_string(m) + "," + std::to_string(n);
  return "";
}

std::string curve_discriminants() {
  auto got = fundamental_discriminants({}, {}, 200);
  std::vector<long> want;
  for (long a = 1; a < 200; ++a)
    for (long D : {-a, a}) {
      if (D == 1) continue;
      long m = mod(D, 4);
      bool fund = false;
      if (m == 1) fund = is_squarefree(std::abs(D));
      if (m == 0) {
        long q = D / 4, r = mod(q, 4);
        fund = (r == 2 || r == 3) && is_squarefree(std::abs(q));
      }
      if (fund) want.push_back(D);
    }
  if (got != want) return "enumeration differs from brute force";
  return "";
}

std::string lvalue_gauss() {
  for (long p : {5L, 7L, 11L})
    for (int k = 1; ipow(p, k) <= 125; ++k)
      for (const auto& chi : DirichletCharacter::primitive_of_level(p, k)) {
        Real d = abs(std::norm(gauss_sum(chi)) - Real(chi.modulus()));
        if (d > Real(1e-20)) return "|W(" + chi.label() + ")|^2 off by " + format_real(d, 4);
      }
  return "";
}

std::string lvalue_11a1() {
  LFunction L{CurveData(reference_curve("11a1"))};
  if (L.root_number() != 1) return "w(11a1) != +1";
  Rational r = rational_reconstruct(L.value(0).value.real() / L.omega(), Real(1e-20), 100);
  if (r != Rational(1, 5)) return "L(11a1,1)/Omega = " + r.get_str();
  return "";
}

std::string lvalue_37a1() {
  LFunction L{CurveData(reference_curve("37a1"))};
  if (L.root_number() != -1) return "w(37a1) != -1";
  if (L.analytic_rank(Real(1e-10)) != 1) return "rank(37a1) != 1";
  return "";
}

std::string mtt_11a1() {
  LFunction L{CurveData(reference_curve("11a1"))};
  PadicLData d = mtt_measure(L, 5, 1, 6);
  if (d.l_over_omega != Rational(1, 5)) return "[0] = " + d.l_over_omega.get_str();
  if (!exact_tower_compatible(d)) return "distribution relation fails";
  Verdict v = interpolation_check(L, d, Real(1e-10));
  if (v.status != VerdictStatus::HoldsAtPrecision) return "interpolation: " + v.evidence["twisted_deviation"];
  if (!padic_l_series(d, 4).iota_phi_consistent) return "iota-phi substitution fails";
  return "";
}

std::string cli_parse() {
  auto cs = reference_curves();
  std::string text;
  for (const auto& c : cs) text += format_curve_line(c) + "\n";
  auto back = parse_curve_text(text);
  if (back.size() != cs.size()) return "lost records";
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (back[i].label() != cs[i].label() || back[i].a() != cs[i].a()) return "round trip changed " + cs[i].label();
  return "";
}

std::string cli_cache(const std::filesystem::path& scratch) {
  std::filesystem::remove_all(scratch);
  Cache c(scratch);
  CurveData E(reference_curve("11a1"));
  auto a = c.an(E, 500);
  auto b = Cache(scratch).an(E, 500);
  if (a != b) return "a_n cache round trip differs";
  Real x = Real(1) / 3;
  if (real_from_text(real_to_text(x)) != x) return "real text form is not exact";
  std::filesystem::remove_all(scratch);
  return "";
}

}  // namespace

std::vector<CheckOutcome> run_selfcheck(const std::filesystem::path& scratch) {
  Runner r;
  r.run("padic", "field operations agree with Q", padic_checks_ring);
  r.run("padic", "log is a homomorphism on 1-units", padic_checks_log);
  r.run("padic", "Tate period inverts j", padic_checks_tate);
  r.run("padic", "unit root solves the Frobenius polynomial", padic_checks_hensel);
  r.run("measure", "tau of a Dirac measure is a^-s", measure_dirac);
  r.run("measure", "constant term is the augmentation", measure_augmentation);
  r.run("measure", "basis change round trip", measure_basis_change);
  r.run("dirichlet", "convolution matches divisor sums", dirichlet_convolution);
  r.run("curve", "reference conductors", curve_conductors);
  r.run("curve", "Hasse bound below 300", curve_hasse);
  r.run("curve", "a_n multiplicativity to 2000", curve_multiplicativity);
  r.run("curve", "fundamental discriminants below 200", curve_discriminants);
  r.run("lvalues", "Gauss sum modulus", lvalue_gauss);
  r.run("lvalues", "11a1 root number and L/Omega", lvalue_11a1);
  r.run("lvalues", "37a1 root number and rank", lvalue_37a1);
  r.run("mtt", "11a1 at 5: symbols, tower, interpolation", mtt_11a1);
  r.run("cli", "curve file round trip", cli_parse);
  r.run("cli", "cache round trip", [&] { return cli_cache(scratch); });
  return r.out;
}

}  // namespace iwasawa
