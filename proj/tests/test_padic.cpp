#include <gtest/gtest.h>

#include <random>

#include "iwasawa/arith.hpp"
#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/padic.hpp"
#include "iwasawa/reconstruct.hpp"

using namespace iwasawa;

namespace {

// Independent oracle: log(1+x) summed in Q then reduced mod p^N.
Integer log_oracle(long p, long a, int N) {
  Rational x(a - 1), term = x, sum = 0;
  for (long k = 1; k < 40 * N; ++k) {
    sum += (k % 2 ? Rational(1) : Rational(-1)) * term / Rational(k);
    term *= x;
  }
  Integer m = zpow(p, N);
  Integer num = sum.get_num() % m, den = sum.get_den() % m, inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  Integer r = (num * inv) % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

TEST(Padic, LogOfOneIsZero) { EXPECT_TRUE(padic_log_exact(5, Integer(1), 10).is_zero()); }

TEST(Padic, LogSixModulo125) {
  auto l = padic_log_exact(5, Integer(6), 3);
  EXPECT_EQ(l.residue(3), Integer(55));
  EXPECT_EQ(log_oracle(5, 6, 3), Integer(55));
}

TEST(Padic, LogMatchesRationalSeriesOracle) {
  for (long p : {3L, 5L, 7L})
    for (long a : {1 + p, 1 + 2 * p, 1 + p * p, 1 + 3 * p})
      EXPECT_EQ(padic_log_exact(p, Integer(a), 8).residue(8), log_oracle(p, a, 8)) << p << " " << a;
}

TEST(Padic, LogIsAHomomorphism) {
  auto l6 = padic_log_exact(5, Integer(6), 12);
  auto l36 = padic_log_exact(5, Integer(36), 12);
  EXPECT_TRUE(agrees(l36, l6 * 2));
  auto x = PadicNumber::from_integer(7, 8 * 15, 12);
  EXPECT_TRUE(agrees(padic_log(x), padic_log(PadicNumber::from_integer(7, 8, 12)) + padic_log(PadicNumber::from_integer(7, 15, 12))));
}

TEST(Padic, IwasawaLogKillsRootsOfUnityAndP) {
  EXPECT_TRUE(iwasawa_log(PadicNumber::from_integer(5, 5, 10)).is_zero());
  EXPECT_TRUE(iwasawa_log(PadicNumber::from_integer(5, -1, 10)).is_zero());
  auto two = PadicNumber::from_integer(5, 2, 12);
  EXPECT_TRUE(agrees(iwasawa_log(two) * 4, padic_log(PadicNumber::from_integer(5, 16, 12))));
}

TEST(Padic, FieldOperationsAgreeWithRationals) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    long p = std::vector<long>{3, 5, 7, 11}[i % 4];
    Rational x(static_cast<long>(rng() % 20001) - 10000, static_cast<long>(rng() % 500) + 1);
    Rational y(static_cast<long>(rng() % 20001) - 10000, static_cast<long>(rng() % 500) + 1);
    if (y == 0) continue;
    auto a = PadicNumber::from_rational(p, x, 15), b = PadicNumber::from_rational(p, y, 15);
    EXPECT_TRUE(agrees(a + b, PadicNumber::from_rational(p, x + y, 15)));
    EXPECT_TRUE(agrees(a - b, PadicNumber::from_rational(p, x - y, 15)));
    EXPECT_TRUE(agrees(a * b, PadicNumber::from_rational(p, x * y, 15)));
    EXPECT_TRUE(agrees(a / b, PadicNumber::from_rational(p, x / y, 15)));
  }
}

TEST(Padic, PrecisionNeverGrows) {
  auto a = PadicNumber::from_rational(5, Rational(3, 7), 6);
  auto b = PadicNumber::from_rational(5, Rational(2, 11), 9);
  EXPECT_LE((a * b).precision(), 6);
  EXPECT_LE((a + b).absolute_precision(), 6);
  // Cancellation loses relative digits rather than inventing them.
  auto c = PadicNumber::from_integer(5, 1, 6), d = PadicNumber::from_integer(5, 1 + 625, 6);
  auto diff = d - c;
  EXPECT_EQ(diff.valuation(), 4);
  EXPECT_LE(diff.absolute_precision(), 6);
}

TEST(Padic, ValuationOfRationals) {
  auto x = PadicNumber::from_rational(5, Rational(50, 3), 10);
  EXPECT_EQ(x.valuation(), 2);
  auto y = PadicNumber::from_rational(5, Rational(7, 125), 10);
  EXPECT_EQ(y.valuation(), -3);
  EXPECT_EQ(y.to_rational(), Rational(7, 125));
}

TEST(Padic, HenselUnitRoot) {
  auto a = hensel_unit_root(1, 5, 2);
  EXPECT_EQ(a.residue(2), Integer(21));
  for (int M : {4, 10, 25}) {
    auto r = hensel_unit_root(1, 5, M);
    auto f = r * r - r + PadicNumber::from_integer(5, 5, M);
    EXPECT_TRUE(f.is_zero() || f.valuation() >= M);
  }
  EXPECT_EQ(hensel_unit_root(1, 11, 5, ReductionType::SplitMultiplicative).to_rational(), Rational(1));
  auto minus = hensel_unit_root(-1, 3, 5, ReductionType::NonsplitMultiplicative);
  EXPECT_TRUE((minus + PadicNumber::one(3, 5)).is_zero());
  EXPECT_THROW(hensel_unit_root(0, 5, 5), Error);
}

TEST(Padic, TatePeriodValuation) {
  // 11a1: j = -2^12 31^3 / 11^5
  Rational j(-Integer(4096) * 29791, Integer(161051));
  auto q = tate_period_from_j(PadicNumber::from_rational(11, j, 20), 8);
  EXPECT_EQ(q.valuation(), 5);
  auto back = j_from_q(q);
  EXPECT_TRUE(back.congruent(PadicNumber::from_rational(11, j, 20), 3));
}

TEST(Padic, TatePeriodFromSimpleJ) {
  auto q0 = PadicNumber::from_rational(5, Rational(25 * 3), 12);
  auto j = q0.inverse() + PadicNumber::from_integer(5, 744, 12);
  auto q = tate_period_from_j(j, 6);
  EXPECT_EQ(q.valuation(), 2);
  EXPECT_TRUE(q.congruent(q0, 4));
  EXPECT_THROW(tate_period_from_j(PadicNumber::from_integer(5, 3, 10), 5), Error);
}

TEST(Reconstruct, SmallRationals) {
  EXPECT_EQ(rational_reconstruct(Real("0.2000000001"), Real("1e-9"), 10), Rational(1, 5));
  EXPECT_EQ(rational_reconstruct(Real("0.3333333333"), Real("1e-9"), 10), Rational(1, 3));
  EXPECT_THROW(rational_reconstruct(Real("0.1234567"), Real("1e-9"), 10), Error);
}

TEST(Reconstruct, RandomRoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    long b = static_cast<long>(rng() % 1024) + 1;
    long a = static_cast<long>(rng() % 20000) - 10000;
    Rational q(a, b);
    q.canonicalize();
    Real x = to_real(q) + Real("1e-20");
    EXPECT_EQ(rational_reconstruct(x, Real("1e-15"), 1024), q);
  }
}

TEST(Cyclotomic, ReductionIsCanonical) {
  for (long m : {5L, 25L, 7L, 49L, 125L}) {
    auto z = CyclotomicElement<Rational>::zeta_power(m, 1, Rational(0), Rational(1));
    EXPECT_EQ(static_cast<long>(z.degree()), euler_phi(m));
    // zeta^m = 1 and the sum of primitive p-th roots vanishes.
    auto w = z;
    for (long k = 1; k < m; ++k) w *= z;
    EXPECT_EQ(w.coefficients(), CyclotomicElement<Rational>::zeta_power(m, 0, Rational(0), Rational(1)).coefficients());
  }
  long p = 7;
  CyclotomicElement<Rational> s(p, Rational(0));
  for (long k = 0; k < p; ++k) s += CyclotomicElement<Rational>::zeta_power(p, k, Rational(0), Rational(1));
  for (const auto& c : s.coefficients()) EXPECT_EQ(c, 0);
}

TEST(Cyclotomic, ComplexImageMatchesRootOfUnity) {
  auto z = CyclotomicElement<Rational>::zeta_power(25, 7, Rational(0), Rational(1));
  Complex v = z.to_complex([](const Rational& r) { return to_real(r); });
  EXPECT_LT(abs(v - root_of_unity(25, 7)), Real(1e-30));
}
