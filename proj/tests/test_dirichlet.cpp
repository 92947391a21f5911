#include <gtest/gtest.h>

#include <random>

#include "iwasawa/dirichlet.hpp"
#include "iwasawa/lvalues.hpp"

using namespace iwasawa;

namespace {

FormalDirichletSeries<Rational> random_series(long nmax, long p, std::mt19937_64& rng) {
  FormalDirichletSeries<Rational> s(nmax, p);
  for (long n = 1; n <= nmax; ++n)
    if (n % p && rng() % 3 == 0) s.set(n, Rational(static_cast<long>(rng() % 41) - 20));
  return s;
}

}  // namespace

TEST(DirichletSeries, ConvolutionMatchesDivisorSum) {
  std::mt19937_64 rng(11);
  auto A = random_series(300, 5, rng), B = random_series(300, 5, rng);
  auto C = A * B;
  for (long n = 1; n <= 300; ++n) {
    Rational want = 0;
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) want += A.coefficient(d) * B.coefficient(n / d);
    EXPECT_EQ(C.coefficient(n), want) << n;
  }
}

TEST(DirichletSeries, PartialsOfProductAreCongruenceSums) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    auto A = random_series(200, 5, rng), B = random_series(200, 5, rng);
    auto C = A * B;
    for (int r = 1; r <= 2; ++r) {
      long m = ipow(5, r);
      for (long c = 1; c < m; ++c) {
        if (c % 5 == 0) continue;
        Rational want = 0;
        for (const auto& [n, an] : A.terms())
          for (const auto& [k, bk] : B.terms())
            if (n * k <= 200 && mod(n * k, m) == c) want += an * bk;
        Rational got = 0;
        auto part = partial(C, r, c);
        for (const auto& t : part.terms()) got += t.second;
        EXPECT_EQ(got, want);
      }
    }
  }
}

TEST(DirichletSeries, UnitAndPowerTerms) {
  std::mt19937_64 rng(13);
  auto A = random_series(100, 7, rng);
  EXPECT_EQ(A * FormalDirichletSeries<Rational>::unit(100, 7), A);
  auto b = FormalDirichletSeries<Rational>::power_term(3, 100, 7);
  auto Ab = A * b;
  for (long n = 1; n <= 33; ++n) EXPECT_EQ(Ab.coefficient(3 * n), 3 * A.coefficient(n));
}

TEST(DirichletSeries, SupportAtPIsRejected) {
  FormalDirichletSeries<Rational> s(50, 5);
  EXPECT_THROW(s.set(10, Rational(1)), Error);
  FormalDirichletSeries<Rational> loose(50, 5, false);
  loose.set(10, Rational(1));
  EXPECT_TRUE(loose.has_support_at_p());
  std::function<Rational(const FormalDirichletSeries<Rational>&, long)> sum = [](const auto& A, long) {
    Rational t = 0;
    for (const auto& x : A.terms()) t += x.second;
    return t;
  };
  EXPECT_THROW(to_level_measure(loose, 1, sum, Rational(0)), Error);
}

TEST(DirichletSeries, LevelMeasureProjects) {
  std::mt19937_64 rng(14);
  auto A = random_series(400, 5, rng);
  std::function<Rational(const FormalDirichletSeries<Rational>&, long)> sum = [](const auto& S, long) {
    Rational t = 0;
    for (const auto& x : S.terms()) t += x.second;
    return t;
  };
  auto l2 = to_level_measure(A, 2, sum, Rational(0));
  auto l1 = to_level_measure(A, 1, sum, Rational(0));
  auto down = l2.project();
  for (long a = 1; a < 5; ++a) EXPECT_EQ(down[a], l1[a]);
}

TEST(Characters, MultiplicativeAndPeriodic) {
  for (long p : {3L, 5L, 7L})
    for (int m = 1; m <= 2; ++m)
      for (const auto& chi : DirichletCharacter::all(p, m)) {
        long q = chi.modulus();
        for (long a = 1; a < q; ++a)
          for (long b = 1; b < q; b += 3) {
            if (a % p == 0 || b % p == 0) {
              if (a % p == 0) EXPECT_EQ(chi.exponent(a), -1);
              continue;
            }
            EXPECT_LT(abs(chi(a * b) - chi(a) * chi(b)), Real(1e-30));
            EXPECT_LT(abs(chi(a + q) - chi(a)), Real(1e-30));
          }
      }
}

TEST(Characters, PrimitiveCountsAndParity) {
  for (long p : {5L, 7L}) {
    EXPECT_EQ(static_cast<long>(DirichletCharacter::all(p, 2).size()), p * (p - 1));
    EXPECT_EQ(static_cast<long>(DirichletCharacter::primitive_of_level(p, 2).size()), p * (p - 1) - (p - 1));
    long even = 0;
    for (const auto& chi : DirichletCharacter::all(p, 2)) even += chi.is_even();
    EXPECT_EQ(even, p * (p - 1) / 2);
  }
}

TEST(Characters, FromGammaIsEvenWithExpectedConductor) {
  for (const auto& g : GammaCharacter::all(5, 2)) {
    auto chi = DirichletCharacter::from_gamma(g);
    EXPECT_TRUE(chi.is_even());
    EXPECT_EQ(chi.conductor_exponent(), g.is_trivial() ? 0 : g.k + 1);
    // chi(1+p) is the generator value
    EXPECT_LT(abs(chi(6) - root_of_unity(g.order(), g.e)), Real(1e-30)) << g.label();
  }
}

TEST(GaussSum, AbsoluteSquareIsConductor) {
  for (long p : {3L, 5L, 7L, 11L})
    for (int m = 1; m <= (p < 11 ? 3 : 2); ++m)
      for (const auto& chi : DirichletCharacter::primitive_of_level(p, m)) {
        if (chi.modulus() > 400) continue;
        Real n = norm(gauss_sum(chi));
        EXPECT_LT(abs(n - Real(chi.modulus())), Real(1e-20)) << chi.label();
      }
}

TEST(GaussSum, ExactMatchesNumeric) {
  for (const auto& chi : DirichletCharacter::primitive_of_level(5, 2)) {
    auto W = gauss_sum_exact(chi);
    Complex w = W.to_complex([](const Rational& r) { return to_real(r); });
    EXPECT_LT(abs(w - gauss_sum(chi)), Real(1e-25)) << chi.label();
  }
}

TEST(GaussSum, ConjugateRelation) {
  // W(chi) W(conj chi) = chi(-1) p^m
  for (const auto& chi : DirichletCharacter::primitive_of_level(7, 2)) {
    Complex prod = gauss_sum(chi) * gauss_sum(chi.conj());
    EXPECT_LT(abs(prod - chi(-1 + 49) * Real(49)), Real(1e-22));
  }
}
