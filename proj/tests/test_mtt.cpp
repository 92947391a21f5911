#include <gtest/gtest.h>

#include "iwasawa/arith.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/mtt.hpp"
#include "iwasawa/selfcheck.hpp"

using namespace iwasawa;

namespace {

LFunction& lf(const std::string& label) {
  static std::map<std::string, std::unique_ptr<LFunction>> cache;
  auto& slot = cache[label];
  if (!slot) {
    CurveModel m = label.find("_tw") == std::string::npos ? reference_curve(label)
                                                           : quadratic_twist(reference_curve(label.substr(0, label.find("_tw"))),
                                                                             std::stol(label.substr(label.find("_tw") + 3)));
    slot = std::make_unique<LFunction>(CurveData(m));
  }
  return *slot;
}

const PadicLData& data_11a1_5() {
  static PadicLData d = mtt_measure(lf("11a1"), 5, 1, 7);
  return d;
}

}  // namespace

TEST(AlphaField, QuadraticArithmetic) {
  auto F = AlphaField::for_reduction(1, 5, ReductionType::GoodOrdinary);
  auto a = QuadraticNumber::alpha(F);
  // alpha^2 = alpha - 5
  EXPECT_EQ(a * a, a - QuadraticNumber(F, 5));
  auto x = QuadraticNumber(F, Rational(3, 7), Rational(-2, 5));
  auto one = QuadraticNumber(F, 1);
  EXPECT_EQ(x * x.inverse(), one);
  EXPECT_EQ(a.pow(-2) * a.pow(2), one);
  EXPECT_EQ(a.pow(3), a * a * a);
  auto s = sigma_alpha(F);
  EXPECT_LT(abs(s * s - s + Complex(5)), Real(1e-30));
  EXPECT_GT(s.imag(), 0);
  EXPECT_THROW(AlphaField::for_reduction(0, 5, ReductionType::GoodSupersingular), Error);
  EXPECT_EQ(QuadraticNumber::alpha(AlphaField::for_reduction(-1, 3, ReductionType::NonsplitMultiplicative)).x(), Rational(-1));
}

TEST(AlphaField, PadicImageIsTheUnitRoot) {
  auto F = AlphaField::for_reduction(1, 5, ReductionType::GoodOrdinary);
  auto alpha = hensel_unit_root(1, 5, 12);
  auto x = QuadraticNumber(F, Rational(2), Rational(1, 3));
  auto img = x.to_padic(alpha, 12);
  EXPECT_TRUE(agrees(img, PadicNumber::from_integer(5, 2, 12) + alpha / PadicNumber::from_integer(5, 3, 12)));
}

TEST(ModularSymbols, ConductorElevenAtFive) {
  const auto& S = data_11a1_5().symbols;
  EXPECT_EQ(S(0, 0), Rational(1, 5));
  std::vector<Rational> want{Rational(1, 5), Rational(6, 5), Rational(-13, 10), Rational(-13, 10), Rational(6, 5)};
  for (long a = 0; a < 5; ++a) EXPECT_EQ(S(a, 1), want[static_cast<std::size_t>(a)]) << a;
  // plus symmetry and periodicity
  for (int k = 1; k <= S.top(); ++k)
    for (long a = 0; a < ipow(5, k); ++a) {
      EXPECT_EQ(S(a, k), S(-a, k));
      EXPECT_EQ(S(a, k), S(a + ipow(5, k), k));
    }
  EXPECT_LT(S.max_residual(), Real(1e-20));
}

TEST(ModularSymbols, HeckeRelationAtP) {
  // sum_{b mod p} [(a + b p^k)/p^(k+1)] = a_p [a/p^k] - [a/p^(k-1)]
  const auto& S = data_11a1_5().symbols;
  for (int k = 1; k < S.top(); ++k)
    for (long a = 0; a < ipow(5, k); ++a) {
      Rational lhs = 0;
      for (long b = 0; b < 5; ++b) lhs += S(a + b * ipow(5, k), k + 1);
      EXPECT_EQ(lhs, S(a, k) - S(a, k - 1)) << k << " " << a;
    }
}

TEST(Measure, ExactTowerAndAugmentation) {
  const auto& d = data_11a1_5();
  EXPECT_TRUE(exact_tower_compatible(d));
  EXPECT_EQ(d.l_over_omega, Rational(1, 5));
  auto F = d.field;
  auto a = QuadraticNumber::alpha(F);
  auto one = QuadraticNumber(F, 1);
  auto e = one - a.inverse();
  EXPECT_EQ(d.exact.front()[0], e * e * QuadraticNumber(F, Rational(1, 5)));
  EXPECT_EQ(d.exact.front()[0], QuadraticNumber(F, Rational(11, 125), Rational(9, 125)));
  EXPECT_TRUE(d.tower.is_compatible([](const PadicNumber& x, const PadicNumber& y) { return agrees(x, y); }));
  EXPECT_GE(d.measure_valuation, 0);
}

TEST(Measure, InterpolatesTwistedValues) {
  auto v = interpolation_check(lf("11a1"), data_11a1_5(), Real(1e-10));
  EXPECT_EQ(v.status, VerdictStatus::HoldsAtPrecision) << v.evidence["twisted_deviation"];
  auto d3 = mtt_measure(lf("15a1"), 3, 1, 6);
  EXPECT_EQ(d3.type, ReductionType::NonsplitMultiplicative);
  EXPECT_EQ(interpolation_check(lf("15a1"), d3, Real(1e-10)).status, VerdictStatus::HoldsAtPrecision);
}

TEST(Series, ConstantTermAndSymmetry) {
  const auto& d = data_11a1_5();
  auto s = padic_l_series(d, 4);
  EXPECT_TRUE(s.iota_phi_consistent);
  auto want = QuadraticNumber(d.field, Rational(11, 125), Rational(9, 125)).to_padic(d.alpha, 10);
  EXPECT_TRUE(s.series[0].congruent(want, std::min(s.ledger.error_valuation[0], 4)));
  EXPECT_EQ(*vanishing_order(s.series).order, 0);
}

TEST(Series, RankOneVanishesToOrderOne) {
  MttConfig cfg;
  auto v = conj_mtt_verdict(lf("37a1"), 5, cfg);
  EXPECT_EQ(v.status, VerdictStatus::HoldsAtPrecision);
  EXPECT_EQ(v.evidence["padic_order"], "1");
  EXPECT_EQ(v.evidence["analytic_rank"], "1");
  auto w = conj_mtt_verdict(lf("11a1"), 5, cfg);
  EXPECT_EQ(w.status, VerdictStatus::HoldsAtPrecision);
  EXPECT_EQ(w.evidence["padic_order"], "0");
}

TEST(SplitPrime, ExtraZeroAndDerivative) {
  MttConfig cfg;
  cfg.precision = 6;
  auto v = gs_check(lf("11a1"), 11, cfg);
  EXPECT_EQ(v.evidence["extra_zero"], "true");
  // Under the normalization delta_a -> a^(-s) the derivative carries the
  // opposite sign to L-invariant * L/Omega.
  EXPECT_EQ(v.evidence["matches_minus_sign"], "true");
  EXPECT_EQ(v.evidence["matches_plus_sign"], "false");
  EXPECT_THROW(gs_check(lf("11a1"), 5, cfg), Error);
  EXPECT_THROW(gs_check(lf("37a1"), 37, cfg), Error);
}

TEST(SplitPrime, LInvariantValuation) {
  auto L = l_invariant(CurveData(reference_curve("11a1")), 11, 8);
  EXPECT_EQ(L.valuation(), 1);
  EXPECT_THROW(l_invariant(CurveData(reference_curve("11a1")), 5, 8), Error);
}

TEST(Pairs, TwistSearchFindsFirstCandidate) {
  auto list = twist_search(CurveData(reference_curve("11a1")), 5, 30);
  ASSERT_FALSE(list.empty());
  EXPECT_EQ(list.front().D, -4);
  EXPECT_EQ(list.front().conductor, 176);
  EXPECT_LT(abs(list.front().l_over_omega - Real(1)), Real(1e-15));
  EXPECT_FALSE(list.front().sha_condition_verified);
  EXPECT_THROW(twist_search(CurveData(reference_curve("11a1")), 5, 2), Error);
}

TEST(Pairs, CongruentTwistAgrees) {
  MttConfig cfg;
  auto& E = lf("11a1");
  auto& F = lf("11a1_tw-4");
  EXPECT_EQ(finite_level_product_check(E, F, 5, cfg).status, VerdictStatus::HoldsAtPrecision);
  EXPECT_EQ(conj11_verdict(E, F, 5, cfg).status, VerdictStatus::HoldsAtPrecision);
  auto c = conj21_leading_check(E, F, 5, cfg);
  EXPECT_EQ(c.status, VerdictStatus::HoldsAtPrecision);
  EXPECT_EQ(c.evidence["lhs_exact"], c.evidence["rhs_exact"]);
  EXPECT_THROW(conj11_verdict(E, lf("37a1"), 5, cfg), Error);
}
