#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/padic.hpp"
#include "iwasawa/types.hpp"

namespace iwasawa {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
class CurveModel {
 public:
  CurveModel(std::string label, std::array<Rational, 5> a);
  CurveModel(std::string label, long a1, long a2, long a3, long a4, long a6);

  const std::string& label() const { return label_; }
  const std::array<Rational, 5>& a() const { return a_; }
  const Rational& a1() const { return a_[0]; }
  const Rational& a2() const { return a_[1]; }
  const Rational& a3() const { return a_[2]; }
  const Rational& a4() const { return a_[3]; }
  const Rational& a6() const { return a_[4]; }

  Rational b2() const;
  Rational b4() const;
  Rational b6() const;
  Rational b8() const;
  Rational c4() const;
  Rational c6() const;
  Rational discriminant() const;
  Rational j_invariant() const;

  std::optional<long> cached_conductor;

 private:
  std::string label_;
  std::array<Rational, 5> a_;
};

// Output of Tate's algorithm at one prime.
struct LocalData {
  long p = 0;
  std::string kodaira;
  int conductor_exponent = 0;
  int tamagawa = 1;
  int discriminant_valuation = 0;  // of the local minimal model
  ReductionType type = ReductionType::GoodOrdinary;
  std::array<Rational, 5> minimal_model;  // integral at p
  int rescalings = 0;                     // p-power scalings removed by minimization
};

LocalData tate_local_data(const std::array<Rational, 5>& integral_model, long p);

struct ReductionData {
  long p = 0;
  ReductionType type = ReductionType::GoodOrdinary;
  long ap = 0;
  int conductor_exponent = 0;
  std::string kodaira;
  int tamagawa = 1;
  std::optional<PadicNumber> alpha;
};

// Global arithmetic data of a curve: an integral model, Tate data at each
// prime of bad model reduction, conductor and minimal invariants.
class CurveData {
 public:
  explicit CurveData(CurveModel model);

  const CurveModel& model() const { return model_; }
  const std::string& label() const { return model_.label(); }
  const std::array<Integer, 5>& integral_model() const { return integral_; }
  long conductor() const { return conductor_; }
  const std::vector<LocalData>& local_data() const { return local_; }
  const LocalData* local(long p) const;
  const Integer& minimal_c4() const { return min_c4_; }
  const Integer& minimal_c6() const { return min_c6_; }
  const Integer& minimal_discriminant() const { return min_disc_; }
  std::vector<long> bad_primes() const;
  long tamagawa_product() const;

 private:
  CurveModel model_;
  std::array<Integer, 5> integral_;
  std::vector<LocalData> local_;
  long conductor_ = 1;
  Integer min_c4_, min_c6_, min_disc_;
};

// -(sum over x of the quadratic character of the y-discriminant), i.e.
// q + 1 - #E(F_q) for the model reduced mod q (singular models allowed).
long trace_of_frobenius(const std::array<Rational, 5>& model, long q);

ReductionData reduce_at(const CurveData& E, long q, int alpha_precision = 0);
long ap(const CurveData& E, long q);
// a_0..a_Nmax (a_0 = 0).
std::vector<long> an_coeffs(const CurveData& E, long nmax);

CurveModel quadratic_twist(const CurveModel& E, long D);
int legendre(const Integer& D, long q);
bool is_fundamental_discriminant(long D);
std::vector<long> fundamental_discriminants(const std::vector<long>& primes, const std::vector<int>& signs, long X);
bool same_type(const CurveData& E, const CurveData& F, long p);

// Omega of the minimal model: least positive real period times the number
// of real components.
Real real_period(const CurveData& E);
int real_components(const CurveData& E);

}  // namespace iwasawa
