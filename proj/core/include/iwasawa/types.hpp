#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/float128.hpp>
#include <gmpxx.h>

namespace iwasawa {

using Integer = mpz_class;
using Rational = mpq_class;
// Quad precision (113-bit mantissa, ~34 digits) for every L-value sum.
using Real = boost::multiprecision::float128;
using Complex = std::complex<Real>;

enum class ReductionType {
  GoodOrdinary,
  GoodSupersingular,
  SplitMultiplicative,
  NonsplitMultiplicative,
  Additive,
};

const char* reduction_name(ReductionType t);

inline bool is_multiplicative(ReductionType t) {
  return t == ReductionType::SplitMultiplicative || t == ReductionType::NonsplitMultiplicative;
}

}  // namespace iwasawa
