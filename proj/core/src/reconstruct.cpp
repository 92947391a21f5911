#include "iwasawa/reconstruct.hpp"

#include <boost/multiprecision/float128.hpp>

#include "iwasawa/arith.hpp"
#include "iwasawa/error.hpp"

namespace iwasawa {

namespace {

constexpr double kMaxQuotient = 9.0e18;

Integer floor_to_integer(const Real& x) { return Integer(static_cast<long>(floor(x))); }

}  // namespace

Rational rational_reconstruct(const Real& x, const Real& err, long B) {
  if (B < 1) throw Error(Errc::InvalidArgument, "denominator bound must be positive");
  if (!(err >= 0)) throw Error(Errc::InvalidArgument, "error bound must be non-negative");
  if (abs(x) >= Real(kMaxQuotient)) throw Error(Errc::InvalidArgument, "value out of range");
  Real b = B;
  if (err * 2 * b * b >= 1) throw Error(Errc::Ambiguous, "error bound too loose for a unique answer");

  // Convergents h/k of the continued fraction of x.
  Integer h_prev = 1, k_prev = 0;
  Integer h = floor_to_integer(x), k = 1;
  Real frac = x - floor(x);
  while (true) {
    if (k > B) break;
    Real approx = to_real(h) / to_real(k);
    if (abs(x - approx) <= err) return Rational(h, k);
    if (frac < Real(1e-30)) break;
    Real inv = 1 / frac;
    // Such a quotient pushes the next denominator past any long bound.
    if (inv >= Real(kMaxQuotient)) break;
    Integer a = floor_to_integer(inv);
    frac = inv - floor(inv);
    Integer h_next = a * h + h_prev;
    Integer k_next = a * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  throw Error(Errc::NoCandidate, "no rational with denominator <= " + std::to_string(B) + " within bound");
}

}  // namespace iwasawa
