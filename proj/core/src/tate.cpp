// Tate's algorithm, following the usual layout (Silverman, Advanced Topics
// IV.9; Cremona, Algorithms 3.2) with the p = 2, 3 coordinate changes.
#include <array>
#include <string>

#include "iwasawa/arith.hpp"
#include "iwasawa/curve.hpp"
#include "iwasawa/error.hpp"

namespace iwasawa {

namespace {

struct Model {
  Rational a1, a2, a3, a4, a6;

  Rational b2() const { return a1 * a1 + 4 * a2; }
  Rational b4() const { return 2 * a4 + a1 * a3; }
  Rational b6() const { return a3 * a3 + 4 * a6; }
  Rational b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
  Rational c4() const { return b2() * b2() - 24 * b4(); }
  Rational disc() const {
    Rational B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
  }

  // x = x' + r, y = y' + s x' + t
  void rst(const Rational& r, const Rational& s, const Rational& t) {
    Rational n1 = a1 + 2 * s;
    Rational n2 = a2 - s * a1 + 3 * r - s * s;
    Rational n3 = a3 + r * a1 + 2 * t;
    Rational n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    Rational n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    a1 = n1;
    a2 = n2;
    a3 = n3;
    a4 = n4;
    a6 = n6;
  }
};

int val(const Rational& x, long p) { return x == 0 ? 1 << 20 : valuation(x, p); }
bool pdiv(const Rational& x, long p) { return val(x, p) > 0; }
long red(const Rational& x, long p) { return residue_mod(x, p); }

// Whether a x^2 + b x + c has a root mod p.
bool quad_roots(const Rational& a, const Rational& b, const Rational& c, long p) {
  long A = red(a, p), B = red(b, p), C = red(c, p);
  if (A == 0) return B != 0 || C == 0;
  if (p == 2) {
    for (long x = 0; x < 2; ++x)
      if ((A * x * x + B * x + C) % 2 == 0) return true;
    return false;
  }
  long d = mod(B * B - 4 * A * C, p);
  return d == 0 || powmod(d, (p - 1) / 2, p) == 1;
}

// Number of roots mod p of x^3 + b x^2 + c x + d.
int cubic_roots(const Rational& b, const Rational& c, const Rational& d, long p) {
  long B = red(b, p), C = red(c, p), D = red(d, p);
  if (p < 10000000) {
    int n = 0;
    for (long x = 0; x < p; ++x) {
      long v = mod(mulmod(mod(mulmod(mod(x + B, p), x, p) + C, p), x, p) + D, p);
      if (v == 0) ++n;
    }
    return n;
  }
  throw Error(Errc::InvalidArgument, "cubic root count for very large p");
}

}  // namespace

LocalData tate_local_data(const std::array<Rational, 5>& integral_model, long p) {
  Model C{integral_model[0], integral_model[1], integral_model[2], integral_model[3], integral_model[4]};
  for (const auto& a : integral_model)
    if (a != 0 && valuation(a, p) < 0) throw Error(Errc::InvalidArgument, "model not integral at p");

  const Rational pi = p, pi2 = p * p, pi3 = pi2 * p, pi4 = pi3 * p, pi6 = pi4 * pi2;
  const Rational half = p == 2 ? Rational(0) : Rational(invmod(2, p));
  LocalData out;
  out.p = p;
  int rescalings = 0;

  while (true) {
    Rational delta = C.disc();
    int vpd = val(delta, p);
    auto finish = [&](const std::string& ks, int fp, int cp, ReductionType t) {
      out.kodaira = ks;
      out.conductor_exponent = fp;
      out.tamagawa = cp;
      out.type = t;
      out.discriminant_valuation = vpd;
      out.minimal_model = {C.a1, C.a2, C.a3, C.a4, C.a6};
      out.rescalings = rescalings;
      return out;
    };

    if (vpd == 0) return finish("I0", 0, 1, ReductionType::GoodOrdinary);

    Rational b2 = C.b2(), b4 = C.b4(), b6 = C.b6();
    Rational r, t;
    if (p == 2) {
      if (pdiv(b2, p)) {
        r = red(C.a4, p);
        t = red(r * (1 + C.a2 + C.a4) + C.a6, p);
      } else {
        r = red(C.a3, p);
        t = red(r + C.a4, p);
      }
    } else if (p == 3) {
      r = pdiv(b2, p) ? red(-b6, p) : red(-b2 * b4, p);
      t = red(C.a1 * r + C.a3, p);
    } else {
      Rational c4 = C.c4();
      Rational c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
      if (pdiv(c4, p))
        r = -Rational(invmod(12, p)) * b2;
      else
        r = -Rational(invmod(mod(12 * red(c4, p), p), p)) * (c6 + b2 * c4);
      t = -half * (C.a1 * r + C.a3);
      r = red(r, p);
      t = red(t, p);
    }
    C.rst(r, 0, t);
    b2 = C.b2();

    if (!pdiv(b2, p)) {
      bool split = quad_roots(1, C.a1, -C.a2, p);
      int cp = split ? vpd : (vpd % 2 == 0 ? 2 : 1);
      return finish("I" + std::to_string(vpd), 1, cp,
                    split ? ReductionType::SplitMultiplicative : ReductionType::NonsplitMultiplicative);
    }

    if (val(C.a6, p) < 2) return finish("II", vpd, 1, ReductionType::Additive);
    if (val(C.b8(), p) < 3) return finish("III", vpd - 1, 2, ReductionType::Additive);
    if (val(C.b6(), p) < 3) {
      int cp = quad_roots(1, C.a3 / pi, -C.a6 / pi2, p) ? 3 : 1;
      return finish("IV", vpd - 2, cp, ReductionType::Additive);
    }

    Rational s;
    if (p == 2) {
      s = red(C.a2, p);
      t = pi * red(C.a6 / pi2, p);
    } else if (p == 3) {
      s = C.a1;
      t = C.a3;
    } else {
      s = -C.a1 * half;
      t = -C.a3 * half;
    }
    C.rst(0, s, t);

    // p | a1, a2; p^2 | a3, a4; p^3 | a6.  Cubic T^3 + b T^2 + c T + d.
    Rational b = C.a2 / pi, c = C.a4 / pi2, d = C.a6 / pi3;
    Rational w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
    Rational x = 3 * c - b * b;
    int sw = pdiv(w, p) ? (pdiv(x, p) ? 3 : 2) : 1;

    if (sw == 1) return finish("I0*", vpd - 4, 1 + cubic_roots(b, c, d, p), ReductionType::Additive);

    if (sw == 2) {
      if (p == 2)
        r = red(c, p);
      else if (p == 3)
        r = red(c * b, p);
      else
        r = red((b * c - 9 * d) * Rational(invmod(mod(2 * red(x, p), p), p)), p);
      r = pi * r;
      C.rst(r, 0, 0);
      int ix = 3, iy = 3;
      Rational mx = pi2, my = pi2;
      int cp = 0;
      while (true) {
        Rational a2t = C.a2 / pi;
        Rational a3t = C.a3 / my;
        Rational a4t = C.a4 / (pi * mx);
        Rational a6t = C.a6 / (mx * my);
        if (pdiv(a3t * a3t + 4 * a6t, p)) {
          if (p == 2)
            t = my * red(a6t, p);
          else
            t = my * red(-a3t * half, p);
          C.rst(0, 0, t);
          my *= pi;
          ++iy;
          a2t = C.a2 / pi;
          a3t = C.a3 / my;
          a4t = C.a4 / (pi * mx);
          a6t = C.a6 / (mx * my);
          if (pdiv(a4t * a4t - 4 * a6t * a2t, p)) {
            if (p == 2)
              r = mx * red(a6t * a2t, p);
            else
              r = mx * red(-a4t * Rational(invmod(mod(2 * red(a2t, p), p), p)), p);
            C.rst(r, 0, 0);
            mx *= pi;
            ++ix;
          } else {
            cp = quad_roots(a2t, a4t, a6t, p) ? 4 : 2;
            break;
          }
        } else {
          cp = quad_roots(1, a3t, -a6t, p) ? 4 : 2;
          break;
        }
      }
      return finish("I" + std::to_string(ix + iy - 5) + "*", vpd - ix - iy + 1, cp, ReductionType::Additive);
    }

    // Triple root: move it to T = 0.
    if (p == 2)
      r = b;
    else if (p == 3)
      r = -d;
    else
      r = -b * Rational(invmod(3, p));
    r = pi * red(r, p);
    C.rst(r, 0, 0);
    Rational a3t = C.a3 / pi2, a6t = C.a6 / pi4;
    if (!pdiv(a3t * a3t + 4 * a6t, p)) {
      int cp = quad_roots(1, a3t, -a6t, p) ? 3 : 1;
      return finish("IV*", vpd - 6, cp, ReductionType::Additive);
    }
    if (p == 2)
      t = -pi2 * red(a6t, p);
    else
      t = pi2 * red(-a3t * half, p);
    C.rst(0, 0, t);
    if (val(C.a4, p) < 4) return finish("III*", vpd - 7, 2, ReductionType::Additive);
    if (val(C.a6, p) < 6) return finish("II*", vpd - 8, 1, ReductionType::Additive);

    // Non-minimal at p: scale down and start over.
    C.a1 /= pi;
    C.a2 /= pi2;
    C.a3 /= pi3;
    C.a4 /= pi4;
    C.a6 /= pi6;
    ++rescalings;
  }
}

}  // namespace iwasawa
