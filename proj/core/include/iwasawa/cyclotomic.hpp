#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "iwasawa/error.hpp"
#include "iwasawa/types.hpp"

namespace iwasawa {

// Coefficients of the m-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(long m);
long euler_phi(long m);
Complex root_of_unity(long order, long e);

// Element of R[zeta_m] = R[x]/(Phi_m) in the power basis, for a coefficient
// ring R (p-adic numbers, rationals or integers).
template <class T>
class CyclotomicElement {
 public:
  CyclotomicElement(long order, T zero)
      : order_(order), phi_(&cyclotomic_polynomial(order)), zero_(zero),
        c_(phi_->size() - 1, zero) {}

  static CyclotomicElement from_exponents(long order, std::vector<T> by_exponent, T zero) {
    CyclotomicElement r(order, zero);
    r.reduce_into(std::move(by_exponent));
    return r;
  }

  static CyclotomicElement zeta_power(long order, long e, T zero, T one) {
    std::vector<T> v(static_cast<std::size_t>(order), zero);
    long k = e % order;
    if (k < 0) k += order;
    v[static_cast<std::size_t>(k)] = one;
    return from_exponents(order, std::move(v), zero);
  }

  long order() const { return order_; }
  std::size_t degree() const { return c_.size(); }
  const std::vector<T>& coefficients() const { return c_; }
  const T& operator[](std::size_t i) const { return c_[i]; }
  const T& zero() const { return zero_; }

  CyclotomicElement& operator+=(const CyclotomicElement& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  CyclotomicElement& operator-=(const CyclotomicElement& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  CyclotomicElement& operator*=(const CyclotomicElement& o) {
    check(o);
    std::vector<T> prod(2 * c_.size() - 1, zero_);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
    reduce_into(std::move(prod));
    return *this;
  }
  CyclotomicElement& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend CyclotomicElement operator+(CyclotomicElement a, const CyclotomicElement& b) { return a += b; }
  friend CyclotomicElement operator-(CyclotomicElement a, const CyclotomicElement& b) { return a -= b; }
  friend CyclotomicElement operator*(CyclotomicElement a, const CyclotomicElement& b) { return a *= b; }
  friend CyclotomicElement operator*(CyclotomicElement a, const T& s) { return a *= s; }

  template <class F>
  auto map(F f) const {
    using U = decltype(f(zero_));
    std::vector<U> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(f(x));
    return CyclotomicElement<U>::from_exponents(order_, std::move(v), f(zero_));
  }

  // Image under zeta_m -> exp(2 pi i / m).
  template <class F>
  Complex to_complex(F convert) const {
    Complex s(0);
    for (std::size_t i = 0; i < c_.size(); ++i)
      s += Complex(convert(c_[i])) * root_of_unity(order_, static_cast<long>(i));
    return s;
  }

 private:
  void check(const CyclotomicElement& o) const {
    if (o.order_ != order_) throw Error(Errc::LevelMismatch, "cyclotomic orders differ");
  }

  // Reduce a polynomial of any length modulo the monic Phi_m.
  void reduce_into(std::vector<T> poly) {
    const auto& phi = *phi_;
    std::size_t deg = phi.size() - 1;
    for (std::size_t i = poly.size(); i-- > deg;) {
      T lead = poly[i];
      for (std::size_t j = 0; j < deg; ++j)
        if (phi[j] != 0) poly[i - deg + j] -= lead * phi[j];
      poly[i] = zero_;
    }
    poly.resize(deg, zero_);
    c_ = std::move(poly);
  }

  long order_;
  const std::vector<long>* phi_;
  T zero_;
  std::vector<T> c_;
};

}  // namespace iwasawa
