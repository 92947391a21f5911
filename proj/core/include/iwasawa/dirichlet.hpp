#pragma once

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "iwasawa/arith.hpp"
#include "iwasawa/error.hpp"
#include "iwasawa/measure.hpp"

namespace iwasawa {

// sum_{n <= Nmax} a_n n^{-z}, stored sparsely (index, coefficient) in
// increasing index order with zero coefficients dropped.
template <class T>
class FormalDirichletSeries {
 public:
  FormalDirichletSeries(long nmax, long p, bool prime_to_p = true)
      : nmax_(nmax), p_(p), prime_to_p_(prime_to_p) {}

  // Coefficients a[1..nmax]; a[0] is ignored.
  static FormalDirichletSeries from_dense(long nmax, long p, const std::vector<T>& a, bool prime_to_p = true) {
    FormalDirichletSeries s(nmax, p, prime_to_p);
    for (long n = 1; n <= nmax && n < static_cast<long>(a.size()); ++n) s.set(n, a[static_cast<std::size_t>(n)]);
    return s;
  }

  // D_b(z) = b^{1-z}, the series with a single coefficient b at index b.
  static FormalDirichletSeries power_term(long b, long nmax, long p) {
    FormalDirichletSeries s(nmax, p, true);
    s.set(b, T(b));
    return s;
  }

  static FormalDirichletSeries unit(long nmax, long p) {
    FormalDirichletSeries s(nmax, p, true);
    s.set(1, T(1));
    return s;
  }

  long nmax() const { return nmax_; }
  long prime() const { return p_; }
  bool prime_to_p() const { return prime_to_p_; }
  const std::vector<std::pair<long, T>>& terms() const { return terms_; }

  T coefficient(long n) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), n,
                               [](const std::pair<long, T>& t, long key) { return t.first < key; });
    if (it != terms_.end() && it->first == n) return it->second;
    return T(0);
  }

  void set(long n, const T& value) {
    if (n < 1 || n > nmax_) throw Error(Errc::InvalidArgument, "Dirichlet index out of range");
    bool zero = value == T(0);
    if (prime_to_p_ && !zero && n % p_ == 0)
      throw Error(Errc::SupportViolation, "coefficient at a multiple of p");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), n,
                               [](const std::pair<long, T>& t, long key) { return t.first < key; });
    if (it != terms_.end() && it->first == n) {
      if (zero)
        terms_.erase(it);
      else
        it->second = value;
    } else if (!zero) {
      terms_.insert(it, {n, value});
    }
  }

  bool has_support_at_p() const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first % p_ == 0; });
  }

  friend bool operator==(const FormalDirichletSeries& a, const FormalDirichletSeries& b) {
    return a.nmax_ == b.nmax_ && a.p_ == b.p_ && a.terms_ == b.terms_;
  }

  FormalDirichletSeries& operator+=(const FormalDirichletSeries& o) {
    check(o);
    std::vector<std::pair<long, T>> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
      if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
        merged.push_back(*i++);
      } else if (i == terms_.end() || j->first < i->first) {
        merged.push_back(*j++);
      } else {
        T v = i->second + j->second;
        if (!(v == T(0))) merged.emplace_back(i->first, v);
        ++i;
        ++j;
      }
    }
    terms_ = std::move(merged);
    prime_to_p_ = prime_to_p_ && o.prime_to_p_;
    return *this;
  }
  friend FormalDirichletSeries operator+(FormalDirichletSeries a, const FormalDirichletSeries& b) { return a += b; }
  FormalDirichletSeries& operator*=(const FormalDirichletSeries& o) { return *this = convolve(*this, o); }
  friend FormalDirichletSeries operator*(const FormalDirichletSeries& a, const FormalDirichletSeries& b) {
    return convolve(a, b);
  }

  // c_n = sum_{de = n} a_d b_e for n <= Nmax.
  friend FormalDirichletSeries convolve(const FormalDirichletSeries& a, const FormalDirichletSeries& b) {
    a.check(b);
    std::vector<std::pair<long, T>> raw;
    for (const auto& [d, ad] : a.terms_) {
      for (const auto& [e, be] : b.terms_) {
        if (d > a.nmax_ / e) break;
        raw.emplace_back(d * e, ad * be);
      }
    }
    std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    FormalDirichletSeries c(a.nmax_, a.p_, a.prime_to_p_ && b.prime_to_p_);
    for (auto& t : raw) {
      if (!c.terms_.empty() && c.terms_.back().first == t.first)
        c.terms_.back().second += t.second;
      else
        c.terms_.push_back(std::move(t));
    }
    c.terms_.erase(std::remove_if(c.terms_.begin(), c.terms_.end(), [](const auto& t) { return t.second == T(0); }),
                   c.terms_.end());
    return c;
  }

 private:
  void check(const FormalDirichletSeries& o) const {
    if (o.nmax_ != nmax_ || o.p_ != p_) throw Error(Errc::InvalidArgument, "Dirichlet series truncations differ");
  }

  long nmax_;
  long p_;
  bool prime_to_p_;
  std::vector<std::pair<long, T>> terms_;
};

// A_{r,a}: keep the coefficients with index = a mod p^r.
template <class T>
FormalDirichletSeries<T> partial(const FormalDirichletSeries<T>& A, int r, long a) {
  long m = ipow(A.prime(), r);
  FormalDirichletSeries<T> out(A.nmax(), A.prime(), A.prime_to_p());
  long target = mod(a, m);
  for (const auto& [n, v] : A.terms())
    if (n % m == target) out.set(n, v);
  return out;
}

// sum_a eval(A_{r,a}, a) [a]_r on (Z/p^r)^x.
template <class T, class U>
LevelElement<U> to_level_measure(const FormalDirichletSeries<T>& A, int r,
                                 const std::function<U(const FormalDirichletSeries<T>&, long)>& eval, U zero) {
  if (A.has_support_at_p()) throw Error(Errc::SupportViolation, "series has coefficients at multiples of p");
  long p = A.prime();
  LevelElement<U> out(p, r, zero, IndexKind::Residue);
  long m = ipow(p, r);
  for (long a = 1; a <= m; ++a) {
    if (a % p == 0 && m > 1) continue;
    out[a % m] = eval(partial(A, r, a), a);
  }
  return out;
}

}  // namespace iwasawa
