#include "iwasawa/cyclotomic.hpp"

#include <map>
#include <mutex>

#include "iwasawa/arith.hpp"

namespace iwasawa {

long euler_phi(long m) {
  long r = m;
  long n = m;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    while (n % d == 0) n /= d;
    r -= r / d;
  }
  if (n > 1) r -= r / n;
  return r;
}

const std::vector<long>& cyclotomic_polynomial(long m) {
  static std::mutex mu;
  static std::map<long, std::vector<long>> cache;
  if (m < 1) throw Error(Errc::InvalidArgument, "cyclotomic order must be positive");
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, by exact long division.
  std::vector<long> num(static_cast<std::size_t>(m + 1), 0);
  num[0] = -1;
  num[static_cast<std::size_t>(m)] = 1;
  for (long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    const auto& den = cyclotomic_polynomial(d);
    std::size_t dd = den.size() - 1;
    std::vector<long> quo(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
      long c = num[i];
      quo[i - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    num = std::move(quo);
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(m, std::move(num)).first->second;
}

Complex root_of_unity(long order, long e) {
  long k = mod(e, order);
  Real theta = 2 * real_pi() * Real(k) / Real(order);
  return Complex(cos(theta), sin(theta));
}

}  // namespace iwasawa
