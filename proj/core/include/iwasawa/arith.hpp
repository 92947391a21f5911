#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "iwasawa/types.hpp"

namespace iwasawa {

long ipow(long base, int exp);
Integer zpow(long base, int exp);
long mod(long a, long m);
long mulmod(long a, long b, long m);
long powmod(long base, long exp, long m);
long invmod(long a, long m);

// v_p(n) for n != 0.
int valuation(long n, long p);
int valuation(const Integer& n, long p);
int valuation(const Rational& x, long p);
// floor(log_p n) for n >= 1.
int floor_log(long n, long p);

// x mod p for a p-integral rational x.
long residue_mod(const Rational& x, long m);

bool is_prime(long n);
std::vector<long> primes_up_to(long n);
std::vector<int> smallest_prime_factor_table(long n);
std::vector<std::pair<Integer, int>> factorize(Integer n);
bool is_squarefree(long n);

// A generator of (Z/p^k)^x for every k >= 1 (p odd).
long primitive_root(long p);
long euler_phi_prime_power(long p, int k);

Real to_real(const Integer& n);
Real to_real(const Rational& x);
Real real_pi();
Real real_euler_gamma();
std::string format_real(const Real& x, int digits = 34);

}  // namespace iwasawa
