#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace dgnwb {

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Distinct prime divisors, ascending.
inline std::vector<long long> prime_divisors(long long n) {
  std::vector<long long> out;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// (prime, exponent) pairs.
inline std::vector<std::pair<long long, int>> factorize(long long n) {
  std::vector<std::pair<long long, int>> out;
  for (long long d = 2; d * d <= n; ++d) {
    int k = 0;
    while (n % d == 0) {
      n /= d;
      ++k;
    }
    if (k) out.emplace_back(d, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline long long mod_norm(long long a, long long n) {
  a %= n;
  return a < 0 ? a + n : a;
}

inline long long mul_mod(long long a, long long b, long long n) {
  return static_cast<long long>((static_cast<__int128>(a) * b) % n);
}

inline long long pow_mod(long long b, long long e, long long n) {
  long long r = 1 % n;
  b = mod_norm(b, n);
  while (e > 0) {
    if (e & 1) r = mul_mod(r, b, n);
    b = mul_mod(b, b, n);
    e >>= 1;
  }
  return r;
}

inline long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Multiplicative order of a modulo n (gcd(a,n) = 1 assumed); 1 for n = 1.
inline int mult_order(long long a, long long n) {
  if (n == 1) return 1;
  long long x = mod_norm(a, n);
  int k = 1;
  while (x != 1) {
    x = mul_mod(x, a, n);
    ++k;
  }
  return k;
}

// Largest divisor of n prime to p.
inline long long p_prime_part(long long n, long long p) {
  while (n % p == 0) n /= p;
  return n;
}

// Largest power of p dividing n.
inline long long p_part(long long n, long long p) { return n / p_prime_part(n, p); }

// Inverse of a modulo n, or -1 if not a unit.
inline long long inv_mod(long long a, long long n) {
  long long g = n, x = 0, x1 = 1, r = mod_norm(a, n);
  while (r != 0) {
    long long q = g / r;
    long long t = g - q * r;
    g = r;
    r = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  if (g != 1) return -1;
  return mod_norm(x, n);
}

}  // namespace dgnwb
