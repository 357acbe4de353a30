#pragma once

#include <optional>
#include <vector>

#include "error.hpp"
#include "numtheory.hpp"

namespace dgnwb {

// A x = b over Z/n.
struct ZnSystem {
  long long n = 1;
  int unknowns = 0;
  std::vector<std::vector<long long>> a;
  std::vector<long long> b;

  void add_equation(std::vector<long long> row, long long rhs) {
    for (auto& v : row) v = mod_norm(v, n);
    a.push_back(std::move(row));
    b.push_back(mod_norm(rhs, n));
  }
  bool satisfied_by(const std::vector<long long>& x) const {
    for (size_t i = 0; i < a.size(); ++i) {
      long long s = 0;
      for (int j = 0; j < unknowns; ++j) s = mod_norm(s + mul_mod(a[i][j], x[j], n), n);
      if (s != b[i]) return false;
    }
    return true;
  }
};

namespace detail {

// Diagonalizes over Z/p^k with minimal-valuation pivots, tracking the column
// transform so that x = V y.
inline std::optional<std::vector<long long>> zn_solve_prime_power(const ZnSystem& sys, long long p, int k) {
  long long m = ipow(p, k);
  int rows = static_cast<int>(sys.a.size()), cols = sys.unknowns;
  std::vector<std::vector<long long>> a(rows, std::vector<long long>(cols));
  std::vector<long long> b(rows);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a[i][j] = mod_norm(sys.a[i][j], m);
    b[i] = mod_norm(sys.b[i], m);
  }
  std::vector<std::vector<long long>> v(cols, std::vector<long long>(cols, 0));
  for (int j = 0; j < cols; ++j) v[j][j] = 1;
  auto valuation = [&](long long x) {
    if (x == 0) return k;
    int e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    return e;
  };
  std::vector<int> diag_val;
  std::vector<long long> diag_unit;
  int t = 0;
  for (; t < std::min(rows, cols); ++t) {
    int best = k, bi = -1, bj = -1;
    for (int i = t; i < rows && best > 0; ++i)
      for (int j = t; j < cols; ++j) {
        int e = valuation(a[i][j]);
        if (e < best) {
          best = e;
          bi = i;
          bj = j;
          if (e == 0) break;
        }
      }
    if (bi < 0) break;
    std::swap(a[t], a[bi]);
    std::swap(b[t], b[bi]);
    if (bj != t) {
      for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][bj]);
      for (int i = 0; i < cols; ++i) std::swap(v[i][t], v[i][bj]);
    }
    long long pv = ipow(p, best);
    long long unit = a[t][t] / pv;
    long long uinv = inv_mod(unit, m);
    for (int i = t + 1; i < rows; ++i) {
      if (!a[i][t]) continue;
      long long f = mul_mod(a[i][t] / pv, uinv, m);
      for (int j = t; j < cols; ++j) a[i][j] = mod_norm(a[i][j] - mul_mod(f, a[t][j], m), m);
      b[i] = mod_norm(b[i] - mul_mod(f, b[t], m), m);
    }
    for (int j = t + 1; j < cols; ++j) {
      if (!a[t][j]) continue;
      long long f = mul_mod(a[t][j] / pv, uinv, m);
      for (int i = 0; i < rows; ++i) a[i][j] = mod_norm(a[i][j] - mul_mod(f, a[i][t], m), m);
      for (int i = 0; i < cols; ++i) v[i][j] = mod_norm(v[i][j] - mul_mod(f, v[i][t], m), m);
    }
    diag_val.push_back(best);
    diag_unit.push_back(unit);
  }
  for (int i = t; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<long long> y(cols, 0);
  for (int i = 0; i < t; ++i) {
    long long pv = ipow(p, diag_val[i]);
    if (b[i] % pv != 0) return std::nullopt;
    y[i] = mul_mod(b[i] / pv, inv_mod(diag_unit[i], m), m);
  }
  std::vector<long long> x(cols, 0);
  for (int i = 0; i < cols; ++i)
    for (int j = 0; j < cols; ++j) x[i] = mod_norm(x[i] + mul_mod(v[i][j], y[j], m), m);
  return x;
}

}  // namespace detail

// Some solution of the system, or nullopt when none exists.
inline std::optional<std::vector<long long>> zn_solve(const ZnSystem& sys) {
  long long n = sys.n;
  require(n >= 1, "modulus must be positive");
  std::vector<long long> x(sys.unknowns, 0);
  if (n == 1) return x;
  long long modsofar = 1;
  for (auto [p, k] : factorize(n)) {
    auto part = detail::zn_solve_prime_power(sys, p, k);
    if (!part) return std::nullopt;
    long long m = ipow(p, k);
    // Combine x mod modsofar with part mod m.
    long long inv = inv_mod(modsofar % m, m);
    for (int j = 0; j < sys.unknowns; ++j) {
      long long diff = mod_norm((*part)[j] - x[j], m);
      long long t = mul_mod(diff, inv, m);
      x[j] = x[j] + modsofar * t;
    }
    modsofar *= m;
    for (auto& v : x) v = mod_norm(v, modsofar);
  }
  ensure(sys.satisfied_by(x), "zn_solve produced a non-solution");
  return x;
}

// Exhaustive search; only for tiny systems.
inline std::optional<std::vector<long long>> zn_solve_brute(const ZnSystem& sys) {
  long long total = 1;
  for (int j = 0; j < sys.unknowns; ++j) {
    total *= sys.n;
    require(total <= 10000000, "brute-force Z/n search too large");
  }
  std::vector<long long> x(sys.unknowns, 0);
  for (long long c = 0; c < total; ++c) {
    long long v = c;
    for (int j = 0; j < sys.unknowns; ++j) {
      x[j] = v % sys.n;
      v /= sys.n;
    }
    if (sys.satisfied_by(x)) return x;
  }
  return std::nullopt;
}

}  // namespace dgnwb
