#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "field.hpp"
#include "group.hpp"
#include "zn.hpp"

namespace dgnwb {

// A 2-cocycle on a finite group with values in E^x, E a subfield of F, under
// the right action z^g = z^(p^twist(g)).  Values indexed by positions.
struct TwistedCocycle {
  Group group;
  Subfield E;
  std::vector<int> twist;    // per position, Frobenius exponent mod [E:F_p]; empty means trivial
  std::vector<Elem> values;  // n*n, row = position of the first argument

  int n() const { return group.order(); }
  int t_at(int pos) const { return twist.empty() ? 0 : twist[pos]; }
  Elem at(int pa, int pb) const { return values[static_cast<size_t>(pa) * n() + pb]; }
  Elem& at(int pa, int pb) { return values[static_cast<size_t>(pa) * n() + pb]; }
  Elem operator()(int a, int b) const { return at(group.position(a), group.position(b)); }
  Elem act(Elem z, int pos) const { return E.frobenius(z, t_at(pos)); }

  static TwistedCocycle trivial(const Group& g, const Subfield& e, std::vector<int> twist = {}) {
    return {g, e, std::move(twist), std::vector<Elem>(static_cast<size_t>(g.order()) * g.order(), 1)};
  }

  bool is_normalized() const {
    int id = group.position(0);
    for (int x = 0; x < n(); ++x)
      if (at(id, x) != 1 || at(x, id) != 1) return false;
    return true;
  }

  bool values_in_field() const {
    for (Elem v : values)
      if (v == 0 || !E.contains(v)) return false;
    return true;
  }

  // alpha(gh,k) alpha(g,h)^k = alpha(g,hk) alpha(h,k) on all triples.
  // Returns a failing triple of positions, or nullopt.
  std::optional<std::array<int, 3>> identity_violation() const {
    const Field& F = *E.field();
    const auto& el = group.elements();
    int m = n();
    std::vector<int> mt(static_cast<size_t>(m) * m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) mt[static_cast<size_t>(a) * m + b] = group.position(group.mul(el[a], el[b]));
    for (int g = 0; g < m; ++g)
      for (int h = 0; h < m; ++h) {
        int gh = mt[static_cast<size_t>(g) * m + h];
        for (int k = 0; k < m; ++k) {
          int hk = mt[static_cast<size_t>(h) * m + k];
          Elem lhs = F.mul(at(gh, k), act(at(g, h), k));
          Elem rhs = F.mul(at(g, hk), at(h, k));
          if (lhs != rhs) return std::array<int, 3>{g, h, k};
        }
      }
    return std::nullopt;
  }
  bool is_cocycle() const { return !identity_violation().has_value(); }

  // beta(g,h) = alpha(g,h) gamma(g)^h gamma(h) gamma(gh)^-1
  TwistedCocycle times_coboundary(const std::vector<Elem>& gamma) const {
    const Field& F = *E.field();
    TwistedCocycle b = *this;
    const auto& el = group.elements();
    for (int g = 0; g < n(); ++g)
      for (int h = 0; h < n(); ++h) {
        int gh = group.position(group.mul(el[g], el[h]));
        b.at(g, h) = F.mul(F.mul(at(g, h), act(gamma[g], h)), F.div(gamma[h], gamma[gh]));
      }
    return b;
  }

  TwistedCocycle inverse() const {
    TwistedCocycle b = *this;
    for (auto& v : b.values) v = E.field()->inv(v);
    return b;
  }
};

inline bool same_action(const TwistedCocycle& a, const TwistedCocycle& b) {
  if (a.group != b.group || a.E.degree() != b.E.degree()) return false;
  for (int x = 0; x < a.n(); ++x)
    if (mod_norm(a.t_at(x), a.E.degree()) != mod_norm(b.t_at(x), b.E.degree())) return false;
  return true;
}

// gamma with beta = alpha * delta(gamma), gamma(1) = 1; nullopt is definitive.
inline std::optional<std::vector<Elem>> cohomologous(const TwistedCocycle& alpha, const TwistedCocycle& beta) {
  require(same_action(alpha, beta), "cohomologous: cocycles on different groups or actions");
  const Subfield& E = alpha.E;
  int m = alpha.n();
  int id = alpha.group.position(0);
  long long modn = E.units();
  int p = E.field()->p();
  // unknown index for each position (identity excluded)
  std::vector<int> var(m, -1);
  int nv = 0;
  for (int x = 0; x < m; ++x)
    if (x != id) var[x] = nv++;
  ZnSystem sys{modn, nv, {}, {}};
  const auto& el = alpha.group.elements();
  for (int g = 0; g < m; ++g)
    for (int h = 0; h < m; ++h) {
      int gh = alpha.group.position(alpha.group.mul(el[g], el[h]));
      std::vector<long long> row(nv, 0);
      long long pt = pow_mod(p, alpha.t_at(h), modn == 1 ? 1 : modn);
      if (var[g] >= 0) row[var[g]] += pt;
      if (var[h] >= 0) row[var[h]] += 1;
      if (var[gh] >= 0) row[var[gh]] -= 1;
      long long rhs = static_cast<long long>(E.dlog(beta.at(g, h))) - E.dlog(alpha.at(g, h));
      sys.add_equation(row, rhs);
    }
  auto sol = zn_solve(sys);
  if (!sol) return std::nullopt;
  std::vector<Elem> gamma(m, 1);
  for (int x = 0; x < m; ++x)
    if (var[x] >= 0) gamma[x] = E.exp((*sol)[var[x]]);
  ensure(alpha.times_coboundary(gamma).values == beta.values, "coboundary solution failed verification");
  return gamma;
}

// Exhaustive search over gamma; only for |G| <= 4 and |E| <= 16.
inline std::optional<std::vector<Elem>> cohomologous_brute(const TwistedCocycle& alpha, const TwistedCocycle& beta) {
  int m = alpha.n();
  int u = alpha.E.units();
  require(m <= 4 && u <= 15, "brute-force coboundary search too large");
  int id = alpha.group.position(0);
  long long total = 1;
  for (int i = 0; i < m - 1; ++i) total *= u;
  std::vector<Elem> gamma(m, 1);
  for (long long c = 0; c < total; ++c) {
    long long v = c;
    for (int x = 0; x < m; ++x) {
      if (x == id) continue;
      gamma[x] = alpha.E.exp(v % u);
      v /= u;
    }
    if (alpha.times_coboundary(gamma).values == beta.values) return gamma;
  }
  return std::nullopt;
}

}  // namespace dgnwb
