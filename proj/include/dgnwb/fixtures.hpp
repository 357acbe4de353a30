#pragma once

#include <string>
#include <vector>

#include "group.hpp"

// Small permutation groups used by tests, the acceptance run and the CLI
// fixture files.
namespace dgnwb::fixtures {

inline Perm cycle_perm(int degree, const std::vector<std::vector<int>>& cycles) {
  Perm p = perm_identity(degree);
  for (const auto& c : cycles)
    for (size_t i = 0; i < c.size(); ++i) p[c[i]] = c[(i + 1) % c.size()];
  return p;
}

struct GroupSpec {
  std::string name;
  int degree;
  std::vector<Perm> gens;
  PermGroupPtr build() const { return PermGroup::generate(degree, gens); }
};

inline GroupSpec cyclic(int n) {
  std::vector<int> c(n);
  for (int i = 0; i < n; ++i) c[i] = i;
  return {"C" + std::to_string(n), n, n > 1 ? std::vector<Perm>{cycle_perm(n, {c})} : std::vector<Perm>{}};
}

inline GroupSpec s3() { return {"S3", 3, {cycle_perm(3, {{0, 1}}), cycle_perm(3, {{0, 1, 2}})}}; }
inline GroupSpec a4() { return {"A4", 4, {cycle_perm(4, {{0, 1, 2}}), cycle_perm(4, {{0, 1}, {2, 3}})}}; }
inline GroupSpec d8() { return {"D8", 4, {cycle_perm(4, {{0, 1, 2, 3}}), cycle_perm(4, {{0, 2}})}}; }

// Quaternion group in its regular action.  Point 2*u + s stands for the
// unit +-u (u = 1,i,j,k as 0..3, s = 1 for the minus sign).
inline GroupSpec q8() {
  // unit products u*v = sign * w
  static const int w[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sg[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  auto right = [&](int v) {
    Perm p(8);
    for (int u = 0; u < 4; ++u)
      for (int s = 0; s < 2; ++s) p[2 * u + s] = 2 * w[u][v] + (s ^ sg[u][v]);
    return p;
  };
  return {"Q8", 8, {right(1), right(2)}};
}

// 2x2 matrices over GF(3) acting on the right of the eight nonzero row
// vectors (x,y), point 3x + y - 1.
inline Perm gl23_perm(int a, int b, int c, int d) {
  Perm p(8);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      if (x == 0 && y == 0) continue;
      int nx = (x * a + y * c) % 3, ny = (x * b + y * d) % 3;
      p[3 * x + y - 1] = 3 * nx + ny - 1;
    }
  return p;
}

inline GroupSpec sl23() { return {"SL(2,3)", 8, {gl23_perm(1, 1, 0, 1), gl23_perm(1, 0, 1, 1)}}; }
inline GroupSpec gl23() {
  return {"GL(2,3)", 8, {gl23_perm(1, 1, 0, 1), gl23_perm(1, 0, 1, 1), gl23_perm(2, 0, 0, 1)}};
}
inline GroupSpec q8_in_sl23() { return {"Q8", 8, {gl23_perm(0, 1, 2, 0), gl23_perm(1, 1, 1, 2)}}; }

// (C3 x C5) : C2 with C2 inverting C3 and centralizing C5; points 0-2 carry
// C3, points 3-7 carry C5.
inline Perm glauberman_a() { return cycle_perm(8, {{0, 1, 2}}); }
inline Perm glauberman_b() { return cycle_perm(8, {{3, 4, 5, 6, 7}}); }
inline Perm glauberman_t() { return cycle_perm(8, {{1, 2}}); }
inline GroupSpec glauberman() { return {"(C3xC5):C2", 8, {glauberman_a(), glauberman_b(), glauberman_t()}}; }

inline GroupSpec klein4() { return {"C2xC2", 4, {cycle_perm(4, {{0, 1}, {2, 3}}), cycle_perm(4, {{0, 2}, {1, 3}})}}; }

// Q8 x C3: Q8 regular on points 0-7, C3 on points 8-10.
inline Perm widen(const Perm& p, int degree) {
  Perm q = perm_identity(degree);
  for (size_t i = 0; i < p.size(); ++i) q[i] = p[i];
  return q;
}
inline Perm q8c3_c() { return cycle_perm(11, {{8, 9, 10}}); }
inline GroupSpec q8_times_c3() {
  auto q = q8();
  return {"Q8xC3", 11, {widen(q.gens[0], 11), widen(q.gens[1], 11), q8c3_c()}};
}

inline std::vector<GroupSpec> ibr_fixture_groups() {
  return {cyclic(2), cyclic(3), cyclic(4), cyclic(5), cyclic(6), s3(), a4(), d8(), q8(), sl23(), gl23(), glauberman()};
}

inline std::vector<int> indices(const PermGroup& g, const std::vector<Perm>& perms) {
  std::vector<int> out;
  for (const auto& p : perms) {
    int i = g.index_of(p);
    require(i >= 0, "permutation not in group");
    out.push_back(i);
  }
  return out;
}

inline Group subgroup(const PermGroupPtr& g, const std::vector<Perm>& gens) {
  return Group::generated(g, indices(*g, gens));
}

}  // namespace dgnwb::fixtures
