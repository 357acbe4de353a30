#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "matrep.hpp"

namespace dgnwb {

// A Brauer character: for each p-regular class of `group` (in class order),
// the sorted eigenvalue dlogs (base: the field generator).
struct BrauerChar {
  Group group;
  int p = 0;
  FieldPtr field;
  std::vector<int> classes;              // class indices in group.classes()
  std::vector<std::vector<int>> values;  // per entry of `classes`

  int degree() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }

  bool operator==(const BrauerChar& o) const { return group == o.group && values == o.values; }
  bool operator!=(const BrauerChar& o) const { return !(*this == o); }
  bool operator<(const BrauerChar& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    return values < o.values;
  }

  // Reduced value: the sum of the eigenvalues in F.
  Elem reduced_value(int k) const {
    Elem s = 0;
    for (int d : values[k]) s = field->add(s, field->exp(d));
    return s;
  }

  const std::vector<int>& value_at(int x) const {
    int c = group.class_of(x);
    for (size_t k = 0; k < classes.size(); ++k)
      if (classes[k] == c) return values[k];
    throw PreconditionError("Brauer character evaluated at a p-singular element");
  }

  std::string str() const {
    std::string s = "deg " + std::to_string(degree()) + " {";
    for (size_t k = 0; k < values.size(); ++k) {
      s += (k ? "; " : "") + std::to_string(group.class_rep(classes[k])) + ":";
      for (size_t i = 0; i < values[k].size(); ++i) s += (i ? "," : "") + std::to_string(values[k][i]);
    }
    return s + "}";
  }
};

inline BrauerChar empty_char(const Group& g, int p, const FieldPtr& f) {
  BrauerChar c{g, p, f, g.p_regular_classes(p), {}};
  c.values.assign(c.classes.size(), {});
  return c;
}

// Eigenvalue dlogs (with multiplicity) of a matrix of order dividing o.
inline std::vector<int> eigen_dlogs(const Matrix& x, int o) {
  const Field& F = *x.field();
  int q1 = F.units();
  ensure(q1 % o == 0, "element order does not divide |F^x|");
  Poly cp = charpoly(x);
  std::vector<int> out;
  int step = q1 / o;
  for (int k = 0; k < o; ++k) {
    Elem lam = F.exp(static_cast<long long>(k) * step);
    while (cp.size() > 1 && poly_eval(F, cp, lam) == 0) {
      cp = poly_deflate(F, cp, lam);
      out.push_back(k * step);
    }
  }
  ensure(static_cast<int>(out.size()) == x.rows(), "p-regular image has eigenvalues outside the field");
  std::sort(out.begin(), out.end());
  return out;
}

inline BrauerChar brauer_char_of(const MatrixRep& r, int p) {
  BrauerChar c = empty_char(r.group, p, r.field);
  const auto& amb = *r.group.ambient();
  for (size_t k = 0; k < c.classes.size(); ++k) {
    int x = r.group.class_rep(c.classes[k]);
    c.values[k] = eigen_dlogs(r(x), amb.elem_order(x));
  }
  return c;
}

inline BrauerChar char_sum(const BrauerChar& a, const BrauerChar& b) {
  require(a.group == b.group, "sum of characters of different groups");
  BrauerChar c = a;
  for (size_t k = 0; k < c.values.size(); ++k) {
    c.values[k].insert(c.values[k].end(), b.values[k].begin(), b.values[k].end());
    std::sort(c.values[k].begin(), c.values[k].end());
  }
  return c;
}

// chi^a for a = (t, g): defined on S^g by y -> chi(g y g^-1)^(p^t).
inline BrauerChar act(const BrauerChar& chi, long long t, int g) {
  const auto& amb = *chi.group.ambient();
  Group sg = conjugate(chi.group, g);
  BrauerChar out = empty_char(sg, chi.p, chi.field);
  int q1 = chi.field->units();
  long long m = pow_mod(chi.field->p(), mod_norm(t, chi.field->degree()), q1);
  int gi = amb.inv(g);
  for (size_t k = 0; k < out.classes.size(); ++k) {
    int y = sg.class_rep(out.classes[k]);
    const auto& v = chi.value_at(amb.conj(y, gi));
    std::vector<int> w;
    w.reserve(v.size());
    for (int d : v) w.push_back(static_cast<int>(mul_mod(d, m, q1)));
    std::sort(w.begin(), w.end());
    out.values[k] = std::move(w);
  }
  return out;
}

inline BrauerChar restrict_char(const BrauerChar& chi, const Group& t) {
  require(t.is_subgroup_of(chi.group), "restriction to a non-subgroup");
  BrauerChar out = empty_char(t, chi.p, chi.field);
  for (size_t k = 0; k < out.classes.size(); ++k) out.values[k] = chi.value_at(t.class_rep(out.classes[k]));
  return out;
}

// Induced character from eigenvalues: on each cycle of length k of x on the
// right cosets T g, the eigenvalues are the k-th roots of those of
// psi(g x^k g^-1).
inline BrauerChar induce_char(const BrauerChar& psi, const Group& s) {
  const Group& t = psi.group;
  require(t.is_subgroup_of(s), "induction from a non-subgroup");
  const auto& amb = *s.ambient();
  auto reps = right_transversal(s, t);
  int n = static_cast<int>(reps.size());
  std::unordered_map<int, int> coset_of;
  for (int c = 0; c < n; ++c)
    for (int y : t.elements()) coset_of[amb.mul(y, reps[c])] = c;
  int q1 = psi.field->units();
  BrauerChar out = empty_char(s, psi.p, psi.field);
  for (size_t k = 0; k < out.classes.size(); ++k) {
    int x = s.class_rep(out.classes[k]);
    std::vector<char> seen(n, 0);
    std::vector<int> vals;
    for (int c = 0; c < n; ++c) {
      if (seen[c]) continue;
      int len = 0, cur = c;
      while (!seen[cur]) {
        seen[cur] = 1;
        cur = coset_of.at(amb.mul(reps[cur], x));
        ++len;
      }
      int g = reps[c];
      int h = amb.mul(amb.mul(g, amb.pow(x, len)), amb.inv(g));
      for (int d : psi.value_at(h)) {
        ensure(d % len == 0, "eigenvalue without a root of the required order");
        for (int j = 0; j < len; ++j) vals.push_back(d / len + j * (q1 / len));
      }
    }
    std::sort(vals.begin(), vals.end());
    out.values[k] = std::move(vals);
  }
  return out;
}

// Multiplicity counts of a character as one integer vector.
inline std::vector<long long> count_vector(const BrauerChar& c) {
  int q1 = c.field->units();
  std::vector<long long> v(c.values.size() * q1, 0);
  for (size_t k = 0; k < c.values.size(); ++k)
    for (int d : c.values[k]) ++v[k * q1 + d];
  return v;
}

// Integer coefficients of chi over the (linearly independent) basis; throws if
// chi is outside their span.
inline std::vector<long long> decompose(const BrauerChar& chi, const std::vector<BrauerChar>& basis) {
  constexpr long long P = 2147483647;
  int k = static_cast<int>(basis.size());
  auto target = count_vector(chi);
  int rows = static_cast<int>(target.size());
  std::vector<std::vector<long long>> cols;
  for (const auto& b : basis) {
    require(b.group == chi.group, "decomposition over characters of another group");
    cols.push_back(count_vector(b));
  }
  // augmented rows x (k+1) mod P
  std::vector<std::vector<long long>> m(rows, std::vector<long long>(k + 1));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < k; ++j) m[i][j] = cols[j][i];
    m[i][k] = mod_norm(target[i], P);
  }
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < k && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c]) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[r], m[pr]);
    long long iv = inv_mod(m[r][c], P);
    for (auto& x : m[r]) x = mul_mod(x, iv, P);
    for (int i = 0; i < rows; ++i) {
      if (i == r || !m[i][c]) continue;
      long long f = m[i][c];
      for (int j = 0; j <= k; ++j) m[i][j] = mod_norm(m[i][j] - mul_mod(f, m[r][j], P), P);
    }
    piv.push_back(c);
    ++r;
  }
  ensure(static_cast<int>(piv.size()) == k, "decomposition basis is linearly dependent");
  for (int i = r; i < rows; ++i)
    if (m[i][k]) throw InternalError("character is not in the span of the basis");
  std::vector<long long> coef(k, 0);
  for (int i = 0; i < r; ++i) {
    long long v = m[i][k];
    coef[piv[i]] = v > P / 2 ? v - P : v;
  }
  // exact verification
  for (int i = 0; i < rows; ++i) {
    long long s = 0;
    for (int j = 0; j < k; ++j) s += coef[j] * cols[j][i];
    if (s != target[i]) throw InternalError("character is not in the span of the basis");
  }
  return coef;
}

inline bool is_defect_zero(const BrauerChar& chi) {
  return p_part(chi.degree(), chi.p) == p_part(chi.group.order(), chi.p);
}

// Multiplicative order of p modulo the p'-part of exp(G).
inline int splitting_degree(const Group& g, int p) {
  return mult_order(p, p_prime_part(g.exponent(), p));
}

struct IrreducibleEntry {
  BrauerChar chi;
  MatrixRep rep;
};

// Shared context for one ambient group, prime and field: the seeded random
// source and the cache of irreducible Brauer characters per subgroup.
class Workspace {
 public:
  Workspace(PermGroupPtr amb, int p, FieldPtr f, std::uint64_t seed) : amb_(std::move(amb)), p_(p), f_(std::move(f)), rng_(seed), seed_(seed) {}
  Workspace(const Group& g, int p, std::uint64_t seed)
      : Workspace(g.ambient(), p, Field::get(p, splitting_degree(Group::whole(g.ambient()), p)), seed) {}

  int p() const { return p_; }
  const FieldPtr& field() const { return f_; }
  Rng& rng() { return rng_; }
  std::uint64_t seed() const { return seed_; }
  const PermGroupPtr& ambient() const { return amb_; }

  // IBr(S) sorted by (degree, values), with a realization of each.
  const std::vector<IrreducibleEntry>& ibr(const Group& s) {
    auto it = cache_.find(s.elements());
    if (it != cache_.end()) return it->second;
    int count = static_cast<int>(s.p_regular_classes(p_).size());
    auto cons = split_into_irreducibles(regular_rep(s, f_), rng_, nullptr, count);
    std::vector<IrreducibleEntry> out;
    for (auto& c : cons) out.push_back({brauer_char_of(c.rep, p_), c.rep});
    std::sort(out.begin(), out.end(), [](const IrreducibleEntry& a, const IrreducibleEntry& b) { return a.chi < b.chi; });
    ensure(static_cast<int>(out.size()) == count, "number of irreducible Brauer characters differs from p-regular class count");
    for (size_t i = 1; i < out.size(); ++i) ensure(out[i - 1].chi != out[i].chi, "isomorphic factors with equal characters");
    return cache_.emplace(s.elements(), std::move(out)).first->second;
  }

  std::vector<BrauerChar> ibr_chars(const Group& s) {
    std::vector<BrauerChar> out;
    for (const auto& e : ibr(s)) out.push_back(e.chi);
    return out;
  }

  int index_in_ibr(const BrauerChar& chi) {
    const auto& l = ibr(chi.group);
    for (size_t i = 0; i < l.size(); ++i)
      if (l[i].chi == chi) return static_cast<int>(i);
    return -1;
  }

  const MatrixRep& realization(const BrauerChar& chi) {
    int i = index_in_ibr(chi);
    require(i >= 0, "character is not irreducible");
    return ibr(chi.group)[i].rep;
  }

  std::vector<long long> decompose_ibr(const BrauerChar& chi) { return decompose(chi, ibr_chars(chi.group)); }

  // Constituents of chi restricted to N (irreducible ones with positive multiplicity).
  std::vector<BrauerChar> constituents(const BrauerChar& chi, const Group& n) {
    auto coef = decompose_ibr(restrict_char(chi, n));
    std::vector<BrauerChar> out;
    auto irr = ibr_chars(n);
    for (size_t i = 0; i < coef.size(); ++i) {
      ensure(coef[i] >= 0, "negative multiplicity in a genuine character");
      if (coef[i] > 0) out.push_back(irr[i]);
    }
    return out;
  }

  bool lies_over(const BrauerChar& chi, const BrauerChar& theta) {
    auto cons = constituents(chi, theta.group);
    return std::find(cons.begin(), cons.end(), theta) != cons.end();
  }

  // IBr(S | theta) and IBr(S | orbit), preserving IBr order.
  std::vector<BrauerChar> ibr_over(const Group& s, const std::vector<BrauerChar>& thetas) {
    std::vector<BrauerChar> out;
    for (const auto& chi : ibr_chars(s)) {
      auto cons = constituents(chi, thetas[0].group);
      for (const auto& t : thetas)
        if (std::find(cons.begin(), cons.end(), t) != cons.end()) {
          out.push_back(chi);
          break;
        }
    }
    return out;
  }

 private:
  PermGroupPtr amb_;
  int p_;
  FieldPtr f_;
  Rng rng_;
  std::uint64_t seed_;
  std::map<std::vector<int>, std::vector<IrreducibleEntry>> cache_;
};

// The Galois orbit {theta^(p^t)}, distinct members in order of t.
inline std::vector<BrauerChar> galois_orbit(const BrauerChar& theta) {
  std::vector<BrauerChar> out;
  for (int t = 0; t < theta.field->degree(); ++t) {
    BrauerChar c = act(theta, t, 0);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

}  // namespace dgnwb
