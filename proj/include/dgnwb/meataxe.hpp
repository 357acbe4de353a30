#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "matrix.hpp"

namespace dgnwb {

using Rng = std::mt19937_64;

// A module for an algebra given by matrices acting on row vectors.  `gens`
// generate the algebra; `span`, when present, spans it linearly and is used
// for random algebra elements.
struct Module {
  FieldPtr field;
  int dim = 0;
  std::vector<Matrix> gens;
  std::vector<Matrix> span;
};

// Echelon basis of a subspace kept in reduced form, grown one vector at a time.
class SpinBasis {
 public:
  SpinBasis(FieldPtr f, int n) : f_(std::move(f)), n_(n) {}
  int size() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec>& rows() const { return rows_; }

  // Reduces v against the basis; if nonzero, normalizes, adds and returns true.
  bool add(Vec v) {
    const Field& F = *f_;
    for (size_t i = 0; i < rows_.size(); ++i) {
      Elem c = v[piv_[i]];
      if (c) vec_axpy(F, v, F.neg(c), rows_[i]);
    }
    int p = -1;
    for (int j = 0; j < n_; ++j)
      if (v[j]) {
        p = j;
        break;
      }
    if (p < 0) return false;
    Elem iv = F.inv(v[p]);
    for (auto& x : v) x = F.mul(x, iv);
    for (auto& r : rows_)
      if (r[p]) vec_axpy(F, r, F.neg(r[p]), v);
    rows_.push_back(std::move(v));
    piv_.push_back(p);
    return true;
  }
  Matrix matrix() const {
    // rows sorted by pivot gives the reduced echelon form
    std::vector<int> order(rows_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return piv_[a] < piv_[b]; });
    Matrix m(f_, size(), n_);
    for (int i = 0; i < size(); ++i) m.set_row(i, rows_[order[i]]);
    return m;
  }

 private:
  FieldPtr f_;
  int n_;
  std::vector<Vec> rows_;
  std::vector<int> piv_;
};

// Smallest submodule containing the seeds, as a reduced echelon basis.
inline Matrix spin(const std::vector<Matrix>& gens, const FieldPtr& f, int n, const std::vector<Vec>& seeds) {
  SpinBasis b(f, n);
  std::vector<Vec> queue;
  for (const auto& v : seeds)
    if (b.add(v)) queue.push_back(b.rows().back());
  for (size_t i = 0; i < queue.size() && b.size() < n; ++i)
    for (const auto& g : gens) {
      Vec w = vec_mat(queue[i], g);
      if (b.add(w)) queue.push_back(b.rows().back());
    }
  return b.matrix();
}

inline std::vector<int> pivot_columns(const Matrix& rref) {
  std::vector<int> piv;
  for (int i = 0; i < rref.rows(); ++i)
    for (int j = 0; j < rref.cols(); ++j)
      if (rref(i, j)) {
        piv.push_back(j);
        break;
      }
  return piv;
}

// Action of a on the invariant subspace with reduced echelon basis w.
inline Matrix sub_action(const Matrix& w, const Matrix& a) {
  auto piv = pivot_columns(w);
  Matrix out(a.field(), w.rows(), w.rows());
  for (int i = 0; i < w.rows(); ++i) {
    Vec img = vec_mat(w.row(i), a);
    for (int k = 0; k < w.rows(); ++k) out(i, k) = img[piv[k]];
  }
  return out;
}

// Action of a on V/W, basis the unit vectors at non-pivot columns of w.
inline Matrix quotient_action(const Matrix& w, const Matrix& a) {
  const Field& F = *a.field();
  auto piv = pivot_columns(w);
  int n = a.rows();
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<int> rest;
  for (int j = 0; j < n; ++j)
    if (!is_piv[j]) rest.push_back(j);
  Matrix out(a.field(), static_cast<int>(rest.size()), static_cast<int>(rest.size()));
  for (size_t i = 0; i < rest.size(); ++i) {
    Vec img = a.row(rest[i]);
    for (int k = 0; k < w.rows(); ++k)
      if (img[piv[k]]) vec_axpy(F, img, F.neg(img[piv[k]]), w.row(k));
    for (size_t k = 0; k < rest.size(); ++k) out(static_cast<int>(i), static_cast<int>(k)) = img[rest[k]];
  }
  return out;
}

inline Module submodule(const Module& m, const Matrix& w) {
  Module s{m.field, w.rows(), {}, {}};
  for (const auto& g : m.gens) s.gens.push_back(sub_action(w, g));
  for (const auto& g : m.span) s.span.push_back(sub_action(w, g));
  return s;
}

inline Module quotient_module(const Module& m, const Matrix& w) {
  Module s{m.field, m.dim - w.rows(), {}, {}};
  for (const auto& g : m.gens) s.gens.push_back(quotient_action(w, g));
  for (const auto& g : m.span) s.span.push_back(quotient_action(w, g));
  return s;
}

// Solutions T of a_i T = T b_i for all i, as a basis of n_a x n_b matrices.
inline std::vector<Matrix> hom_space(const std::vector<Matrix>& as, const std::vector<Matrix>& bs) {
  require(as.size() == bs.size(), "hom_space: family sizes differ");
  if (as.empty()) return {};
  const FieldPtr& f = as[0].field();
  const Field& F = *f;
  int na = as[0].rows(), nb = bs[0].rows();
  int unknowns = na * nb;
  Matrix sys(f, static_cast<int>(as.size()) * unknowns, unknowns);
  int row = 0;
  for (size_t g = 0; g < as.size(); ++g) {
    const Matrix& a = as[g];
    const Matrix& b = bs[g];
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j, ++row) {
        // (a T)_{ij} - (T b)_{ij}
        for (int k = 0; k < na; ++k)
          if (a(i, k)) sys(row, k * nb + j) = F.add(sys(row, k * nb + j), a(i, k));
        for (int k = 0; k < nb; ++k)
          if (b(k, j)) sys(row, i * nb + k) = F.sub(sys(row, i * nb + k), b(k, j));
      }
  }
  Matrix ns = nullspace(sys);
  std::vector<Matrix> out;
  for (int i = 0; i < ns.rows(); ++i) out.push_back(Matrix::unflatten(f, ns.row(i), na, nb));
  return out;
}

// Scales a nonzero matrix so that its first nonzero entry (row-major) is 1.
inline Matrix normalize_first_entry(const Matrix& t) {
  for (Elem x : t.data())
    if (x) return t.scaled(t.field()->inv(x));
  return t;
}

// T invertible with x2_i = T x1_i T^-1 for all i, canonically scaled; nullopt
// if no invertible solution is found.
inline std::optional<Matrix> intertwiner(const std::vector<Matrix>& x1, const std::vector<Matrix>& x2, Rng* rng = nullptr) {
  if (x1.empty()) return std::nullopt;
  if (x1[0].rows() != x2[0].rows()) return std::nullopt;
  // x2 T = T x1
  auto sols = hom_space(x2, x1);
  if (sols.empty()) return std::nullopt;
  for (const auto& t : sols)
    if (is_invertible(t)) return normalize_first_entry(t);
  if (sols.size() > 1) {
    Rng local(12345);
    Rng& r = rng ? *rng : local;
    const Field& F = *sols[0].field();
    for (int tries = 0; tries < 64; ++tries) {
      Matrix t(sols[0].field(), sols[0].rows(), sols[0].cols());
      for (const auto& s : sols) t = t + s.scaled(static_cast<Elem>(r() % F.size()));
      if (is_invertible(t)) return normalize_first_entry(t);
    }
  }
  return std::nullopt;
}

inline int endomorphism_dim(const Module& m) {
  if (m.gens.empty()) return m.dim * m.dim;
  return static_cast<int>(hom_space(m.gens, m.gens).size());
}

// Random element of the algebra with coefficients in the subfield k.
inline Matrix random_algebra_element(const Module& m, const Subfield& k, Rng& rng) {
  const Field& F = *m.field;
  auto coeff = [&] {
    long long r = static_cast<long long>(rng() % (k.units() + 1));
    return r == 0 ? Elem(0) : k.exp(r - 1);
  };
  Matrix a(m.field, m.dim, m.dim);
  if (!m.span.empty()) {
    for (const auto& s : m.span) {
      Elem c = coeff();
      if (c) a = a + s.scaled(c);
    }
    return a;
  }
  // words of length up to 3 in the generators
  Matrix w = Matrix::identity(m.field, m.dim);
  for (int t = 0; t < 6; ++t) {
    const Matrix& g = m.gens[rng() % m.gens.size()];
    w = (rng() % 2) ? w * g : g;
    Elem c = coeff();
    if (c) a = a + w.scaled(c);
  }
  (void)F;
  return a;
}

struct SubmoduleSearch {
  enum Kind { kProper, kIrreducible, kUnknown } kind = kUnknown;
  Matrix basis;  // proper submodule when kind == kProper
};

// Looks for a proper nonzero submodule with coefficients in k, or certifies
// irreducibility over k by Norton's test.
inline SubmoduleSearch find_submodule(const Module& m, const Subfield& k, Rng& rng, int max_tries = 200) {
  SubmoduleSearch res;
  int n = m.dim;
  if (n <= 1) {
    res.kind = SubmoduleSearch::kIrreducible;
    return res;
  }
  const FieldPtr& f = m.field;
  const Field& F = *f;
  std::vector<Matrix> tgens;
  for (const auto& g : m.gens) tgens.push_back(g.transpose());
  auto proper = [&](const Matrix& w) { return w.rows() > 0 && w.rows() < n; };
  auto kelems = k.elements();
  for (int tries = 0; tries < max_tries; ++tries) {
    Matrix a = random_algebra_element(m, k, rng);
    Poly cp = charpoly(a);
    for (Elem lam : kelems) {
      if (poly_eval(F, cp, lam) != 0) continue;
      Matrix b = a - Matrix::scalar(f, n, lam);
      Matrix ker = nullspace(b.transpose());  // rows v with v b = 0
      for (int i = 0; i < ker.rows(); ++i) {
        Matrix w = spin(m.gens, f, n, {ker.row(i)});
        if (proper(w)) {
          res.kind = SubmoduleSearch::kProper;
          res.basis = w;
          return res;
        }
      }
      Matrix kert = nullspace(b);  // rows w with w b^T = 0
      Matrix wd = spin(tgens, f, n, {kert.row(0)});
      if (proper(wd)) {
        res.kind = SubmoduleSearch::kProper;
        res.basis = row_space(nullspace(wd));
        return res;
      }
      if (ker.rows() == 1) {
        res.kind = SubmoduleSearch::kIrreducible;
        return res;
      }
      // Every kernel vector must spin to the whole space; enumerate small kernels.
      long long q = k.units() + 1;
      long long points = 1;
      for (int i = 0; i < ker.rows() && points < 100000; ++i) points *= q;
      if (points <= 4096) {
        bool all_whole = true;
        for (long long c = 1; c < points && all_whole; ++c) {
          long long v = c;
          Vec x(n, 0);
          bool lead = true;
          bool skip = false;
          for (int i = 0; i < ker.rows(); ++i) {
            long long d = v % q;
            v /= q;
            Elem coef = d == 0 ? 0 : k.exp(d - 1);
            if (lead && coef) {
              if (coef != 1) skip = true;  // one representative per line
              lead = false;
            }
            vec_axpy(F, x, coef, ker.row(i));
          }
          if (skip) continue;
          Matrix w = spin(m.gens, f, n, {x});
          if (proper(w)) {
            res.kind = SubmoduleSearch::kProper;
            res.basis = w;
            return res;
          }
        }
        res.kind = SubmoduleSearch::kIrreducible;
        return res;
      }
    }
  }
  // Exhaustive fallback on small spaces.
  long long q = k.units() + 1;
  long long total = 1;
  for (int i = 0; i < n && total <= (1LL << 20); ++i) total *= q;
  if (n <= 6 && total <= (1LL << 20)) {
    for (long long c = 1; c < total; ++c) {
      long long v = c;
      Vec x(n, 0);
      bool lead = true, skip = false;
      for (int i = n - 1; i >= 0; --i) {
        long long d = v % q;
        v /= q;
        x[i] = d == 0 ? 0 : k.exp(d - 1);
        if (lead && x[i]) {
          skip = x[i] != 1;
          lead = false;
        }
      }
      if (skip) continue;
      Matrix w = spin(m.gens, f, n, {x});
      if (proper(w)) {
        res.kind = SubmoduleSearch::kProper;
        res.basis = w;
        return res;
      }
    }
    res.kind = SubmoduleSearch::kIrreducible;
  }
  return res;
}

struct Constituent {
  Module module;
  int multiplicity = 0;
};

inline bool modules_isomorphic(const Module& a, const Module& b) {
  if (a.dim != b.dim) return false;
  if (a.gens.empty()) return true;
  return intertwiner(a.gens, b.gens).has_value();
}

// Composition factors over k with multiplicities, each checked absolutely
// irreducible (endomorphism algebra of dimension 1).  With stop_after > 0 the
// search ends once that many distinct factors are known (multiplicities are
// then partial).
inline std::vector<Constituent> composition_factors(const Module& m, const Subfield& k, Rng& rng, int stop_after = -1) {
  std::vector<Constituent> out;
  std::vector<Module> todo{m};
  while (!todo.empty()) {
    auto it = std::min_element(todo.begin(), todo.end(), [](const Module& a, const Module& b) { return a.dim < b.dim; });
    Module cur = *it;
    todo.erase(it);
    if (cur.dim == 0) continue;
    auto r = find_submodule(cur, k, rng);
    if (r.kind == SubmoduleSearch::kProper) {
      todo.push_back(submodule(cur, r.basis));
      todo.push_back(quotient_module(cur, r.basis));
      continue;
    }
    int ed = endomorphism_dim(cur);
    if (r.kind == SubmoduleSearch::kUnknown || ed != 1) {
      int need = k.degree() * std::max(ed, 2);
      throw FieldTooSmallError("module of dimension " + std::to_string(cur.dim) + " is not split by GF(" +
                                   std::to_string(k.field()->p()) + "^" + std::to_string(k.degree()) + ")",
                               need);
    }
    bool found = false;
    for (auto& c : out)
      if (modules_isomorphic(c.module, cur)) {
        ++c.multiplicity;
        found = true;
        break;
      }
    if (!found) {
      out.push_back({cur, 1});
      if (stop_after > 0 && static_cast<int>(out.size()) >= stop_after) break;
    }
  }
  return out;
}

// One irreducible constituent (a submodule or quotient reached by repeated
// splitting), smallest pieces first.
inline Module some_irreducible_constituent(const Module& m, const Subfield& k, Rng& rng) {
  Module cur = m;
  for (;;) {
    auto r = find_submodule(cur, k, rng);
    if (r.kind == SubmoduleSearch::kIrreducible) return cur;
    if (r.kind == SubmoduleSearch::kUnknown)
      throw FieldTooSmallError("could not split a module of dimension " + std::to_string(cur.dim), 2 * k.degree());
    Module a = submodule(cur, r.basis), b = quotient_module(cur, r.basis);
    cur = a.dim <= b.dim ? a : b;
  }
}

}  // namespace dgnwb
