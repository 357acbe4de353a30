#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "matrep.hpp"

namespace dgnwb {

// Finite-dimensional algebra in coordinates, with a right action of `group`
// by algebra automorphisms: x^g = x * action[position of g].
struct GAlgebra {
  FieldPtr field;
  int dim = 0;
  std::function<Vec(const Vec&, const Vec&)> product;
  Vec one;
  Group group;
  std::vector<Matrix> action;
  int matrix_degree = 0;  // n > 0 when coordinates are the entries of M_n(F), row-major

  // Semilinear structure (optional): coordinates are over the prime field and
  // E acts by `escale`; then (z x)^g = z^(p^twist(g)) x^g.
  std::optional<Subfield> scalars;
  std::function<Vec(Elem, const Vec&)> escale;
  std::vector<int> twist;  // by position in group

  Vec mul(const Vec& a, const Vec& b) const { return product(a, b); }
  const Matrix& action_of(int g) const {
    int pos = group.position(g);
    require(pos >= 0, "element does not act on the algebra");
    return action[pos];
  }
  Vec act(const Vec& x, int g) const { return vec_mat(x, action_of(g)); }
  Vec unit(int i) const {
    Vec v(dim, 0);
    v[i] = 1;
    return v;
  }
  Vec zero() const { return Vec(dim, 0); }
  Vec add(const Vec& a, const Vec& b) const {
    Vec c = a;
    vec_axpy(*field, c, 1, b);
    return c;
  }

  // Every action map is multiplicative on basis pairs.
  bool action_is_multiplicative() const {
    for (int g : group.generators())
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          if (act(mul(unit(i), unit(j)), g) != mul(act(unit(i), g), act(unit(j), g))) return false;
    return true;
  }

  // action(gh) = action(g) action(h) on all pairs, action(1) = identity.
  bool action_is_homomorphism() const {
    if (!action_of(0).is_identity()) return false;
    for (int g : group.elements())
      for (int h : group.elements())
        if (action_of(group.mul(g, h)) != action_of(g) * action_of(h)) return false;
    return true;
  }

  bool action_is_semilinear() const {
    if (!scalars) return true;
    Elem z = scalars->primitive();
    for (int g : group.elements()) {
      Elem zg = scalars->frobenius(z, twist[group.position(g)]);
      for (int i = 0; i < dim; ++i)
        if (act(escale(z, unit(i)), g) != escale(zg, act(unit(i), g))) return false;
    }
    return true;
  }
};

// The linear map x -> P x Q on row-major coordinates of n x n matrices.
inline Matrix sandwich_map(const Matrix& p, const Matrix& q) { return p.transpose().kron(q); }

// M_n(F) with x^g = C(g)^-1 x C(g).
inline GAlgebra matrix_algebra(const FieldPtr& f, int n, const Group& g, const std::function<Matrix(int)>& conj) {
  GAlgebra a;
  a.field = f;
  a.dim = n * n;
  a.matrix_degree = n;
  a.product = [f, n](const Vec& x, const Vec& y) {
    return (Matrix::unflatten(f, x, n, n) * Matrix::unflatten(f, y, n, n)).flatten();
  };
  a.one = Matrix::identity(f, n).flatten();
  a.group = g;
  for (int x : g.elements()) {
    Matrix c = conj(x);
    a.action.push_back(sandwich_map(inverse(c), c));
  }
  return a;
}

// End algebra of a representation: x^g = X(g)^-1 x X(g).
inline GAlgebra endomorphism_algebra(const MatrixRep& r) {
  return matrix_algebra(r.field, r.dim, r.group, [&](int x) { return r(x); });
}

// Group algebra F[N] (coordinates by position in N) under conjugation
// n -> g^-1 n g by a group G normalizing N.
inline GAlgebra group_algebra(const FieldPtr& f, const Group& n, const Group& g) {
  GAlgebra a;
  a.field = f;
  a.dim = n.order();
  a.product = [f, n](const Vec& x, const Vec& y) {
    const Field& F = *f;
    const auto& el = n.elements();
    Vec z(el.size(), 0);
    for (size_t i = 0; i < el.size(); ++i) {
      if (!x[i]) continue;
      for (size_t j = 0; j < el.size(); ++j)
        if (y[j]) {
          int k = n.position(n.mul(el[i], el[j]));
          z[k] = F.add(z[k], F.mul(x[i], y[j]));
        }
    }
    return z;
  };
  a.one = a.unit(n.position(0));
  a.group = g;
  const auto& amb = *n.ambient();
  for (int x : g.elements()) {
    Matrix m(f, a.dim, a.dim);
    for (int i = 0; i < a.dim; ++i) {
      int pos = n.position(amb.conj(n.elements()[i], x));
      require(pos >= 0, "acting group does not normalize N");
      m(i, pos) = 1;
    }
    a.action.push_back(m);
  }
  return a;
}

// Basis of A^S (rows).
inline Matrix fixed_points(const GAlgebra& a, const Group& s) {
  require(s.is_subgroup_of(a.group), "fixed points of a subgroup outside the acting group");
  const auto& gens = s.generators();
  if (gens.empty()) return Matrix::identity(a.field, a.dim);
  Matrix big(a.field, a.dim, a.dim * static_cast<int>(gens.size()));
  for (size_t k = 0; k < gens.size(); ++k) {
    Matrix d = a.action_of(gens[k]) - Matrix::identity(a.field, a.dim);
    big.set_block(0, static_cast<int>(k) * a.dim, d);
  }
  return row_space(left_nullspace(big));
}

inline Vec trace_with(const GAlgebra& a, const std::vector<int>& reps, const Vec& x) {
  Vec s = a.zero();
  for (int g : reps) vec_axpy(*a.field, s, 1, a.act(x, g));
  return s;
}

// Tr_T^S(x) = sum of x^g over a right transversal of T in S.
inline Vec relative_trace(const GAlgebra& a, const Group& t, const Group& s, const Vec& x) {
  require(t.is_subgroup_of(s) && s.is_subgroup_of(a.group), "trace needs T <= S <= acting group");
  return trace_with(a, right_transversal(s, t), x);
}

struct TraceData {
  Matrix source;  // basis of A^T
  Matrix images;  // Tr of each source row
  Matrix image;   // row basis of A^S_T
};

inline TraceData trace_map(const GAlgebra& a, const Group& t, const Group& s) {
  require(t.is_subgroup_of(s) && s.is_subgroup_of(a.group), "trace needs T <= S <= acting group");
  TraceData d;
  d.source = fixed_points(a, t);
  auto reps = right_transversal(s, t);
  // a second transversal: each representative moved within its coset
  std::vector<int> alt = reps;
  for (size_t i = 0; i < alt.size(); ++i) alt[i] = s.mul(t.elements()[(i + 1) % t.order()], reps[i]);
  d.images = Matrix(a.field, d.source.rows(), a.dim);
  for (int i = 0; i < d.source.rows(); ++i) {
    Vec v = trace_with(a, reps, d.source.row(i));
    ensure(v == trace_with(a, alt, d.source.row(i)), "trace depends on the transversal");
    d.images.set_row(i, v);
  }
  d.image = row_space(d.images);
  return d;
}

inline bool in_span(const Matrix& rows, const Vec& x) {
  if (rows.rows() == 0) return vec_is_zero(x);
  return Coordinates(row_space(rows)).contains(x);
}

// Brauer quotient A^D / sum_{Q<D} A^D_Q with the map br.
struct BrauerQuotientData {
  Group d;
  Matrix fixed;       // basis of A^D
  Matrix kernel;      // basis of sum of A^D_Q
  Matrix complement;  // lifts of the quotient basis
  Coordinates coords; // over [kernel; complement]
  int qdim = 0;
  std::vector<Vec> structure;  // qdim*qdim products
  Vec one;
  FieldPtr field;

  std::optional<Vec> try_br(const Vec& x) const {
    auto c = coords.coords(x);
    if (!c) return std::nullopt;
    return Vec(c->begin() + kernel.rows(), c->end());
  }
  Vec br(const Vec& x) const {
    auto v = try_br(x);
    require(v.has_value(), "Brauer map applied outside the fixed points");
    return *v;
  }
  Vec lift(const Vec& v) const { return vec_mat(v, complement); }
  Vec mul(const Vec& a, const Vec& b) const {
    const Field& F = *field;
    Vec z(qdim, 0);
    for (int i = 0; i < qdim; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < qdim; ++j)
        if (b[j]) vec_axpy(F, z, F.mul(a[i], b[j]), structure[static_cast<size_t>(i) * qdim + j]);
    }
    return z;
  }
};

inline BrauerQuotientData brauer_quotient(const GAlgebra& a, const Group& d) {
  require(is_p_group(d, a.field->p()), "Brauer quotient needs a p-subgroup");
  BrauerQuotientData q;
  q.d = d;
  q.field = a.field;
  q.fixed = fixed_points(a, d);
  std::vector<Vec> kern_rows;
  for (const auto& sub : all_subgroups(d)) {
    if (sub == d) continue;
    auto tr = trace_map(a, sub, d);
    for (int i = 0; i < tr.image.rows(); ++i) kern_rows.push_back(tr.image.row(i));
  }
  SpinBasis sb(a.field, a.dim);
  for (auto& v : kern_rows) sb.add(v);
  q.kernel = sb.matrix();
  std::vector<Vec> comp;
  for (int i = 0; i < q.fixed.rows(); ++i)
    if (sb.add(q.fixed.row(i))) comp.push_back(q.fixed.row(i));
  q.qdim = static_cast<int>(comp.size());
  q.complement = Matrix::from_rows(a.field, comp, a.dim);
  q.coords = Coordinates(q.kernel.stacked(q.complement));
  for (int i = 0; i < q.kernel.rows(); ++i) ensure(Coordinates(q.fixed).contains(q.kernel.row(i)), "trace image outside A^D");
  q.structure.resize(static_cast<size_t>(q.qdim) * q.qdim);
  for (int i = 0; i < q.qdim; ++i)
    for (int j = 0; j < q.qdim; ++j) q.structure[static_cast<size_t>(i) * q.qdim + j] = q.br(a.mul(comp[i], comp[j]));
  q.one = q.br(a.one);
  return q;
}

// br(xy) = br(x) br(y) on all pairs of a basis of A^D.
inline bool br_is_multiplicative(const GAlgebra& a, const BrauerQuotientData& q) {
  std::vector<Vec> br_rows;
  for (int i = 0; i < q.fixed.rows(); ++i) br_rows.push_back(q.br(q.fixed.row(i)));
  for (int i = 0; i < q.fixed.rows(); ++i)
    for (int j = 0; j < q.fixed.rows(); ++j) {
      auto v = q.try_br(a.mul(q.fixed.row(i), q.fixed.row(j)));
      if (!v || *v != q.mul(br_rows[i], br_rows[j])) return false;
    }
  return true;
}

// The quotient as an algebra with the induced action of a group normalizing D.
inline GAlgebra quotient_algebra(const GAlgebra& a, const BrauerQuotientData& q, const Group& acting) {
  GAlgebra b;
  b.field = a.field;
  b.dim = q.qdim;
  auto qq = std::make_shared<BrauerQuotientData>(q);
  b.product = [qq](const Vec& x, const Vec& y) { return qq->mul(x, y); };
  b.one = q.one;
  b.group = acting;
  for (int g : acting.elements()) {
    Matrix m(a.field, q.qdim, q.qdim);
    for (int i = 0; i < q.qdim; ++i) {
      auto v = q.try_br(a.act(q.complement.row(i), g));
      require(v.has_value(), "acting element does not normalize D");
      m.set_row(i, *v);
    }
    b.action.push_back(m);
  }
  return b;
}

// Checks br_{D/Z} o br_Z = br_D on A^D, Z = Z(D): equal kernels and equal
// ranks.  The D-Brauer quotient of the Z-quotient only sees subgroups
// containing Z, the others contribute multiples of p.
inline bool iterated_quotient_check(const GAlgebra& a, const Group& d) {
  Group z = center(d);
  BrauerQuotientData qd = brauer_quotient(a, d);
  BrauerQuotientData qz = brauer_quotient(a, z);
  Group dd = Group::from_elements(d.ambient(), d.elements());
  GAlgebra abar = quotient_algebra(a, qz, dd);
  if (!abar.action_is_multiplicative() || !abar.action_is_homomorphism()) return false;
  BrauerQuotientData q2 = brauer_quotient(abar, dd);
  int n = qd.fixed.rows();
  Matrix direct(a.field, n, std::max(qd.qdim, 1)), composite(a.field, n, std::max(q2.qdim, 1));
  for (int i = 0; i < n; ++i) {
    Vec x = qd.fixed.row(i);
    Vec v1 = qd.br(x);
    Vec v2 = q2.br(qz.br(x));
    for (int j = 0; j < qd.qdim; ++j) direct(i, j) = v1[j];
    for (int j = 0; j < q2.qdim; ++j) composite(i, j) = v2[j];
  }
  // kernels as subspaces of A^D, in coordinates on its basis
  Matrix k1 = row_space(left_nullspace(direct)), k2 = row_space(left_nullspace(composite));
  if (qd.qdim != q2.qdim) return false;
  return k1 == k2;
}

// An explicit isomorphism of the quotient with M_l(F) from its simple module.
struct MatrixForm {
  int l = 0;
  std::vector<Matrix> images;  // image of each quotient basis vector
  Matrix to_matrix(const Vec& v, const FieldPtr& f) const {
    Matrix m(f, l, l);
    for (size_t i = 0; i < images.size(); ++i)
      if (v[i]) m = m + images[i].scaled(v[i]);
    return m;
  }
};

inline std::optional<MatrixForm> matrix_form(const BrauerQuotientData& q, Rng& rng) {
  MatrixForm mf;
  if (q.qdim == 0) return mf;
  int l = 0;
  while (l * l < q.qdim) ++l;
  if (l * l != q.qdim) return std::nullopt;
  const FieldPtr& f = q.field;
  int n = q.qdim;
  // center: z with z b = b z for all basis b
  Matrix comm(f, n, n * n);
  for (int i = 0; i < n; ++i) {
    Vec bi(n, 0);
    bi[i] = 1;
    for (int j = 0; j < n; ++j) {
      Vec bj(n, 0);
      bj[j] = 1;
      Vec d = q.mul(bi, bj);
      vec_axpy(*f, d, f->neg(1), q.mul(bj, bi));
      for (int k = 0; k < n; ++k) comm(i, j * n + k) = d[k];
    }
  }
  if (left_nullspace(comm).rows() != 1) return std::nullopt;
  // right regular module and one simple constituent
  Module reg{f, n, {}, {}};
  for (int i = 0; i < n; ++i) {
    Vec bi(n, 0);
    bi[i] = 1;
    Matrix r(f, n, n);
    for (int j = 0; j < n; ++j) {
      Vec bj(n, 0);
      bj[j] = 1;
      r.set_row(j, q.mul(bj, bi));
    }
    reg.gens.push_back(r);
  }
  Module s = some_irreducible_constituent(reg, Subfield::whole(f), rng);
  if (s.dim != l) return std::nullopt;
  mf.l = l;
  mf.images = s.gens;
  Matrix span(f, n, l * l);
  for (int i = 0; i < n; ++i) span.set_row(i, mf.images[i].flatten());
  if (rank(span) != n) return std::nullopt;
  return mf;
}

// Least p-subgroup V (up to S-conjugacy) with 1 in the image of Tr_V^S on
// the endomorphism algebra; canonical representative = least in its class.
inline Group vertex(const MatrixRep& r, int p) {
  GAlgebra a = endomorphism_algebra(r);
  auto classes = conjugacy_orbits(p_subgroups(r.group, p), r.group);
  std::sort(classes.begin(), classes.end(),
            [](const std::vector<Group>& x, const std::vector<Group>& y) { return x[0] < y[0]; });
  for (const auto& cls : classes)
    if (in_span(trace_map(a, cls[0], r.group).image, a.one)) return cls[0];
  throw InternalError("no p-subgroup satisfies the relative projectivity test");
}

struct DadeData {
  Group d;
  Matrix basis;                         // D-stable basis (rows)
  std::vector<std::vector<int>> orbits;  // row indices per D-orbit
  int fixed_witness = -1;
  std::vector<Matrix> rho;  // by position in D
};

// Certificate that A = M_n(F) is a Dade D-algebra: a D-stable basis taken
// from orbits of the candidates (fixed vectors first), and rho with
// x^d = rho(d)^-1 x rho(d), normalized to a homomorphism.
inline std::optional<DadeData> dade_structure(const GAlgebra& a, const Group& d, std::vector<Vec> candidates = {}) {
  require(a.matrix_degree > 0, "Dade structure needs a full matrix algebra");
  int n = a.matrix_degree;
  const FieldPtr& f = a.field;
  if (candidates.empty())
    for (int i = 0; i < a.dim; ++i) candidates.push_back(a.unit(i));
  std::vector<std::vector<Vec>> orbits;
  std::set<Vec> seen;
  for (const auto& c : candidates) {
    if (vec_is_zero(c) || seen.count(c)) continue;
    std::vector<Vec> orb{c};
    seen.insert(c);
    for (size_t i = 0; i < orb.size(); ++i)
      for (int g : d.generators()) {
        Vec y = a.act(orb[i], g);
        if (seen.insert(y).second) orb.push_back(y);
      }
    orbits.push_back(std::move(orb));
  }
  std::stable_sort(orbits.begin(), orbits.end(), [](const auto& x, const auto& y) { return (x.size() == 1) > (y.size() == 1); });
  DadeData out;
  out.d = d;
  SpinBasis sb(f, a.dim);
  std::vector<Vec> rows;
  for (const auto& orb : orbits) {
    SpinBasis trial = sb;
    bool ok = true;
    for (const auto& v : orb) ok = ok && trial.add(v);
    if (!ok) continue;
    sb = trial;
    std::vector<int> idx;
    for (const auto& v : orb) {
      idx.push_back(static_cast<int>(rows.size()));
      rows.push_back(v);
    }
    if (orb.size() == 1 && out.fixed_witness < 0) out.fixed_witness = idx[0];
    out.orbits.push_back(idx);
    if (static_cast<int>(rows.size()) == a.dim) break;
  }
  if (static_cast<int>(rows.size()) != a.dim || out.fixed_witness < 0) return std::nullopt;
  out.basis = Matrix::from_rows(f, rows, a.dim);
  // rho(d): x rho = rho x^d on matrix units
  for (int g : d.elements()) {
    std::vector<Matrix> as, bs;
    for (int i = 0; i < a.dim; ++i) {
      as.push_back(Matrix::unflatten(f, a.unit(i), n, n));
      bs.push_back(Matrix::unflatten(f, a.act(a.unit(i), g), n, n));
    }
    auto sols = hom_space(as, bs);
    ensure(sols.size() == 1, "inner automorphism without a unique conjugating matrix");
    Matrix r = sols[0];
    int o = d.ambient()->elem_order(g);
    Matrix ro = Matrix::identity(f, n);
    for (int k = 0; k < o; ++k) ro = ro * r;
    auto lam = ro.scalar_value();
    ensure(lam && *lam != 0, "rho(d)^ord(d) is not scalar");
    // c^o = lam^-1; o is a power of p, so o is invertible mod |F^x|
    long long e = inv_mod(o % f->units(), f->units());
    ensure(e >= 0 || f->units() == 1, "order of d not invertible modulo |F^x|");
    Elem c = f->units() == 1 ? 1 : f->exp(mul_mod(f->dlog(f->inv(*lam)), e, f->units()));
    out.rho.push_back(r.scaled(c));
  }
  for (int x : d.elements())
    for (int y : d.elements())
      ensure(out.rho[d.position(x)] * out.rho[d.position(y)] == out.rho[d.position(d.mul(x, y))], "rho is not a homomorphism");
  return out;
}

}  // namespace dgnwb
