#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brauer.hpp"

namespace dgnwb {

// A modular H-triple (G, N, theta).  The Galois part is modeled by Frobenius
// exponents t mod [F:F_p]; sigma holds, per position in G, the exponent mod
// [E:F_p] of the unique sigma_g with theta^sigma_g = theta^(g^-1).
struct HTriple {
  Group g, n;
  BrauerChar theta;
  int p = 0;
  FieldPtr field;
  Subfield e;
  Group g_theta;
  std::vector<int> sigma;

  int s() const { return field->degree(); }
  int sigma_at(int x) const {
    int pos = g.position(x);
    require(pos >= 0, "sigma evaluated outside G");
    return sigma[pos];
  }
};

inline HTriple make_htriple(Workspace& ws, const Group& g, const Group& n, const BrauerChar& theta) {
  require(n.is_subgroup_of(g) && is_normal(n, g), "N is not a normal subgroup of G");
  require(theta.group == n, "theta is not a character of N");
  require(ws.index_in_ibr(theta) >= 0, "theta is not an irreducible Brauer character of N");
  const auto& amb = *g.ambient();
  HTriple t{g, n, theta, ws.p(), ws.field(), {}, {}, {}};
  int s = t.s();
  for (int x : g.elements()) {
    bool found = false;
    for (int k = 0; k < s && !found; ++k) found = act(theta, k, x) == theta;
    if (!found) throw PreconditionError("the Galois orbit of theta is not G-stable: witness g = " + std::to_string(x));
  }
  int e = 1;
  while (act(theta, e, 0) != theta) ++e;
  ensure(s % e == 0, "stabilizer of theta in the Frobenius group has the wrong order");
  // the same degree read off the reduced values
  int et = 0;
  for (int d = 1; d <= s && !et; ++d) {
    if (s % d) continue;
    Subfield k(ws.field(), d);
    bool all = true;
    for (size_t c = 0; c < theta.values.size() && all; ++c) all = k.contains(theta.reduced_value(static_cast<int>(c)));
    if (all) et = d;
  }
  ensure(et == e, "F_p[theta] from the Frobenius stabilizer differs from the field of reduced values");
  t.e = Subfield(ws.field(), e);
  t.sigma.resize(g.order());
  for (int i = 0; i < g.order(); ++i) {
    int x = g.elements()[i];
    BrauerChar target = act(theta, 0, amb.inv(x));
    int hit = -1;
    for (int k = 0; k < e; ++k)
      if (act(theta, k, 0) == target) {
        ensure(hit < 0, "sigma_g is not unique");
        hit = k;
      }
    ensure(hit >= 0, "no sigma_g for an element of G");
    t.sigma[i] = hit;
  }
  t.g_theta = char_stabilizer(theta, g);
  ensure(is_normal(t.g_theta, g), "G_theta is not normal in G");
  return t;
}

inline int sigma_of(const HTriple& t, int g) { return t.sigma_at(g); }

// A representation affording theta with entries in E.
inline MatrixRep realize_theta(Workspace& ws, const HTriple& t) {
  MatrixRep x = realize_over(ws.realization(t.theta), t.e, ws.rng());
  for (const auto& m : x.images)
    for (Elem v : m.data()) ensure(t.e.contains(v), "realization has entries outside E");
  ensure(brauer_char_of(x, t.p) == t.theta, "realization over E affords another character");
  return x;
}

inline Matrix random_invertible(const FieldPtr& f, int n, const Subfield& k, Rng& rng) {
  for (;;) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto r = rng() % (k.units() + 1);
        m(i, j) = r == 0 ? 0 : k.exp(static_cast<long long>(r));
      }
    if (is_invertible(m)) return m;
  }
}

// A right transversal of N in S with the identity for the coset N; other
// representatives are multiplied by random elements of N when rng is given.
inline std::vector<int> transversal_of(const Group& s, const Group& n, Rng* rng = nullptr) {
  auto reps = right_transversal(s, n);
  const auto& amb = *s.ambient();
  for (auto& r : reps) {
    if (n.contains(r)) {
      r = 0;
      continue;
    }
    if (rng) r = amb.mul(n.elements()[(*rng)() % n.order()], r);
  }
  return reps;
}

// Which transversal element and which n give x = n * rep.
inline std::pair<int, int> split_coset(const Group& n, const std::vector<int>& reps, int x) {
  const auto& amb = *n.ambient();
  for (size_t i = 0; i < reps.size(); ++i) {
    int y = amb.mul(x, amb.inv(reps[i]));
    if (n.contains(y)) return {static_cast<int>(i), y};
  }
  throw InternalError("element outside the union of the transversal's cosets");
}

// A 2-cocycle on a group S pushed down to q.bar (q.source <= S), after checking
// that it is constant on cosets of q.normal.
inline TwistedCocycle descend_cocycle(const TwistedCocycle& a, const Quotient& q) {
  const Group& src = q.source;
  require(src.is_subgroup_of(a.group), "descent from a group that does not contain the quotient's source");
  int nb = q.bar.order();
  std::vector<int> pre(nb, -1);
  for (int x : src.elements()) {
    int b = q.bar.position(q.project(x));
    if (pre[b] < 0) pre[b] = x;
  }
  TwistedCocycle out = TwistedCocycle::trivial(q.bar, a.E);
  out.twist.resize(nb);
  for (int b = 0; b < nb; ++b) out.twist[b] = a.t_at(a.group.position(pre[b]));
  for (int x : src.elements()) {
    int bx = q.bar.position(q.project(x));
    ensure(out.twist[bx] == a.t_at(a.group.position(x)), "Galois action is not constant on cosets");
    for (int y : src.elements()) {
      int by = q.bar.position(q.project(y));
      Elem v = a(x, y);
      if (x == pre[bx] && y == pre[by]) out.at(bx, by) = v;
      ensure(v == a(pre[bx], pre[by]), "factor set is not constant on cosets");
    }
  }
  return out;
}

// The projective representation of G_theta built coset by coset: P(g_i) the
// canonical intertwiner with X(g_i n g_i^-1) = P(g_i) X(n) P(g_i)^-1, and
// P(n g_i) = X(n) P(g_i).
struct AssocProjRep {
  ProjectiveRep base;
  MatrixRep x;
  Quotient q;
  TwistedCocycle alpha_bar;
};

inline AssocProjRep assoc_projective(const HTriple& t, const MatrixRep& x, std::vector<int> transversal = {}) {
  require(x.group == t.n, "realization is not a representation of N");
  const auto& amb = *t.g.ambient();
  const Group& gt = t.g_theta;
  if (transversal.empty()) transversal = transversal_of(gt, t.n);
  std::vector<Matrix> rep_images;
  for (int r : transversal) {
    int ri = amb.inv(r);
    MatrixRep xg = MatrixRep::from_function(t.n, x.field, x.dim, [&](int y) { return x(amb.conj(y, ri)); });
    auto w = intertwiner(x, xg);
    ensure(w.has_value(), "no intertwiner between X and its conjugate by an element of G_theta");
    rep_images.push_back(*w);
  }
  std::vector<Matrix> imgs;
  for (int y : gt.elements()) {
    auto [i, n0] = split_coset(t.n, transversal, y);
    imgs.push_back(x(n0) * rep_images[i]);
  }
  AssocProjRep out{ProjectiveRep::from_images(gt, x.field, std::move(imgs)), x, quotient(gt, t.n), {}};
  const ProjectiveRep& p = out.base;
  ensure(p(0).is_identity(), "P(1) is not the identity");
  for (int y : t.n.elements()) ensure(p(y) == x(y), "P does not restrict to X on N");
  for (int g : gt.elements())
    for (int y : t.n.elements()) {
      ensure(p(amb.mul(y, g)) == x(y) * p(g), "P(ng) != X(n)P(g)");
      ensure(p(amb.mul(g, y)) == p(g) * x(y), "P(gn) != P(g)X(n)");
    }
  out.alpha_bar = descend_cocycle(p.factor_set(t.e), out.q);
  ensure(out.alpha_bar.is_normalized(), "factor set of P is not normalized");
  return out;
}

// mu_a for a = (t, g) stabilizing theta: P^a(h) = P(g h g^-1)^(p^t) equals
// mu_a(h) W P(h) W^-1 with W intertwining the restrictions to N.
struct MuFunction {
  long long t = 0;
  int g = 0;
  Group domain;
  std::vector<Elem> values;  // by position in domain
  Matrix w;
  Elem operator()(int h) const { return values[domain.position(h)]; }
};

inline MuFunction mu_of(const HTriple& tr, const ProjectiveRep& p, long long t, int g) {
  require(act(tr.theta, t, g) == tr.theta, "the pair does not stabilize theta");
  const auto& amb = *tr.g.ambient();
  const Group& dom = p.group;
  int gi = amb.inv(g);
  auto pa = [&](int h) { return p(amb.conj(h, gi)).frobenius(t); };
  MatrixRep x = MatrixRep::from_function(tr.n, p.field, p.dim, [&](int y) { return p(y); });
  MatrixRep xa = MatrixRep::from_function(tr.n, p.field, p.dim, [&](int y) { return pa(y); });
  auto w = intertwiner(x, xa);
  ensure(w.has_value(), "P^a restricted to N is not similar to P restricted to N");
  Matrix wi = inverse(*w);
  MuFunction mu{t, g, dom, {}, *w};
  for (int h : dom.elements()) {
    auto z = (pa(h) * inverse(*w * p(h) * wi)).scalar_value();
    ensure(z.has_value() && *z != 0, "P^a(h) and W P(h) W^-1 differ by a non-scalar");
    mu.values.push_back(*z);
  }
  ensure(mu(0) == 1, "mu_a(1) != 1");
  for (int h : dom.elements())
    for (int y : tr.n.elements()) require(mu(amb.mul(y, h)) == mu(h), "mu_a is not constant on N-cosets: P is not associated with theta");
  return mu;
}

// The Y-function of an H-triple over the prime field, with iota(x) =
// W^-1 embed(x) W for the entrywise regular embedding of M_m(E).
struct YFunction {
  HTriple triple;
  MatrixRep x;
  FieldTower tower;
  Matrix w, w_inv;
  std::vector<int> transversal;
  std::vector<Matrix> t_mats;  // T_g by position in G
  std::vector<Matrix> values;  // by position in G
  TwistedCocycle alpha;        // on G with the sigma twist

  int m() const { return x.dim; }
  int e() const { return triple.e.degree(); }
  Matrix iota(const Matrix& a) const { return w_inv * tower.embed(a) * w; }
  std::optional<Matrix> iota_inverse(const Matrix& y) const { return tower.unembed(w * y * w_inv); }
  const Matrix& operator()(int g) const {
    int pos = triple.g.position(g);
    require(pos >= 0, "Y evaluated outside G");
    return values[pos];
  }
  // x^g = T_g^-1 x^sigma_g T_g on A = M_m(E).
  Matrix act_a(const Matrix& a, int g) const {
    const Matrix& t = t_mats[triple.g.position(g)];
    return inverse(t) * a.frobenius(triple.sigma_at(g)) * t;
  }
  // F_p-basis u^k E_ij of A, index (i*m + j)*e + k.
  Matrix basis_element(int idx) const {
    int k = idx % e(), ij = idx / e();
    Matrix a(x.field, m(), m());
    a(ij / m(), ij % m()) = tower.basis(k);
    return a;
  }
};

// Checks the three defining clauses of a Y-function on every element and
// reads off alpha from Y(gh)^-1 Y(g) Y(h) = iota(alpha(g,h)).
inline void finish_y(YFunction& y) {
  const HTriple& t = y.triple;
  const auto& amb = *t.g.ambient();
  int dimA = y.m() * y.m() * y.e();
  std::vector<Matrix> basis_iota, inv;
  for (int i = 0; i < dimA; ++i) basis_iota.push_back(y.iota(y.basis_element(i)));
  for (int g : t.g.elements()) {
    const Matrix& yg = y(g);
    inv.push_back(inverse(yg));
    for (int i = 0; i < dimA; ++i)
      ensure(inv.back() * basis_iota[i] * yg == y.iota(y.act_a(y.basis_element(i), g)), "Y(g)^-1 iota(x) Y(g) != iota(x^g)");
  }
  for (int n0 : t.n.elements()) ensure(y(n0) == y.iota(y.x(n0)), "Y(n) != iota(X(n))");
  for (int g : t.g.elements())
    for (int n0 : t.n.elements()) {
      ensure(y(amb.mul(g, n0)) == y(g) * y(n0), "Y(gn) != Y(g)Y(n)");
      ensure(y(amb.mul(n0, g)) == y(n0) * y(g), "Y(ng) != Y(n)Y(g)");
    }
  y.alpha = TwistedCocycle::trivial(t.g, t.e, t.sigma);
  int ng = t.g.order();
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b) {
      int ga = t.g.elements()[a], gb = t.g.elements()[b];
      int ab = t.g.position(amb.mul(ga, gb));
      auto z = y.iota_inverse(inv[ab] * y.values[a] * y.values[b]);
      ensure(z.has_value(), "Y(gh)^-1 Y(g) Y(h) is not in iota(A)");
      auto sc = z->scalar_value();
      ensure(sc.has_value() && *sc != 0 && t.e.contains(*sc), "Y(gh)^-1 Y(g) Y(h) is not in iota(E^x)");
      y.alpha.at(a, b) = *sc;
    }
  ensure(y.alpha.is_cocycle(), "alpha from the Y-function violates the cocycle identity");
  ensure(y.alpha.is_normalized(), "alpha from the Y-function is not normalized");
}

struct YOptions {
  std::optional<MatrixRep> x;
  std::optional<Matrix> w;
  std::vector<int> transversal;
};

inline YFunction build_y(Workspace& ws, const HTriple& t, YOptions opt = {}) {
  const auto& amb = *t.g.ambient();
  const FieldPtr& f = ws.field();
  MatrixRep x = opt.x ? *opt.x : realize_theta(ws, t);
  require(x.group == t.n, "realization is not a representation of N");
  YFunction y{t, x, FieldTower(f, t.e.degree(), 1), {}, {}, {}, {}, {}, {}};
  int big = x.dim * t.e.degree();
  y.w = opt.w ? *opt.w : Matrix::identity(f, big);
  require(y.w.rows() == big && is_invertible(y.w), "basis change for iota has the wrong size or is singular");
  y.w_inv = inverse(y.w);
  y.transversal = opt.transversal.empty() ? transversal_of(t.g, t.n) : opt.transversal;
  for (int g : t.g.elements()) {
    int gi = amb.inv(g);
    int sg = t.sigma_at(g);
    MatrixRep xg = MatrixRep::from_function(t.n, f, x.dim, [&](int n0) { return x(amb.conj(n0, gi)).frobenius(sg); });
    auto tg = intertwiner(x, xg);
    ensure(tg.has_value(), "X^(sigma_g g) is not similar to X");
    y.t_mats.push_back(*tg);
  }
  // generators of A as an F_p-algebra: X(n) for generators n, and z*1
  std::vector<int> ngens = t.n.generators();
  Elem z = t.e.primitive();
  std::vector<Matrix> rep_vals;
  for (int r : y.transversal) {
    if (r == 0) {
      rep_vals.push_back(Matrix::identity(f, big));
      continue;
    }
    std::vector<Matrix> as, bs;
    for (int n0 : ngens) {
      as.push_back(y.iota(x(n0)));
      bs.push_back(y.iota(x(amb.conj(n0, r))));
    }
    as.push_back(y.iota(Matrix::scalar(f, x.dim, z)));
    bs.push_back(y.iota(Matrix::scalar(f, x.dim, f->frobenius(z, t.sigma_at(r)))));
    auto sols = hom_space(as, bs);
    ensure(static_cast<int>(sols.size()) == t.e.degree(), "solution space for Y(g_i) does not have dimension [E:F_p]");
    Matrix sol = normalize_first_entry(sols[0]);
    ensure(is_invertible(sol), "no invertible solution for Y(g_i)");
    for (Elem v : sol.data()) ensure(f->in_prime_field(v), "Y(g_i) has entries outside F_p");
    rep_vals.push_back(sol);
  }
  for (int g : t.g.elements()) {
    auto [i, n0] = split_coset(t.n, y.transversal, g);
    y.values.push_back(y.iota(x(n0)) * rep_vals[i]);
  }
  finish_y(y);
  return y;
}

// Y'(g) = Y(g) iota(c(g)) for c constant on N-cosets with c(1) = 1.
inline YFunction adjust_y(const YFunction& y, const std::function<Elem(int)>& c) {
  YFunction out = y;
  const FieldPtr& f = y.x.field;
  for (int i = 0; i < y.triple.g.order(); ++i) {
    int g = y.triple.g.elements()[i];
    out.values[i] = y.values[i] * y.iota(Matrix::scalar(f, y.m(), c(g)));
  }
  finish_y(out);
  return out;
}

struct CocycleClass {
  Quotient q;
  TwistedCocycle representative;
};

inline CocycleClass cocycle_class(const YFunction& y) {
  Quotient q = quotient(y.triple.g, y.triple.n);
  TwistedCocycle a = descend_cocycle(y.alpha, q);
  ensure(a.is_cocycle() && a.is_normalized(), "descended factor set is not a normalized cocycle");
  return {q, a};
}

// P(h) = iota^-1(Y(h)) on G_theta.
inline ProjectiveRep projective_from_y(const YFunction& y) {
  std::vector<Matrix> imgs;
  for (int h : y.triple.g_theta.elements()) {
    auto m = y.iota_inverse(y(h));
    ensure(m.has_value(), "Y(h) for h in G_theta is not in iota(A)");
    imgs.push_back(*m);
  }
  auto p = ProjectiveRep::from_images(y.triple.g_theta, y.x.field, std::move(imgs));
  for (int a : p.group.elements())
    for (int b : p.group.elements()) ensure(p.factor_at(a, b) == y.alpha(a, b), "factor set of P differs from alpha");
  return p;
}

// (alpha(g, h g^-1)^-1 alpha(h, g^-1)^-1 alpha(g, g^-1))^(p^t)
inline Elem mu_closed_form(const TwistedCocycle& alpha, long long t, int g, int h) {
  const auto& amb = *alpha.group.ambient();
  const Field& F = *alpha.E.field();
  int gi = amb.inv(g);
  Elem v = F.div(alpha(g, gi), F.mul(alpha(g, amb.mul(h, gi)), alpha(h, gi)));
  return F.frobenius(v, t);
}

struct Clause {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct OrderReport {
  std::vector<Clause> clauses;  // the four clauses of the order relation
  int pairs_checked = 0;
  bool pass() const {
    for (const auto& c : clauses)
      if (!c.pass) return false;
    return true;
  }
};

// The pair stabilizer (H x <Frobenius>)_chi as (t, h) pairs, t mod [F:F_p].
inline std::vector<std::pair<int, int>> pair_stabilizer(const BrauerChar& chi, const Group& h) {
  std::vector<std::pair<int, int>> out;
  for (int t = 0; t < chi.field->degree(); ++t)
    for (int x : h.elements())
      if (act(chi, t, x) == chi) out.push_back({t, x});
  return out;
}

inline OrderReport order_check(const HTriple& t1, const HTriple& t2, const ProjectiveRep& p, const ProjectiveRep& pp) {
  OrderReport r;
  const Group &g = t1.g, &n = t1.n, &h = t2.g, &c = t2.n;
  Clause c1{"G = NH and N meet H = C", true, ""};
  if (!h.is_subgroup_of(g)) {
    c1.pass = false;
    c1.witness = "H is not contained in G";
  } else if (intersection(n, h) != c) {
    c1.pass = false;
    c1.witness = "N meet H = " + intersection(n, h).describe() + " but C = " + c.describe();
  } else if (static_cast<long long>(n.order()) * h.order() != static_cast<long long>(g.order()) * c.order()) {
    c1.pass = false;
    c1.witness = "|N||H| != |G||C|";
  }
  r.clauses.push_back(c1);

  Clause c2{"pair stabilizers of theta and phi agree on H", true, ""};
  for (int t = 0; t < t1.s() && c2.pass; ++t)
    for (int x : h.elements()) {
      bool a = act(t1.theta, t, x) == t1.theta, b = act(t2.theta, t, x) == t2.theta;
      if (a != b) {
        c2.pass = false;
        c2.witness = "(t=" + std::to_string(t) + ", h=" + std::to_string(x) + ")";
        break;
      }
    }
  r.clauses.push_back(c2);

  Group ht = char_stabilizer(t1.theta, h);
  Clause c3{"factor set of P' is the restriction of that of P", true, ""};
  if (pp.group != ht || !ht.is_subgroup_of(p.group)) {
    c3.pass = false;
    c3.witness = "P' is not defined on H_theta";
  } else {
    for (int a : ht.elements()) {
      for (int b : ht.elements())
        if (p.factor_at(a, b) != pp.factor_at(a, b)) {
          c3.pass = false;
          c3.witness = "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
          break;
        }
      if (!c3.pass) break;
    }
  }
  r.clauses.push_back(c3);

  Clause c4{"mu_a = mu'_a on H_theta for every a in the pair stabilizer", true, ""};
  if (c2.pass && pp.group == ht) {
    for (auto [t, x] : pair_stabilizer(t1.theta, h)) {
      std::optional<MuFunction> mu, mu2;
      try {
        mu = mu_of(t1, p, t, x);
        mu2 = mu_of(t2, pp, t, x);
      } catch (const PreconditionError& err) {
        c4.pass = false;
        c4.witness = "a = (" + std::to_string(t) + ", " + std::to_string(x) + "): " + err.what();
        break;
      }
      ++r.pairs_checked;
      for (int y : ht.elements())
        if ((*mu)(y) != (*mu2)(y)) {
          c4.pass = false;
          c4.witness = "a = (" + std::to_string(t) + ", " + std::to_string(x) + "), h = " + std::to_string(y);
          break;
        }
      if (!c4.pass) break;
    }
  } else {
    c4.pass = false;
    c4.witness = "not evaluated: earlier clauses fail";
  }
  r.clauses.push_back(c4);
  return r;
}

// P' on H_theta read off from P through the Brauer quotient of the module:
// D acts on V = F^m by the unique linear lift R of P restricted to D, and each
// P(h), h in H_theta, normalizes R(D), so it acts on V^D / sum_{Q < D} Tr_Q^D(V^Q).
inline ProjectiveRep brauer_quotient_pair(const HTriple& t1, const HTriple& t2, const ProjectiveRep& p, const Group& d) {
  require(d.is_subgroup_of(p.group), "D must lie in G_theta");
  const FieldPtr& f = p.field;
  const Field& F = *f;
  const auto& amb = *d.ambient();
  int m = p.dim;
  std::vector<Matrix> r(d.order());
  for (int x : d.elements()) {
    int q = 1;
    while (amb.pow(x, q) != 0) ++q;
    Matrix pq = Matrix::identity(f, m);
    for (int k = 0; k < q; ++k) pq = pq * p(x);
    auto sv = pq.scalar_value();
    ensure(sv && *sv != 0, "P(d)^|d| is not scalar");
    Elem root = F.pow(*sv, inv_mod(q, F.units()));
    r[d.position(x)] = p(x).scaled(F.inv(root));
  }
  for (int a : d.elements())
    for (int b : d.elements()) ensure(r[d.position(a)] * r[d.position(b)] == r[d.position(amb.mul(a, b))], "lift of P to D is not linear");
  auto fixed = [&](const Group& q) {
    if (q.is_trivial()) return Matrix::identity(f, m);
    Matrix st(f, m, m * static_cast<int>(q.generators().size()));
    int k = 0;
    for (int x : q.generators()) st.set_block(0, m * k++, r[d.position(x)] - Matrix::identity(f, m));
    return left_nullspace(st);
  };
  Matrix vd = fixed(d);
  std::vector<Vec> tr;
  for (const auto& q : all_subgroups(d)) {
    if (q == d) continue;
    Matrix vq = fixed(q);
    auto reps = right_transversal(d, q);
    for (int i = 0; i < vq.rows(); ++i) {
      Vec v(m, 0), row(vq.row(i));
      for (int x : reps) {
        Vec w = vec_mat(row, r[d.position(x)]);
        for (int j = 0; j < m; ++j) v[j] = F.add(v[j], w[j]);
      }
      tr.push_back(v);
    }
  }
  std::vector<Vec> basis;
  if (!tr.empty()) {
    Matrix ts = row_space(Matrix::from_rows(f, tr, m));
    for (int i = 0; i < ts.rows(); ++i) basis.push_back(ts.row(i));
  }
  int tdim = static_cast<int>(basis.size());
  for (int i = 0; i < vd.rows(); ++i) {
    basis.push_back(vd.row(i));
    if (rank(Matrix::from_rows(f, basis, m)) < static_cast<int>(basis.size())) basis.pop_back();
  }
  int l = static_cast<int>(basis.size()) - tdim;
  require(l == t2.theta.degree(), "Brauer quotient of the module has dimension " + std::to_string(l) + ", not phi(1) = " +
                                      std::to_string(t2.theta.degree()));
  Coordinates cf(Matrix::from_rows(f, basis, m));
  Group ht = char_stabilizer(t1.theta, t2.g);
  std::vector<Matrix> imgs;
  for (int h : ht.elements()) {
    Matrix a(f, l, l);
    for (int i = 0; i < l; ++i) {
      auto c = cf.coords(vec_mat(basis[tdim + i], p(h)));
      ensure(c.has_value(), "P(h) does not preserve V^D");
      for (int j = 0; j < l; ++j) a(i, j) = (*c)[tdim + j];
    }
    imgs.push_back(a);
  }
  auto out = ProjectiveRep::from_images(ht, f, std::move(imgs));
  for (int a : ht.elements())
    for (int b : ht.elements()) ensure(out.factor_at(a, b) == p.factor_at(a, b), "Brauer quotient pair changed the factor set");
  ensure(brauer_char_of(restrict_rep(MatrixRep{ht, f, l, out.images}, t2.n), t1.theta.p) == t2.theta,
         "Brauer quotient of P restricted to C does not afford phi");
  return out;
}

struct Theorem38Result {
  bool ok = false;
  std::string failure;
  YFunction y1, y2;      // y2 adjusted so that its factor set is alpha on H x H
  Quotient hbar;         // H / C, identified with G / N
  TwistedCocycle alpha_bar, beta_bar;
  std::vector<Elem> gamma;  // beta_bar = alpha_bar * delta(gamma)
  ProjectiveRep p, pp;
  OrderReport order;
  bool closed_form_ok = false;
  int closed_form_checks = 0;
};

inline Theorem38Result theorem38_pipeline(Workspace& ws, const HTriple& t1, const HTriple& t2, YOptions o1 = {},
                                          YOptions o2 = {}) {
  const Group &g = t1.g, &n = t1.n, &h = t2.g, &c = t2.n;
  require(h.is_subgroup_of(g) && intersection(n, h) == c &&
              static_cast<long long>(n.order()) * h.order() == static_cast<long long>(g.order()) * c.order(),
          "theorem hypotheses fail: need G = NH and N meet H = C");
  for (int t = 0; t < t1.s(); ++t)
    for (int x : h.elements())
      require((act(t1.theta, t, x) == t1.theta) == (act(t2.theta, t, x) == t2.theta),
              "theorem hypotheses fail: pair stabilizers of theta and phi differ on H");
  ensure(t1.e.degree() == t2.e.degree(), "F_p[theta] != F_p[phi]");
  for (int x : h.elements()) ensure(t1.sigma_at(x) == t2.sigma_at(x), "the two triples induce different actions on E");

  Theorem38Result r;
  r.y1 = build_y(ws, t1, std::move(o1));
  r.y2 = build_y(ws, t2, std::move(o2));
  r.hbar = quotient(h, c);
  r.alpha_bar = descend_cocycle(r.y1.alpha, r.hbar);
  r.beta_bar = descend_cocycle(r.y2.alpha, r.hbar);
  auto gamma = cohomologous(r.alpha_bar, r.beta_bar);
  if (!gamma) {
    r.failure = "the cohomology classes of the two triples differ";
    return r;
  }
  r.gamma = *gamma;
  const Field& F = *ws.field();
  const Quotient& q = r.hbar;
  const auto& gam = r.gamma;
  r.y2 = adjust_y(r.y2, [&](int x) { return F.inv(gam[q.bar.position(q.project(x))]); });
  for (int a : h.elements())
    for (int b : h.elements()) ensure(r.y2.alpha(a, b) == r.y1.alpha(a, b), "adjusted factor set of (H,C,phi) is not alpha on H");
  r.p = projective_from_y(r.y1);
  r.pp = projective_from_y(r.y2);
  r.order = order_check(t1, t2, r.p, r.pp);
  r.closed_form_ok = true;
  for (auto [t, x] : pair_stabilizer(t1.theta, h)) {
    MuFunction mu = mu_of(t1, r.p, t, x), mu2 = mu_of(t2, r.pp, t, x);
    for (int y : r.p.group.elements()) {
      ++r.closed_form_checks;
      if (mu(y) != mu_closed_form(r.y1.alpha, t, x, y)) r.closed_form_ok = false;
    }
    for (int y : r.pp.group.elements()) {
      ++r.closed_form_checks;
      if (mu2(y) != mu_closed_form(r.y2.alpha, t, x, y)) r.closed_form_ok = false;
    }
  }
  r.ok = r.order.pass() && r.closed_form_ok;
  if (!r.ok) r.failure = r.closed_form_ok ? "order relation check failed" : "mu differs from the closed form";
  return r;
}

// The algebra M_m(E) over F_p with the semilinear G-action of the triple.
inline GAlgebra associated_algebra(const YFunction& y) {
  const FieldPtr& f = y.x.field;
  int m = y.m(), e = y.e();
  int dim = m * m * e;
  auto tower = std::make_shared<FieldTower>(y.tower);
  auto to_m = [tower, f, m, e](const Vec& v) {
    Matrix a(f, m, m);
    for (int ij = 0; ij < m * m; ++ij) a(ij / m, ij % m) = tower->from_coords(Vec(v.begin() + ij * e, v.begin() + (ij + 1) * e));
    return a;
  };
  auto from_m = [tower, m, e, dim](const Matrix& a) {
    Vec v(dim, 0);
    for (int ij = 0; ij < m * m; ++ij) {
      Vec c = tower->coords(a(ij / m, ij % m));
      for (int k = 0; k < e; ++k) v[ij * e + k] = c[k];
    }
    return v;
  };
  GAlgebra a;
  a.field = f;
  a.dim = dim;
  a.product = [to_m, from_m](const Vec& u, const Vec& v) { return from_m(to_m(u) * to_m(v)); };
  a.one = from_m(Matrix::identity(f, m));
  a.group = y.triple.g;
  for (int g : a.group.elements()) {
    Matrix act(f, dim, dim);
    for (int i = 0; i < dim; ++i) act.set_row(i, from_m(y.act_a(y.basis_element(i), g)));
    a.action.push_back(act);
  }
  a.scalars = y.triple.e;
  a.escale = [to_m, from_m](Elem z, const Vec& v) { return from_m(to_m(v).scaled(z)); };
  a.twist = y.triple.sigma;
  return a;
}

}  // namespace dgnwb
