#pragma once

#include <optional>
#include <vector>

#include "character.hpp"
#include "galgebra.hpp"

namespace dgnwb {

struct Block {
  Group group;
  int p = 0;
  FieldPtr field;
  Vec idempotent;                   // group-algebra coordinates by position
  std::vector<Elem> class_coefficients;  // constant value on each class
  std::vector<BrauerChar> members;
  std::vector<int> member_indices;  // into the IBr list of the group
};

// Sum of the matrices of a class: the central character times the identity.
inline Elem central_character(const MatrixRep& r, const std::vector<int>& cls) {
  Matrix s(r.field, r.dim, r.dim);
  for (int x : cls) s = s + r(x);
  auto z = s.scalar_value();
  ensure(z.has_value(), "class sum does not act as a scalar on an irreducible");
  return *z;
}

inline Vec ga_power(const GAlgebra& a, Vec x, long long k) {
  Vec r = a.one;
  while (k > 0) {
    if (k & 1) r = a.mul(r, x);
    k >>= 1;
    if (k) x = a.mul(x, x);
  }
  return r;
}

// Action of a group-algebra element on a representation.
inline Matrix ga_image(const MatrixRep& r, const Vec& x) {
  Matrix m(r.field, r.dim, r.dim);
  for (int i = 0; i < r.group.order(); ++i)
    if (x[i]) m = m + r(r.group.elements()[i]).scaled(x[i]);
  return m;
}

// Central primitive idempotents of F[S]: irreducibles grouped by central
// character, z solved from the class-sum system and raised to p^k >= #classes.
inline std::vector<Block> block_idempotents(Workspace& ws, const Group& s) {
  const auto& irr = ws.ibr(s);
  const auto& cls = s.classes();
  int r = static_cast<int>(cls.size());
  const FieldPtr& f = ws.field();
  std::vector<std::vector<Elem>> omega;
  for (const auto& e : irr) {
    std::vector<Elem> w;
    for (const auto& c : cls) w.push_back(central_character(e.rep, c));
    omega.push_back(std::move(w));
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> heads;
  for (size_t i = 0; i < irr.size(); ++i) {
    bool placed = false;
    for (size_t b = 0; b < heads.size(); ++b)
      if (omega[heads[b]] == omega[i]) {
        groups[b].push_back(static_cast<int>(i));
        placed = true;
        break;
      }
    if (!placed) {
      heads.push_back(static_cast<int>(i));
      groups.push_back({static_cast<int>(i)});
    }
  }
  int nb = static_cast<int>(heads.size());
  Matrix sys(f, nb, r);
  for (int b = 0; b < nb; ++b)
    for (int c = 0; c < r; ++c) sys(b, c) = omega[heads[b]][c];
  GAlgebra a = group_algebra(f, s, s);
  long long pk = 1;
  while (pk < r) pk *= ws.p();
  std::vector<Block> out;
  for (int b = 0; b < nb; ++b) {
    Vec rhs(nb, 0);
    rhs[b] = 1;
    auto zc = solve(sys, rhs);
    ensure(zc.has_value(), "central characters are not independent");
    Vec z(s.order(), 0);
    for (int c = 0; c < r; ++c)
      for (int x : cls[c]) z[s.position(x)] = (*zc)[c];
    Block blk{s, ws.p(), f, ga_power(a, z, pk), {}, {}, groups[b]};
    for (const auto& c : cls) blk.class_coefficients.push_back(blk.idempotent[s.position(c[0])]);
    for (int i : groups[b]) blk.members.push_back(irr[i].chi);
    out.push_back(std::move(blk));
  }
  // verification
  Vec total = a.zero();
  for (int b = 0; b < nb; ++b) {
    const Vec& e = out[b].idempotent;
    ensure(a.mul(e, e) == e, "block idempotent is not idempotent");
    for (int g : s.generators()) ensure(a.act(e, g) == e, "block idempotent is not central");
    for (int b2 = b + 1; b2 < nb; ++b2) ensure(vec_is_zero(a.mul(e, out[b2].idempotent)), "block idempotents are not orthogonal");
    for (size_t i = 0; i < irr.size(); ++i) {
      bool member = std::find(groups[b].begin(), groups[b].end(), static_cast<int>(i)) != groups[b].end();
      Matrix m = ga_image(irr[i].rep, e);
      ensure(member ? m.is_identity() : m.is_zero(), "block idempotent acts wrongly on an irreducible");
    }
    vec_axpy(*f, total, 1, e);
  }
  ensure(total == a.one, "block idempotents do not sum to 1");
  return out;
}

inline Block block_of(const std::vector<Block>& blocks, const BrauerChar& chi) {
  for (const auto& b : blocks)
    if (std::find(b.members.begin(), b.members.end(), chi) != b.members.end()) return b;
  throw PreconditionError("character has no block");
}

// Group-algebra element of N viewed in F[M] (N <= M).
inline Vec embed_group_algebra(const Vec& x, const Group& n, const Group& m) {
  Vec y(m.order(), 0);
  for (int i = 0; i < n.order(); ++i) y[m.position(n.elements()[i])] = x[i];
  return y;
}

// The block of M whose idempotent does not annihilate the sum of the
// M-conjugates of e; exactly one must exist.
inline Block covering_block(Workspace& ws, const Group& m, const Block& bn) {
  require(is_normal(bn.group, m), "covering block needs N normal in M");
  GAlgebra a = group_algebra(ws.field(), m, m);
  Vec e = embed_group_algebra(bn.idempotent, bn.group, m);
  std::set<Vec> orbit{e};
  std::vector<Vec> todo{e};
  while (!todo.empty()) {
    Vec x = todo.back();
    todo.pop_back();
    for (int g : m.generators()) {
      Vec y = a.act(x, g);
      if (orbit.insert(y).second) todo.push_back(y);
    }
  }
  Vec f = a.zero();
  for (const auto& x : orbit) vec_axpy(*ws.field(), f, 1, x);
  std::optional<Block> found;
  for (auto& b : block_idempotents(ws, m)) {
    if (vec_is_zero(a.mul(b.idempotent, f))) continue;
    if (found) throw PreconditionError("more than one block of M covers the block of N");
    found = b;
  }
  ensure(found.has_value(), "no block of M covers the block of N");
  return *found;
}

// Least complement D of N in M with e_B in Tr_D^M(F[M]^D).
inline Group defect_group(Workspace& ws, const Group& m, const Group& n, const Block& b) {
  require(b.group == m, "block is not a block of M");
  require(is_normal(n, m) && is_p_group(quotient(m, n).bar, ws.p()), "defect group needs M/N a normal p-quotient");
  GAlgebra a = group_algebra(ws.field(), m, m);
  for (const auto& d : complements(m, n))
    if (in_span(trace_map(a, d, m).image, b.idempotent)) return d;
  throw PreconditionError("no complement of N in M satisfies the relative trace condition");
}

// Stabilizer of a character in a group acting by conjugation (Galois part t).
inline Group char_stabilizer(const BrauerChar& chi, const Group& by, long long t = 0) {
  std::vector<int> st;
  for (int g : by.elements())
    if (act(chi, t, g) == chi) st.push_back(g);
  return Group::from_elements(by.ambient(), st);
}

// Unique xi in IBr(S_theta | theta) with xi^S = chi.
inline BrauerChar clifford_correspondent(Workspace& ws, const BrauerChar& chi, const BrauerChar& theta) {
  Group st = char_stabilizer(theta, chi.group);
  std::optional<BrauerChar> found;
  for (const auto& xi : ws.ibr_over(st, {theta}))
    if (induce_char(xi, chi.group) == chi) {
      ensure(!found, "more than one Clifford correspondent");
      found = xi;
    }
  ensure(found.has_value(), "no Clifford correspondent");
  return *found;
}

struct DgnResult {
  BrauerChar phi;
  Group c;                        // C_N(D)
  BrauerChar via_block;           // path (i)
  BrauerChar via_quotient;        // path (ii)
  std::vector<long long> multiplicities;  // (phi'^N, theta) for each defect-zero phi' of C, IBr order
  std::vector<int> defect_zero;   // indices into IBr(C)
  int unique_index = -1;          // the one with multiplicity prime to p
  bool dade_certified = false;
  int quotient_degree = 0;
};

// The DGN correspondent of theta, computed from br_D(e_theta) in the group
// algebra and from br_D(X(c)) in the image matrix algebra, asserted equal;
// also scans IBr(C) for the multiplicity characterization.
inline DgnResult dgn_correspondent(Workspace& ws, const Group& n, const Group& m, const BrauerChar& theta, const Group& d) {
  require(theta.group == n, "theta is not a character of N");
  require(is_defect_zero(theta), "theta does not have defect zero");
  require(is_normal(n, m) && d.is_subgroup_of(m), "DGN setup needs N normal in M and D <= M");
  require(char_stabilizer(theta, m) == m, "theta is not M-invariant");
  const auto& amb = *n.ambient();
  const FieldPtr& f = ws.field();
  int p = ws.p();
  DgnResult res{theta, centralizer(n, d), theta, theta, {}, {}, -1, false, 0};
  const Group& c = res.c;

  // (i) group algebra
  auto bn = block_idempotents(ws, n);
  const Block& bt = block_of(bn, theta);
  ensure(bt.members.size() == 1, "defect-zero block with more than one member");
  Vec ebar(c.order(), 0);
  for (int i = 0; i < c.order(); ++i) ebar[i] = bt.idempotent[n.position(c.elements()[i])];
  if (vec_is_zero(ebar)) throw PreconditionError("br_D(e_theta) = 0");
  std::optional<BrauerChar> phi1;
  for (const auto& b : block_idempotents(ws, c))
    if (b.idempotent == ebar) {
      for (const auto& chi : b.members)
        if (is_defect_zero(chi)) {
          ensure(!phi1, "block of C with two defect-zero members");
          phi1 = chi;
        }
    }
  ensure(phi1.has_value(), "br_D(e_theta) is not a block idempotent of C with a defect-zero member");
  res.via_block = *phi1;

  // (ii) image matrix algebra with x^d = T_d^-1 x T_d
  const MatrixRep& x = ws.realization(theta);
  int dim = x.dim;
  std::vector<Matrix> tmat;
  for (int g : d.elements()) {
    int gi = amb.inv(g);
    MatrixRep xg = MatrixRep::from_function(n, f, dim, [&](int y) { return x(amb.conj(y, gi)); });
    auto t = intertwiner(x, xg);
    ensure(t.has_value(), "theta is not D-invariant as a representation");
    tmat.push_back(*t);
  }
  GAlgebra a = matrix_algebra(f, dim, d, [&](int g) { return tmat[d.position(g)]; });
  ensure(a.action_is_homomorphism(), "conjugation by T_d is not a D-action");
  std::vector<Vec> cand;
  for (int y : n.elements()) cand.push_back(x(y).flatten());
  auto dade = dade_structure(a, d, cand);
  res.dade_certified = dade.has_value();
  if (dade) {
    for (const auto& orb : dade->orbits)
      if (orb.size() == 1) {
        Vec v = dade->basis.row(orb[0]);
        bool from_c = false;
        for (int y : c.elements()) from_c = from_c || x(y).flatten() == v;
        ensure(from_c, "fixed element of the stable basis not coming from C");
      }
  }
  auto q = brauer_quotient(a, d);
  auto mf = matrix_form(q, ws.rng());
  ensure(mf.has_value() && mf->l > 0, "Brauer quotient of the image algebra is not a nonzero matrix algebra");
  res.quotient_degree = mf->l;
  MatrixRep xc = MatrixRep::from_function(c, f, mf->l, [&](int y) { return mf->to_matrix(q.br(x(y).flatten()), f); });
  ensure(xc.is_homomorphism(), "c -> br_D(X(c)) is not a representation");
  res.via_quotient = brauer_char_of(xc, p);
  ensure(res.via_quotient == res.via_block, "the two DGN computations disagree");
  res.phi = res.via_block;

  // multiplicity characterization over defect-zero members of IBr(C)
  auto irr_c = ws.ibr_chars(c);
  int ti = ws.index_in_ibr(theta);
  for (size_t i = 0; i < irr_c.size(); ++i) {
    if (!is_defect_zero(irr_c[i])) continue;
    long long mult = ws.decompose_ibr(induce_char(irr_c[i], n))[ti];
    res.defect_zero.push_back(static_cast<int>(i));
    res.multiplicities.push_back(mult);
    if (mod_norm(mult, p) != 0) {
      ensure(res.unique_index < 0, "more than one defect-zero character of C with multiplicity prime to p");
      res.unique_index = static_cast<int>(i);
    }
  }
  ensure(res.unique_index >= 0 && irr_c[res.unique_index] == res.phi, "multiplicity characterization does not single out phi");
  return res;
}

}  // namespace dgnwb
