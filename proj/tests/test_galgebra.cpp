#include <gtest/gtest.h>

#include <random>

#include "dgnwb/fixtures.hpp"
#include "dgnwb/galgebra.hpp"

using namespace dgnwb;
using namespace dgnwb::fixtures;

namespace {

Matrix perm_matrix(const FieldPtr& f, const Perm& p) {
  Matrix m(f, static_cast<int>(p.size()), static_cast<int>(p.size()));
  for (size_t i = 0; i < p.size(); ++i) m(static_cast<int>(i), p[i]) = 1;
  return m;
}

// M_{|D|+1}(F): endomorphisms of the regular permutation module of D plus a
// trivial line, under conjugation.
GAlgebra perm_plus_trivial(const Group& d, const FieldPtr& f) {
  MatrixRep reg = regular_rep(d, f);
  int n = d.order() + 1;
  return matrix_algebra(f, n, d, [&](int x) {
    Matrix c(f, n, n);
    c.set_block(0, 0, reg(x));
    c(n - 1, n - 1) = 1;
    return c;
  });
}

Vec random_vec(const GAlgebra& a, Rng& rng) {
  Vec v(a.dim);
  for (auto& x : v) x = static_cast<Elem>(rng() % a.field->size());
  return v;
}

Vec random_in(const Matrix& basis, Rng& rng) {
  Vec c(basis.rows());
  for (auto& x : c) x = static_cast<Elem>(rng() % basis.field()->size());
  return vec_mat(c, basis);
}

// Orbit sums of N under conjugation by D, in group-algebra coordinates.
std::vector<std::pair<Vec, int>> orbit_sums(const Group& n, const Group& d) {
  const auto& amb = *n.ambient();
  std::vector<char> seen(n.order(), 0);
  std::vector<std::pair<Vec, int>> out;
  for (int i = 0; i < n.order(); ++i) {
    if (seen[i]) continue;
    Vec v(n.order(), 0);
    int size = 0;
    for (int g : d.elements()) {
      int j = n.position(amb.conj(n.elements()[i], g));
      if (!seen[j]) {
        seen[j] = 1;
        v[j] = 1;
        ++size;
      }
    }
    out.push_back({v, size});
  }
  return out;
}

}  // namespace

TEST(GAlgebra, ConjugationActionsAreAutomorphisms) {
  auto amb = sl23().build();
  Group g = Group::whole(amb);
  auto f = Field::get(3, 2);
  GAlgebra ga = group_algebra(f, subgroup(amb, q8_in_sl23().gens), g);
  EXPECT_TRUE(ga.action_is_multiplicative());
  EXPECT_TRUE(ga.action_is_homomorphism());
  Rng rng(1);
  auto cs = split_into_irreducibles(regular_rep(g, f), rng);
  for (const auto& c : cs) {
    GAlgebra e = endomorphism_algebra(c.rep);
    EXPECT_TRUE(e.action_is_multiplicative());
    EXPECT_TRUE(e.action_is_homomorphism());
  }
}

TEST(GAlgebra, FixedPointsOfTrivialSubgroupIsEverything) {
  auto amb = s3().build();
  GAlgebra a = group_algebra(Field::get(2, 1), Group::whole(amb), Group::whole(amb));
  EXPECT_EQ(fixed_points(a, Group::trivial(amb)).rows(), a.dim);
}

TEST(GAlgebra, SchurFixedPointsAreScalars) {
  auto amb = a4().build();
  Group g = Group::whole(amb);
  auto f = Field::get(2, 2);
  Rng rng(2);
  for (const auto& c : split_into_irreducibles(regular_rep(g, f), rng)) {
    Matrix fx = fixed_points(endomorphism_algebra(c.rep), g);
    ASSERT_EQ(fx.rows(), 1);
    EXPECT_TRUE(in_span(fx, Matrix::identity(f, c.rep.dim).flatten()));
  }
}

TEST(GAlgebra, GroupAlgebraFixedPointsAreOrbitSums) {
  auto amb = gl23().build();
  Group g = Group::whole(amb);
  Group n = subgroup(amb, q8_in_sl23().gens);
  auto f = Field::get(3, 1);
  GAlgebra a = group_algebra(f, n, g);
  for (const auto& d : p_subgroups(g, 3)) {
    auto sums = orbit_sums(n, d);
    Matrix fx = fixed_points(a, d);
    EXPECT_EQ(fx.rows(), static_cast<int>(sums.size()));
    for (const auto& s : sums) EXPECT_TRUE(in_span(fx, s.first));
  }
}

TEST(GAlgebra, TraceFromTrivialIsSpanOfFreeOrbitSums) {
  auto amb = gl23().build();
  Group g = Group::whole(amb);
  Group n = subgroup(amb, q8_in_sl23().gens);
  auto f = Field::get(2, 1);
  GAlgebra a = group_algebra(f, n, g);
  for (const auto& d : p_subgroups(g, 2)) {
    std::vector<Vec> free;
    for (const auto& s : orbit_sums(n, d))
      if (s.second == d.order()) free.push_back(s.first);
    auto tr = trace_map(a, Group::trivial(amb), d);
    Matrix expect = free.empty() ? Matrix(f, 0, a.dim) : row_space(Matrix::from_rows(f, free, a.dim));
    EXPECT_EQ(tr.image, expect) << d.describe();
  }
}

TEST(GAlgebra, TraceIdentitiesOnRandomElements) {
  auto amb = sl23().build();
  Group s = Group::whole(amb);
  auto f = Field::get(3, 2);
  Rng rng(3);
  auto cs = split_into_irreducibles(regular_rep(s, f), rng);
  Group q8 = subgroup(amb, q8_in_sl23().gens);
  Group c2 = center(s);
  for (const auto& c : cs) {
    GAlgebra a = endomorphism_algebra(c.rep);
    // T = S is the identity on A^S
    Matrix fs = fixed_points(a, s);
    for (int i = 0; i < fs.rows(); ++i) EXPECT_EQ(relative_trace(a, s, s, fs.row(i)), fs.row(i));
    Matrix fu = fixed_points(a, c2);
    for (int trial = 0; trial < 10; ++trial) {
      Vec x = random_in(fu, rng), y = random_in(fu, rng);
      // linearity
      EXPECT_EQ(relative_trace(a, c2, s, a.add(x, y)), a.add(relative_trace(a, c2, s, x), relative_trace(a, c2, s, y)));
      // transitivity through Q8
      EXPECT_EQ(relative_trace(a, c2, s, x), relative_trace(a, q8, s, relative_trace(a, c2, q8, x)));
      // projection formula
      Vec z = random_in(fs, rng);
      EXPECT_EQ(relative_trace(a, c2, s, a.mul(x, z)), a.mul(relative_trace(a, c2, s, x), z));
    }
  }
}

TEST(Vertex, CoprimeGroupHasTrivialVertex) {
  auto amb = q8().build();
  Group g = Group::whole(amb);
  auto f = Field::get(3, 2);
  Rng rng(4);
  for (const auto& c : split_into_irreducibles(regular_rep(g, f), rng)) EXPECT_TRUE(vertex(c.rep, 3).is_trivial());
}

TEST(Vertex, TrivialModuleOfPGroupIsWholeGroup) {
  for (const auto& spec : {d8(), q8(), cyclic(4)}) {
    Group g = Group::whole(spec.build());
    EXPECT_EQ(vertex(trivial_rep(g, Field::get(2, 1)), 2), g) << spec.name;
  }
  Group c3 = Group::whole(cyclic(3).build());
  EXPECT_EQ(vertex(trivial_rep(c3, Field::get(3, 1)), 3), c3);
}

// The trivial module of S3 in characteristic 3 has the Sylow 3-subgroup as
// vertex; the 2-dim simple of SL(2,3) at p=3 restricted to Q8 is projective.
TEST(Vertex, SylowAndDefectZeroExamples) {
  auto amb = s3().build();
  Group g = Group::whole(amb);
  Group v = vertex(trivial_rep(g, Field::get(3, 1)), 3);
  EXPECT_EQ(v.order(), 3);
  auto sl = sl23().build();
  Group q8 = subgroup(sl, q8_in_sl23().gens);
  auto f = Field::get(3, 2);
  Rng rng(5);
  for (const auto& c : split_into_irreducibles(regular_rep(q8, f), rng))
    if (c.rep.dim == 2) {
      EXPECT_TRUE(vertex(c.rep, 3).is_trivial());
    }
}

TEST(Vertex, StableUnderConjugationAndMinimal) {
  auto amb = sl23().build();
  Group g = Group::whole(amb);
  auto f = Field::get(2, 2);
  Rng rng(6);
  auto cs = split_into_irreducibles(regular_rep(g, f), rng);
  for (const auto& c : cs) {
    Group v = vertex(c.rep, 2);
    for (int trial = 0; trial < 20; ++trial) {
      Matrix q = Matrix::identity(f, c.rep.dim);
      do {
        for (int i = 0; i < q.rows(); ++i)
          for (int j = 0; j < q.cols(); ++j) q(i, j) = static_cast<Elem>(rng() % f->size());
      } while (!is_invertible(q));
      EXPECT_EQ(vertex(conjugate_by_matrix(c.rep, q), 2), v);
    }
    // every p-subgroup passing the trace test contains a conjugate of v
    GAlgebra a = endomorphism_algebra(c.rep);
    for (const auto& h : p_subgroups(g, 2)) {
      if (!in_span(trace_map(a, h, g).image, a.one)) continue;
      bool contains = false;
      for (int x : g.elements()) contains = contains || conjugate(v, x).is_subgroup_of(h);
      EXPECT_TRUE(contains);
    }
  }
}

TEST(BrauerQuotient, TrivialSubgroupGivesIdentity) {
  auto amb = s3().build();
  GAlgebra a = group_algebra(Field::get(3, 1), Group::whole(amb), Group::whole(amb));
  auto q = brauer_quotient(a, Group::trivial(amb));
  EXPECT_EQ(q.qdim, a.dim);
  EXPECT_TRUE(br_is_multiplicative(a, q));
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    Vec x = random_vec(a, rng);
    EXPECT_EQ(q.lift(q.br(x)), x);
  }
}

TEST(BrauerQuotient, FreeCyclicActionOnMatrixUnitsKillsEverything) {
  for (int p : {2, 3, 5}) {
    auto amb = cyclic(p).build();
    Group c = Group::whole(amb);
    auto f = Field::get(p, 1);
    GAlgebra a = matrix_algebra(f, p, c, [&](int x) { return perm_matrix(f, amb->element(x)); });
    auto q = brauer_quotient(a, c);
    EXPECT_EQ(q.qdim, 0);
    // orbit sums exhaust A^D: circulant space has dimension p
    EXPECT_EQ(q.fixed.rows(), p);
    EXPECT_FALSE(dade_structure(a, c).has_value());
  }
}

TEST(BrauerQuotient, MultiplicativeOnGroupAlgebras) {
  auto amb = gl23().build();
  Group g = Group::whole(amb);
  Group n = subgroup(amb, q8_in_sl23().gens);
  for (int p : {2, 3}) {
    GAlgebra a = group_algebra(Field::get(p, 1), n, g);
    for (const auto& d : p_subgroups(g, p)) {
      auto q = brauer_quotient(a, d);
      EXPECT_TRUE(br_is_multiplicative(a, q)) << d.describe();
      // quotient of a group algebra: spanned by C_N(D)
      EXPECT_EQ(q.qdim, centralizer(n, d).order()) << d.describe();
    }
  }
}

TEST(BrauerQuotient, IteratedQuotientAbelian) {
  auto amb = PermGroup::generate(4, {cycle_perm(4, {{0, 1}, {2, 3}}), cycle_perm(4, {{0, 2}, {1, 3}})});
  Group d = Group::whole(amb);
  auto f = Field::get(2, 1);
  GAlgebra a = perm_plus_trivial(d, f);
  EXPECT_TRUE(a.action_is_multiplicative());
  EXPECT_TRUE(iterated_quotient_check(a, d));
  auto q = brauer_quotient(a, d);
  EXPECT_EQ(q.qdim, 1);
}

TEST(BrauerQuotient, IteratedQuotientD8) {
  auto amb = d8().build();
  Group d = Group::whole(amb);
  auto f = Field::get(2, 1);
  GAlgebra a = perm_plus_trivial(d, f);
  EXPECT_TRUE(iterated_quotient_check(a, d));
  auto q = brauer_quotient(a, d);
  EXPECT_TRUE(br_is_multiplicative(a, q));
  EXPECT_EQ(q.qdim, 1);
  GAlgebra ga = group_algebra(f, d, d);
  EXPECT_TRUE(iterated_quotient_check(ga, d));
  for (const auto& s : p_subgroups(d, 2))
    if (!s.is_trivial()) {
      EXPECT_TRUE(iterated_quotient_check(ga, s)) << s.describe();
    }
}

TEST(BrauerQuotient, MatrixFormOfDadeQuotient) {
  auto amb = d8().build();
  Group d = Group::whole(amb);
  auto f = Field::get(2, 1);
  GAlgebra a = perm_plus_trivial(d, f);
  auto q = brauer_quotient(a, d);
  Rng rng(8);
  auto mf = matrix_form(q, rng);
  ASSERT_TRUE(mf.has_value());
  EXPECT_EQ(mf->l, 1);
  EXPECT_TRUE(mf->to_matrix(q.one, f).is_identity());
}

TEST(Dade, TrivialActionHasTrivialRho) {
  auto amb = cyclic(4).build();
  Group d = Group::whole(amb);
  auto f = Field::get(2, 2);
  GAlgebra a = matrix_algebra(f, 3, d, [&](int) { return Matrix::identity(f, 3); });
  auto dd = dade_structure(a, d);
  ASSERT_TRUE(dd.has_value());
  for (const auto& r : dd->rho) EXPECT_TRUE(r.is_identity());
  auto q = brauer_quotient(a, d);
  EXPECT_EQ(q.qdim, 9);
}

TEST(Dade, PermutationPlusTrivialRecoversConjugatingMatrices) {
  auto amb = d8().build();
  Group d = Group::whole(amb);
  auto f = Field::get(2, 1);
  GAlgebra a = perm_plus_trivial(d, f);
  auto dd = dade_structure(a, d);
  ASSERT_TRUE(dd.has_value());
  MatrixRep reg = regular_rep(d, f);
  int n = a.matrix_degree;
  for (int x : d.elements()) {
    Matrix c(f, n, n);
    c.set_block(0, 0, reg(x));
    c(n - 1, n - 1) = 1;
    EXPECT_EQ(dd->rho[d.position(x)], c);
    for (int i = 0; i < a.dim; ++i) {
      Matrix y = Matrix::unflatten(f, a.unit(i), n, n);
      EXPECT_EQ(Matrix::unflatten(f, a.act(a.unit(i), x), n, n), inverse(c) * y * c);
    }
  }
}
