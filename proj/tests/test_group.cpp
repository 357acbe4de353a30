#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dgnwb/fixtures.hpp"
#include "dgnwb/group.hpp"

using namespace dgnwb;
using namespace dgnwb::fixtures;

namespace {

// Orbit closure of the identity under the generators, done on raw permutations.
size_t closure_size(int degree, const std::vector<Perm>& gens) {
  std::set<Perm> seen{perm_identity(degree)};
  std::vector<Perm> todo{perm_identity(degree)};
  while (!todo.empty()) {
    Perm x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      Perm y = perm_mul(x, g);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen.size();
}

// Every subset closed under products, by brute force over bitmasks.
std::set<std::vector<int>> subgroups_by_subsets(const Group& g) {
  std::set<std::vector<int>> out;
  int n = g.order();
  const auto& amb = *g.ambient();
  for (long long mask = 1; mask < (1LL << n); ++mask) {
    std::vector<int> e;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) e.push_back(g.elements()[i]);
    if (e[0] != 0) continue;
    bool closed = true;
    for (int a : e) {
      for (int b : e)
        if (!std::binary_search(e.begin(), e.end(), amb.mul(a, b))) {
          closed = false;
          break;
        }
      if (!closed) break;
    }
    if (closed) out.insert(e);
  }
  return out;
}

}  // namespace

TEST(Group, FromGenerators) {
  auto s3g = PermGroup::generate(3, {cycle_perm(3, {{0, 1}}), cycle_perm(3, {{0, 1, 2}})});
  EXPECT_EQ(s3g->order(), 6);
  EXPECT_EQ(PermGroup::generate(1, {})->order(), 1);
  EXPECT_EQ(q8().build()->order(), 8);
  EXPECT_THROW(PermGroup::generate(3, {Perm{1, 0}}), PreconditionError);
  EXPECT_THROW(PermGroup::generate(12, {cycle_perm(12, {{0, 1}}), cycle_perm(12, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}})}),
               ResourceError);
  for (const auto& spec : ibr_fixture_groups()) {
    auto g = spec.build();
    EXPECT_EQ(static_cast<size_t>(g->order()), closure_size(spec.degree, spec.gens)) << spec.name;
    EXPECT_EQ(order_by_orbit_stabilizer(Group::whole(g)), g->order()) << spec.name;
  }
  EXPECT_EQ(sl23().build()->order(), 24);
  EXPECT_EQ(gl23().build()->order(), 48);
  EXPECT_EQ(glauberman().build()->order(), 30);
}

TEST(Group, ClosureOnRandomPairs) {
  std::mt19937_64 rng(11);
  for (const auto& spec : ibr_fixture_groups()) {
    auto g = spec.build();
    for (int t = 0; t < 1000; ++t) {
      int a = rng() % g->order(), b = rng() % g->order();
      EXPECT_GE(g->index_of(perm_mul(g->element(a), g->element(b))), 0);
      EXPECT_EQ(g->mul(a, b), g->index_of(perm_mul(g->element(a), g->element(b))));
    }
  }
}

TEST(Group, ConjugacyData) {
  auto s3g = Group::whole(s3().build());
  EXPECT_EQ(s3g.classes().size(), 3u);
  EXPECT_EQ(s3g.p_regular_classes(2).size(), 2u);
  auto triv = Group::whole(PermGroup::generate(1, {}));
  EXPECT_EQ(triv.classes().size(), 1u);
  EXPECT_EQ(triv.p_regular_classes(5).size(), 1u);
  auto q = Group::whole(q8().build());
  EXPECT_EQ(q.classes().size(), 5u);
  EXPECT_EQ(q.p_regular_classes(3).size(), 5u);
  auto gl = Group::whole(gl23().build());
  EXPECT_EQ(gl.classes().size(), 8u);
  // power maps: the class of x^k depends only on the class of x
  for (size_t c = 0; c < gl.classes().size(); ++c)
    for (int x : gl.classes()[c])
      for (int k = 0; k < 8; ++k) EXPECT_EQ(gl.class_of(gl.ambient()->pow(x, k)), gl.class_power(static_cast<int>(c), k));
  // class reps are the least elements
  for (size_t c = 0; c < gl.classes().size(); ++c)
    for (int x : gl.classes()[c]) EXPECT_LE(gl.class_rep(static_cast<int>(c)), x);
}

TEST(Group, Overgroups) {
  auto s3a = s3().build();
  Group s3g = Group::whole(s3a);
  Group a3 = subgroup(s3a, {cycle_perm(3, {{0, 1, 2}})});
  auto ov = overgroups(s3g, a3);
  ASSERT_EQ(ov.size(), 2u);
  EXPECT_EQ(ov[0], a3);
  EXPECT_EQ(ov[1], s3g);
  EXPECT_EQ(overgroups(s3g, s3g).size(), 1u);
  auto v4 = PermGroup::generate(4, {cycle_perm(4, {{0, 1}, {2, 3}}), cycle_perm(4, {{0, 2}, {1, 3}})});
  EXPECT_EQ(overgroups(Group::whole(v4), Group::trivial(v4)).size(), 5u);
  Group t = subgroup(s3a, {cycle_perm(3, {{0, 1}})});
  EXPECT_THROW(overgroups(s3g, t), PreconditionError);
}

TEST(Group, AllSubgroupsMatchesSubsetScan) {
  for (const auto& spec : {s3(), d8(), q8(), cyclic(6), a4()}) {
    Group g = Group::whole(spec.build());
    auto fast = all_subgroups(g);
    auto slow = subgroups_by_subsets(g);
    EXPECT_EQ(fast.size(), slow.size()) << spec.name;
    for (auto& s : fast) EXPECT_TRUE(slow.count(s.elements()));
  }
  EXPECT_EQ(all_subgroups(Group::whole(sl23().build())).size(), 15u);
  EXPECT_EQ(all_subgroups(Group::whole(gl23().build())).size(), 55u);
}

TEST(Group, NormalizerCentralizerQuotient) {
  auto gla = gl23().build();
  Group g = Group::whole(gla);
  Group sl = subgroup(gla, sl23().gens);
  Group q = subgroup(gla, q8_in_sl23().gens);
  EXPECT_EQ(q.order(), 8);
  EXPECT_TRUE(is_normal(q, g));
  auto syl3 = complements(sl, q);
  ASSERT_EQ(syl3.size(), 4u);
  Group d = syl3[0];
  EXPECT_EQ(d.order(), 3);
  Group nmd = normalizer(sl, d);
  EXPECT_EQ(nmd.order(), 6);
  Group c = centralizer(q, d);
  EXPECT_EQ(c.order(), 2);
  EXPECT_EQ(c, center(q));
  EXPECT_EQ(join(d, c), nmd);
  EXPECT_TRUE(intersection(d, c).is_trivial());
  EXPECT_TRUE(centralizer(g, Group::trivial(gla)) == g);
  Group cg = centralizer(g, d), ng = normalizer(g, d);
  EXPECT_TRUE(cg.is_subgroup_of(ng));
  Quotient qt = quotient(g, q);
  EXPECT_EQ(qt.bar.order(), 6);
  EXPECT_EQ(qt.bar.classes().size(), 3u);  // S3 rather than C6
  EXPECT_EQ(qt.bar.order() * q.order(), g.order());
  EXPECT_THROW(quotient(g, d), PreconditionError);
}

TEST(Group, GroupMapsAndRelabeling) {
  auto s3a = s3().build();
  Group g = Group::whole(s3a);
  int t = s3a->index_of(cycle_perm(3, {{0, 1}}));
  int r = s3a->index_of(cycle_perm(3, {{0, 1, 2}}));
  // conjugation by (1 2) is an automorphism
  int c = s3a->index_of(cycle_perm(3, {{1, 2}}));
  auto m = GroupMap::from_generators(g, g, {t, r}, {s3a->conj(t, c), s3a->conj(r, c)});
  EXPECT_TRUE(m.is_injective());
  // not a homomorphism: (0 1) -> (0 1 2)
  EXPECT_THROW(GroupMap::from_generators(g, g, {t, r}, {r, r}), PreconditionError);
  // p-regular class counts survive a random relabeling of points
  std::mt19937_64 rng(12);
  for (const auto& spec : ibr_fixture_groups()) {
    Perm pi = perm_identity(spec.degree);
    std::shuffle(pi.begin(), pi.end(), rng);
    std::vector<Perm> gens2;
    for (const auto& x : spec.gens) gens2.push_back(perm_mul(perm_mul(perm_inv(pi), x), pi));
    auto h = PermGroup::generate(spec.degree, gens2);
    Group G = Group::whole(spec.build()), H = Group::whole(h);
    auto iso = GroupMap::from_generators(G, H, indices(*G.ambient(), spec.gens), indices(*h, gens2));
    EXPECT_TRUE(iso.is_injective());
    for (int p : {2, 3, 5})
      EXPECT_EQ(G.p_regular_classes(p).size(), H.p_regular_classes(p).size()) << spec.name;
  }
}

TEST(Group, FongSetupNormalizerSplits) {
  auto ga = glauberman().build();
  Group g = Group::whole(ga);
  Group n = subgroup(ga, {glauberman_a(), glauberman_b()});
  auto ds = complements(g, n);
  ASSERT_FALSE(ds.empty());
  for (auto& d : ds) {
    Group c = centralizer(n, d);
    EXPECT_EQ(c.order(), 5);
    EXPECT_EQ(normalizer(g, d), join(d, c));
    EXPECT_TRUE(intersection(d, c).is_trivial());
  }
}
