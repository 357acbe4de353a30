#include <gtest/gtest.h>

#include <random>

#include "dgnwb/field.hpp"
#include "dgnwb/matrix.hpp"
#include "dgnwb/tower.hpp"
#include "dgnwb/zn.hpp"

using namespace dgnwb;

namespace {

Matrix random_matrix(const FieldPtr& f, int r, int c, std::mt19937_64& rng) {
  Matrix m(f, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = static_cast<Elem>(rng() % f->size());
  return m;
}

Matrix random_invertible(const FieldPtr& f, int n, std::mt19937_64& rng) {
  for (;;) {
    Matrix m = random_matrix(f, n, n, rng);
    if (is_invertible(m)) return m;
  }
}

// Multiplicative order by repeated multiplication.
int brute_order(const Field& F, Elem x) {
  Elem y = x;
  int k = 1;
  while (y != 1) {
    y = F.mul(y, x);
    ++k;
  }
  return k;
}

}  // namespace

TEST(Field, PrimeFieldGenerators) {
  EXPECT_EQ(Field::get(3, 1)->generator(), 2u);
  EXPECT_EQ(Field::get(2, 1)->generator(), 1u);
  EXPECT_EQ(Field::get(7, 1)->generator(), 3u);
  EXPECT_EQ(Field::get(3, 2)->units(), 8);
  EXPECT_THROW(Field::get(4, 1), PreconditionError);
}

TEST(Field, ModulusIsLeastIrreducible) {
  // GF(4): x^2 + x + 1 is the only irreducible quadratic over GF(2).
  EXPECT_EQ(Field::get(2, 2)->modulus(), (std::vector<int>{1, 1}));
  // GF(9): x^2 + 1 (code 1) is irreducible over GF(3) and x^2 (code 0) is not.
  EXPECT_EQ(Field::get(3, 2)->modulus(), (std::vector<int>{1, 0}));
  // GF(8): x^3 + x + 1; x^3 + 1 has root 1.
  EXPECT_EQ(Field::get(2, 3)->modulus(), (std::vector<int>{1, 1, 0}));
}

TEST(Field, GeneratorIsPrimitiveAndLeast) {
  for (auto [p, s] : std::vector<std::pair<int, int>>{{2, 4}, {3, 2}, {3, 3}, {5, 2}, {7, 1}, {2, 5}}) {
    auto F = Field::get(p, s);
    EXPECT_EQ(brute_order(*F, F->generator()), F->units());
    for (Elem g = 1; g < F->generator(); ++g) EXPECT_LT(brute_order(*F, g), F->units());
  }
}

TEST(Field, AxiomsOnRandomTriples) {
  std::mt19937_64 rng(1);
  for (auto [p, s] : std::vector<std::pair<int, int>>{{2, 4}, {3, 2}, {3, 3}, {5, 2}, {3, 7}, {7, 2}}) {
    auto F = Field::get(p, s);
    for (int t = 0; t < 1000; ++t) {
      Elem a = rng() % F->size(), b = rng() % F->size(), c = rng() % F->size();
      EXPECT_EQ(F->add(F->add(a, b), c), F->add(a, F->add(b, c)));
      EXPECT_EQ(F->mul(F->mul(a, b), c), F->mul(a, F->mul(b, c)));
      EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
      EXPECT_EQ(F->add(a, F->neg(a)), 0u);
      if (a) { EXPECT_EQ(F->mul(a, F->inv(a)), 1u); }
    }
  }
}

TEST(Field, AdditionMatchesDigitwiseSum) {
  // GF(3^7) uses Zech logarithms; compare with coefficientwise addition.
  auto F = Field::get(3, 7);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 2000; ++t) {
    Elem a = rng() % F->size(), b = rng() % F->size();
    auto da = F->digits(a), db = F->digits(b);
    for (int i = 0; i < 7; ++i) da[i] = (da[i] + db[i]) % 3;
    EXPECT_EQ(F->add(a, b), F->from_digits(da));
  }
}

TEST(Field, DlogIsHomomorphismExhaustive) {
  for (auto [p, s] : std::vector<std::pair<int, int>>{{2, 4}, {3, 2}, {3, 4}, {5, 2}, {2, 6}, {7, 2}}) {
    auto F = Field::get(p, s);
    if (F->size() > 81) continue;
    for (Elem x = 1; x < F->size(); ++x)
      for (Elem y = 1; y < F->size(); ++y)
        EXPECT_EQ(F->dlog(F->mul(x, y)), (F->dlog(x) + F->dlog(y)) % F->units());
  }
}

TEST(Field, Frobenius) {
  auto F3 = Field::get(3, 1);
  for (Elem x = 0; x < 3; ++x) EXPECT_EQ(F3->frobenius(x, 5), x);
  auto F9 = Field::get(3, 2);
  Elem g = F9->generator();
  EXPECT_EQ(F9->frobenius(g, 1), F9->pow(g, 3));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    Elem x = rng() % 9;
    EXPECT_EQ(F9->frobenius(F9->frobenius(x, 1), 1), F9->frobenius(x, 2));
  }
  for (int s : {2, 3}) {
    auto F = Field::get(3, s);
    int fixed = 0;
    for (Elem x = 0; x < F->size(); ++x) {
      if (F->frobenius(x, 1) == x) ++fixed;
      for (Elem y = 0; y < F->size(); ++y) {
        EXPECT_EQ(F->frobenius(F->add(x, y), 1), F->add(F->frobenius(x, 1), F->frobenius(y, 1)));
        EXPECT_EQ(F->frobenius(F->mul(x, y), 1), F->mul(F->frobenius(x, 1), F->frobenius(y, 1)));
      }
    }
    EXPECT_EQ(fixed, 3);
  }
}

TEST(Matrix, SolveRankInverse) {
  auto F = Field::get(3, 1);
  Matrix I = Matrix::identity(F, 4);
  Vec b{1, 2, 0, 1};
  EXPECT_EQ(*solve(I, b), b);
  EXPECT_EQ(rank(Matrix(F, 3, 5)), 0);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    Matrix a = random_invertible(F, 5, rng);
    EXPECT_TRUE((a * inverse(a)).is_identity());
    EXPECT_TRUE((inverse(a) * a).is_identity());
  }
  Matrix sing(F, 2, 2);
  sing(0, 0) = 1;
  sing(1, 0) = 2;
  EXPECT_THROW(inverse(sing), PreconditionError);
}

TEST(Matrix, NullspaceAndSolveAgree) {
  std::mt19937_64 rng(5);
  for (auto f : {Field::get(2, 2), Field::get(3, 2), Field::get(5, 1)}) {
    for (int t = 0; t < 30; ++t) {
      int r = 1 + rng() % 5, c = 1 + rng() % 6;
      Matrix a = random_matrix(f, r, c, rng);
      Matrix ns = nullspace(a);
      EXPECT_EQ(ns.rows() + rank(a), c);
      for (int i = 0; i < ns.rows(); ++i) EXPECT_TRUE(vec_is_zero(vec_mat(ns.row(i), a.transpose())));
      Vec x0(c);
      for (auto& v : x0) v = rng() % f->size();
      Vec rhs = vec_mat(x0, a.transpose());
      auto x = solve(a, rhs);
      ASSERT_TRUE(x.has_value());
      EXPECT_EQ(vec_mat(*x, a.transpose()), rhs);
    }
  }
}

TEST(Matrix, CharpolyMatchesDeterminant) {
  std::mt19937_64 rng(6);
  for (auto f : {Field::get(2, 2), Field::get(3, 1), Field::get(5, 1)}) {
    for (int t = 0; t < 20; ++t) {
      int n = 1 + rng() % 6;
      Matrix a = random_matrix(f, n, n, rng);
      Poly cp = charpoly(a);
      ASSERT_EQ(static_cast<int>(cp.size()), n + 1);
      EXPECT_EQ(cp.back(), 1u);
      for (Elem x = 0; x < f->size(); ++x)
        EXPECT_EQ(poly_eval(*f, cp, x), determinant(Matrix::scalar(f, n, x) - a));
    }
  }
}

TEST(Tower, SubfieldEmbedIsRingEmbedding) {
  auto F = Field::get(3, 2);
  FieldTower iota(F, 2, 1);
  EXPECT_TRUE(iota.regular(1).is_identity());
  EXPECT_TRUE(iota.regular(0).is_zero());
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    Elem z = rng() % 9, w = rng() % 9;
    EXPECT_EQ(iota.regular(F->mul(z, w)), iota.regular(z) * iota.regular(w));
    EXPECT_EQ(iota.regular(F->add(z, w)), iota.regular(z) + iota.regular(w));
  }
  // image of the generator has order 8 and its centralizer in M_2(GF(3)) is 2-dimensional
  Matrix g = iota.regular(F->generator());
  Matrix x = g;
  int ord = 1;
  while (!x.is_identity()) {
    x = x * g;
    ++ord;
  }
  EXPECT_EQ(ord, 8);
  Matrix sys(F, 4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Matrix e(F, 2, 2);
      e(i, j) = 1;
      Matrix c = g * e - e * g;
      for (int k = 0; k < 4; ++k) sys(k, i * 2 + j) = c.data()[k];
    }
  EXPECT_EQ(nullspace(sys).rows(), 2);
}

TEST(Tower, RelativeCoordinatesAndUnembed) {
  auto F = Field::get(2, 4);
  FieldTower t(F, 4, 2);
  std::mt19937_64 rng(8);
  for (Elem y = 0; y < 16; ++y) {
    Vec c = t.coords(y);
    for (Elem v : c) EXPECT_TRUE(t.small().contains(v));
    EXPECT_EQ(t.from_coords(c), y);
  }
  Matrix x(F, 2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) x(i, j) = rng() % 16;
  auto back = t.unembed(t.embed(x));
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, x);
  Matrix y(F, 4, 4);
  y(0, 1) = 1;
  EXPECT_FALSE(t.unembed(y).has_value());
}

TEST(Zn, SmallExamples) {
  ZnSystem s{8, 1, {}, {}};
  s.add_equation({2}, 0);
  auto x = zn_solve(s);
  ASSERT_TRUE(x);
  EXPECT_EQ((2 * (*x)[0]) % 8, 0);
  ZnSystem t{8, 1, {}, {}};
  t.add_equation({1}, 3);
  EXPECT_EQ((*zn_solve(t))[0], 3);
  ZnSystem u{8, 1, {}, {}};
  u.add_equation({2}, 1);
  EXPECT_FALSE(zn_solve(u));
}

TEST(Zn, RandomConsistentSystems) {
  std::mt19937_64 rng(9);
  for (long long n : {8LL, 15LL, 80LL, 624LL, 2LL}) {
    for (int t = 0; t < 50; ++t) {
      ZnSystem s{n, 4, {}, {}};
      std::vector<long long> x0(4);
      for (auto& v : x0) v = rng() % n;
      for (int i = 0; i < 6; ++i) {
        std::vector<long long> row(4);
        long long rhs = 0;
        for (int j = 0; j < 4; ++j) {
          row[j] = rng() % n;
          if (rng() % 3 == 0) row[j] = (row[j] * 2) % n;
          rhs += row[j] * x0[j];
        }
        s.add_equation(row, rhs);
      }
      auto x = zn_solve(s);
      ASSERT_TRUE(x);
      EXPECT_TRUE(s.satisfied_by(*x));
    }
  }
}

TEST(Zn, NoneAgreesWithBruteForce) {
  std::mt19937_64 rng(10);
  int nones = 0;
  for (int t = 0; t < 400; ++t) {
    long long n = 2 + rng() % 15;
    int k = 1 + rng() % 4;
    ZnSystem s{n, k, {}, {}};
    int rows = 1 + rng() % 4;
    for (int i = 0; i < rows; ++i) {
      std::vector<long long> row(k);
      for (auto& v : row) v = rng() % n;
      s.add_equation(row, rng() % n);
    }
    auto fast = zn_solve(s);
    auto slow = zn_solve_brute(s);
    EXPECT_EQ(fast.has_value(), slow.has_value()) << "n=" << n;
    if (fast) { EXPECT_TRUE(s.satisfied_by(*fast)); }
    if (!fast) ++nones;
  }
  EXPECT_GT(nones, 0);
}
