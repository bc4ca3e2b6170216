#include <gtest/gtest.h>

#include "homascend/linalg.hpp"
#include "homascend/poly.hpp"
#include "homascend/snf.hpp"
#include "oracles.hpp"

using namespace homascend;

namespace {

Field gaussian() {
  Field q = Field::rationals();
  return Field::extension(q, {q.one(), q.zero(), q.one()}, "i");
}

}  // namespace

TEST(Field, RationalArithmetic) {
  Field q = Field::rationals();
  Elem a = q.from_rational(Rational(1, 3)), b = q.from_rational(Rational(-5, 6));
  EXPECT_TRUE(q.equal(q.add(a, b), q.from_rational(Rational(-1, 2))));
  EXPECT_TRUE(q.equal(q.mul(a, b), q.from_rational(Rational(-5, 18))));
  EXPECT_TRUE(q.is_one(q.mul(b, q.inv(b))));
  EXPECT_THROW(q.inv(q.zero()), ArithmeticError);
  EXPECT_EQ(q.characteristic(), 0);
}

TEST(Field, PrimeFieldIsAField) {
  Field f = Field::prime(7);
  for (long v = 1; v < 7; ++v) EXPECT_TRUE(f.is_one(f.mul(f.from_int(v), f.inv(f.from_int(v)))));
  EXPECT_TRUE(f.equal(f.from_int(-1), f.from_int(6)));
  EXPECT_EQ(*f.size(), 7u);
  EXPECT_TRUE(f.is_one(f.pow(f.from_int(3), 6)));
}

TEST(Field, GaussianRationals) {
  Field k = gaussian();
  Elem i = k.generator();
  EXPECT_TRUE(k.equal(k.mul(i, i), k.from_int(-1)));
  Elem z = k.add(k.from_int(1), i);
  EXPECT_TRUE(k.is_one(k.mul(z, k.inv(z))));
  EXPECT_EQ(k.absolute_degree(), 2);
  EXPECT_TRUE(k.irreducibility_verified());
  EXPECT_FALSE(k.in_base(i));
  EXPECT_EQ(k.to_string(z), "1 + i");
}

TEST(Field, ReducibleMinpolyRejected) {
  Field q = Field::rationals();
  // t^2 - 1
  EXPECT_ANY_THROW(Field::extension(q, {q.from_int(-1), q.zero(), q.one()}));
}

TEST(Field, FiniteEnumerationIsInjective) {
  Field f = Field::prime(5);
  Field g = Field::extension(f, {f.from_int(2), f.zero(), f.one()}, "s");  // s^2 + 2, irreducible mod 5
  ASSERT_EQ(*g.size(), 25u);
  for (std::uint64_t a = 0; a < 25; ++a)
    for (std::uint64_t b = a + 1; b < 25; ++b) EXPECT_FALSE(g.equal(g.element_at(a), g.element_at(b)));
}

TEST(Poly, GcdAndBezout) {
  Field q = Field::rationals();
  PolyRing r(q);
  Poly x = r.x();
  Poly a = r.mul(r.sub(x, r.one()), r.add(x, r.constant(q.from_int(2))));    // (x-1)(x+2)
  Poly b = r.mul(r.sub(x, r.one()), r.sub(x, r.constant(q.from_int(3))));    // (x-1)(x-3)
  EXPECT_TRUE(r.equal(r.gcd(a, b), r.sub(x, r.one())));
  auto [g, s, t] = r.xgcd(a, b);
  EXPECT_TRUE(r.equal(r.add(r.mul(s, a), r.mul(t, b)), g));
  auto [quo, rem] = r.divmod(a, b);
  EXPECT_TRUE(r.equal(r.add(r.mul(quo, b), rem), a));
  EXPECT_LT(rem.degree(), b.degree());
}

TEST(Poly, SquarefreeAndRoots) {
  Field q = Field::rationals();
  PolyRing r(q);
  Poly x = r.x();
  Poly p = r.mul(r.mul(x, x), r.sub(x, r.one()));  // x^2 (x - 1)
  auto sf = r.squarefree(p);
  Poly back = r.one();
  for (const auto& [g, e] : sf)
    for (int k = 0; k < e; ++k) back = r.mul(back, g);
  EXPECT_TRUE(r.equal(back, p));
  auto roots = r.roots(p);
  ASSERT_TRUE(roots.has_value());
  EXPECT_EQ(roots->size(), 2u);
  EXPECT_EQ(r.valuation(p), 2);
  EXPECT_EQ(r.valuation(r.zero()), -1);
}

TEST(Poly, DistinctDegreeOverGF2) {
  Field f = Field::prime(2);
  PolyRing r(f);
  // x (x + 1) (x^2 + x + 1)
  Poly p = r.mul(r.mul(r.x(), r.add(r.x(), r.one())), r.make({f.one(), f.one(), f.one()}));
  auto dd = r.distinct_degree(p);
  int total = 0;
  for (const auto& [g, d] : dd) total += g.degree();
  EXPECT_EQ(total, 4);
}

TEST(Poly, MinimalPolynomialOfNilpotent) {
  Field q = Field::rationals();
  Mat j(q, 3, 3);
  j.at(1, 0) = q.one();
  j.at(2, 1) = q.one();
  Poly mp = minimal_polynomial(j);
  EXPECT_EQ(mp.degree(), 3);
  EXPECT_TRUE(eval_poly(q, mp, j).is_zero());
}

TEST(Linalg, KernelSolveInverse) {
  Field q = Field::rationals();
  Mat a = Mat::from_ints(q, 3, 4, {1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 0, 1});
  EXPECT_EQ(rank(a), 2u);
  Mat k = kernel(a);
  EXPECT_EQ(k.cols(), 2u);
  EXPECT_TRUE((a * k).is_zero());
  Mat b = a * Mat::from_ints(q, 4, 1, {1, -1, 2, 0});
  auto x = solve(a, b);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(a * *x, b);
  EXPECT_FALSE(solve(a, Mat::from_ints(q, 3, 1, {1, 0, 0})).has_value());
  Mat s = Mat::from_ints(q, 2, 2, {2, 1, 7, 4});
  EXPECT_EQ(s * *inverse(s), Mat::identity(q, 2));
  EXPECT_TRUE(q.is_one(determinant(s)));
  EXPECT_FALSE(inverse(Mat::from_ints(q, 2, 2, {1, 2, 2, 4})).has_value());
}

TEST(Linalg, Subspaces) {
  Field q = Field::rationals();
  Mat u = Mat::from_ints(q, 3, 2, {1, 0, 0, 1, 0, 0});
  Mat w = Mat::from_ints(q, 3, 2, {0, 0, 1, 0, 0, 1});
  EXPECT_EQ(subspace_intersection(u, w).cols(), 1u);
  EXPECT_EQ(subspace_sum(u, w).cols(), 3u);
  EXPECT_TRUE(subspace_contains(subspace_sum(u, w), u));
  Quotient qt = quotient(q, 3, u);
  EXPECT_EQ(qt.dim(), 1u);
  EXPECT_TRUE((qt.proj * u).is_zero());
  EXPECT_EQ(qt.proj * qt.lift, Mat::identity(q, 1));
}

TEST(Linalg, KroneckerShape) {
  Field q = Field::rationals();
  Mat a = Mat::from_ints(q, 2, 1, {1, 2});
  Mat b = Mat::from_ints(q, 1, 2, {3, 4});
  Mat k = kron(a, b);
  EXPECT_EQ(k.rows(), 2u);
  EXPECT_EQ(k.cols(), 2u);
  EXPECT_EQ(k, Mat::from_ints(q, 2, 2, {3, 4, 6, 8}));
}

// Smith form over the local ring: U A V = D with local-unit determinants,
// ascending exponents, and partial sums matching the minors' valuations.
TEST(Snf, PostconditionsAndDeterminantalDivisors) {
  Field q = Field::rationals();
  PolyRing r(q);
  oracle::Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    PolyMat a(q, 4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        std::vector<Elem> c;
        const int deg = static_cast<int>(rng() % 5);
        for (int t = 0; t <= deg; ++t) c.push_back(q.from_int(static_cast<long>(rng() % 5) - 2));
        // bias towards x-divisible entries so valuations are nontrivial
        if (rng() % 2) c[0] = q.zero();
        a.at(i, j) = r.make(c);
      }
    LocalSnf s = snf_localized(a);
    EXPECT_EQ(s.u * a * s.v, s.d) << "trial " << trial;
    EXPECT_TRUE(s.d.is_diagonal());
    EXPECT_TRUE(r.is_local_unit(determinant(s.u)));
    EXPECT_TRUE(r.is_local_unit(determinant(s.v)));
    EXPECT_TRUE(std::is_sorted(s.exponents.begin(), s.exponents.end()));
    EXPECT_EQ(s.free_defect + s.exponents.size(), 4u);
    int partial = 0;
    for (std::size_t k = 1; k <= 4; ++k) {
      int v = oracle::determinantal_valuation(a, k);
      if (k <= s.exponents.size()) {
        partial += s.exponents[k - 1];
        EXPECT_EQ(v, partial) << "trial " << trial << " k " << k;
      } else {
        EXPECT_EQ(v, -1);
      }
    }
  }
}

TEST(Snf, ZeroAndUnitMatrices) {
  Field q = Field::rationals();
  LocalSnf z = snf_localized(PolyMat(q, 2, 3));
  EXPECT_EQ(z.free_defect, 3u);
  EXPECT_TRUE(z.exponents.empty());
  LocalSnf one = snf_localized(PolyMat::identity(q, 3));
  EXPECT_EQ(one.exponents, (std::vector<int>{0, 0, 0}));
}
