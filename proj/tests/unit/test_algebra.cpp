#include <gtest/gtest.h>

#include "homascend/algebra.hpp"
#include "oracles.hpp"

using namespace homascend;

namespace {

MPoly monomial(std::vector<int> e, const Elem& c) { return MPoly{{{std::move(e), c}}}; }

Algebra truncated_xy(const Field& f, int n) { return LocalAlgebra::from_presentation(f, {"X", "Y"}, {}, n); }

Algebra truncated_x(const Field& f, int n) { return LocalAlgebra::from_presentation(f, {"x"}, {}, n); }

}  // namespace

TEST(Algebra, PresentationDimensions) {
  Field q = Field::rationals();
  Algebra r = truncated_xy(q, 2);
  EXPECT_EQ(r->dim(), 3u);
  EXPECT_EQ(r->nilpotency(), 2);
  EXPECT_EQ(r->residue_degree(), 1);
  EXPECT_EQ(r->radical().cols(), 2u);
  EXPECT_EQ(truncated_xy(q, 3)->dim(), 6u);
  EXPECT_EQ(truncated_x(q, 4)->dim(), 4u);
  EXPECT_EQ(truncated_x(q, 4)->nilpotency(), 4);

  Field f5 = Field::prime(5);
  Algebra g = LocalAlgebra::from_presentation(
      f5, {"x", "y"}, {monomial({1, 1}, f5.one()), monomial({3, 0}, f5.one()), monomial({0, 3}, f5.one())}, 8);
  EXPECT_EQ(g->dim(), 5u);  // 1, x, x^2, y, y^2
  EXPECT_EQ(g->nilpotency(), 3);
}

TEST(Algebra, FieldAsAlgebra) {
  Algebra k = LocalAlgebra::from_presentation(Field::rationals(), {}, {}, 1);
  EXPECT_EQ(k->dim(), 1u);
  EXPECT_EQ(k->radical().cols(), 0u);
  EXPECT_EQ(k->nilpotency(), 1);
}

TEST(Algebra, CommutativeAssociativeUnital) {
  Field f = Field::prime(3);
  Algebra a = truncated_xy(f, 4);
  oracle::Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    Vec x = oracle::random_element(a, rng, false), y = oracle::random_element(a, rng, false),
        z = oracle::random_element(a, rng, false);
    EXPECT_TRUE(vec_equal(f, a->mul(x, y), a->mul(y, x)));
    EXPECT_TRUE(vec_equal(f, a->mul(a->mul(x, y), z), a->mul(x, a->mul(y, z))));
    EXPECT_TRUE(vec_equal(f, a->mul(a->unit(), x), x));
  }
}

TEST(Algebra, RadicalPowers) {
  Algebra a = truncated_xy(Field::rationals(), 3);
  EXPECT_EQ(a->radical_power(1).cols(), 5u);
  EXPECT_EQ(a->radical_power(2).cols(), 3u);
  EXPECT_EQ(a->radical_power(3).cols(), 0u);
  EXPECT_EQ(a->ideal({*a->named_element("X")}).cols(), 3u);  // X, X^2, XY
}

TEST(AlgebraMap, UnitLawViolationRejected) {
  Field q = Field::rationals();
  Algebra r = truncated_x(q, 2);
  Mat m(q, 2, 2);  // zero map: phi(1) = 0
  EXPECT_THROW(AlgebraMap(r, r, m), InvariantError);
}

TEST(AlgebraMap, NonMultiplicativeImagesRejected) {
  Field q = Field::rationals();
  Algebra r = truncated_x(q, 2), s = truncated_x(q, 4);
  // x -> x would need x^2 = 0 in the target
  EXPECT_ANY_THROW(AlgebraMap::by_names(r, s));
}

TEST(AlgebraMap, SurjectionProperties) {
  Field q = Field::rationals();
  Algebra r = truncated_x(q, 4), s = truncated_x(q, 2);
  AlgebraMap pi = AlgebraMap::by_names(r, s);
  EXPECT_TRUE(pi.surjective());
  EXPECT_FALSE(pi.injective());
  EXPECT_EQ(pi.kernel_basis().cols(), 2u);
  DaggerReport d = check_dagger(pi);
  EXPECT_TRUE(d.dagger());
  EXPECT_FALSE(is_flat(pi).flat);
  EXPECT_EQ(residue_lift_witness(pi, 1).size(), s->dim());
}

TEST(AlgebraMap, ComposeWithIdentity) {
  Field q = Field::rationals();
  Algebra r = truncated_xy(q, 3), s = truncated_xy(q, 2);
  AlgebraMap pi = AlgebraMap::by_names(r, s);
  EXPECT_EQ(compose(pi, AlgebraMap::identity(r)).matrix(), pi.matrix());
  EXPECT_EQ(compose(AlgebraMap::identity(s), pi).matrix(), pi.matrix());
}

TEST(AlgebraMap, TensorExtensionOverGaussian) {
  Field q = Field::rationals();
  Field qi = Field::extension(q, {q.one(), q.zero(), q.one()}, "i");
  Algebra r = truncated_xy(q, 2);
  auto [s, phi] = algebra_tensor_extension(qi, r);
  EXPECT_EQ(s->dim(), 6u);
  EXPECT_EQ(s->residue_degree(), 2);
  EXPECT_TRUE(phi.injective());
  FlatnessReport fl = is_flat(phi);
  EXPECT_TRUE(fl.flat);
  EXPECT_EQ(fl.rank, 2u);
  DaggerReport d = check_dagger(phi);
  EXPECT_TRUE(d.ms_equals_n);
  EXPECT_FALSE(d.residue_iso);
  ASSERT_TRUE(s->named_element("i").has_value());
  Vec i = *s->named_element("i");
  EXPECT_TRUE(vec_equal(q, s->mul(i, i), s->scale(s->unit(), q.from_int(-1))));
}

TEST(AlgebraMap, FrobeniusTypeInclusion) {
  Field f = Field::prime(2);
  Algebra r = LocalAlgebra::from_presentation(f, {"y"}, {}, 2);
  Algebra s = truncated_x(f, 4);
  Vec y = *r->named_element("y"), x = *s->named_element("x");
  AlgebraMap phi = AlgebraMap::from_images(r, s, {{y, s->mul(x, x)}});
  EXPECT_TRUE(phi.injective());
  EXPECT_EQ(is_flat(phi).rank, 2u);
  EXPECT_FALSE(check_dagger(phi).ms_equals_n);
  EXPECT_EQ(extended_ideal(phi).cols(), 2u);  // (x^2)
}
